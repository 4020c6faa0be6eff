use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QmlError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("q-gamma pole at x = {0}")]
    Pole(f64),

    #[error("series did not reach tolerance {tol:e} within {max_terms} terms")]
    NonConvergence { tol: f64, max_terms: usize },

    /// The reality condition q^{-1}(1-q)(1-q^{γ+1})(1-q^{γ+2}) > 1 fails.
    #[error("zero-reality condition violated: q^-1 (1-q)(1-q^(g+1))(1-q^(g+2)) = {value:.6} <= 1")]
    ConditionViolated { value: f64 },

    #[error("no sign change found for {what} in ({lo:e}, {hi:e})")]
    BracketFailure { what: String, lo: f64, hi: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("need at least {needed} zeros, got {got}")]
    InsufficientZeros { needed: usize, got: usize },

    #[error("zero sequences were computed for different parameters")]
    MismatchedParams,
}

pub type Result<T> = std::result::Result<T, QmlError>;
