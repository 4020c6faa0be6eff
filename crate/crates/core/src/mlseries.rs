//! The q-Mittag-Leffler function `E_{α,β}(z;q)`, its specialization
//! `λ(z) = E_{2,γ+1}(-σ²z²;q)` and the entire functions derived from it.
//!
//! Every ML-derived kind is `Σ poly(n) c_n z^{s·n}` with
//! `c_n = (-σ²)^n q^{n(n-1)} / Γ_q(2n+γ+1)`:
//!
//! | kind              | poly(n)      | s |
//! |-------------------|--------------|---|
//! | `Lambda`          | 1            | 2 |
//! | `PsiPrimeReduced` | 2n+γ+1       | 2 |
//! | `PhiSmall`        | 2n+1         | 2 |
//! | `VarPhi`          | n+1          | 1 |
//! | `BigPhi`          | (2n+1)²      | 2 |
//! | `PsiSmall`        | (n+1)²       | 1 |
//!
//! `BigPhi` and `PsiSmall` are `(zg')'` and `(zh')'` divided by `Γ_q(γ+1)`,
//! so their constant term is `1/Γ_q(γ+1)` like the others.

use crate::error::{QmlError, Result};
use crate::qcore::{pow_ext, q_pochhammer, recip_q_gamma_ext, Order, QBase};
use crate::series::{sum_complex, sum_real, Scaled, Tolerance, DEFAULT_MAX_TERMS};
use crate::sum::Ext;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Parameters `(q, γ, σ)` with `0 < q < 1`, `0 <= γ < 2`, `σ > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QmlParams {
    pub q: f64,
    pub gamma: f64,
    pub sigma: f64,
}

/// Status of the condition guaranteeing that all zeros are real.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Reality {
    /// `q^{-1}(1-q)(1-q^{γ+1})(1-q^{γ+2})`.
    pub value: f64,
    /// True for γ ∈ {0, 1}, where no condition is needed.
    pub unconditional: bool,
    pub holds: bool,
}

impl QmlParams {
    pub fn new(q: f64, gamma: f64, sigma: f64) -> Result<Self> {
        QBase::new(q)?;
        if !(0.0..2.0).contains(&gamma) {
            return Err(QmlError::Domain(format!("gamma must lie in [0, 2), got {gamma}")));
        }
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(QmlError::Domain(format!("sigma must be positive, got {sigma}")));
        }
        Ok(QmlParams { q, gamma, sigma })
    }

    pub fn base(&self) -> QBase {
        QBase::new(self.q).expect("validated on construction")
    }

    pub fn with_sigma(&self, sigma: f64) -> Result<Self> {
        QmlParams::new(self.q, self.gamma, sigma)
    }

    pub fn gamma_is_special(&self) -> bool {
        self.gamma == 0.0 || self.gamma == 1.0
    }

    pub fn reality(&self) -> Reality {
        let (q, g) = (self.q, self.gamma);
        let value = (1.0 - q) * (1.0 - q.powf(g + 1.0)) * (1.0 - q.powf(g + 2.0)) / q;
        let unconditional = self.gamma_is_special();
        Reality { value, unconditional, holds: unconditional || value > 1.0 }
    }

    /// Ok(true) when the zeros are known to be real; Ok(false) when the
    /// condition fails but `force` is set.
    pub fn require_reality(&self, force: bool) -> Result<bool> {
        let r = self.reality();
        if r.holds {
            Ok(true)
        } else if force {
            Ok(false)
        } else {
            Err(QmlError::ConditionViolated { value: r.value })
        }
    }
}

/// Which entire function to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SeriesKind {
    /// `E_{α,β}(z;q) = Σ q^{αn(n-1)/2} z^n / Γ_q(nα+β)`; uses only `q` from the params.
    GenericE {
        alpha: f64,
        beta: f64,
    },
    Lambda,
    PsiPrimeReduced,
    PhiSmall,
    VarPhi,
    BigPhi,
    PsiSmall,
}

impl SeriesKind {
    pub const ML_KINDS: [SeriesKind; 6] = [
        SeriesKind::Lambda,
        SeriesKind::PsiPrimeReduced,
        SeriesKind::PhiSmall,
        SeriesKind::VarPhi,
        SeriesKind::BigPhi,
        SeriesKind::PsiSmall,
    ];

    /// Power of `z` per coefficient index.
    pub fn stride(self) -> u64 {
        match self {
            SeriesKind::GenericE { .. } | SeriesKind::VarPhi | SeriesKind::PsiSmall => 1,
            _ => 2,
        }
    }

    fn poly(self, n: usize, gamma: f64) -> f64 {
        let n = n as f64;
        match self {
            SeriesKind::GenericE { .. } | SeriesKind::Lambda => 1.0,
            SeriesKind::PsiPrimeReduced => 2.0 * n + gamma + 1.0,
            SeriesKind::PhiSmall => 2.0 * n + 1.0,
            SeriesKind::VarPhi => n + 1.0,
            SeriesKind::BigPhi => (2.0 * n + 1.0).powi(2),
            SeriesKind::PsiSmall => (n + 1.0).powi(2),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SeriesKind::GenericE { .. } => "generic-e",
            SeriesKind::Lambda => "lambda",
            SeriesKind::PsiPrimeReduced => "psi-prime-reduced",
            SeriesKind::PhiSmall => "phi",
            SeriesKind::VarPhi => "varphi",
            SeriesKind::BigPhi => "big-phi",
            SeriesKind::PsiSmall => "psi",
        }
    }
}

/// A series value with a certified truncation bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: f64,
    /// Bound on `|exact - value|` from the omitted tail.
    pub tail_bound: f64,
    pub terms_used: usize,
}

const TABLE_LEN: usize = 160;

/// Cached coefficient table for one series kind and parameter set.
#[derive(Debug, Clone)]
pub struct QmlSeries {
    kind: SeriesKind,
    base: QBase,
    gamma: f64,
    sigma: f64,
    table: Vec<Ext>,
}

/// `c_n` computed without forming `Γ_q` (which overflows for large n):
/// `(-1)^n (q^{2n+γ+1};q)_∞/(q;q)_∞ · (1-q)^γ · [σ²(1-q)²]^n · q^{n(n-1)}`.
fn lambda_coefficient(base: QBase, gamma: f64, sigma: f64, n: usize) -> Ext {
    let q = base.value();
    let n64 = n as u64;
    let poch = q_pochhammer(base.pow(2.0 * n as f64 + gamma + 1.0), base, Order::Infinite)
        / q_pochhammer(q, base, Order::Infinite);
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let s = sigma * (1.0 - q);
    Ext::new(sign * poch * (1.0 - q).powf(gamma)) * Ext::powi(s * s, n64) * Ext::powi(q, n64 * n64.saturating_sub(1))
}

fn generic_coefficient(base: QBase, alpha: f64, beta: f64, n: usize) -> Ext {
    let n_f = n as f64;
    Ext::exp(alpha * n_f * (n_f - 1.0) / 2.0 * base.ln()) * recip_q_gamma_ext(n_f * alpha + beta, base)
}

/// `p (p-1) ... (p-d+1)`.
fn falling(p: u64, d: u32) -> f64 {
    (0..d as u64).map(|j| (p - j) as f64).product()
}

impl QmlSeries {
    pub fn new(kind: SeriesKind, params: &QmlParams) -> Self {
        let base = params.base();
        let mut s = QmlSeries { kind, base, gamma: params.gamma, sigma: params.sigma, table: Vec::new() };
        s.table = (0..TABLE_LEN).map(|n| s.coefficient_direct(n)).collect();
        s
    }

    pub fn generic(alpha: f64, beta: f64, base: QBase) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) || !beta.is_finite() {
            return Err(QmlError::Domain(format!("need alpha > 0 and finite beta, got ({alpha}, {beta})")));
        }
        let kind = SeriesKind::GenericE { alpha, beta };
        let mut s = QmlSeries { kind, base, gamma: 0.0, sigma: 1.0, table: Vec::new() };
        s.table = (0..TABLE_LEN).map(|n| s.coefficient_direct(n)).collect();
        Ok(s)
    }

    pub fn kind(&self) -> SeriesKind {
        self.kind
    }

    fn coefficient_direct(&self, n: usize) -> Ext {
        match self.kind {
            SeriesKind::GenericE { alpha, beta } => generic_coefficient(self.base, alpha, beta, n),
            k => lambda_coefficient(self.base, self.gamma, self.sigma, n) * k.poly(n, self.gamma),
        }
    }

    /// The n-th coefficient (including the kind's polynomial factor).
    pub fn coefficient(&self, n: usize) -> Ext {
        match self.table.get(n) {
            Some(c) => *c,
            None => self.coefficient_direct(n),
        }
    }

    /// First index from which term ratios are non-increasing.
    fn certify_from(&self, deriv: u32) -> usize {
        let s = self.kind.stride();
        let mut n = (deriv as u64).div_ceil(s) as usize;
        if let SeriesKind::GenericE { alpha, beta } = self.kind {
            while n as f64 * alpha + beta <= 0.0 {
                n += 1;
            }
        }
        n
    }

    /// `(coefficient · falling factor, power of z)` for the `deriv`-th derivative.
    fn term_parts(&self, n: usize, deriv: u32) -> Option<(Ext, u64)> {
        let p = self.kind.stride() * n as u64;
        if p < deriv as u64 {
            return None;
        }
        Some((self.coefficient(n) * falling(p, deriv), p - deriv as u64))
    }

    fn check(z: f64, deriv: u32) -> Result<()> {
        if deriv > 2 {
            return Err(QmlError::Domain(format!("derivative order must be 0, 1 or 2, got {deriv}")));
        }
        if !z.is_finite() {
            return Err(QmlError::Domain(format!("argument must be finite, got {z}")));
        }
        Ok(())
    }

    /// Value at `z = 0`: the single term with power 0.
    fn at_origin(&self, deriv: u32) -> f64 {
        let s = self.kind.stride();
        if !(deriv as u64).is_multiple_of(s) {
            return 0.0;
        }
        let n = (deriv as u64 / s) as usize;
        (self.coefficient(n) * falling(deriv as u64, deriv)).to_f64()
    }

    fn summed(&self, z: f64, deriv: u32, tol: Tolerance) -> Result<crate::series::Summed> {
        let zx = Ext::new(z);
        sum_real(
            self.certify_from(deriv),
            |n| match self.term_parts(n, deriv) {
                Some((c, p)) => c * pow_ext(zx, p),
                None => Ext::ZERO,
            },
            tol,
            DEFAULT_MAX_TERMS,
        )
    }

    /// The `deriv`-th derivative at `z` with tail bound at most `tol`.
    pub fn eval(&self, z: f64, deriv: u32, tol: Tolerance) -> Result<EvalResult> {
        Self::check(z, deriv)?;
        tol.validate()?;
        if z == 0.0 {
            return Ok(EvalResult { value: self.at_origin(deriv), tail_bound: 0.0, terms_used: 1 });
        }
        let s = self.summed(z, deriv, tol)?;
        let value = s.scaled.to_f64();
        if !value.is_finite() {
            return Err(QmlError::Domain(format!("value at z = {z:e} overflows f64")));
        }
        Ok(EvalResult { value, tail_bound: s.tail.to_f64(), terms_used: s.terms })
    }

    /// Value divided by the binary scale of the largest term. The sign is
    /// exact and the mantissa is continuous in `z`, which is all the root
    /// finders need.
    pub fn eval_scaled(&self, z: f64, deriv: u32) -> Result<Scaled> {
        Self::check(z, deriv)?;
        if z == 0.0 {
            return Ok(Scaled { mantissa: self.at_origin(deriv), exp2: 0 });
        }
        Ok(self.summed(z, deriv, Tolerance::RelativeToPeak(1e-18))?.scaled)
    }

    /// Complex argument, tail below `tol` relative to the largest term.
    pub fn eval_complex(&self, z: Complex64, deriv: u32) -> Result<Complex64> {
        Self::check(z.norm(), deriv)?;
        if z == Complex64::new(0.0, 0.0) {
            return Ok(Complex64::new(self.at_origin(deriv), 0.0));
        }
        let r = Ext::new(z.norm());
        let theta = z.arg();
        let (v, shift, _, _) = sum_complex(
            self.certify_from(deriv),
            |n| match self.term_parts(n, deriv) {
                Some((c, p)) => {
                    let phase = Complex64::from_polar(c.signum(), theta * p as f64);
                    (c.abs() * pow_ext(r, p), phase)
                }
                None => (Ext::ZERO, Complex64::new(1.0, 0.0)),
            },
            Tolerance::RelativeToPeak(1e-18),
            DEFAULT_MAX_TERMS,
        )?;
        let scale = Ext::from_parts(1.0, shift).to_f64();
        Ok(v * scale)
    }
}

/// `E_{α,β}(z;q)` with tail bound at most `tol`.
pub fn eval_generic_e(alpha: f64, beta: f64, z: f64, base: QBase, tol: f64) -> Result<EvalResult> {
    QmlSeries::generic(alpha, beta, base)?.eval(z, 0, Tolerance::Absolute(tol))
}

/// The `deriv`-th derivative of the selected series at `z`, tail bound at most `tol`.
pub fn eval_series(kind: SeriesKind, params: &QmlParams, z: f64, deriv: u32, tol: f64) -> Result<EvalResult> {
    let s = match kind {
        SeriesKind::GenericE { alpha, beta } => QmlSeries::generic(alpha, beta, params.base())?,
        k => QmlSeries::new(k, params),
    };
    s.eval(z, deriv, Tolerance::Absolute(tol))
}

/// The n-th series coefficient in double precision (0 or ±inf outside the range).
pub fn series_coefficient(kind: SeriesKind, params: &QmlParams, n: usize) -> f64 {
    let base = params.base();
    match kind {
        SeriesKind::GenericE { alpha, beta } => generic_coefficient(base, alpha, beta, n).to_f64(),
        k => (lambda_coefficient(base, params.gamma, params.sigma, n) * k.poly(n, params.gamma)).to_f64(),
    }
}
