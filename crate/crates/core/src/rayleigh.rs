//! Rayleigh sums (power sums of reciprocal zeros) in closed form and from
//! computed zeros, and the two-sided Euler–Rayleigh bounds on the radii.

use crate::error::{QmlError, Result};
use crate::mlseries::QmlParams;
use crate::qcore::q_gamma;
use crate::radii::{NormalizedFamily, Property};
use crate::zeros::{ZeroKind, ZeroSequence};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RayleighKind {
    /// Σ ξ_n^{-2k}
    Kappa,
    /// Σ θ_n^{-2k}
    Chi,
    /// Σ ς_n^{-k}
    Delta,
    /// Σ ℓ_n^{-2k}
    Mu,
    /// Σ ν_n^{-k}
    Rho,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PowerConvention {
    /// zero^{-2k}
    Squared,
    /// zero^{-k}
    Plain,
}

impl RayleighKind {
    pub const ALL: [RayleighKind; 5] =
        [RayleighKind::Kappa, RayleighKind::Chi, RayleighKind::Delta, RayleighKind::Mu, RayleighKind::Rho];

    pub fn zero_kind(self) -> ZeroKind {
        match self {
            RayleighKind::Kappa => ZeroKind::Xi,
            RayleighKind::Chi => ZeroKind::Theta,
            RayleighKind::Delta => ZeroKind::VarSigma,
            RayleighKind::Mu => ZeroKind::Ell,
            RayleighKind::Rho => ZeroKind::Nu,
        }
    }

    pub fn convention(self) -> PowerConvention {
        match self {
            RayleighKind::Delta | RayleighKind::Rho => PowerConvention::Plain,
            _ => PowerConvention::Squared,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RayleighKind::Kappa => "kappa",
            RayleighKind::Chi => "chi",
            RayleighKind::Delta => "delta",
            RayleighKind::Mu => "mu",
            RayleighKind::Rho => "rho",
        }
    }
}

/// `Γ_q(γ+1), Γ_q(γ+3), Γ_q(γ+5)`.
fn gammas(params: &QmlParams) -> Result<(f64, f64, f64)> {
    let b = params.base();
    let g = params.gamma;
    Ok((q_gamma(g + 1.0, b)?, q_gamma(g + 3.0, b)?, q_gamma(g + 5.0, b)?))
}

/// Closed-form Rayleigh sum for `k ∈ {1, 2}`.
pub fn closed_form_sum(kind: RayleighKind, params: &QmlParams, k: u32) -> Result<f64> {
    let (g1, g3, g5) = gammas(params)?;
    let g = params.gamma;
    let s2 = params.sigma * params.sigma;
    let s4 = s2 * s2;
    let q2 = params.q * params.q;
    // a₁, a₂ of the series normalized by its constant term: sums are
    // S₁ = a₁, S₂ = a₁² - 2a₂
    let (a1, a2) = match kind {
        RayleighKind::Kappa => {
            let a1 = s2 * (g + 3.0) * g1 / ((g + 1.0) * g3);
            (a1, s4 * q2 * (g + 5.0) * g1 / ((g + 1.0) * g5))
        }
        RayleighKind::Chi => (3.0 * s2 * g1 / g3, 5.0 * s4 * q2 * g1 / g5),
        RayleighKind::Delta => (2.0 * s2 * g1 / g3, 3.0 * s4 * q2 * g1 / g5),
        RayleighKind::Mu => (9.0 * s2 * g1 / g3, 25.0 * s4 * q2 * g1 / g5),
        RayleighKind::Rho => (4.0 * s2 * g1 / g3, 9.0 * s4 * q2 * g1 / g5),
    };
    match k {
        1 => Ok(a1),
        2 => Ok(a1 * a1 - 2.0 * a2),
        _ => Err(QmlError::Unsupported(format!("closed-form Rayleigh sums exist for k = 1, 2 only, got {k}"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NumericSum {
    pub value: f64,
    pub tail_bound: f64,
    pub terms: usize,
}

pub const MIN_ZEROS_FOR_SUM: usize = 10;

/// Partial sum of `zero^{-2k}` (squared) or `zero^{-k}` (plain) with a tail
/// bound from `zero_{N+j} >= zero_N q^{-(j-1)}`.
pub fn numeric_sum(seq: &ZeroSequence, k: u32, conv: PowerConvention) -> Result<NumericSum> {
    let n = seq.zeros.len();
    if n < MIN_ZEROS_FOR_SUM {
        return Err(QmlError::InsufficientZeros { needed: MIN_ZEROS_FOR_SUM, got: n });
    }
    if k == 0 {
        return Err(QmlError::Domain("exponent must be positive".into()));
    }
    let p = match conv {
        PowerConvention::Squared => 2 * k,
        PowerConvention::Plain => k,
    } as i32;
    // smallest terms first
    let value = seq.zeros.iter().rev().map(|x| x.powi(-p)).collect::<crate::sum::NeumaierSum>().value();
    let last = seq.zeros[n - 1].powi(-p);
    let tail_bound = last / (1.0 - seq.params.q.powi(p));
    Ok(NumericSum { value, tail_bound, terms: n })
}

/// The quantity a bound is natively stated for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NativeQuantity {
    InverseSquareOfRadius,
    SquareOfRadius,
    Radius,
}

impl NativeQuantity {
    /// Convert a native bound pair to a bound pair on the radius itself.
    pub fn to_radius(self, lower: f64, upper: f64) -> (f64, f64) {
        match self {
            NativeQuantity::InverseSquareOfRadius => (upper.sqrt().recip(), lower.sqrt().recip()),
            NativeQuantity::SquareOfRadius => (lower.sqrt(), upper.sqrt()),
            NativeQuantity::Radius => (lower, upper),
        }
    }

    /// The native quantity for radius `r`.
    pub fn of_radius(self, r: f64) -> f64 {
        match self {
            NativeQuantity::InverseSquareOfRadius => r.powi(-2),
            NativeQuantity::SquareOfRadius => r * r,
            NativeQuantity::Radius => r,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EulerRayleighBounds {
    pub family: NormalizedFamily,
    pub property: Property,
    pub quantity: NativeQuantity,
    pub lower: f64,
    pub upper: f64,
    pub normalized_radius_lower: f64,
    pub normalized_radius_upper: f64,
}

impl EulerRayleighBounds {
    /// Whether `r` lies strictly inside the bounds, checked in the native quantity.
    pub fn contains_radius(&self, r: f64) -> bool {
        let v = self.quantity.of_radius(r);
        self.lower < v && v < self.upper
    }
}

/// Euler–Rayleigh bounds (k = 1) on the α = 0 radius.
pub fn radius_bounds(family: NormalizedFamily, property: Property, params: &QmlParams) -> Result<EulerRayleighBounds> {
    let (g1, g3, g5) = gammas(params)?;
    let g = params.gamma;
    let s2 = params.sigma * params.sigma;
    let q2 = params.q * params.q;
    use NormalizedFamily::*;
    use Property::*;
    let (quantity, lower, upper) = match (family, property) {
        (F, Starlike) => {
            let k1 = s2 * (g + 3.0) * g1 / ((g + 1.0) * g3);
            let lower = k1 - 2.0 * s2 * q2 * (g + 5.0) * g3 / ((g + 3.0) * g5);
            (NativeQuantity::InverseSquareOfRadius, lower, k1)
        }
        (G, Starlike) => (
            NativeQuantity::SquareOfRadius,
            g3 / (3.0 * s2 * g1),
            3.0 * g3 * g5 / (s2 * (9.0 * g1 * g5 - 10.0 * q2 * g3 * g3)),
        ),
        (H, Starlike) => {
            (NativeQuantity::Radius, g3 / (2.0 * s2 * g1), g3 * g5 / (s2 * (2.0 * g1 * g5 - 3.0 * q2 * g3 * g3)))
        }
        (G, Convex) => (
            NativeQuantity::SquareOfRadius,
            g3 / (9.0 * s2 * g1),
            9.0 * g3 * g5 / (s2 * (81.0 * g1 * g5 - 50.0 * q2 * g3 * g3)),
        ),
        (H, Convex) => {
            (NativeQuantity::Radius, g3 / (4.0 * s2 * g1), 2.0 * g3 * g5 / (s2 * (8.0 * g1 * g5 - 9.0 * q2 * g3 * g3)))
        }
        (F, Convex) => {
            return Err(QmlError::Unsupported("no closed-form bounds for the radius of convexity of f".into()))
        }
    };
    let (nl, nu) = quantity.to_radius(lower, upper);
    Ok(EulerRayleighBounds {
        family,
        property,
        quantity,
        lower,
        upper,
        normalized_radius_lower: nl,
        normalized_radius_upper: nu,
    })
}

/// Rayleigh kind whose k = 1 bounds apply to the α = 0 radius of the query.
pub fn rayleigh_kind_for(family: NormalizedFamily, property: Property) -> Option<RayleighKind> {
    use NormalizedFamily::*;
    use Property::*;
    match (family, property) {
        (F, Starlike) => Some(RayleighKind::Kappa),
        (G, Starlike) => Some(RayleighKind::Chi),
        (H, Starlike) => Some(RayleighKind::Delta),
        (G, Convex) => Some(RayleighKind::Mu),
        (H, Convex) => Some(RayleighKind::Rho),
        (F, Convex) => None,
    }
}
