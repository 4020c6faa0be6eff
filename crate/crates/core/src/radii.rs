//! Radii of starlikeness and convexity of order α for the normalizations
//!
//! * `f(z) = (z^{γ+1} Γ_q(γ+1) λ(z))^{1/(γ+1)}`
//! * `g(z) = z Γ_q(γ+1) λ(z)`
//! * `h(z) = z Γ_q(γ+1) λ(√z)`
//!
//! On the positive axis the quotients are written through the series only
//! (never through fractional powers):
//!
//! | family | `z f'/f`               | `1 + z f''/f'`              |
//! |--------|------------------------|-----------------------------|
//! | F      | `1 + rλ'/((γ+1)λ)`     | `1 + rP'/P - γ/(γ+1)·rλ'/λ` |
//! | G      | `1 + rλ'/λ`            | `1 + rφ'/φ`                 |
//! | H      | `1 + (√r/2)λ'(√r)/λ(√r)` | `1 + rϕ'/ϕ`               |
//!
//! where `P = (γ+1)λ + zλ'`. Each quotient decreases from 1 to -∞ on its
//! domain, so `quotient(r) = α` has exactly one root there.

use crate::error::{QmlError, Result};
use crate::mlseries::{QmlParams, QmlSeries, SeriesKind};
use crate::rayleigh::{radius_bounds, EulerRayleighBounds};
use crate::roots::refine_root_with;
use crate::zeros::{ZeroKind, ZeroOptions, ZeroSet};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormalizedFamily {
    F,
    G,
    H,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Property {
    Starlike,
    Convex,
}

impl NormalizedFamily {
    pub const ALL: [NormalizedFamily; 3] = [NormalizedFamily::F, NormalizedFamily::G, NormalizedFamily::H];

    pub fn name(self) -> &'static str {
        match self {
            NormalizedFamily::F => "f",
            NormalizedFamily::G => "g",
            NormalizedFamily::H => "h",
        }
    }
}

impl Property {
    pub const ALL: [Property; 2] = [Property::Starlike, Property::Convex];

    pub fn name(self) -> &'static str {
        match self {
            Property::Starlike => "starlike",
            Property::Convex => "convex",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusQuery {
    pub family: NormalizedFamily,
    pub property: Property,
    pub alpha: f64,
}

impl RadiusQuery {
    pub fn new(family: NormalizedFamily, property: Property, alpha: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&alpha) {
            return Err(QmlError::Domain(format!("alpha must lie in [0, 1), got {alpha}")));
        }
        Ok(RadiusQuery { family, property, alpha })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadiusResult {
    pub query: RadiusQuery,
    pub params: QmlParams,
    pub value: f64,
    /// `quotient(value) - alpha`.
    pub residual: f64,
    pub search_interval: (f64, f64),
    /// Euler–Rayleigh bounds, present for α = 0 when they exist.
    pub bounds_check: Option<EulerRayleighBounds>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CircleCheck {
    pub min_real_part: f64,
    /// Angle in (-π, π] at which the sampled minimum occurs.
    pub witness_angle: f64,
    pub samples: usize,
}

pub const DEFAULT_CIRCLE_SAMPLES: usize = 256;
const END_MARGIN: f64 = 1e-8;

/// Series and zeros shared by all radius computations for one parameter set.
#[derive(Debug, Clone)]
pub struct RadiusSolver {
    params: QmlParams,
    opts: ZeroOptions,
    lambda: QmlSeries,
    psi_reduced: QmlSeries,
    phi: QmlSeries,
    varphi: QmlSeries,
    zeros: ZeroSet,
}

/// `x f'(x) / f(x)`.
fn log_slope(s: &QmlSeries, x: f64) -> Result<f64> {
    Ok(x * s.eval_scaled(x, 1)?.ratio(s.eval_scaled(x, 0)?))
}

fn log_slope_c(s: &QmlSeries, z: Complex64) -> Result<Complex64> {
    Ok(z * s.eval_complex(z, 1)? / s.eval_complex(z, 0)?)
}

impl RadiusSolver {
    pub fn new(params: QmlParams, opts: ZeroOptions) -> Result<Self> {
        Ok(RadiusSolver {
            lambda: QmlSeries::new(SeriesKind::Lambda, &params),
            psi_reduced: QmlSeries::new(SeriesKind::PsiPrimeReduced, &params),
            phi: QmlSeries::new(SeriesKind::PhiSmall, &params),
            varphi: QmlSeries::new(SeriesKind::VarPhi, &params),
            zeros: ZeroSet::new(params, opts)?,
            params,
            opts,
        })
    }

    pub fn params(&self) -> &QmlParams {
        &self.params
    }

    pub fn zeros(&mut self) -> &mut ZeroSet {
        &mut self.zeros
    }

    /// Right end of the interval on which the quotient is finite.
    pub fn domain_end(&mut self, family: NormalizedFamily, property: Property) -> Result<f64> {
        use NormalizedFamily::*;
        Ok(match (family, property) {
            (F | G, Property::Starlike) => self.zeros.first(ZeroKind::Epsilon)?,
            (H, Property::Starlike) => self.zeros.first(ZeroKind::Epsilon)?.powi(2),
            (F, Property::Convex) => self.zeros.first(ZeroKind::Xi)?,
            (G, Property::Convex) => self.zeros.first(ZeroKind::Theta)?,
            (H, Property::Convex) => self.zeros.first(ZeroKind::VarSigma)?,
        })
    }

    fn quotient_unchecked(&self, family: NormalizedFamily, property: Property, r: f64) -> Result<f64> {
        let g = self.params.gamma;
        use NormalizedFamily::*;
        Ok(match (family, property) {
            (F, Property::Starlike) => 1.0 + log_slope(&self.lambda, r)? / (g + 1.0),
            (G, Property::Starlike) => 1.0 + log_slope(&self.lambda, r)?,
            (H, Property::Starlike) => 1.0 + 0.5 * log_slope(&self.lambda, r.sqrt())?,
            (F, Property::Convex) => {
                1.0 + log_slope(&self.psi_reduced, r)? - g / (g + 1.0) * log_slope(&self.lambda, r)?
            }
            (G, Property::Convex) => 1.0 + log_slope(&self.phi, r)?,
            (H, Property::Convex) => 1.0 + log_slope(&self.varphi, r)?,
        })
    }

    fn quotient_complex(&self, family: NormalizedFamily, property: Property, z: Complex64) -> Result<Complex64> {
        let g = self.params.gamma;
        let one = Complex64::new(1.0, 0.0);
        use NormalizedFamily::*;
        Ok(match (family, property) {
            (F, Property::Starlike) => one + log_slope_c(&self.lambda, z)? / (g + 1.0),
            (G, Property::Starlike) => one + log_slope_c(&self.lambda, z)?,
            // even in √z, so the branch does not matter
            (H, Property::Starlike) => one + 0.5 * log_slope_c(&self.lambda, z.sqrt())?,
            (F, Property::Convex) => {
                one + log_slope_c(&self.psi_reduced, z)? - g / (g + 1.0) * log_slope_c(&self.lambda, z)?
            }
            (G, Property::Convex) => one + log_slope_c(&self.phi, z)?,
            (H, Property::Convex) => one + log_slope_c(&self.varphi, z)?,
        })
    }

    fn check_r(&mut self, family: NormalizedFamily, property: Property, r: f64) -> Result<f64> {
        let end = self.domain_end(family, property)?;
        if !(r > 0.0 && r < end) {
            return Err(QmlError::Domain(format!(
                "r = {r} outside the quotient's domain (0, {end}) for {} {}",
                family.name(),
                property.name()
            )));
        }
        Ok(end)
    }

    /// `z f'/f` (starlike) or `1 + z f''/f'` (convex) at `z = r > 0`.
    pub fn quotient(&mut self, family: NormalizedFamily, property: Property, r: f64) -> Result<f64> {
        self.check_r(family, property, r)?;
        self.quotient_unchecked(family, property, r)
    }

    /// Solve `quotient(r) = α` on the quotient's domain.
    pub fn radius(&mut self, query: RadiusQuery) -> Result<RadiusResult> {
        let query = RadiusQuery::new(query.family, query.property, query.alpha)?;
        let end = self.domain_end(query.family, query.property)?;
        let (lo, hi) = (END_MARGIN * end, (1.0 - END_MARGIN) * end);
        let f = |r: f64| Ok(self.quotient_unchecked(query.family, query.property, r)? - query.alpha);
        let (flo, fhi) = (f(lo)?, f(hi)?);
        let root = refine_root_with(f, lo, flo, hi, fhi, self.opts.tol).map_err(|e| match e {
            QmlError::BracketFailure { lo, hi, .. } => QmlError::BracketFailure {
                what: format!("{} {} radius", query.family.name(), query.property.name()),
                lo,
                hi,
            },
            e => e,
        })?;
        let residual = self.quotient_unchecked(query.family, query.property, root.root)? - query.alpha;
        let bounds_check =
            if query.alpha == 0.0 { radius_bounds(query.family, query.property, &self.params).ok() } else { None };
        Ok(RadiusResult {
            query,
            params: self.params,
            value: root.root,
            residual,
            search_interval: (lo, hi),
            bounds_check,
        })
    }

    /// Minimum of the real part of the defining quotient on `|z| = r`.
    pub fn verify_on_circle(&mut self, query: RadiusQuery, r: f64, n_samples: usize) -> Result<CircleCheck> {
        if n_samples < 8 {
            return Err(QmlError::Domain(format!("need at least 8 samples, got {n_samples}")));
        }
        self.check_r(query.family, query.property, r)?;
        let mut best = (f64::INFINITY, 0.0);
        for k in 0..n_samples {
            let k_signed = if 2 * k <= n_samples { k as f64 } else { k as f64 - n_samples as f64 };
            let theta = std::f64::consts::TAU * k_signed / n_samples as f64;
            let z = Complex64::from_polar(r, theta);
            let v = self.quotient_complex(query.family, query.property, z)?.re;
            if v < best.0 {
                best = (v, theta);
            }
        }
        Ok(CircleCheck { min_real_part: best.0, witness_angle: best.1, samples: n_samples })
    }
}

fn solver(params: &QmlParams, tol: f64, force: bool) -> Result<RadiusSolver> {
    RadiusSolver::new(*params, ZeroOptions { tol, force })
}

/// Starlikeness quotient `z f'/f` at `z = r`.
pub fn starlike_quotient(family: NormalizedFamily, params: &QmlParams, r: f64) -> Result<f64> {
    solver(params, crate::zeros::DEFAULT_TOL, true)?.quotient(family, Property::Starlike, r)
}

/// Convexity quotient `1 + z f''/f'` at `z = r`.
pub fn convex_quotient(family: NormalizedFamily, params: &QmlParams, r: f64) -> Result<f64> {
    solver(params, crate::zeros::DEFAULT_TOL, true)?.quotient(family, Property::Convex, r)
}

/// Radius of starlikeness or convexity of order α.
pub fn radius(query: RadiusQuery, params: &QmlParams, tol: f64) -> Result<RadiusResult> {
    solver(params, tol, false)?.radius(query)
}

pub fn verify_on_circle(query: RadiusQuery, params: &QmlParams, r: f64, n_samples: usize) -> Result<CircleCheck> {
    solver(params, crate::zeros::DEFAULT_TOL, true)?.verify_on_circle(query, r, n_samples)
}
