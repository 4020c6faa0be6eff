//! Verification suite: every computable identity, bracket and inequality of
//! the library, evaluated over a parameter grid into a deterministic report.

use crate::error::{QmlError, Result};
use crate::grid::{self, Execution};
use crate::mlseries::{eval_generic_e, QmlParams, QmlSeries, SeriesKind};
use crate::qcore::{q_gamma, q_number, q_pochhammer, q_trig, Order, QBase, QTrig};
use crate::radii::{NormalizedFamily, Property, RadiusQuery, RadiusSolver};
use crate::rayleigh::{closed_form_sum, numeric_sum, radius_bounds, RayleighKind};
use crate::series::Tolerance;
use crate::zeros::{
    interlacing_check, lambda_via_product, localization_interval, qtrig_zeros, ZeroKind, ZeroOptions, ZeroSet,
};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::f64::consts::TAU;

pub const REPORT_VERSION: &str = "1";

pub const QGAMMA: &str = "qgamma_identities";
pub const QTRIG: &str = "qtrig_reduction";
pub const EPSILON_LOCALIZATION: &str = "epsilon_localization";
pub const PRODUCT_SERIES: &str = "product_series_identity";
pub const INTERLACING: &str = "xi_epsilon_interlacing";
pub const RAYLEIGH_SUMS: &str = "rayleigh_sums";
pub const SANDWICH: &str = "euler_rayleigh_sandwich";
pub const RADIUS_ZERO: &str = "radius_zero_identity";
pub const GAMMA0_BOUNDS: &str = "gamma0_closed_form_bounds";
pub const F_EQUALS_G: &str = "gamma0_f_equals_g";
pub const MONOTONE: &str = "radius_decreasing_in_alpha";
pub const CONVEX_BELOW: &str = "convex_below_starlike";
pub const SCALING: &str = "sigma_scaling";
pub const ON_CIRCLE: &str = "on_circle";
pub const ORACLE: &str = "oracle_agreement";

/// Every check family, in report order. The two γ = 0 families only appear
/// when the grid contains γ = 0.
pub const CHECK_FAMILIES: [&str; 15] = [
    QGAMMA,
    QTRIG,
    EPSILON_LOCALIZATION,
    PRODUCT_SERIES,
    INTERLACING,
    RAYLEIGH_SUMS,
    SANDWICH,
    RADIUS_ZERO,
    GAMMA0_BOUNDS,
    F_EQUALS_G,
    MONOTONE,
    CONVEX_BELOW,
    SCALING,
    ON_CIRCLE,
    ORACLE,
];

/// Checks that need real zeros; skipped when the reality condition fails.
const ZERO_DEPENDENT: [&str; 11] = [
    EPSILON_LOCALIZATION,
    PRODUCT_SERIES,
    INTERLACING,
    RAYLEIGH_SUMS,
    SANDWICH,
    RADIUS_ZERO,
    MONOTONE,
    CONVEX_BELOW,
    SCALING,
    ON_CIRCLE,
    F_EQUALS_G,
];

pub const CIRCLE_SAMPLES: usize = 256;
const ZERO_TOL: f64 = 1e-13;
const ALPHA_LADDER: [f64; 4] = [0.0, 0.25, 0.5, 0.75];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyGrid {
    pub q_values: Vec<f64>,
    pub gamma_values: Vec<f64>,
    pub sigma_values: Vec<f64>,
    pub alpha_values: Vec<f64>,
}

impl Default for VerifyGrid {
    fn default() -> Self {
        VerifyGrid {
            q_values: vec![0.05, 0.1, 0.2, 0.3],
            gamma_values: vec![0.0, 0.5, 1.0, 1.5],
            sigma_values: vec![0.5, 1.0, 2.0],
            alpha_values: vec![0.0, 0.5],
        }
    }
}

impl VerifyGrid {
    /// All `(q, γ, σ)` combinations, q outermost.
    pub fn points(&self) -> Result<Vec<QmlParams>> {
        if self.q_values.is_empty()
            || self.gamma_values.is_empty()
            || self.sigma_values.is_empty()
            || self.alpha_values.is_empty()
        {
            return Err(QmlError::Domain("every grid axis needs at least one value".into()));
        }
        for &a in &self.alpha_values {
            RadiusQuery::new(NormalizedFamily::G, Property::Starlike, a)?;
        }
        let mut out = Vec::new();
        for &q in &self.q_values {
            for &g in &self.gamma_values {
                for &s in &self.sigma_values {
                    out.push(QmlParams::new(q, g, s)?);
                }
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CheckStatus {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "skipped(condition)")]
    SkippedCondition,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CheckPoint {
    pub q: f64,
    pub gamma: f64,
    pub sigma: f64,
    pub alpha: Option<f64>,
}

impl CheckPoint {
    fn of(p: &QmlParams, alpha: Option<f64>) -> Self {
        CheckPoint { q: p.q, gamma: p.gamma, sigma: p.sigma, alpha }
    }
}

/// One check outcome. `margin > 0` means the check passed with room to
/// spare: `tol - error` for tolerance checks, the relative gap for strict
/// inequalities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub subject: String,
    pub params: Option<CheckPoint>,
    pub status: CheckStatus,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    /// `check_id[subject] @ params` of the first failing record.
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub version: String,
    pub grid: VerifyGrid,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn first_failure(&self) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.status == CheckStatus::Fail)
    }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Worst case over several comparisons of one check.
struct Worst {
    id: &'static str,
    subject: String,
    at: CheckPoint,
    tol: f64,
    err: f64,
    lhs: f64,
    rhs: f64,
    detail: String,
}

impl Worst {
    /// Passes when every offered error is `<= tol`.
    fn tolerance(id: &'static str, subject: impl Into<String>, at: CheckPoint, tol: f64) -> Self {
        Worst {
            id,
            subject: subject.into(),
            at,
            tol,
            err: f64::NEG_INFINITY,
            lhs: f64::NAN,
            rhs: f64::NAN,
            detail: String::new(),
        }
    }

    /// Passes when every offered margin is `> 0`.
    fn strict(id: &'static str, subject: impl Into<String>, at: CheckPoint) -> Self {
        Worst::tolerance(id, subject, at, 0.0)
    }

    fn offer_err(&mut self, err: f64, lhs: f64, rhs: f64, detail: impl FnOnce() -> String) {
        if !(err <= self.err) {
            // NaN errors always win
            if !self.err.is_nan() {
                self.err = err;
                self.lhs = lhs;
                self.rhs = rhs;
                self.detail = detail();
            }
        }
    }

    fn offer_margin(&mut self, margin: f64, lhs: f64, rhs: f64, detail: impl FnOnce() -> String) {
        self.offer_err(-margin, lhs, rhs, detail)
    }

    fn finish(self) -> CheckRecord {
        let strict = self.tol == 0.0;
        let pass = if strict { self.err < 0.0 } else { self.err <= self.tol };
        CheckRecord {
            check_id: self.id.into(),
            subject: self.subject,
            params: Some(self.at),
            status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
            lhs: self.lhs,
            rhs: self.rhs,
            margin: self.tol - self.err,
            detail: self.detail,
        }
    }
}

fn error_record(id: &str, subject: &str, at: Option<CheckPoint>, e: &QmlError) -> CheckRecord {
    CheckRecord {
        check_id: id.into(),
        subject: subject.into(),
        params: at,
        status: CheckStatus::Fail,
        lhs: f64::NAN,
        rhs: f64::NAN,
        margin: f64::NAN,
        detail: e.to_string(),
    }
}

fn guard(id: &'static str, subject: &str, at: CheckPoint, f: impl FnOnce() -> Result<CheckRecord>) -> CheckRecord {
    f().unwrap_or_else(|e| error_record(id, subject, Some(at), &e))
}

fn label(f: NormalizedFamily, p: Property) -> String {
    format!("{} {}", f.name(), p.name())
}

const ALL_QUERIES: [(NormalizedFamily, Property); 6] = [
    (NormalizedFamily::F, Property::Starlike),
    (NormalizedFamily::G, Property::Starlike),
    (NormalizedFamily::H, Property::Starlike),
    (NormalizedFamily::F, Property::Convex),
    (NormalizedFamily::G, Property::Convex),
    (NormalizedFamily::H, Property::Convex),
];

const BOUNDED_QUERIES: [(NormalizedFamily, Property); 5] = [
    (NormalizedFamily::F, Property::Starlike),
    (NormalizedFamily::G, Property::Starlike),
    (NormalizedFamily::H, Property::Starlike),
    (NormalizedFamily::G, Property::Convex),
    (NormalizedFamily::H, Property::Convex),
];

/// Radius solver with memoized radii.
struct Radii {
    solver: RadiusSolver,
    cache: HashMap<(NormalizedFamily, Property, u64), f64>,
}

impl Radii {
    fn new(p: QmlParams) -> Result<Self> {
        Ok(Radii { solver: RadiusSolver::new(p, ZeroOptions { tol: ZERO_TOL, force: false })?, cache: HashMap::new() })
    }

    fn get(&mut self, f: NormalizedFamily, p: Property, alpha: f64) -> Result<f64> {
        let key = (f, p, alpha.to_bits());
        if let Some(&r) = self.cache.get(&key) {
            return Ok(r);
        }
        let r = self.solver.radius(RadiusQuery::new(f, p, alpha)?)?.value;
        self.cache.insert(key, r);
        Ok(r)
    }

    fn zeros(&mut self) -> &mut ZeroSet {
        self.solver.zeros()
    }
}

fn qgamma_check(p: &QmlParams, at: CheckPoint) -> Result<CheckRecord> {
    let b = p.base();
    let mut w = Worst::tolerance(QGAMMA, "", at, 1e-12);
    for x in [p.gamma + 0.25, p.gamma + 1.0, p.gamma + 1.5, 0.5, 1.7, 3.2] {
        let lhs = q_gamma(x + 1.0, b)?;
        let rhs = q_number(x, b) * q_gamma(x, b)?;
        w.offer_err(rel(lhs, rhs), lhs, rhs, || format!("recurrence at x = {x}"));
    }
    let mut factorial = 1.0;
    for n in 1..=10u32 {
        factorial *= q_number(n as f64, b);
        let lhs = q_gamma(n as f64 + 1.0, b)?;
        w.offer_err(rel(lhs, factorial), lhs, factorial, || format!("integer value at n = {n}"));
    }
    Ok(w.finish())
}

fn qtrig_check(p: &QmlParams, at: CheckPoint) -> Result<CheckRecord> {
    let b = p.base();
    let (q, s) = (p.q, p.sigma);
    let lam0 = QmlSeries::new(SeriesKind::Lambda, &QmlParams::new(q, 0.0, s)?);
    let lam1 = QmlSeries::new(SeriesKind::Lambda, &QmlParams::new(q, 1.0, s)?);
    let mut w = Worst::tolerance(QTRIG, "", at, 1e-12);
    for k in 1..=20 {
        let z = 0.2 * k as f64 / s;
        let lhs = lam0.eval_scaled(z, 0)?.to_f64();
        let rhs = q_trig(QTrig::Cos, s * z / q.sqrt(), b)?;
        w.offer_err((lhs - rhs).abs() / rhs.abs().max(1.0), lhs, rhs, || format!("cos reduction at z = {z}"));
        let arg = s * z / q;
        let lhs = lam1.eval_scaled(z, 0)?.to_f64() * arg;
        let rhs = q_trig(QTrig::Sin, arg, b)?;
        w.offer_err((lhs - rhs).abs() / rhs.abs().max(1.0), lhs, rhs, || format!("sin reduction at z = {z}"));
    }
    Ok(w.finish())
}

fn epsilon_check(p: &QmlParams, at: CheckPoint, r: &mut Radii) -> Result<CheckRecord> {
    let eps = r.zeros().get(ZeroKind::Epsilon, 10)?.zeros[..10].to_vec();
    if p.gamma_is_special() {
        let (which, scale) = if p.gamma == 0.0 { (QTrig::Cos, p.q.sqrt()) } else { (QTrig::Sin, p.q) };
        let trig = qtrig_zeros(which, p.base(), 10, ZERO_TOL)?;
        let mut w = Worst::tolerance(EPSILON_LOCALIZATION, "q-trig zeros", at, 1e-10);
        for (n, (e, t)) in eps.iter().zip(&trig).enumerate() {
            let rhs = scale * t / p.sigma;
            w.offer_err(rel(*e, rhs), *e, rhs, || format!("n = {}", n + 1));
        }
        Ok(w.finish())
    } else {
        let mut w = Worst::strict(EPSILON_LOCALIZATION, "closed-form intervals", at);
        for (i, &e) in eps.iter().enumerate() {
            let n = i + 1;
            let (lo, hi) = localization_interval(p, n)
                .ok_or_else(|| QmlError::Unsupported(format!("no closed-form interval for gamma = {}", p.gamma)))?;
            let (gap, nearest) = if e - lo < hi - e { (e - lo, lo) } else { (hi - e, hi) };
            w.offer_margin(gap / e, e, nearest, || format!("n = {n}, interval ({lo:.17e}, {hi:.17e})"));
        }
        Ok(w.finish())
    }
}

fn product_check(p: &QmlParams, at: CheckPoint, r: &mut Radii) -> Result<CheckRecord> {
    let seq = r.zeros().get(ZeroKind::Epsilon, 50)?.truncated(50);
    let lam = QmlSeries::new(SeriesKind::Lambda, p);
    let mut w = Worst::tolerance(PRODUCT_SERIES, "", at, 1e-8);
    for k in 1..=20 {
        let z = 0.9 * seq.zeros[0] * k as f64 / 20.0;
        let prod = lambda_via_product(&seq, z, 50)?.value;
        let series = lam.eval_scaled(z, 0)?.to_f64();
        w.offer_err(rel(prod, series), prod, series, || format!("z = {z}"));
    }
    Ok(w.finish())
}

fn interlacing_record(at: CheckPoint, r: &mut Radii) -> Result<CheckRecord> {
    let eps = r.zeros().get(ZeroKind::Epsilon, 10)?.truncated(10);
    let xi = r.zeros().get(ZeroKind::Xi, 10)?.truncated(10);
    let il = interlacing_check(&eps, &xi)?;
    let mut w = Worst::strict(INTERLACING, "xi < epsilon", at);
    let (margin, detail) = match il.first_violation {
        None => (1.0, "10 terms".to_string()),
        Some(n) => (-1.0, format!("first violation at n = {n}")),
    };
    w.offer_margin(margin, f64::NAN, f64::NAN, || detail);
    Ok(w.finish())
}

fn rayleigh_check(p: &QmlParams, at: CheckPoint, r: &mut Radii, kind: RayleighKind) -> Result<CheckRecord> {
    let seq = r.zeros().get(kind.zero_kind(), 30)?.truncated(30);
    let mut w = Worst::tolerance(RAYLEIGH_SUMS, kind.name(), at, 1e-8);
    for k in 1..=2 {
        let closed = closed_form_sum(kind, p, k)?;
        let num = numeric_sum(&seq, k, kind.convention())?;
        let err = ((closed - num.value).abs() - num.tail_bound).max(0.0) / closed.abs();
        w.offer_err(err, num.value, closed, || format!("k = {k}, tail bound {:.3e}", num.tail_bound));
    }
    Ok(w.finish())
}

fn sandwich_check(
    p: &QmlParams,
    at: CheckPoint,
    r: &mut Radii,
    f: NormalizedFamily,
    pr: Property,
) -> Result<CheckRecord> {
    let radius = r.get(f, pr, 0.0)?;
    let b = radius_bounds(f, pr, p)?;
    let v = b.quantity.of_radius(radius);
    let (gap, nearest) = if v - b.lower < b.upper - v { (v - b.lower, b.lower) } else { (b.upper - v, b.upper) };
    let mut w = Worst::strict(SANDWICH, label(f, pr), at);
    w.offer_margin(gap / v, v, nearest, || format!("{:?} in ({:.17e}, {:.17e})", b.quantity, b.lower, b.upper));
    Ok(w.finish())
}

fn radius_zero_check(
    at: CheckPoint,
    r: &mut Radii,
    f: NormalizedFamily,
    pr: Property,
    kind: ZeroKind,
) -> Result<CheckRecord> {
    let radius = r.get(f, pr, 0.0)?;
    let zero = r.zeros().first(kind)?;
    let mut w = Worst::tolerance(RADIUS_ZERO, label(f, pr), at, 1e-10);
    w.offer_err(rel(radius, zero), radius, zero, || format!("first {} zero", kind.name()));
    Ok(w.finish())
}

/// Closed-form γ = 0 bounds `(lower, upper)` in the native quantity of the
/// g/h queries.
fn gamma0_bounds(q: f64, sigma: f64, f: NormalizedFamily, pr: Property) -> (f64, f64) {
    let s2 = sigma * sigma;
    let num = (1.0 + q) * (1.0 + q * q) * (1.0 + q + q * q);
    let poly = |a: f64, b: f64, c: f64| a * q.powi(4) + a * q.powi(3) + b * q * q + c * q + c;
    match (f, pr) {
        (NormalizedFamily::H, Property::Starlike) => ((1.0 + q) / (2.0 * s2), num / (s2 * poly(2.0, 1.0, 2.0))),
        (NormalizedFamily::G, Property::Convex) => ((1.0 + q) / (9.0 * s2), 9.0 * num / (s2 * poly(81.0, 112.0, 81.0))),
        (NormalizedFamily::H, Property::Convex) => ((1.0 + q) / (4.0 * s2), 2.0 * num / (s2 * poly(8.0, 7.0, 8.0))),
        // f and g starlike share the r² bounds
        _ => ((1.0 + q) / (3.0 * s2), 3.0 * num / (s2 * poly(9.0, 8.0, 9.0))),
    }
}

fn gamma0_bounds_check(p: &QmlParams, at: CheckPoint, f: NormalizedFamily, pr: Property) -> Result<CheckRecord> {
    let b = radius_bounds(f, pr, p)?;
    let (lo, hi) = gamma0_bounds(p.q, p.sigma, f, pr);
    // f bounds are stated for r^{-2}
    let (lo, hi) = if f == NormalizedFamily::F { (1.0 / hi, 1.0 / lo) } else { (lo, hi) };
    let mut w = Worst::tolerance(GAMMA0_BOUNDS, label(f, pr), at, 1e-12);
    w.offer_err(rel(b.lower, lo), b.lower, lo, || "lower".into());
    w.offer_err(rel(b.upper, hi), b.upper, hi, || "upper".into());
    Ok(w.finish())
}

fn f_equals_g_check(at: CheckPoint, r: &mut Radii, alpha: f64) -> Result<CheckRecord> {
    let mut w = Worst::tolerance(F_EQUALS_G, "f vs g", at, 1e-10);
    for pr in Property::ALL {
        let (rf, rg) = (r.get(NormalizedFamily::F, pr, alpha)?, r.get(NormalizedFamily::G, pr, alpha)?);
        w.offer_err(rel(rf, rg), rf, rg, || pr.name().into());
    }
    Ok(w.finish())
}

fn monotone_check(at: CheckPoint, r: &mut Radii, f: NormalizedFamily, pr: Property) -> Result<CheckRecord> {
    let radii = ALPHA_LADDER.iter().map(|&a| r.get(f, pr, a)).collect::<Result<Vec<_>>>()?;
    let mut w = Worst::strict(MONOTONE, label(f, pr), at);
    for i in 0..radii.len() - 1 {
        let (a, b) = (radii[i], radii[i + 1]);
        w.offer_margin((a - b) / a, a, b, || format!("alpha {} -> {}", ALPHA_LADDER[i], ALPHA_LADDER[i + 1]));
    }
    Ok(w.finish())
}

fn convex_below_check(at: CheckPoint, r: &mut Radii, f: NormalizedFamily, alpha: f64) -> Result<CheckRecord> {
    let (rs, rc) = (r.get(f, Property::Starlike, alpha)?, r.get(f, Property::Convex, alpha)?);
    let mut w = Worst::strict(CONVEX_BELOW, f.name(), at);
    w.offer_margin((rs - rc) / rs, rc, rs, String::new);
    Ok(w.finish())
}

fn scaling_check(p: &QmlParams, at: CheckPoint, r: &mut Radii, other: &mut Radii, alpha: f64) -> Result<CheckRecord> {
    let s_other = other.solver.params().sigma;
    let mut w = Worst::tolerance(SCALING, "", at, 1e-10);
    for (f, pr) in ALL_QUERIES {
        let k = if f == NormalizedFamily::H { 2 } else { 1 };
        let lhs = r.get(f, pr, alpha)? * p.sigma.powi(k);
        let rhs = other.get(f, pr, alpha)? * s_other.powi(k);
        w.offer_err(rel(lhs, rhs), lhs, rhs, || format!("{} against sigma = {s_other}", label(f, pr)));
    }
    Ok(w.finish())
}

fn circle_check(at: CheckPoint, r: &mut Radii, f: NormalizedFamily, pr: Property, alpha: f64) -> Result<CheckRecord> {
    let radius = r.get(f, pr, alpha)?;
    let query = RadiusQuery::new(f, pr, alpha)?;
    let end = r.solver.domain_end(f, pr)?;
    let inner = r.solver.verify_on_circle(query, 0.99 * radius, CIRCLE_SAMPLES)?;
    let resolution = TAU / CIRCLE_SAMPLES as f64;
    let mut w = Worst::strict(ON_CIRCLE, label(f, pr), at);
    w.offer_margin(inner.min_real_part - alpha, inner.min_real_part, alpha, || {
        format!("inner circle minimum at angle {}", inner.witness_angle)
    });
    if inner.witness_angle.abs() > resolution {
        w.offer_margin(-1.0, inner.min_real_part, alpha, || {
            format!("inner circle minimum at angle {}, not 0", inner.witness_angle)
        });
    }
    let outer_r = 1.01 * radius;
    if outer_r < end {
        let outer = r.solver.verify_on_circle(query, outer_r, CIRCLE_SAMPLES)?;
        w.offer_margin(alpha - outer.min_real_part, outer.min_real_part, alpha, || "outer circle minimum".into());
    } else if w.detail.is_empty() {
        w.detail = "outer circle beyond the quotient's domain".into();
    }
    Ok(w.finish())
}

fn skipped(id: &str, at: CheckPoint, value: f64) -> CheckRecord {
    CheckRecord {
        check_id: id.into(),
        subject: String::new(),
        params: Some(at),
        status: CheckStatus::SkippedCondition,
        lhs: value,
        rhs: 1.0,
        margin: value - 1.0,
        detail: format!("reality condition value {value:.6} <= 1"),
    }
}

/// All checks for one `(q, γ, σ)`, in fixed order.
pub fn point_checks(p: &QmlParams, alphas: &[f64]) -> Vec<CheckRecord> {
    let at = CheckPoint::of(p, None);
    let mut out = vec![guard(QGAMMA, "", at, || qgamma_check(p, at)), guard(QTRIG, "", at, || qtrig_check(p, at))];
    if p.gamma == 0.0 {
        for (f, pr) in BOUNDED_QUERIES {
            out.push(guard(GAMMA0_BOUNDS, &label(f, pr), at, || gamma0_bounds_check(p, at, f, pr)));
        }
    }
    let reality = p.reality();
    if !reality.holds {
        out.extend(ZERO_DEPENDENT.iter().map(|id| skipped(id, at, reality.value)));
        return out;
    }
    let mut r = match Radii::new(*p) {
        Ok(r) => r,
        Err(e) => {
            out.extend(ZERO_DEPENDENT.iter().map(|id| error_record(id, "", Some(at), &e)));
            return out;
        }
    };
    out.push(guard(EPSILON_LOCALIZATION, "", at, || epsilon_check(p, at, &mut r)));
    out.push(guard(PRODUCT_SERIES, "", at, || product_check(p, at, &mut r)));
    out.push(guard(INTERLACING, "", at, || interlacing_record(at, &mut r)));
    for kind in RayleighKind::ALL {
        out.push(guard(RAYLEIGH_SUMS, kind.name(), at, || rayleigh_check(p, at, &mut r, kind)));
    }
    for (f, pr) in BOUNDED_QUERIES {
        out.push(guard(SANDWICH, &label(f, pr), at, || sandwich_check(p, at, &mut r, f, pr)));
    }
    for (f, pr, kind) in [
        (NormalizedFamily::G, Property::Starlike, ZeroKind::Theta),
        (NormalizedFamily::H, Property::Starlike, ZeroKind::VarSigma),
        (NormalizedFamily::G, Property::Convex, ZeroKind::Ell),
        (NormalizedFamily::H, Property::Convex, ZeroKind::Nu),
    ] {
        out.push(guard(RADIUS_ZERO, &label(f, pr), at, || radius_zero_check(at, &mut r, f, pr, kind)));
    }
    for (f, pr) in ALL_QUERIES {
        out.push(guard(MONOTONE, &label(f, pr), at, || monotone_check(at, &mut r, f, pr)));
    }
    let s_other = if p.sigma == 1.0 { 2.0 } else { 1.0 };
    let mut other = p.with_sigma(s_other).and_then(Radii::new);
    for &alpha in alphas {
        let at_a = CheckPoint::of(p, Some(alpha));
        if p.gamma == 0.0 {
            out.push(guard(F_EQUALS_G, "f vs g", at_a, || f_equals_g_check(at_a, &mut r, alpha)));
        }
        for f in NormalizedFamily::ALL {
            out.push(guard(CONVEX_BELOW, f.name(), at_a, || convex_below_check(at_a, &mut r, f, alpha)));
        }
        out.push(guard(SCALING, "", at_a, || match &mut other {
            Ok(o) => scaling_check(p, at_a, &mut r, o, alpha),
            Err(e) => Err(e.clone()),
        }));
        for (f, pr) in ALL_QUERIES {
            out.push(guard(ON_CIRCLE, &label(f, pr), at_a, || circle_check(at_a, &mut r, f, pr, alpha)));
        }
    }
    out
}

/// Reference values from a 40-digit computation.
struct Frozen {
    subject: &'static str,
    value: f64,
    tol: f64,
    compute: fn() -> Result<f64>,
}

fn p(q: f64, g: f64, s: f64) -> Result<QmlParams> {
    QmlParams::new(q, g, s)
}

fn frozen_values() -> Vec<Frozen> {
    use NormalizedFamily::*;
    use Property::*;
    vec![
        Frozen {
            subject: "(0.5; 0.5)_inf",
            value: 0.288_788_095_086_602_421_3,
            tol: 1e-12,
            compute: || Ok(q_pochhammer(0.5, QBase::new(0.5)?, Order::Infinite)),
        },
        Frozen {
            subject: "1/Gamma_q(1.5), q = 0.3",
            value: 1.062_178_662_619_664_130,
            tol: 1e-12,
            compute: || Ok(1.0 / q_gamma(1.5, QBase::new(0.3)?)?),
        },
        Frozen {
            subject: "E_{2,1}(-1; 0.2)",
            value: 0.188_184_442_389_837_975_1,
            tol: 1e-12,
            compute: || Ok(eval_generic_e(2.0, 1.0, -1.0, QBase::new(0.2)?, 1e-17)?.value),
        },
        Frozen {
            subject: "phi(0.3), (0.1, 0.5, 1)",
            value: 0.795_838_548_955_973_654_9,
            tol: 1e-12,
            compute: || {
                Ok(QmlSeries::new(SeriesKind::PhiSmall, &p(0.1, 0.5, 1.0)?)
                    .eval(0.3, 0, Tolerance::Absolute(1e-17))?
                    .value)
            },
        },
        Frozen {
            subject: "nu_1, (0.1, 0.5, 1)",
            value: 0.299_572_791_992_539_054_7,
            tol: 1e-11,
            compute: || crate::zeros::find_zeros(ZeroKind::Nu, &p(0.1, 0.5, 1.0)?, 2, ZERO_TOL).map(|s| s.zeros[0]),
        },
        Frozen {
            subject: "nu_2, (0.1, 0.5, 1)",
            value: 54.988_804_599_582_775_46,
            tol: 1e-11,
            compute: || crate::zeros::find_zeros(ZeroKind::Nu, &p(0.1, 0.5, 1.0)?, 2, ZERO_TOL).map(|s| s.zeros[1]),
        },
        Frozen {
            subject: "f convex radius, alpha 0.25, (0.1, 0.5, 1)",
            value: 0.390_550_127_486_345_384_5,
            tol: 1e-11,
            compute: || {
                crate::radii::radius(RadiusQuery::new(F, Convex, 0.25)?, &p(0.1, 0.5, 1.0)?, ZERO_TOL).map(|r| r.value)
            },
        },
        Frozen {
            subject: "f starlike radius, alpha 0.5, (0.1, 0.5, 1)",
            value: 0.571_413_965_310_660_148_6,
            tol: 1e-11,
            compute: || {
                crate::radii::radius(RadiusQuery::new(F, Starlike, 0.5)?, &p(0.1, 0.5, 1.0)?, ZERO_TOL).map(|r| r.value)
            },
        },
        Frozen {
            subject: "kappa_2, (0.1, 0.5, 1)",
            value: 3.783_552_294_978_127_222,
            tol: 1e-12,
            compute: || closed_form_sum(RayleighKind::Kappa, &p(0.1, 0.5, 1.0)?, 2),
        },
    ]
}

pub fn oracle_checks() -> Vec<CheckRecord> {
    frozen_values()
        .into_iter()
        .map(|fz| match (fz.compute)() {
            Ok(v) => {
                let err = rel(v, fz.value);
                CheckRecord {
                    check_id: ORACLE.into(),
                    subject: fz.subject.into(),
                    params: None,
                    status: if err <= fz.tol { CheckStatus::Pass } else { CheckStatus::Fail },
                    lhs: v,
                    rhs: fz.value,
                    margin: fz.tol - err,
                    detail: format!("relative tolerance {:e}", fz.tol),
                }
            }
            Err(e) => error_record(ORACLE, fz.subject, None, &e),
        })
        .collect()
}

/// Run the full suite. Records are ordered by grid point (q, then γ, then
/// σ), then by check, independent of `exec`.
pub fn run(grid: &VerifyGrid, exec: Execution) -> Result<VerificationReport> {
    let points = grid.points()?;
    let per_point = grid::map(exec, &points, |pt| point_checks(pt, &grid.alpha_values));
    let mut checks: Vec<CheckRecord> = per_point.into_iter().flatten().collect();
    checks.extend(oracle_checks());
    let count = |s: CheckStatus| checks.iter().filter(|c| c.status == s).count();
    let first_failure = checks.iter().find(|c| c.status == CheckStatus::Fail).map(describe);
    let summary = Summary {
        total: checks.len(),
        passed: count(CheckStatus::Pass),
        failed: count(CheckStatus::Fail),
        skipped: count(CheckStatus::SkippedCondition),
        first_failure,
    };
    Ok(VerificationReport { version: REPORT_VERSION.into(), grid: grid.clone(), checks, summary })
}

/// `check_id[subject] @ (q, γ, σ[, α])`.
pub fn describe(c: &CheckRecord) -> String {
    let mut s = c.check_id.clone();
    if !c.subject.is_empty() {
        s += &format!("[{}]", c.subject);
    }
    if let Some(p) = c.params {
        s += &format!(" @ q={} gamma={} sigma={}", p.q, p.gamma, p.sigma);
        if let Some(a) = p.alpha {
            s += &format!(" alpha={a}");
        }
    }
    s
}
