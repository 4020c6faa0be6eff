//! Positive zeros of λ and the derived functions, with certified brackets.
//!
//! Epsilon zeros come from the closed-form intervals `(q^{-n+3/2}K, q^{-n+1/2}K)`
//! (γ ∈ (0,1)) and `(q^{-n+5/2}K, q^{-n+3/2}K)` (γ ∈ (1,2)), each accepted
//! only after a sign-parity check: λ has sign `(-1)^{n-1}` on
//! `(ε_{n-1}, ε_n)`. For γ ∈ (1,2) the stated interval fails that check;
//! the zeros sit one index lower, in the γ ∈ (0,1) interval, which is tried
//! next. A geometric scan is the last resort and the only method for
//! γ ∈ {0, 1}. Derived kinds are bracketed between consecutive zeros of the
//! function they are the derivative of (Rolle).

use crate::error::{QmlError, Result};
use crate::mlseries::{QmlParams, QmlSeries, SeriesKind};
use crate::qcore::{q_number, QBase, QTrig, QTrigSeries};
use crate::roots::refine_root_with;
use crate::series::Scaled;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

pub const DEFAULT_TOL: f64 = 1e-12;

/// Which zero family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZeroKind {
    /// Zeros of λ.
    Epsilon,
    /// Zeros of Ψ' (of `(γ+1)λ + zλ'`).
    Xi,
    /// Zeros of φ = (zλ)'.
    Theta,
    /// Zeros of ϕ(w) = (wλ(√w))', in the variable `w`.
    VarSigma,
    /// Zeros of (zg')'.
    Ell,
    /// Zeros of (zh')', in the variable `w`.
    Nu,
}

/// Variable in which a zero family is reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variable {
    Z,
    /// `w = z²`.
    W,
}

impl ZeroKind {
    pub const ALL: [ZeroKind; 6] =
        [ZeroKind::Epsilon, ZeroKind::Xi, ZeroKind::Theta, ZeroKind::VarSigma, ZeroKind::Ell, ZeroKind::Nu];

    pub fn series_kind(self) -> SeriesKind {
        match self {
            ZeroKind::Epsilon => SeriesKind::Lambda,
            ZeroKind::Xi => SeriesKind::PsiPrimeReduced,
            ZeroKind::Theta => SeriesKind::PhiSmall,
            ZeroKind::VarSigma => SeriesKind::VarPhi,
            ZeroKind::Ell => SeriesKind::BigPhi,
            ZeroKind::Nu => SeriesKind::PsiSmall,
        }
    }

    pub fn variable(self) -> Variable {
        match self {
            ZeroKind::VarSigma | ZeroKind::Nu => Variable::W,
            _ => Variable::Z,
        }
    }

    /// The family whose consecutive zeros bracket this one.
    pub fn parent(self) -> Option<ZeroKind> {
        match self {
            ZeroKind::Epsilon => None,
            ZeroKind::Xi | ZeroKind::Theta | ZeroKind::VarSigma => Some(ZeroKind::Epsilon),
            ZeroKind::Ell => Some(ZeroKind::Theta),
            ZeroKind::Nu => Some(ZeroKind::VarSigma),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ZeroKind::Epsilon => "epsilon",
            ZeroKind::Xi => "xi",
            ZeroKind::Theta => "theta",
            ZeroKind::VarSigma => "varsigma",
            ZeroKind::Ell => "ell",
            ZeroKind::Nu => "nu",
        }
    }
}

/// How a bracket was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BracketOrigin {
    /// The closed-form interval as stated.
    ClosedFormInterval,
    /// The closed-form interval with the index shifted by one.
    ShiftedInterval,
    /// Geometric scan for sign changes.
    Scan,
    /// Between consecutive zeros of the parent family.
    Rolle,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub sign_change_certified: bool,
    pub origin: BracketOrigin,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroOptions {
    /// Relative tolerance of each refined zero.
    pub tol: f64,
    /// Proceed when the reality condition fails.
    pub force: bool,
}

impl Default for ZeroOptions {
    fn default() -> Self {
        ZeroOptions { tol: DEFAULT_TOL, force: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroSequence {
    pub kind: ZeroKind,
    pub params: QmlParams,
    pub zeros: Vec<f64>,
    pub brackets: Vec<Bracket>,
    /// `|f(x)| / (|f'(x)| x)` at each zero.
    pub residuals: Vec<f64>,
    pub tol: f64,
    /// False when computed under `force` with the reality condition failing.
    pub reality_verified: bool,
}

impl ZeroSequence {
    pub fn variable(&self) -> Variable {
        self.kind.variable()
    }

    /// The first `n` zeros (all of them if fewer).
    pub fn truncated(&self, n: usize) -> ZeroSequence {
        let n = n.min(self.zeros.len());
        ZeroSequence {
            zeros: self.zeros[..n].to_vec(),
            brackets: self.brackets[..n].to_vec(),
            residuals: self.residuals[..n].to_vec(),
            ..self.clone()
        }
    }

    /// Zeros expressed in the variable `v`.
    pub fn zeros_in(&self, v: Variable) -> Vec<f64> {
        match (self.variable(), v) {
            (Variable::Z, Variable::W) => self.zeros.iter().map(|x| x * x).collect(),
            (Variable::W, Variable::Z) => self.zeros.iter().map(|x| x.sqrt()).collect(),
            _ => self.zeros.clone(),
        }
    }
}

/// `K = √((1-q^{γ+1})(1-q^{γ+2})) / (σ(1-q))`.
pub fn localization_constant(params: &QmlParams) -> f64 {
    let (q, g) = (params.q, params.gamma);
    ((1.0 - q.powf(g + 1.0)) * (1.0 - q.powf(g + 2.0))).sqrt() / (params.sigma * (1.0 - q))
}

/// The stated closed-form interval for the n-th zero of λ, or `None` for γ ∈ {0, 1}.
pub fn localization_interval(params: &QmlParams, n: usize) -> Option<(f64, f64)> {
    let k = localization_constant(params);
    let q = params.q;
    let n = n as f64;
    let g = params.gamma;
    if g > 0.0 && g < 1.0 {
        Some((q.powf(-n + 1.5) * k, q.powf(-n + 0.5) * k))
    } else if g > 1.0 && g < 2.0 {
        Some((q.powf(-n + 2.5) * k, q.powf(-n + 1.5) * k))
    } else {
        None
    }
}

fn shifted_interval(params: &QmlParams, n: usize) -> Option<(f64, f64)> {
    if params.gamma > 1.0 && params.gamma < 2.0 {
        let k = localization_constant(params);
        let n = n as f64;
        Some((params.q.powf(-n + 1.5) * k, params.q.powf(-n + 0.5) * k))
    } else {
        None
    }
}

/// Sign-exact evaluation of one series at a real point.
pub(crate) fn signed(s: &QmlSeries, x: f64) -> Result<f64> {
    Ok(s.eval_scaled(x, 0)?.mantissa)
}

/// Scan `x_{k+1} = ratio · x_k` from `start` until `count` sign changes are found.
fn scan_sign_changes(
    mut f: impl FnMut(f64) -> Result<f64>,
    start: f64,
    ratio: f64,
    count: usize,
    what: &str,
) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::with_capacity(count);
    let mut a = start;
    let mut fa = f(a)?;
    let max_steps = 64 + count * (8 + (4.0 * ratio.ln().recip()).ceil() as usize);
    for _ in 0..max_steps {
        if out.len() >= count {
            break;
        }
        let b = a * ratio;
        let fb = f(b)?;
        if fa * fb < 0.0 || (fb == 0.0 && fa != 0.0) {
            out.push((a, b));
        }
        if fb != 0.0 {
            a = b;
            fa = fb;
        } else {
            a = b * ratio.sqrt();
            fa = f(a)?;
        }
    }
    if out.len() < count {
        return Err(QmlError::BracketFailure { what: what.into(), lo: start, hi: a });
    }
    Ok(out)
}

/// Lower bound for ε₁: below it the terms of λ decrease in modulus from the
/// first one, so λ > 0.
fn epsilon_scan_start(params: &QmlParams) -> f64 {
    let b = params.base();
    0.999 * (q_number(params.gamma + 1.0, b) * q_number(params.gamma + 2.0, b)).sqrt() / params.sigma
}

fn scan_ratio(q: f64) -> f64 {
    q.powf(-0.25)
}

struct EpsilonLocator<'a> {
    lambda: &'a QmlSeries,
    params: QmlParams,
    scanned: Vec<(f64, f64)>,
}

impl<'a> EpsilonLocator<'a> {
    fn parity_ok(&self, n: usize, lo: f64, hi: f64) -> Result<bool> {
        let expect = if n % 2 == 1 { 1.0 } else { -1.0 };
        let a = signed(self.lambda, lo)?;
        let b = signed(self.lambda, hi)?;
        Ok(a.signum() == expect && b.signum() == -expect)
    }

    fn scanned(&mut self, n: usize) -> Result<(f64, f64)> {
        if self.scanned.len() < n {
            let lambda = self.lambda;
            self.scanned = scan_sign_changes(
                |x| signed(lambda, x),
                epsilon_scan_start(&self.params),
                scan_ratio(self.params.q),
                n.max(2 * self.scanned.len()),
                "epsilon",
            )?;
        }
        Ok(self.scanned[n - 1])
    }

    fn bracket(&mut self, n: usize) -> Result<Bracket> {
        if let Some((lo, hi)) = localization_interval(&self.params, n) {
            if self.parity_ok(n, lo, hi)? {
                return Ok(Bracket { lo, hi, sign_change_certified: true, origin: BracketOrigin::ClosedFormInterval });
            }
        }
        if let Some((lo, hi)) = shifted_interval(&self.params, n) {
            if self.parity_ok(n, lo, hi)? {
                return Ok(Bracket { lo, hi, sign_change_certified: true, origin: BracketOrigin::ShiftedInterval });
            }
        }
        let (lo, hi) = self.scanned(n)?;
        Ok(Bracket { lo, hi, sign_change_certified: true, origin: BracketOrigin::Scan })
    }
}

/// A certified bracket for the n-th positive zero of λ (n >= 1).
pub fn epsilon_bracket(params: &QmlParams, n: usize) -> Result<Bracket> {
    epsilon_bracket_opts(params, n, false)
}

pub fn epsilon_bracket_opts(params: &QmlParams, n: usize, force: bool) -> Result<Bracket> {
    if n == 0 {
        return Err(QmlError::Domain("zero index starts at 1".into()));
    }
    params.require_reality(force)?;
    let lambda = QmlSeries::new(SeriesKind::Lambda, params);
    EpsilonLocator { lambda: &lambda, params: *params, scanned: Vec::new() }.bracket(n)
}

fn refine_in(s: &QmlSeries, br: Bracket, tol: f64) -> Result<(f64, f64)> {
    let flo = signed(s, br.lo)?;
    let fhi = signed(s, br.hi)?;
    let r = refine_root_with(|x| signed(s, x), br.lo, flo, br.hi, fhi, tol).map_err(|e| match e {
        QmlError::BracketFailure { lo, hi, .. } => QmlError::BracketFailure { what: format!("{:?}", s.kind()), lo, hi },
        e => e,
    })?;
    Ok((r.root, residual(s, r.root)?))
}

/// `|f(x)| / (|f'(x)| · x)`, a relative-step residual.
pub(crate) fn residual(s: &QmlSeries, x: f64) -> Result<f64> {
    let f: Scaled = s.eval_scaled(x, 0)?;
    let d: Scaled = s.eval_scaled(x, 1)?;
    Ok((f.ratio(d) / x).abs())
}

fn validate(count: usize, opts: &ZeroOptions) -> Result<()> {
    if count == 0 {
        return Err(QmlError::Domain("count must be positive".into()));
    }
    if !(opts.tol > 0.0 && opts.tol < 1.0) {
        return Err(QmlError::Domain(format!("tolerance must lie in (0, 1), got {}", opts.tol)));
    }
    Ok(())
}

fn epsilon_sequence(params: &QmlParams, count: usize, opts: &ZeroOptions, verified: bool) -> Result<ZeroSequence> {
    let lambda = QmlSeries::new(SeriesKind::Lambda, params);
    let mut loc = EpsilonLocator { lambda: &lambda, params: *params, scanned: Vec::new() };
    let mut zeros = Vec::with_capacity(count);
    let mut brackets = Vec::with_capacity(count);
    let mut residuals = Vec::with_capacity(count);
    for n in 1..=count {
        let br = loc.bracket(n)?;
        let (x, res) = refine_in(&lambda, br, opts.tol)?;
        zeros.push(x);
        brackets.push(br);
        residuals.push(res);
    }
    Ok(ZeroSequence {
        kind: ZeroKind::Epsilon,
        params: *params,
        zeros,
        brackets,
        residuals,
        tol: opts.tol,
        reality_verified: verified,
    })
}

/// Zeros of a derived kind bracketed by consecutive zeros of its parent.
fn rolle_sequence(kind: ZeroKind, parent: &ZeroSequence, count: usize, opts: &ZeroOptions) -> Result<ZeroSequence> {
    let params = parent.params;
    let s = QmlSeries::new(kind.series_kind(), &params);
    let ends = parent.zeros_in(kind.variable());
    if ends.len() < count {
        return Err(QmlError::InsufficientZeros { needed: count, got: ends.len() });
    }
    let mut zeros = Vec::with_capacity(count);
    let mut brackets = Vec::with_capacity(count);
    let mut residuals = Vec::with_capacity(count);
    for n in 0..count {
        let lo = if n == 0 { ends[0] * 1e-9 } else { ends[n - 1] };
        let hi = ends[n];
        let certified = signed(&s, lo)? * signed(&s, hi)? < 0.0;
        let br = Bracket { lo, hi, sign_change_certified: certified, origin: BracketOrigin::Rolle };
        if !certified {
            return Err(QmlError::BracketFailure { what: kind.name().into(), lo, hi });
        }
        let (x, res) = refine_in(&s, br, opts.tol)?;
        zeros.push(x);
        brackets.push(br);
        residuals.push(res);
    }
    Ok(ZeroSequence {
        kind,
        params,
        zeros,
        brackets,
        residuals,
        tol: opts.tol,
        reality_verified: parent.reality_verified,
    })
}

/// The first `count` positive zeros of `kind`, refined to relative `tol`.
pub fn find_zeros(kind: ZeroKind, params: &QmlParams, count: usize, tol: f64) -> Result<ZeroSequence> {
    find_zeros_opts(kind, params, count, &ZeroOptions { tol, force: false })
}

pub fn find_zeros_opts(kind: ZeroKind, params: &QmlParams, count: usize, opts: &ZeroOptions) -> Result<ZeroSequence> {
    let mut set = ZeroSet::new(*params, *opts)?;
    Ok(set.get(kind, count)?.clone())
}

/// Lazily computed zero families for one parameter set, sharing parents.
#[derive(Debug, Clone)]
pub struct ZeroSet {
    params: QmlParams,
    opts: ZeroOptions,
    verified: bool,
    cache: HashMap<ZeroKind, ZeroSequence>,
}

impl ZeroSet {
    pub fn new(params: QmlParams, opts: ZeroOptions) -> Result<Self> {
        let verified = params.require_reality(opts.force)?;
        Ok(ZeroSet { params, opts, verified, cache: HashMap::new() })
    }

    pub fn params(&self) -> &QmlParams {
        &self.params
    }

    /// At least `count` zeros of `kind` (more if already cached).
    pub fn get(&mut self, kind: ZeroKind, count: usize) -> Result<&ZeroSequence> {
        validate(count, &self.opts)?;
        let have = self.cache.get(&kind).map_or(0, |s| s.zeros.len());
        if have < count {
            let seq = match kind.parent() {
                None => epsilon_sequence(&self.params, count, &self.opts, self.verified)?,
                Some(p) => {
                    let parent = self.get(p, count)?.clone();
                    rolle_sequence(kind, &parent, count, &self.opts)?
                }
            };
            self.cache.insert(kind, seq);
        }
        Ok(&self.cache[&kind])
    }

    /// The first zero of `kind`.
    pub fn first(&mut self, kind: ZeroKind) -> Result<f64> {
        Ok(self.get(kind, 1)?.zeros[0])
    }
}

/// Result of an interlacing check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Interlacing {
    pub interlaced: bool,
    /// 1-based index n of the first failing link `b_n < a_n < b_{n+1}`.
    pub first_violation: Option<usize>,
}

/// True iff `b₁ < a₁ < b₂ < a₂ < …` strictly. A sequence in `z` is squared
/// when compared against one in `w = z²`.
pub fn interlacing_check(a: &ZeroSequence, b: &ZeroSequence) -> Result<Interlacing> {
    if a.params != b.params {
        return Err(QmlError::MismatchedParams);
    }
    if a.zeros.len().abs_diff(b.zeros.len()) > 1 {
        return Err(QmlError::Domain(format!(
            "sequence lengths {} and {} differ by more than one",
            a.zeros.len(),
            b.zeros.len()
        )));
    }
    let v = if a.variable() == b.variable() { a.variable() } else { Variable::W };
    let (xa, xb) = (a.zeros_in(v), b.zeros_in(v));
    for n in 0..xa.len().max(xb.len()) {
        let link_ok = match (xb.get(n), xa.get(n), xb.get(n + 1)) {
            (Some(bn), Some(an), Some(bn1)) => bn < an && an < bn1,
            (Some(bn), Some(an), None) => bn < an,
            _ => true,
        };
        if !link_ok {
            return Ok(Interlacing { interlaced: false, first_violation: Some(n + 1) });
        }
    }
    Ok(Interlacing { interlaced: true, first_violation: None })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LogDerivKind {
    /// λ'/λ.
    Lambda,
    /// Ψ'/Ψ with Ψ = z^{γ+1}λ.
    Psi,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogDeriv {
    pub value: f64,
    /// Bound on the omitted part of the zero expansion.
    pub tail_bound: f64,
}

/// Logarithmic derivative from the zero expansion
/// `λ'/λ = Σ 2z/(z² - ε_n²)`, truncated after `n_terms` zeros.
///
/// Tail bound: `ε_{N+j} >= ε_N q^{-(j-1)}` gives
/// `Σ_{n>N} 2|z|/(ε_n² - z²) <= 2|z| / ((ε_N² - z²)(1 - q²))` for `|z| < ε_N`.
pub fn logderiv_via_zeros(kind: LogDerivKind, seq: &ZeroSequence, z: f64, n_terms: usize) -> Result<LogDeriv> {
    if seq.kind != ZeroKind::Epsilon {
        return Err(QmlError::Domain(format!("expansion needs epsilon zeros, got {}", seq.kind.name())));
    }
    if n_terms == 0 || n_terms > seq.zeros.len() {
        return Err(QmlError::InsufficientZeros { needed: n_terms.max(1), got: seq.zeros.len() });
    }
    if !z.is_finite() {
        return Err(QmlError::Domain(format!("argument must be finite, got {z}")));
    }
    let zeros = &seq.zeros[..n_terms];
    if zeros.iter().any(|e| e.abs() == z.abs()) {
        return Err(QmlError::Pole(z));
    }
    let mut acc = crate::sum::NeumaierSum::new();
    for e in zeros {
        acc += 2.0 * z / ((z - e) * (z + e));
    }
    let mut value = acc.value();
    if kind == LogDerivKind::Psi {
        if z == 0.0 {
            return Err(QmlError::Pole(0.0));
        }
        value += (seq.params.gamma + 1.0) / z;
    }
    let last = zeros[n_terms - 1];
    let q = seq.params.q;
    let tail_bound =
        if z.abs() < last { 2.0 * z.abs() / ((last * last - z * z) * (1.0 - q * q)) } else { f64::INFINITY };
    Ok(LogDeriv { value, tail_bound })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProductEval {
    pub value: f64,
    /// Bound on `|value - λ(z)|` coming from the omitted factors.
    pub tail_bound: f64,
}

/// `λ(z)` from the factorization `λ(z) = ∏ (1 - z²/ε_n²) / Γ_q(γ+1)` using the
/// first `n_factors` zeros.
///
/// The omitted factors lie in `[exp(-T), 1]` with
/// `T = z²/(ε_N² - z²) / (1 - q²)`. They are replaced by the estimate
/// `exp(-z² q²/(ε_N²(1 - q²)))`, which lies in the same interval.
pub fn lambda_via_product(seq: &ZeroSequence, z: f64, n_factors: usize) -> Result<ProductEval> {
    if seq.kind != ZeroKind::Epsilon {
        return Err(QmlError::Domain(format!("product needs epsilon zeros, got {}", seq.kind.name())));
    }
    if n_factors == 0 || n_factors > seq.zeros.len() {
        return Err(QmlError::InsufficientZeros { needed: n_factors.max(1), got: seq.zeros.len() });
    }
    let last = seq.zeros[n_factors - 1];
    if !(z.abs() < last) {
        return Err(QmlError::Domain(format!("|z| = {} must be below the last zero used, {last}", z.abs())));
    }
    let (q, g) = (seq.params.q, seq.params.gamma);
    let lead = crate::qcore::recip_q_gamma_ext(g + 1.0, seq.params.base()).to_f64();
    let mut prod = lead;
    for e in &seq.zeros[..n_factors] {
        prod *= (1.0 - z / e) * (1.0 + z / e);
    }
    let ratio = (z / last).powi(2);
    let worst = ratio / (1.0 - ratio) / (1.0 - q * q);
    let estimate = (-ratio * q * q / (1.0 - q * q)).exp();
    Ok(ProductEval { value: prod * estimate, tail_bound: prod.abs() * -(-worst).exp_m1() })
}

/// Positive zeros of `cos(w;q)` or `sin(w;q)` by geometric scan and refinement.
pub fn qtrig_zeros(which: QTrig, base: QBase, count: usize, tol: f64) -> Result<Vec<f64>> {
    let s = QTrigSeries::new(which, base);
    let q = base.value();
    // below these points the first term dominates and the series is positive
    let start = match which {
        QTrig::Cos => (q_number(1.0, base) * q_number(2.0, base) / q).sqrt(),
        QTrig::Sin => (q_number(2.0, base) * q_number(3.0, base)).sqrt() / q,
    } * 0.999;
    let f = |w: f64| -> Result<f64> { Ok(s.eval_scaled(w)?.mantissa) };
    let cells = scan_sign_changes(f, start, scan_ratio(q), count, "q-trig")?;
    cells.into_iter().map(|(lo, hi)| Ok(refine_root_with(f, lo, f(lo)?, hi, f(hi)?, tol)?.root)).collect()
}
