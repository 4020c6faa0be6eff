//! Bracketed root refinement: secant steps when they land inside the
//! bracket and make progress, bisection otherwise (Dekker's scheme).

use crate::error::{QmlError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult {
    pub root: f64,
    /// Final bracket; always contains a sign change.
    pub lo: f64,
    pub hi: f64,
    pub iterations: usize,
}

const MAX_ITER: usize = 400;

/// Find a root of `f` in `[lo, hi]` to relative tolerance `rel_tol`.
/// Requires `f(lo)` and `f(hi)` of opposite sign (or one of them zero).
pub fn refine_root<F>(mut f: F, lo: f64, hi: f64, rel_tol: f64) -> Result<RootResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    let fl = f(lo)?;
    let fh = f(hi)?;
    refine_root_with(f, lo, fl, hi, fh, rel_tol)
}

/// As [`refine_root`] with the endpoint values already known.
pub fn refine_root_with<F>(mut f: F, lo: f64, flo: f64, hi: f64, fhi: f64, rel_tol: f64) -> Result<RootResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(lo < hi) || !(rel_tol > 0.0) {
        return Err(QmlError::Domain(format!("invalid bracket ({lo}, {hi}) or tolerance {rel_tol}")));
    }
    if flo == 0.0 {
        return Ok(RootResult { root: lo, lo, hi: lo, iterations: 0 });
    }
    if fhi == 0.0 {
        return Ok(RootResult { root: hi, lo: hi, hi, iterations: 0 });
    }
    if flo.signum() == fhi.signum() || flo.is_nan() || fhi.is_nan() {
        return Err(QmlError::BracketFailure { what: "root".into(), lo, hi });
    }
    // b: best estimate, a: contrapoint, c: previous b
    let (mut a, mut fa, mut b, mut fb) = (lo, flo, hi, fhi);
    let (mut c, mut fc) = (a, fa);
    let mut width = (b - a).abs();
    let mut slow = 0;
    for it in 1..=MAX_ITER {
        if fa.abs() < fb.abs() {
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut fa, &mut fb);
        }
        let m = 0.5 * (a + b);
        let tol = rel_tol * b.abs().max(f64::MIN_POSITIVE) + 4.0 * f64::EPSILON * b.abs();
        if (m - b).abs() <= tol {
            return Ok(RootResult { root: b, lo: a.min(b), hi: a.max(b), iterations: it });
        }
        let secant = if fb != fc { b - fb * (b - c) / (fb - fc) } else { m };
        let between = (secant - b) * (secant - m) < 0.0;
        let mut s = if between && slow < 3 { secant } else { m };
        if (s - b).abs() < tol {
            s = b + tol.copysign(m - b);
        }
        c = b;
        fc = fb;
        b = s;
        fb = f(b)?;
        if fb == 0.0 {
            return Ok(RootResult { root: b, lo: b, hi: b, iterations: it });
        }
        if fb.signum() == fa.signum() {
            a = c;
            fa = fc;
        }
        let w = (b - a).abs();
        if w > 0.5 * width {
            slow += 1;
        } else {
            slow = 0;
            width = w;
        }
    }
    Err(QmlError::NonConvergence { tol: rel_tol, max_terms: MAX_ITER })
}
