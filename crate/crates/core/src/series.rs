//! Certified summation of power series whose term ratios are eventually
//! non-increasing.
//!
//! Stopping rule: at the first `N` past `certify_from` with
//! `r = |t_{N+1}/t_N| < 1/2` and `|t_{N+1}| <= (1 - r) * tol`, the tail is
//! majorized by the geometric series `|t_{N+1}| / (1 - r)`.

use crate::error::{QmlError, Result};
use crate::sum::{pow2, ComplexSum, Ext, NeumaierSum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub const DEFAULT_MAX_TERMS: usize = 10_000;

/// Truncation tolerance for a series evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Tolerance {
    /// Tail bound at most this absolute value.
    Absolute(f64),
    /// Tail bound at most this multiple of the largest term.
    RelativeToPeak(f64),
}

impl Tolerance {
    pub fn validate(self) -> Result<Self> {
        let t = match self {
            Tolerance::Absolute(t) | Tolerance::RelativeToPeak(t) => t,
        };
        if t > 0.0 && t.is_finite() {
            Ok(self)
        } else {
            Err(QmlError::Domain(format!("tolerance must be positive and finite, got {t}")))
        }
    }
}

/// A value `mantissa * 2^exp2`, where the mantissa is the sum divided by the
/// binary scale of its largest term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub mantissa: f64,
    pub exp2: i64,
}

impl Scaled {
    pub fn signum(self) -> f64 {
        if self.mantissa == 0.0 {
            0.0
        } else {
            self.mantissa.signum()
        }
    }

    pub fn to_f64(self) -> f64 {
        self.to_ext().to_f64()
    }

    pub fn to_ext(self) -> Ext {
        Ext::from_parts(self.mantissa, self.exp2)
    }

    /// `self / other`, safe when both are far outside the `f64` range.
    pub fn ratio(self, other: Scaled) -> f64 {
        let k = self.exp2 - other.exp2;
        let m = self.mantissa / other.mantissa;
        if k.abs() < 1000 {
            m * pow2(k)
        } else {
            Ext::from_parts(m, k).to_f64()
        }
    }

    pub fn abs(self) -> Scaled {
        Scaled { mantissa: self.mantissa.abs(), exp2: self.exp2 }
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Summed {
    pub scaled: Scaled,
    pub tail: Ext,
    pub terms: usize,
}

fn tol_abs(tol: Tolerance, peak: Ext) -> Ext {
    match tol {
        Tolerance::Absolute(t) => Ext::new(t),
        Tolerance::RelativeToPeak(t) => peak * t,
    }
}

/// Sum `t_0 + t_1 + ...` where `term(n)` gives `t_n` and `|t_{n+1}/t_n|` is
/// non-increasing for `n >= certify_from`.
pub(crate) fn sum_real(
    certify_from: usize,
    mut term: impl FnMut(usize) -> Ext,
    tol: Tolerance,
    max_terms: usize,
) -> Result<Summed> {
    let tol_value = match tol.validate()? {
        Tolerance::Absolute(t) | Tolerance::RelativeToPeak(t) => t,
    };
    let mut terms: Vec<Ext> = Vec::with_capacity(64);
    let mut peak = Ext::ZERO;
    let mut cur = term(0);
    let mut n = 0usize;
    let tail = loop {
        if n >= max_terms {
            return Err(QmlError::NonConvergence { tol: tol_value, max_terms });
        }
        let next = term(n + 1);
        terms.push(cur);
        peak = peak.max_abs(cur);
        if n >= certify_from {
            if cur.is_zero() {
                if next.is_zero() {
                    break Ext::ZERO;
                }
            } else {
                let r = next.abs().ratio(cur.abs());
                if r < 0.5 {
                    let bound = tol_abs(tol, peak) * (1.0 - r);
                    if next.cmp_abs(bound) != std::cmp::Ordering::Greater {
                        break next.abs() * (1.0 / (1.0 - r));
                    }
                }
            }
        }
        cur = next;
        n += 1;
    };
    let shift = peak.exponent();
    let acc: NeumaierSum = terms.iter().map(|t| t.scaled(shift)).collect();
    Ok(Summed { scaled: Scaled { mantissa: acc.value(), exp2: shift }, tail, terms: terms.len() })
}

/// Complex analogue of [`sum_real`]; `term(n)` returns `(|t_n|, t_n / |t_n|)`.
pub(crate) fn sum_complex(
    certify_from: usize,
    mut term: impl FnMut(usize) -> (Ext, Complex64),
    tol: Tolerance,
    max_terms: usize,
) -> Result<(Complex64, i64, Ext, usize)> {
    let tol_value = match tol.validate()? {
        Tolerance::Absolute(t) | Tolerance::RelativeToPeak(t) => t,
    };
    let mut terms = Vec::with_capacity(64);
    let mut peak = Ext::ZERO;
    let mut cur = term(0);
    let mut n = 0usize;
    let tail = loop {
        if n >= max_terms {
            return Err(QmlError::NonConvergence { tol: tol_value, max_terms });
        }
        let next = term(n + 1);
        terms.push(cur);
        peak = peak.max_abs(cur.0);
        if n >= certify_from {
            if cur.0.is_zero() {
                if next.0.is_zero() {
                    break Ext::ZERO;
                }
            } else {
                let r = next.0.ratio(cur.0);
                if r < 0.5 {
                    let bound = tol_abs(tol, peak) * (1.0 - r);
                    if next.0.cmp_abs(bound) != std::cmp::Ordering::Greater {
                        break next.0 * (1.0 / (1.0 - r));
                    }
                }
            }
        }
        cur = next;
        n += 1;
    };
    let shift = peak.exponent();
    let mut acc = ComplexSum::default();
    for (mag, phase) in &terms {
        acc += phase * mag.scaled(shift);
    }
    Ok((acc.value(), shift, tail, terms.len()))
}
