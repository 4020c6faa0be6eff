//! q-Pochhammer symbols, the q-gamma function, q-numbers and the
//! q-trigonometric series.

use crate::error::{QmlError, Result};
use crate::series::{sum_real, Scaled, Tolerance, DEFAULT_MAX_TERMS};
use crate::sum::Ext;
use crate::EvalResult;
use serde::{Deserialize, Serialize};

/// The base `q`, restricted to the open interval (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct QBase(f64);

impl QBase {
    pub fn new(q: f64) -> Result<Self> {
        if q > 0.0 && q < 1.0 {
            Ok(QBase(q))
        } else {
            Err(QmlError::Domain(format!("q must lie in (0, 1), got {q}")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn ln(self) -> f64 {
        self.0.ln()
    }

    /// `q^x`.
    pub fn pow(self, x: f64) -> f64 {
        (x * self.0.ln()).exp()
    }
}

impl TryFrom<f64> for QBase {
    type Error = QmlError;
    fn try_from(q: f64) -> Result<Self> {
        QBase::new(q)
    }
}

impl From<QBase> for f64 {
    fn from(b: QBase) -> f64 {
        b.0
    }
}

/// Number of factors in a q-Pochhammer symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Finite(u64),
    Infinite,
}

/// A q-Pochhammer product together with the number of factors multiplied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pochhammer {
    pub value: f64,
    /// For `Order::Infinite`, the index at which the product was truncated.
    pub factors: u64,
}

const UNIT_ROUNDOFF: f64 = 1.110_223_024_625_156_5e-16; // 2^-53

/// `(a; q)_n = prod_{k=1}^{n} (1 - a q^{k-1})`, reporting the factor count.
///
/// The infinite product stops before the first factor with
/// `|a q^{k-1}| < 2^-53`; the omitted factors then differ from 1 by at most
/// `2^-53 / (1 - q)` in total.
pub fn q_pochhammer_detailed(a: f64, base: QBase, order: Order) -> Pochhammer {
    let q = base.value();
    let mut p = 1.0;
    let mut t = a;
    let mut k = 0u64;
    match order {
        Order::Finite(n) => {
            while k < n {
                p *= 1.0 - t;
                t *= q;
                k += 1;
            }
        }
        Order::Infinite => {
            while t.abs() >= UNIT_ROUNDOFF {
                p *= 1.0 - t;
                t *= q;
                k += 1;
            }
        }
    }
    Pochhammer { value: p, factors: k }
}

pub fn q_pochhammer(a: f64, base: QBase, order: Order) -> f64 {
    q_pochhammer_detailed(a, base, order).value
}

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// `Γ_q(x) = (q;q)_∞ / (q^x;q)_∞ · (1-q)^{1-x}`.
pub fn q_gamma(x: f64, base: QBase) -> Result<f64> {
    if !x.is_finite() {
        return Err(QmlError::Domain(format!("q-gamma argument must be finite, got {x}")));
    }
    if is_pole(x) {
        return Err(QmlError::Pole(x));
    }
    let q = base.value();
    let qx = base.pow(x);
    let num = q_pochhammer(q, base, Order::Infinite);
    let den = q_pochhammer(qx, base, Order::Infinite);
    Ok(num / den * (1.0 - q).powf(1.0 - x))
}

/// `1/Γ_q(x)` as an extended-range value; zero at the poles.
pub(crate) fn recip_q_gamma_ext(x: f64, base: QBase) -> Ext {
    if is_pole(x) {
        return Ext::ZERO;
    }
    let q = base.value();
    let ratio = q_pochhammer(base.pow(x), base, Order::Infinite) / q_pochhammer(q, base, Order::Infinite);
    Ext::new(ratio) * Ext::exp((x - 1.0) * (1.0 - q).ln())
}

/// The q-number `[x]_q = (1 - q^x) / (1 - q)`.
pub fn q_number(x: f64, base: QBase) -> f64 {
    -(x * base.ln()).exp_m1() / (1.0 - base.value())
}

/// Which q-trigonometric series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QTrig {
    Cos,
    Sin,
}

/// Series form of the q-trigonometric functions:
/// `cos(w;q) = Σ (-1)^n q^{n²} w^{2n} / Γ_q(2n+1)` and
/// `sin(w;q) = Σ (-1)^n q^{n(n+1)} w^{2n+1} / Γ_q(2n+2)`.
#[derive(Debug, Clone)]
pub struct QTrigSeries {
    which: QTrig,
    base: QBase,
    coeffs: Vec<Ext>,
}

const QTRIG_TABLE: usize = 96;

impl QTrigSeries {
    pub fn new(which: QTrig, base: QBase) -> Self {
        let coeffs = (0..QTRIG_TABLE).map(|n| Self::coefficient_direct(which, base, n)).collect();
        QTrigSeries { which, base, coeffs }
    }

    fn coefficient_direct(which: QTrig, base: QBase, n: usize) -> Ext {
        let n64 = n as u64;
        let (qexp, garg) = match which {
            QTrig::Cos => (n64 * n64, 2.0 * n as f64 + 1.0),
            QTrig::Sin => (n64 * (n64 + 1), 2.0 * n as f64 + 2.0),
        };
        let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        Ext::powi(base.value(), qexp) * recip_q_gamma_ext(garg, base) * sign
    }

    fn coefficient(&self, n: usize) -> Ext {
        match self.coeffs.get(n) {
            Some(c) => *c,
            None => Self::coefficient_direct(self.which, self.base, n),
        }
    }

    fn offset(&self) -> u64 {
        match self.which {
            QTrig::Cos => 0,
            QTrig::Sin => 1,
        }
    }

    fn term(&self, w: Ext, n: usize) -> Ext {
        let p = 2 * n as u64 + self.offset();
        self.coefficient(n) * pow_ext(w, p)
    }

    pub fn eval(&self, w: f64, tol: Tolerance) -> Result<EvalResult> {
        if !w.is_finite() {
            return Err(QmlError::Domain(format!("argument must be finite, got {w}")));
        }
        let wx = Ext::new(w);
        let s = sum_real(0, |n| self.term(wx, n), tol, DEFAULT_MAX_TERMS)?;
        Ok(EvalResult { value: s.scaled.to_f64(), tail_bound: s.tail.to_f64(), terms_used: s.terms })
    }

    /// Value divided by the binary scale of its largest term; sign-exact for
    /// arguments far beyond the `f64` range of the terms.
    pub fn eval_scaled(&self, w: f64) -> Result<Scaled> {
        let wx = Ext::new(w);
        Ok(sum_real(0, |n| self.term(wx, n), Tolerance::RelativeToPeak(1e-18), DEFAULT_MAX_TERMS)?.scaled)
    }
}

pub(crate) fn pow_ext(z: Ext, p: u64) -> Ext {
    if p == 0 {
        return Ext::ONE;
    }
    let mut acc = Ext::ONE;
    let mut b = z;
    let mut k = p;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * b;
        }
        k >>= 1;
        if k > 0 {
            b = b * b;
        }
    }
    acc
}

/// `cos(w;q)` or `sin(w;q)` with the tail summed below `1e-17` relative to
/// the largest term.
pub fn q_trig(which: QTrig, w: f64, base: QBase) -> Result<f64> {
    Ok(QTrigSeries::new(which, base).eval(w, Tolerance::RelativeToPeak(1e-17))?.value)
}
