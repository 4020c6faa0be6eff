//! Extended-precision reference computations (192-bit, about 57 digits).
//! Everything here is summed term by term from the defining series and
//! products, independently of the library's scaled double arithmetic.
#![allow(dead_code)]

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use std::cell::RefCell;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub const PREC: usize = 192;
const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CC: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

#[derive(Clone, Debug)]
pub struct Hp(BigFloat);

impl Hp {
    pub fn from(x: f64) -> Hp {
        Hp(BigFloat::from_f64(x, PREC))
    }

    pub fn int(n: i64) -> Hp {
        Hp(BigFloat::from_i64(n, PREC))
    }

    pub fn to_f64(&self) -> f64 {
        if self.0.is_zero() {
            return 0.0;
        }
        let s = CC.with(|cc| self.0.format(Radix::Dec, RM, &mut cc.borrow_mut())).expect("format");
        s.parse().unwrap_or_else(|_| panic!("cannot parse {s}"))
    }

    pub fn exp(&self) -> Hp {
        Hp(CC.with(|cc| self.0.exp(PREC, RM, &mut cc.borrow_mut())))
    }

    pub fn ln(&self) -> Hp {
        Hp(CC.with(|cc| self.0.ln(PREC, RM, &mut cc.borrow_mut())))
    }

    pub fn sqrt(&self) -> Hp {
        Hp(self.0.sqrt(PREC, RM))
    }

    pub fn powi(&self, n: usize) -> Hp {
        Hp(self.0.powi(n, PREC, RM))
    }

    /// `self^y` for `self > 0`.
    pub fn powf(&self, y: &Hp) -> Hp {
        (y.clone() * self.ln()).exp()
    }

    pub fn abs(&self) -> Hp {
        Hp(self.0.abs())
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn lt(&self, o: &Hp) -> bool {
        self.0.cmp(&o.0) == Some(-1)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Hp {
            type Output = Hp;
            fn $m(self, o: Hp) -> Hp {
                Hp(self.0.$m(&o.0, PREC, RM))
            }
        }
        impl $tr<f64> for Hp {
            type Output = Hp;
            fn $m(self, o: f64) -> Hp {
                Hp(self.0.$m(&BigFloat::from_f64(o, PREC), PREC, RM))
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Hp {
    type Output = Hp;
    fn neg(self) -> Hp {
        Hp(self.0.neg())
    }
}

fn tiny() -> Hp {
    Hp::from(1e-60)
}

/// `(a; q)_∞`, stopping once `|a q^k| < 1e-60`.
pub fn pochhammer_inf(a: &Hp, q: &Hp) -> Hp {
    let mut prod = Hp::int(1);
    let mut t = a.clone();
    while !t.abs().lt(&tiny()) {
        prod = prod * (Hp::int(1) - t.clone());
        t = t * q.clone();
    }
    prod
}

/// `Γ_q(x) = (q;q)_∞ / (q^x;q)_∞ · (1-q)^{1-x}`.
pub fn q_gamma(q: f64, x: f64) -> Hp {
    let qh = Hp::from(q);
    let xh = Hp::from(x);
    let qx = qh.powf(&xh);
    pochhammer_inf(&qh, &qh) / pochhammer_inf(&qx, &qh) * (Hp::int(1) - qh.clone()).powf(&(Hp::int(1) - xh))
}

/// `[y]_q = (1 - q^y)/(1 - q)`.
pub fn q_number(q: &Hp, y: &Hp) -> Hp {
    (Hp::int(1) - q.powf(y)) / (Hp::int(1) - q.clone())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Series {
    Lambda,
    PsiPrimeReduced,
    Phi,
    VarPhi,
    BigPhi,
    Psi,
}

impl Series {
    fn stride(self) -> usize {
        match self {
            Series::VarPhi | Series::Psi => 1,
            _ => 2,
        }
    }

    fn weight(self, n: usize, gamma: f64) -> Hp {
        let n = n as i64;
        match self {
            Series::Lambda => Hp::int(1),
            Series::PsiPrimeReduced => Hp::int(2 * n + 1) + gamma,
            Series::Phi => Hp::int(2 * n + 1),
            Series::VarPhi => Hp::int(n + 1),
            Series::BigPhi => Hp::int((2 * n + 1) * (2 * n + 1)),
            Series::Psi => Hp::int((n + 1) * (n + 1)),
        }
    }
}

/// `deriv`-th derivative of the selected series at `x`, with coefficients
/// `(-1)^n σ^{2n} q^{n(n-1)} w(n) / Γ_q(2n+γ+1)` on `x^{stride·n}`.
pub fn ml_series(kind: Series, q: f64, gamma: f64, sigma: f64, x: &Hp, deriv: usize) -> Hp {
    let qh = Hp::from(q);
    let s2 = Hp::from(sigma) * Hp::from(sigma);
    let mut recip_gamma = Hp::int(1) / q_gamma(q, gamma + 1.0);
    let mut sum = Hp::int(0);
    let mut peak = Hp::int(0);
    for n in 0..400usize {
        let m = kind.stride() * n;
        if m >= deriv {
            let mut falling = Hp::int(1);
            for j in 0..deriv {
                falling = falling * Hp::int((m - j) as i64);
            }
            let mut t = s2.powi(n)
                * qh.powi(n * n.saturating_sub(1))
                * recip_gamma.clone()
                * kind.weight(n, gamma)
                * falling
                * x.powi(m - deriv);
            if n % 2 == 1 {
                t = -t;
            }
            let mag = t.abs();
            if peak.lt(&mag) {
                peak = mag.clone();
            }
            sum = sum + t;
            if n > 3 && mag.lt(&(peak.clone() * 1e-60)) {
                return sum;
            }
        }
        let a = Hp::from(2.0 * n as f64 + gamma + 1.0);
        let b = Hp::from(2.0 * n as f64 + gamma + 2.0);
        recip_gamma = recip_gamma / (q_number(&qh, &a) * q_number(&qh, &b));
    }
    panic!("oracle series did not converge")
}

/// `E_{α,β}(z;q) = Σ q^{αn(n-1)/2} z^n / Γ_q(nα+β)` for arguments away from poles.
pub fn generic_e(alpha: f64, beta: f64, q: f64, z: f64) -> Hp {
    let qh = Hp::from(q);
    let zh = Hp::from(z);
    let mut sum = Hp::int(0);
    for n in 0..60usize {
        let e = Hp::from(alpha) * Hp::int((n * n.saturating_sub(1) / 2) as i64);
        // n(n-1) is even, so the halving is exact
        let t = qh.powf(&e) * zh.powi(n) / q_gamma(q, n as f64 * alpha + beta);
        if n > 5 && t.abs().lt(&Hp::from(1e-60)) {
            return sum + t;
        }
        sum = sum + t;
    }
    sum
}

/// `cos(w;q) = Σ (-1)^n q^{n²} w^{2n} / Γ_q(2n+1)` (sin: `q^{n(n+1)} w^{2n+1} / Γ_q(2n+2)`).
pub fn q_trig(sine: bool, q: f64, w: &Hp) -> Hp {
    let qh = Hp::from(q);
    let mut recip = Hp::int(1); // 1/Γ_q(1)
    let off = usize::from(sine);
    if sine {
        recip = recip / q_number(&qh, &Hp::int(1));
    }
    let mut sum = Hp::int(0);
    for n in 0..200usize {
        let qe = if sine { n * (n + 1) } else { n * n };
        let mut t = qh.powi(qe) * w.powi(2 * n + off) * recip.clone();
        if n % 2 == 1 {
            t = -t;
        }
        if n > 3 && t.abs().lt(&Hp::from(1e-60)) {
            return sum;
        }
        sum = sum + t;
        let k = (2 * n + off + 1) as i64;
        recip = recip / (q_number(&qh, &Hp::int(k)) * q_number(&qh, &Hp::int(k + 1)));
    }
    panic!("oracle q-trig series did not converge")
}

/// Bisection to 150 bits on `[lo, hi]`; `f` must change sign.
pub fn bisect(mut f: impl FnMut(&Hp) -> Hp, lo: f64, hi: f64) -> Hp {
    let (mut a, mut b) = (Hp::from(lo), Hp::from(hi));
    let fa_neg = f(&a).is_negative();
    assert_ne!(fa_neg, f(&b).is_negative(), "oracle bracket ({lo}, {hi}) has no sign change");
    for _ in 0..150 {
        let m = (a.clone() + b.clone()) / 2.0;
        if f(&m).is_negative() == fa_neg {
            a = m;
        } else {
            b = m;
        }
    }
    (a + b) / 2.0
}

/// `x f'(x)/f(x)` of the selected series.
pub fn log_slope(kind: Series, q: f64, gamma: f64, sigma: f64, x: &Hp) -> Hp {
    x.clone() * ml_series(kind, q, gamma, sigma, x, 1) / ml_series(kind, q, gamma, sigma, x, 0)
}

pub fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}
