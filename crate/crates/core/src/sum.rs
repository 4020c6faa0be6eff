//! Compensated accumulation and an extended-exponent float.
//!
//! The q-Mittag-Leffler series are alternating with a peak term that can be
//! astronomically large when the argument sits near one of the far zeros
//! (`|t_n| ~ q^{-n^2}`), so terms are carried as [`Ext`] values and summed
//! relative to the peak.

use num_complex::Complex64;
use std::ops::{AddAssign, Mul};

/// Neumaier (improved Kahan) running sum.
#[derive(Debug, Default, Clone, Copy)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl AddAssign<f64> for NeumaierSum {
    #[inline]
    fn add_assign(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = NeumaierSum::new();
        for x in iter {
            s += x;
        }
        s
    }
}

/// Compensated sum of a complex sequence (real and imaginary parts separately).
#[derive(Debug, Default, Clone, Copy)]
pub struct ComplexSum {
    re: NeumaierSum,
    im: NeumaierSum,
}

impl ComplexSum {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

impl AddAssign<Complex64> for ComplexSum {
    fn add_assign(&mut self, z: Complex64) {
        self.re += z.re;
        self.im += z.im;
    }
}

const RENORM_HI: f64 = 1.157_920_892_373_162e77; // 2^256
const RENORM_LO: f64 = 8.636_168_555_094_445e-78; // 2^-256

/// `2^k` built from the bit pattern; exact for normal exponents.
#[inline]
pub fn pow2(k: i64) -> f64 {
    if k > 1023 {
        f64::INFINITY
    } else if k < -1022 {
        // subnormal range: split to stay exact where possible
        if k < -1074 {
            0.0
        } else {
            f64::from_bits(1u64 << (k + 1074))
        }
    } else {
        f64::from_bits(((k + 1023) as u64) << 52)
    }
}

/// A real number `m * 2^e` with an unbounded (i64) binary exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ext {
    m: f64,
    e: i64,
}

impl Ext {
    pub const ZERO: Ext = Ext { m: 0.0, e: 0 };
    pub const ONE: Ext = Ext { m: 1.0, e: 0 };

    pub fn new(x: f64) -> Self {
        Ext { m: x, e: 0 }.normalized()
    }

    #[inline]
    fn normalized(mut self) -> Self {
        if self.m == 0.0 || !self.m.is_finite() {
            return self;
        }
        while self.m.abs() > RENORM_HI {
            self.m *= RENORM_LO;
            self.e += 256;
        }
        while self.m.abs() < RENORM_LO {
            self.m *= RENORM_HI;
            self.e -= 256;
        }
        self
    }

    /// `m * 2^e`.
    pub fn from_parts(m: f64, e: i64) -> Ext {
        Ext { m, e }.normalized()
    }

    /// `exp(x)` without overflow.
    pub fn exp(x: f64) -> Ext {
        let k = (x / std::f64::consts::LN_2).floor();
        let frac = x - k * std::f64::consts::LN_2;
        Ext { m: frac.exp(), e: k as i64 }.normalized()
    }

    pub fn mantissa(self) -> f64 {
        self.m
    }

    pub fn is_zero(self) -> bool {
        self.m == 0.0
    }

    pub fn signum(self) -> f64 {
        if self.m == 0.0 {
            0.0
        } else {
            self.m.signum()
        }
    }

    pub fn abs(self) -> Ext {
        Ext { m: self.m.abs(), e: self.e }
    }

    /// Natural logarithm of `|self|`.
    pub fn ln_abs(self) -> f64 {
        self.m.abs().ln() + self.e as f64 * std::f64::consts::LN_2
    }

    /// Approximate base-2 exponent of `|self|`, used for peak tracking.
    pub fn log2_abs(self) -> f64 {
        self.m.abs().log2() + self.e as f64
    }

    pub fn to_f64(self) -> f64 {
        self.scaled(0)
    }

    /// `self * 2^-shift` as an `f64` (underflows gracefully to zero).
    pub fn scaled(self, shift: i64) -> f64 {
        let k = self.e - shift;
        if k > 2000 {
            return self.m.signum() * f64::INFINITY;
        }
        if k < -2200 {
            return 0.0;
        }
        // split to keep each factor representable
        let half = k / 2;
        self.m * pow2(half) * pow2(k - half)
    }

    /// `self / other` as an `f64`.
    pub fn ratio(self, other: Ext) -> f64 {
        Ext { m: self.m / other.m, e: self.e - other.e }.normalized().to_f64()
    }

    pub fn recip(self) -> Ext {
        Ext { m: 1.0 / self.m, e: -self.e }.normalized()
    }

    /// Binary exponent of the normalized representation.
    pub fn exponent(self) -> i64 {
        self.e
    }

    /// `base^k` by repeated squaring.
    pub fn powi(base: f64, mut k: u64) -> Ext {
        let mut acc = Ext::ONE;
        let mut b = Ext::new(base);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * b;
            }
            b = b * b;
            k >>= 1;
        }
        acc
    }

    pub fn max_abs(self, other: Ext) -> Ext {
        if self.cmp_abs(other) == std::cmp::Ordering::Less {
            other.abs()
        } else {
            self.abs()
        }
    }

    pub fn cmp_abs(self, other: Ext) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match (self.m == 0.0, other.m == 0.0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let r = self.abs().ratio(other.abs());
        r.partial_cmp(&1.0).unwrap_or(Ordering::Equal)
    }
}

impl Mul for Ext {
    type Output = Ext;
    #[inline]
    fn mul(self, rhs: Ext) -> Ext {
        Ext { m: self.m * rhs.m, e: self.e + rhs.e }.normalized()
    }
}

impl Mul<f64> for Ext {
    type Output = Ext;
    #[inline]
    fn mul(self, rhs: f64) -> Ext {
        Ext { m: self.m * rhs, e: self.e }.normalized()
    }
}
