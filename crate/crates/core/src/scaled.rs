//! Complex numbers with a detached exponent.
//!
//! Gamma products with large imaginary arguments routinely leave the
//! binary64 range, so intermediate results carry their magnitude as a
//! separate natural-log scale. The mantissa is kept normalized by exact
//! powers of two, which makes renormalization free of rounding.

use num_complex::Complex64;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

const LN_2: f64 = std::f64::consts::LN_2;

/// `mantissa * exp(log_scale)`, with `|mantissa|` in `[2^-1/2, 2^1/2]` or zero.
///
/// Internally the scale is held as a binary exponent so that products,
/// quotients and alignment for addition are exact power-of-two shifts;
/// [`ScaledComplex::log_scale`] reports it in natural-log units.
#[derive(Clone, Copy, PartialEq)]
pub struct ScaledComplex {
    mantissa: Complex64,
    exp2: i64,
}

impl fmt::Debug for ScaledComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} + {}i) * e^{}",
            self.mantissa.re,
            self.mantissa.im,
            self.log_scale()
        )
    }
}

impl Default for ScaledComplex {
    fn default() -> Self {
        Self::ZERO
    }
}

impl ScaledComplex {
    pub const ZERO: Self = Self {
        mantissa: Complex64::new(0.0, 0.0),
        exp2: 0,
    };
    pub const ONE: Self = Self {
        mantissa: Complex64::new(1.0, 0.0),
        exp2: 0,
    };

    /// `mantissa * exp(log_scale)`.
    pub fn new(mantissa: Complex64, log_scale: f64) -> Self {
        if log_scale == 0.0 {
            return Self::with_exp2(mantissa, 0);
        }
        let k = (log_scale / LN_2).floor();
        let frac = log_scale - k * LN_2;
        Self::with_exp2(mantissa * frac.exp(), k as i64)
    }

    fn with_exp2(mantissa: Complex64, exp2: i64) -> Self {
        let mut s = Self { mantissa, exp2 };
        s.normalize();
        s
    }

    pub fn from_complex(z: Complex64) -> Self {
        Self::with_exp2(z, 0)
    }

    pub fn from_real(x: f64) -> Self {
        Self::with_exp2(Complex64::new(x, 0.0), 0)
    }

    /// `exp(l)` for a complex logarithm `l`; never overflows.
    pub fn from_log(l: Complex64) -> Self {
        Self::new(Complex64::from_polar(1.0, l.im), l.re)
    }

    /// `exp(x)` for real `x`.
    pub fn exp_real(x: f64) -> Self {
        Self::new(Complex64::new(1.0, 0.0), x)
    }

    fn normalize(&mut self) {
        let big = self.mantissa.re.abs().max(self.mantissa.im.abs());
        if big == 0.0 {
            *self = Self::ZERO;
            return;
        }
        if !big.is_finite() {
            return;
        }
        let k = self.mantissa.norm().log2().round() as i64;
        if k != 0 {
            self.mantissa = ldexp(self.mantissa, -k);
            self.exp2 += k;
        }
    }

    pub fn mantissa(&self) -> Complex64 {
        self.mantissa
    }

    /// The scale exponent in natural-log units.
    pub fn log_scale(&self) -> f64 {
        self.exp2 as f64 * LN_2
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.re == 0.0 && self.mantissa.im == 0.0
    }

    pub fn is_finite(&self) -> bool {
        self.mantissa.re.is_finite() && self.mantissa.im.is_finite()
    }

    /// Natural log of the modulus; `-inf` for zero.
    pub fn ln_abs(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.mantissa.norm().ln() + self.log_scale()
        }
    }

    /// Modulus as a plain float (may over/underflow).
    pub fn abs(&self) -> f64 {
        self.to_complex().norm()
    }

    /// Convert to an ordinary complex number (may over/underflow).
    pub fn to_complex(&self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        if self.exp2 > 1100 {
            return self.mantissa * f64::INFINITY;
        }
        if self.exp2 < -1200 {
            return Complex64::new(0.0, 0.0);
        }
        ldexp(self.mantissa, self.exp2)
    }

    pub fn conj(&self) -> Self {
        Self {
            mantissa: self.mantissa.conj(),
            exp2: self.exp2,
        }
    }

    /// Multiply by `exp(l)`.
    pub fn mul_exp(&self, l: Complex64) -> Self {
        *self * Self::from_log(l)
    }

    /// Multiply by `exp(x)` for real `x`.
    pub fn scale_exp(&self, x: f64) -> Self {
        *self * Self::exp_real(x)
    }

    /// `|a - b| / max(|a|, |b|)`, or 0 when both are zero.
    pub fn rel_diff(a: &Self, b: &Self) -> f64 {
        let d = *a - *b;
        let m = a.ln_abs().max(b.ln_abs());
        if m == f64::NEG_INFINITY {
            return 0.0;
        }
        (d.ln_abs() - m).exp()
    }

    /// `|self| / |other|` computed without leaving the scaled domain.
    pub fn ratio_abs(&self, other: &Self) -> f64 {
        (self.ln_abs() - other.ln_abs()).exp()
    }

    /// Align to binary exponent `exp2`; negligible parts become zero.
    fn mantissa_at(&self, exp2: i64) -> Complex64 {
        if self.is_zero() {
            return self.mantissa;
        }
        let shift = self.exp2 - exp2;
        if shift < -1100 {
            Complex64::new(0.0, 0.0)
        } else {
            ldexp(self.mantissa, shift)
        }
    }
}

/// `z * 2^k`, exact unless the result leaves the normal range.
fn ldexp(z: Complex64, k: i64) -> Complex64 {
    let mut z = z;
    let mut k = k;
    while k > 1000 {
        z *= pow2(1000);
        k -= 1000;
    }
    while k < -1000 {
        z *= pow2(-1000);
        k += 1000;
    }
    z * pow2(k as i32)
}

fn ldexp_real(x: f64, k: i64) -> f64 {
    ldexp(Complex64::new(x, 0.0), k).re
}

fn pow2(k: i32) -> f64 {
    f64::from_bits(((1023 + k) as u64) << 52)
}

impl Mul for ScaledComplex {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::with_exp2(self.mantissa * rhs.mantissa, self.exp2 + rhs.exp2)
    }
}

impl Div for ScaledComplex {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        Self::with_exp2(self.mantissa / rhs.mantissa, self.exp2 - rhs.exp2)
    }
}

impl Mul<f64> for ScaledComplex {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Self::with_exp2(self.mantissa * rhs, self.exp2)
    }
}

impl Mul<Complex64> for ScaledComplex {
    type Output = Self;
    fn mul(self, rhs: Complex64) -> Self {
        Self::with_exp2(self.mantissa * rhs, self.exp2)
    }
}

impl Neg for ScaledComplex {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            mantissa: -self.mantissa,
            exp2: self.exp2,
        }
    }
}

impl Add for ScaledComplex {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let top = self.exp2.max(rhs.exp2);
        Self::with_exp2(self.mantissa_at(top) + rhs.mantissa_at(top), top)
    }
}

impl Sub for ScaledComplex {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

/// Neumaier step on one real component.
#[inline]
fn neumaier(sum: &mut f64, comp: &mut f64, v: f64) {
    let t = *sum + v;
    if sum.abs() >= v.abs() {
        *comp += (*sum - t) + v;
    } else {
        *comp += (v - t) + *sum;
    }
    *sum = t;
}

/// Compensated accumulator for [`ScaledComplex`] terms.
///
/// Terms are brought to a common reference scale and added with
/// Neumaier's error-free transformation on each component. The largest
/// term seen is tracked so callers can measure cancellation.
#[derive(Clone, Debug)]
pub struct ScaledSum {
    reference: Option<i64>,
    re: (f64, f64),
    im: (f64, f64),
    max_ln_term: f64,
    count: usize,
}

impl Default for ScaledSum {
    fn default() -> Self {
        Self::new()
    }
}

impl ScaledSum {
    pub fn new() -> Self {
        Self {
            reference: None,
            re: (0.0, 0.0),
            im: (0.0, 0.0),
            max_ln_term: f64::NEG_INFINITY,
            count: 0,
        }
    }

    pub fn add(&mut self, term: ScaledComplex) {
        self.count += 1;
        if term.is_zero() {
            return;
        }
        let ln = term.ln_abs();
        if ln > self.max_ln_term {
            self.max_ln_term = ln;
        }
        let reference = match self.reference {
            None => term.exp2,
            Some(r) if term.exp2 > r + 24 => {
                let shift = r - term.exp2;
                for part in [&mut self.re, &mut self.im] {
                    part.0 = ldexp_real(part.0, shift);
                    part.1 = ldexp_real(part.1, shift);
                }
                term.exp2
            }
            Some(r) => r,
        };
        self.reference = Some(reference);
        let m = term.mantissa_at(reference);
        neumaier(&mut self.re.0, &mut self.re.1, m.re);
        neumaier(&mut self.im.0, &mut self.im.1, m.im);
    }

    pub fn value(&self) -> ScaledComplex {
        match self.reference {
            None => ScaledComplex::ZERO,
            Some(r) => ScaledComplex::with_exp2(
                Complex64::new(self.re.0 + self.re.1, self.im.0 + self.im.1),
                r,
            ),
        }
    }

    /// Log of the largest term magnitude added so far.
    pub fn max_ln_term(&self) -> f64 {
        self.max_ln_term
    }

    /// Natural-log ratio of the largest term to the sum; 0 for an empty sum.
    pub fn cancellation_ln(&self) -> f64 {
        if self.max_ln_term == f64::NEG_INFINITY {
            return 0.0;
        }
        let v = self.value().ln_abs();
        if v == f64::NEG_INFINITY {
            return f64::INFINITY;
        }
        (self.max_ln_term - v).max(0.0)
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }
}
