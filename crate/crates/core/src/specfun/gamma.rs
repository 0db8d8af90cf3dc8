//! Complex log-gamma and products of gamma values.

use crate::error::{Error, Result};
use crate::scaled::ScaledComplex;
use num_complex::Complex64;

/// Even Bernoulli numbers B_2 .. B_20.
const BERNOULLI: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Distance below which an argument counts as sitting on a gamma pole.
pub const POLE_TOLERANCE: f64 = 1e-12;

/// Returns the pole index `n` if `s` lies within `tol` of `-n`.
pub fn near_pole(s: Complex64, tol: f64) -> Option<i64> {
    if s.re > 0.5 {
        return None;
    }
    let n = s.re.round();
    if (s - Complex64::new(n, 0.0)).norm() < tol {
        Some(-(n as i64))
    } else {
        None
    }
}

fn stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for (k, b) in BERNOULLI.iter().enumerate() {
        let k = (k + 1) as f64;
        series += pow * (b / (2.0 * k * (2.0 * k - 1.0)));
        pow *= inv2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_2PI + series
}

/// Log-gamma on the branch continuous off the negative real axis.
///
/// `exp(log_gamma(s)) == Γ(s)`; the imaginary part may differ from the
/// principal `arg Γ(s)` by a multiple of 2π.
pub fn log_gamma(s: Complex64) -> Result<Complex64> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::Domain(format!("log_gamma({s})")));
    }
    if near_pole(s, POLE_TOLERANCE).is_some() {
        return Err(Error::Pole { re: s.re, im: s.im });
    }
    if s.re < -40.0 {
        // reflection: Γ(s) = π / (sin(πs) Γ(1 - s))
        let pi = std::f64::consts::PI;
        let sin = (s * pi).sin();
        return Ok(Complex64::new(pi.ln(), 0.0) - sin.ln() - log_gamma(1.0 - s)?);
    }
    let mut z = s;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.re < 10.0 && !(z.re >= 0.0 && z.norm() >= 14.0) {
        shift += z.ln();
        z += 1.0;
    }
    Ok(stirling(z) - shift)
}

/// Γ(s) as a plain complex number.
pub fn gamma(s: Complex64) -> Result<Complex64> {
    Ok(log_gamma(s)?.exp())
}

/// A quotient Γ(a1)···Γ(an) / Γ(b1)···Γ(bk).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GammaRatioSpec {
    pub numerators: Vec<Complex64>,
    pub denominators: Vec<Complex64>,
}

impl GammaRatioSpec {
    pub fn new(numerators: Vec<Complex64>, denominators: Vec<Complex64>) -> Self {
        Self {
            numerators,
            denominators,
        }
    }
}

/// Evaluate a gamma quotient in log space.
///
/// A pole in a denominator gives an exact zero; a pole in a numerator
/// is an error.
pub fn gamma_ratio(spec: &GammaRatioSpec) -> Result<ScaledComplex> {
    let mut acc = Complex64::new(0.0, 0.0);
    for &a in &spec.numerators {
        acc += log_gamma(a)?;
    }
    for &b in &spec.denominators {
        if near_pole(b, POLE_TOLERANCE).is_some() {
            return Ok(ScaledComplex::ZERO);
        }
        acc -= log_gamma(b)?;
    }
    Ok(ScaledComplex::from_log(acc))
}

/// Rising factorial (x)_n = x(x+1)···(x+n-1).
pub fn pochhammer(x: Complex64, n: u32) -> Complex64 {
    (0..n).fold(Complex64::new(1.0, 0.0), |acc, k| acc * (x + k as f64))
}
