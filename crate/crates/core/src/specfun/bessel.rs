//! K-Bessel functions of purely imaginary order.
//!
//! Backend A integrates `K_{it}(x) = ½∫ exp(-x cosh u + itu) du` by the
//! trapezoid rule along the shifted line `Im u = θ`. Shifting towards the
//! saddle point pulls the `e^{-πt/2}` size of the result out of the
//! integrand, so the oscillatory cancellation of the unshifted integral
//! never materialises. Backend B evaluates the Barnes representation
//! `4 K_μ(2πy) = (1/2πi)∫ Γ((s+μ)/2) Γ((s-μ)/2) (πy)^{-s} ds` on a vertical
//! line and is only used as an independent cross-check.

use crate::error::{Error, Result};
use crate::quadrature::{inverse_mellin_line, QuadratureGrid};
use crate::scaled::ScaledComplex;
use crate::specfun::gamma::log_gamma;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

/// Order μ of a K-Bessel function; only the imaginary axis is supported.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BesselOrder {
    mu: Complex64,
}

impl BesselOrder {
    pub const REAL_PART_TOLERANCE: f64 = 1e-12;

    pub fn new(mu: Complex64) -> Result<Self> {
        if mu.re.abs() > Self::REAL_PART_TOLERANCE || !mu.im.is_finite() {
            return Err(Error::Domain(format!("K-Bessel order {mu} is not purely imaginary")));
        }
        Ok(Self { mu })
    }

    /// The order `i t`.
    pub fn imaginary(t: f64) -> Self {
        Self {
            mu: Complex64::new(0.0, t),
        }
    }

    pub fn mu(&self) -> Complex64 {
        self.mu
    }

    /// `|Im μ|`; K is even in μ so only the modulus matters.
    pub fn t(&self) -> f64 {
        self.mu.im.abs()
    }
}

/// `K_μ(x)` and `K_μ'(x)` sharing one exponent:
/// the values are `value * e^{log_scale}` and `derivative * e^{log_scale}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KPair {
    pub value: f64,
    pub derivative: f64,
    pub log_scale: f64,
}

impl KPair {
    pub fn k(&self) -> ScaledComplex {
        ScaledComplex::from_real(self.value).scale_exp(self.log_scale)
    }

    pub fn k_prime(&self) -> ScaledComplex {
        ScaledComplex::from_real(self.derivative).scale_exp(self.log_scale)
    }
}

/// Integration line and step used by backend A for given `t`, `x`.
fn contour(t: f64, x: f64) -> (f64, f64) {
    let theta = if t == 0.0 {
        0.0
    } else {
        let margin = (2.0 / t).min(FRAC_PI_2);
        let saddle = if t >= x { FRAC_PI_2 } else { (t / x).asin() };
        saddle.min(FRAC_PI_2 - margin).max(0.0)
    };
    let width = FRAC_PI_2 - theta;
    // the integrand stays analytic and decaying in a strip of half-width
    // `width` above the line; a step of width/16 puts the discretization
    // error near e^{-32π}
    let h = (1.0 / 64.0f64).min(width / 16.0);
    (theta, h)
}

/// Backend A: `K_μ(x)` and its derivative in scaled form.
pub fn bessel_k_pair(mu: BesselOrder, x: f64) -> Result<KPair> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("K-Bessel argument x = {x} must be positive")));
    }
    let t = mu.t();
    let (theta, h) = contour(t, x);
    let (s_th, c_th) = theta.sin_cos();
    let decay = x * c_th;
    let log_scale = -decay - t * theta;

    // v = 0 carries weight 1/2 on the half line
    let mut sum_k = 0.5;
    let mut sum_dk = 0.5 * c_th;
    let mut k = 1u64;
    loop {
        let v = k as f64 * h;
        let (sh, ch) = (v.sinh(), v.cosh());
        // cosh v - 1 without cancellation
        let half = (0.5 * v).sinh();
        let mag = (-2.0 * decay * half * half).exp();
        if mag * ch < 1e-19 {
            break;
        }
        let (sp, cp) = (t * v - x * s_th * sh).sin_cos();
        sum_k += mag * cp;
        // Re[(cosh v cos θ + i sinh v sin θ) e^{iψ}]
        sum_dk += mag * (ch * c_th * cp - sh * s_th * sp);
        k += 1;
        if k > 50_000_000 {
            return Err(Error::NonConvergence { steps: k as usize });
        }
    }
    let (value, derivative) = (h * sum_k, -h * sum_dk);
    if value == 0.0 && derivative == 0.0 {
        return Err(Error::Underflow(format!("K_{}(x) at x = {x}", mu.mu)));
    }
    Ok(KPair {
        value,
        derivative,
        log_scale,
    })
}

/// `K_μ(x)` as a plain float. Fails if the value underflows binary64.
pub fn bessel_k(mu: BesselOrder, x: f64) -> Result<f64> {
    let p = bessel_k_pair(mu, x)?;
    let v = p.value * p.log_scale.exp();
    if v == 0.0 || !v.is_finite() {
        return Err(Error::Underflow(format!("K_{}({x}) = {:?}", mu.mu, p.k())));
    }
    Ok(v)
}

/// `K_μ'(x)` as a plain float.
pub fn bessel_k_prime(mu: BesselOrder, x: f64) -> Result<f64> {
    let p = bessel_k_pair(mu, x)?;
    let v = p.derivative * p.log_scale.exp();
    if v == 0.0 || !v.is_finite() {
        return Err(Error::Underflow(format!("K'_{}({x})", mu.mu)));
    }
    Ok(v)
}

/// Backend B: `K_μ(x)` from its Barnes integral.
pub fn bessel_k_barnes(mu: BesselOrder, x: f64) -> Result<ScaledComplex> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("K-Bessel argument x = {x} must be positive")));
    }
    let t = mu.t();
    let m = mu.mu();
    // put the line through the saddle of |integrand| and pick the step so the
    // aliased contribution e^{-2πσ/h} sits ~45 e-folds below the result
    let sigma = (x * x - t * t).max(0.0).sqrt().max(1.0);
    let excess = (x - FRAC_PI_2 * t).max(0.0);
    let h = (2.0 * PI * sigma / (45.0 + excess)).min(1.0);
    let grid = QuadratureGrid::adaptive(h, 1e-18, 2_000_000).with_sigma(sigma);
    let v = inverse_mellin_line(
        |s| Ok(ScaledComplex::from_log(log_gamma((s + m) * 0.5)? + log_gamma((s - m) * 0.5)?)),
        0.5 * x,
        &grid,
    )?;
    Ok(v * 0.25)
}
