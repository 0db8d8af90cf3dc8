//! Stade's double K-Bessel integral, evaluated by the trapezoid rule in
//! the logarithmic variable.

use super::{Algorithm, Evaluation, WhittakerArgs};
use crate::error::Result;
use crate::langlands::LanglandsParams;
use crate::quadrature::{trapezoid_line_detailed, QuadratureGrid};
use crate::scaled::ScaledComplex;
use crate::specfun::bessel::{bessel_k_pair, BesselOrder};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Relative size below which tail terms are considered negligible.
pub const STADE_STOP_THRESHOLD: f64 = 1e-20;

/// Default grid. The integrand oscillates with angular frequency at most
/// `|r_α - r_β| + 3|r_γ|/4` in `u` and is analytic for `|Im u| < π`.
pub fn stade_grid(p: &LanglandsParams) -> QuadratureGrid {
    let p = p.median_gamma();
    let freq = (p.r_alpha() - p.r_beta()).abs() + 0.75 * p.r_gamma().abs();
    let h = (2.0 * PI / (freq + 30.0)).min(0.25);
    QuadratureGrid::adaptive(h, STADE_STOP_THRESHOLD, 200_000)
}

/// `√(1 + e^u)` without overflow for large `u`, as a log.
fn ln_sqrt_one_plus_exp(u: f64) -> f64 {
    if u > 0.0 {
        0.5 * u + 0.5 * (-u).exp().ln_1p()
    } else {
        0.5 * u.exp().ln_1p()
    }
}

/// `e^{π|α-β|} W(y1, y2)` by Stade's formula
/// `4 (2πy1)^{1-γ/2} (2πy2)^{1+γ/2} ∫ K_ν(2πy1√(1+eᵘ)) K_ν(2πy2√(1+e⁻ᵘ)) e^{-3γu/4} du`
/// with `ν = (α - β)/2`.
pub fn w_stade(p: &LanglandsParams, a: WhittakerArgs, grid: &QuadratureGrid) -> Result<Evaluation> {
    // the symmetric function W is best conditioned here with γ in the middle
    let q = p.median_gamma();
    let order = BesselOrder::imaginary(0.5 * (q.r_alpha() - q.r_beta()));
    let rg = q.r_gamma();
    let (l1, l2) = ((2.0 * PI * a.y1).ln(), (2.0 * PI * a.y2).ln());
    let integrand = |u: f64| -> Result<ScaledComplex> {
        let x1 = (l1 + ln_sqrt_one_plus_exp(u)).exp();
        let x2 = (l2 + ln_sqrt_one_plus_exp(-u)).exp();
        let k1 = bessel_k_pair(order, x1)?.k();
        let k2 = bessel_k_pair(order, x2)?.k();
        Ok(k1 * k2 * Complex64::from_polar(1.0, -0.75 * rg * u))
    };
    let sum = trapezoid_line_detailed(integrand, grid)?;
    let prefactor = ScaledComplex::from_log(
        Complex64::new(1.0, -0.5 * rg) * l1 + Complex64::new(1.0, 0.5 * rg) * l2,
    ) * 4.0;
    let value = (sum.value * prefactor).scale_exp(p.scaling_exponent());
    let trunc = if sum.value.is_zero() {
        0.0
    } else {
        sum.first_discarded.ratio_abs(&sum.value)
    };
    Ok(Evaluation {
        value,
        rel_error: trunc + roundoff(sum.cancellation_ln),
        algorithm: Algorithm::Stade,
    })
}

/// Relative roundoff implied by a cancellation factor `e^{c}`. The factor 128
/// covers the error of the special-function values entering each term.
pub(crate) fn roundoff(cancellation_ln: f64) -> f64 {
    128.0 * f64::EPSILON * cancellation_ln.exp().max(1.0)
}

/// [`w_stade`] on the default grid.
pub fn w_stade_default(p: &LanglandsParams, a: WhittakerArgs) -> Result<Evaluation> {
    w_stade(p, a, &stade_grid(p))
}

/// [`w_stade`] at `h` and `h/2`; the error estimate includes their difference.
pub fn w_stade_refined(p: &LanglandsParams, a: WhittakerArgs, grid: &QuadratureGrid) -> Result<Evaluation> {
    let coarse = w_stade(p, a, grid)?;
    let mut fine = w_stade(p, a, &grid.refined())?;
    fine.rel_error += ScaledComplex::rel_diff(&coarse.value, &fine.value);
    Ok(fine)
}
