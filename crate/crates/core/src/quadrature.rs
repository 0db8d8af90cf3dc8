//! Trapezoid rule on the real line and on vertical Mellin lines.
//!
//! For integrands analytic in a strip and decaying at both ends the
//! discretization error of `h Σ f(kh)` falls like `exp(-c/h)`, so the only
//! knobs are the step, the truncation, and (for Mellin lines) the abscissa.

use crate::error::{Error, Result};
use crate::scaled::{ScaledComplex, ScaledSum};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Step, abscissa and truncation settings for a one-dimensional sum.
///
/// With `stop_threshold > 0` each tail stops after `stop_run` consecutive
/// terms smaller than `stop_threshold` times the largest term seen so far;
/// `n` is then only a safety cap. With `stop_threshold == 0` the sum runs
/// over exactly `k = -n..=n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureGrid {
    pub h: f64,
    pub sigma: f64,
    pub n: usize,
    pub stop_threshold: f64,
    pub stop_run: usize,
}

impl QuadratureGrid {
    pub const DEFAULT_STOP_RUN: usize = 5;

    /// Fixed `k = -n..=n` sum.
    pub fn fixed(h: f64, n: usize) -> Self {
        Self {
            h,
            sigma: 0.0,
            n,
            stop_threshold: 0.0,
            stop_run: Self::DEFAULT_STOP_RUN,
        }
    }

    /// Adaptive truncation with relative threshold and a hard cap.
    pub fn adaptive(h: f64, threshold: f64, max_n: usize) -> Self {
        Self {
            h,
            sigma: 0.0,
            n: max_n,
            stop_threshold: threshold,
            stop_run: Self::DEFAULT_STOP_RUN,
        }
    }

    pub fn with_sigma(mut self, sigma: f64) -> Self {
        self.sigma = sigma;
        self
    }

    pub fn is_adaptive(&self) -> bool {
        self.stop_threshold > 0.0
    }

    /// Same grid with half the step and twice the cap.
    pub fn refined(&self) -> Self {
        Self {
            h: 0.5 * self.h,
            n: 2 * self.n,
            ..*self
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.h > 0.0 && self.h.is_finite()) {
            return Err(Error::Domain(format!("step h = {} must be positive", self.h)));
        }
        if self.is_adaptive() && self.stop_run < 3 {
            return Err(Error::Domain("adaptive truncation needs stop_run >= 3".into()));
        }
        if !(self.stop_threshold >= 0.0) {
            return Err(Error::Domain("stop_threshold must be non-negative".into()));
        }
        Ok(())
    }
}

/// Steps, abscissae and half-widths of a two-dimensional inverse Mellin sum
/// over `k1 = -n1..=n1`, `k2 = -n2..=n2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MellinGrid2D {
    pub h1: f64,
    pub h2: f64,
    pub sigma1: f64,
    pub sigma2: f64,
    pub n1: usize,
    pub n2: usize,
}

impl MellinGrid2D {
    pub fn validate(&self) -> Result<()> {
        let ok = [self.h1, self.h2, self.sigma1, self.sigma2]
            .iter()
            .all(|v| *v > 0.0 && v.is_finite());
        if !ok || self.n1 == 0 || self.n2 == 0 {
            return Err(Error::Domain(format!("invalid two-dimensional Mellin grid {self:?}")));
        }
        Ok(())
    }
}

/// A trapezoid sum with its truncation diagnostics.
#[derive(Clone, Copy, Debug)]
pub struct LineSum {
    pub value: ScaledComplex,
    /// Smallest and largest `k` included.
    pub k_range: (i64, i64),
    /// Largest magnitude among the first discarded term on either tail
    /// (zero for a fixed-width sum).
    pub first_discarded: ScaledComplex,
    /// `ln(max |term| / |sum|)`.
    pub cancellation_ln: f64,
}

fn collect_tail<F>(f: &mut F, grid: &QuadratureGrid, dir: i64, max_ln: &mut f64) -> Result<(Vec<ScaledComplex>, ScaledComplex)>
where
    F: FnMut(f64) -> Result<ScaledComplex>,
{
    let mut terms = Vec::new();
    let adaptive = grid.is_adaptive();
    let ln_thr = grid.stop_threshold.ln();
    let mut run = 0usize;
    let mut k = 1i64;
    loop {
        if k as usize > grid.n {
            if adaptive {
                return Err(Error::NonConvergence { steps: grid.n });
            }
            return Ok((terms, ScaledComplex::ZERO));
        }
        let v = f(dir as f64 * k as f64 * grid.h)?;
        let ln = v.ln_abs();
        if ln > *max_ln {
            *max_ln = ln;
        }
        if adaptive {
            if ln == f64::NEG_INFINITY || ln < *max_ln + ln_thr {
                run += 1;
            } else {
                run = 0;
            }
            if run >= grid.stop_run {
                // the run itself is kept; the next term is the first discarded one
                terms.push(v);
                let next = f(dir as f64 * (k + 1) as f64 * grid.h)?;
                return Ok((terms, next));
            }
        }
        terms.push(v);
        k += 1;
    }
}

/// `h Σ_k f(kh)` with full diagnostics. Terms are reduced in ascending `k`.
pub fn trapezoid_line_detailed<F>(mut f: F, grid: &QuadratureGrid) -> Result<LineSum>
where
    F: FnMut(f64) -> Result<ScaledComplex>,
{
    grid.validate()?;
    let centre = f(0.0)?;
    let mut max_ln = centre.ln_abs();
    let (pos, pos_next) = collect_tail(&mut f, grid, 1, &mut max_ln)?;
    let (neg, neg_next) = collect_tail(&mut f, grid, -1, &mut max_ln)?;

    let mut sum = ScaledSum::new();
    for v in neg.iter().rev() {
        sum.add(*v);
    }
    sum.add(centre);
    for v in &pos {
        sum.add(*v);
    }
    let first_discarded = if pos_next.ln_abs() >= neg_next.ln_abs() {
        pos_next
    } else {
        neg_next
    };
    Ok(LineSum {
        value: sum.value() * grid.h,
        k_range: (-(neg.len() as i64), pos.len() as i64),
        first_discarded: first_discarded * grid.h,
        cancellation_ln: sum.cancellation_ln(),
    })
}

/// `h Σ_k f(kh)` approximating `∫ f(x) dx` over the real line.
pub fn trapezoid_line<F>(f: F, grid: &QuadratureGrid) -> Result<ScaledComplex>
where
    F: FnMut(f64) -> Result<ScaledComplex>,
{
    Ok(trapezoid_line_detailed(f, grid)?.value)
}

/// `(h/2π) Σ_k M(σ + ikh) y^{-σ-ikh}`, the discretized inverse Mellin
/// transform of `M` along `Re s = grid.sigma`.
pub fn inverse_mellin_line<M>(mut m: M, y: f64, grid: &QuadratureGrid) -> Result<ScaledComplex>
where
    M: FnMut(Complex64) -> Result<ScaledComplex>,
{
    if !(y > 0.0) {
        return Err(Error::Domain(format!("inverse Mellin at y = {y}")));
    }
    let ln_y = y.ln();
    let sigma = grid.sigma;
    let v = trapezoid_line(
        |t| {
            let s = Complex64::new(sigma, t);
            Ok(m(s)?.mul_exp(-s * ln_y))
        },
        grid,
    )?;
    Ok(v * (0.5 / PI))
}

/// A value paired with the difference against the coarser grid.
#[derive(Clone, Copy, Debug)]
pub struct Refined {
    pub value: ScaledComplex,
    /// `|value(h) - value(h/2)|`.
    pub error: ScaledComplex,
}

impl Refined {
    pub fn error_abs(&self) -> f64 {
        self.error.abs()
    }

    pub fn error_rel(&self) -> f64 {
        if self.value.is_zero() {
            if self.error.is_zero() {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            self.error.ratio_abs(&self.value)
        }
    }
}

fn refined(coarse: ScaledComplex, fine: ScaledComplex) -> Refined {
    let d = coarse - fine;
    let error = if d.is_zero() {
        ScaledComplex::ZERO
    } else {
        ScaledComplex::exp_real(d.ln_abs())
    };
    Refined { value: fine, error }
}

/// Evaluate at `h` and `h/2`; return the finer value and the difference.
pub fn refine_check<F>(mut f: F, grid: &QuadratureGrid) -> Result<Refined>
where
    F: FnMut(f64) -> Result<ScaledComplex>,
{
    let coarse = trapezoid_line(&mut f, grid)?;
    let fine = trapezoid_line(&mut f, &grid.refined())?;
    Ok(refined(coarse, fine))
}

/// [`refine_check`] for an inverse Mellin transform.
pub fn refine_check_mellin<M>(mut m: M, y: f64, grid: &QuadratureGrid) -> Result<Refined>
where
    M: FnMut(Complex64) -> Result<ScaledComplex>,
{
    let coarse = inverse_mellin_line(&mut m, y, grid)?;
    let fine = inverse_mellin_line(&mut m, y, &grid.refined())?;
    Ok(refined(coarse, fine))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma::log_gamma;

    fn gaussian(x: f64) -> Result<ScaledComplex> {
        Ok(ScaledComplex::from_real((-x * x).exp()))
    }

    fn k0_integrand(x: f64) -> Result<ScaledComplex> {
        Ok(ScaledComplex::from_real(0.5 * (-x.cosh()).exp()))
    }

    const K0_1: f64 = 0.421_024_438_240_708_3;

    #[test]
    fn gaussian_integral() {
        let g = QuadratureGrid::adaptive(0.5, 1e-18, 1000);
        let v = trapezoid_line(gaussian, &g).unwrap();
        assert!((v.to_complex().re - std::f64::consts::PI.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn zero_integrand() {
        let g = QuadratureGrid::adaptive(0.5, 1e-18, 100);
        let v = trapezoid_line(|_| Ok(ScaledComplex::ZERO), &g).unwrap();
        assert!(v.is_zero());
        let r = refine_check(|_| Ok(ScaledComplex::ZERO), &g).unwrap();
        assert!(r.value.is_zero() && r.error.is_zero());
    }

    #[test]
    fn k0_integrand_value() {
        let g = QuadratureGrid::adaptive(0.25, 1e-18, 1000);
        let v = trapezoid_line(k0_integrand, &g).unwrap();
        assert!((v.to_complex().re - K0_1).abs() < 1e-13);
    }

    #[test]
    fn non_convergence() {
        let g = QuadratureGrid::adaptive(0.5, 1e-18, 20);
        let r = trapezoid_line(|_| Ok(ScaledComplex::ONE), &g);
        assert_eq!(r.unwrap_err(), Error::NonConvergence { steps: 20 });
        let bad = QuadratureGrid { stop_run: 2, ..g };
        assert!(trapezoid_line(gaussian, &bad).is_err());
    }

    #[test]
    fn refine_check_examples() {
        let r = refine_check(gaussian, &QuadratureGrid::adaptive(0.5, 1e-18, 1000)).unwrap();
        assert!(r.error_abs() < 1e-10);
        let coarse = refine_check(k0_integrand, &QuadratureGrid::adaptive(1.0, 1e-18, 1000)).unwrap();
        let fine = refine_check(k0_integrand, &QuadratureGrid::adaptive(0.5, 1e-18, 1000)).unwrap();
        assert!(coarse.error_abs() / fine.error_abs() >= 1e3);
    }

    #[test]
    fn cahen_mellin() {
        let g = QuadratureGrid::adaptive(0.25, 1e-18, 100_000).with_sigma(2.0);
        let v = inverse_mellin_line(|s| Ok(ScaledComplex::from_log(log_gamma(s)?)), 1.0, &g).unwrap();
        assert!((v.to_complex() - Complex64::new((-1.0f64).exp(), 0.0)).norm() < 1e-13);
        let v2 = inverse_mellin_line(|s| Ok(ScaledComplex::from_log(log_gamma(s)?)), 2.0, &g).unwrap();
        let ratio = v2.to_complex().re / v.to_complex().re;
        assert!((ratio - (-1.0f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn truncation_bounded_by_first_discarded_term() {
        let g = QuadratureGrid::adaptive(0.25, 1e-6, 1000);
        let ls = trapezoid_line_detailed(gaussian, &g).unwrap();
        let n = ls.k_range.1.max(-ls.k_range.0) as usize;
        let reference = trapezoid_line(gaussian, &QuadratureGrid::fixed(0.25, 4 * n)).unwrap();
        let err = (ls.value - reference).abs();
        assert!(err <= g.stop_run as f64 * ls.first_discarded.abs());
    }

    #[test]
    fn deterministic() {
        let g = QuadratureGrid::adaptive(0.3, 1e-16, 1000);
        let a = trapezoid_line(k0_integrand, &g).unwrap();
        let b = trapezoid_line(k0_integrand, &g).unwrap();
        assert_eq!(a, b);
    }
}
