//! Double inverse Mellin transform on a fixed `D = y1² y2` slice.
//!
//! Writing `W(y1, y2) = W*(D, y2)`, the trapezoid discretization of the
//! double Barnes integral splits into an inner sum over `k1`, which only
//! depends on `D`, and an outer sum over `k2` against `(πy2)^{-i k2 h2}`.
//! The inner sums are computed once per `D`; each further evaluation on the
//! slice costs one pass over `k2`.

use super::{w_eval, Algorithm, EvalPolicy, Evaluation, WhittakerArgs, CANCELLATION_LIMIT_LN};
use crate::error::{Error, Result};
use crate::langlands::LanglandsParams;
use crate::quadrature::MellinGrid2D;
use crate::scaled::{ScaledComplex, ScaledSum};
use crate::specfun::gamma::log_gamma;
use num_complex::Complex64;
use std::f64::consts::{LN_10, PI};

/// Terms this far (in natural log) below the largest one are skipped.
pub const SIGNIFICANCE_LN: f64 = 50.0;

/// Relative tolerance used when validating the `y2` range of a cache.
pub const DEFAULT_RANGE_TOLERANCE: f64 = 1e-7;

/// Default grid for parameters `p`.
///
/// The aliasing error of the discretization is about `e^{-πσ/h}` relative
/// to the result, so `h = π σ / 40` with `σ = 2`. The box half-width covers
/// the plateau of the gamma product (`|t| ≲ max|r|`) plus the 50 e-folds of
/// its slowest decay `e^{-π|t|/2}`.
pub fn default_mellin_grid(p: &LanglandsParams) -> MellinGrid2D {
    let sigma = 2.0;
    let h = PI * sigma / 40.0;
    let width = 3.0 * p.max_abs() + 2.0 * SIGNIFICANCE_LN / PI + 10.0;
    let n = (width / h).ceil() as usize;
    MellinGrid2D {
        h1: h,
        h2: h,
        sigma1: sigma,
        sigma2: sigma,
        n1: n,
        n2: n,
    }
}

/// Precomputed inner sums for one value of `D`.
#[derive(Clone, Debug)]
pub struct FixedDCache {
    d: f64,
    params: LanglandsParams,
    grid: MellinGrid2D,
    /// Inner `k1`-sums, indexed by `k2 + n2`.
    inner: Vec<ScaledComplex>,
    ln_pi3d: f64,
    /// `ln Σ |term|` over all retained terms.
    ln_abs_total: f64,
    /// `ln max |term|`.
    ln_peak: f64,
    /// Relative accuracy of a single term (gamma values at large arguments).
    term_eps: f64,
    /// Largest term on the box boundary relative to the peak, in natural log.
    boundary_ln: f64,
    retained: usize,
    range: Option<(f64, f64)>,
    validated: bool,
}

/// Value on a cache together with its absolute error bound (both scaled).
#[derive(Clone, Copy, Debug)]
pub struct SliceValue {
    pub value: ScaledComplex,
    pub abs_error: ScaledComplex,
    /// `ln(max |term| / |value|)`.
    pub cancellation_ln: f64,
}

struct Tables {
    a: Vec<Complex64>,
    b: Vec<Complex64>,
    c: Vec<Complex64>,
    n1: i64,
    n2: i64,
}

impl Tables {
    /// One-dimensional gamma tables; valid when `h1 == h2`.
    fn new(p: &LanglandsParams, g: &MellinGrid2D) -> Result<Self> {
        let (n1, n2) = (g.n1 as i64, g.n2 as i64);
        let h = g.h1;
        let r = p.imag_parts();
        let a = (-n1..=n1)
            .map(|k| {
                r.iter()
                    .map(|&rd| log_gamma(Complex64::new(0.5 * g.sigma1, 0.5 * rd + k as f64 * h)))
                    .sum()
            })
            .collect::<Result<Vec<Complex64>>>()?;
        let nb = n1 + n2;
        let b = (-nb..=nb)
            .map(|j| {
                r.iter()
                    .map(|&rd| log_gamma(Complex64::new(0.5 * g.sigma2, 0.5 * (j as f64 * h - rd))))
                    .sum()
            })
            .collect::<Result<Vec<Complex64>>>()?;
        let nc = 3 * n1 + n2;
        let c = (-nc..=nc)
            .map(|l| log_gamma(Complex64::new(0.5 * (g.sigma1 + g.sigma2), 0.5 * l as f64 * h)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { a, b, c, n1, n2 })
    }

    #[inline]
    fn log_term(&self, k1: i64, k2: i64) -> Complex64 {
        self.a[(k1 + self.n1) as usize] + self.b[(k1 + k2 + self.n1 + self.n2) as usize]
            - self.c[(3 * k1 + k2 + 3 * self.n1 + self.n2) as usize]
    }
}

/// `ln Γ`-product of one term without the `D` phase, for unequal steps.
fn log_term_direct(p: &LanglandsParams, g: &MellinGrid2D, k1: i64, k2: i64) -> Result<Complex64> {
    let (t1, t2) = (k1 as f64 * g.h1, k2 as f64 * g.h2);
    let mut v = -log_gamma(Complex64::new(0.5 * (g.sigma1 + g.sigma2), 0.5 * (t2 + 3.0 * t1)))?;
    for rd in p.imag_parts() {
        v += log_gamma(Complex64::new(0.5 * g.sigma1, 0.5 * rd + t1))?;
        v += log_gamma(Complex64::new(0.5 * g.sigma2, 0.5 * (t2 + t1 - rd)))?;
    }
    Ok(v)
}

/// Build the cache for `D` and validate its `y2` range against [`w_eval`].
pub fn build_fixed_d_cache(p: &LanglandsParams, d: f64, grid: &MellinGrid2D) -> Result<FixedDCache> {
    let mut cache = build_fixed_d_cache_unvalidated(p, d, grid)?;
    let (lo, hi) = default_candidate_range(d);
    cache.validate_range(lo, hi, DEFAULT_RANGE_TOLERANCE, &EvalPolicy::default())?;
    Ok(cache)
}

/// `[D/Y², Y]` with `Y = max(4, 2 D^{1/3})`: both `y1` and `y2` stay below `Y`.
pub fn default_candidate_range(d: f64) -> (f64, f64) {
    let y = (2.0 * d.cbrt()).max(4.0);
    (d / (y * y), y)
}

/// Build the cache without establishing a validity range; every `y2` is
/// accepted by [`w_mellin_fixed_d`] until [`FixedDCache::validate_range`] runs.
pub fn build_fixed_d_cache_unvalidated(p: &LanglandsParams, d: f64, grid: &MellinGrid2D) -> Result<FixedDCache> {
    grid.validate()?;
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::Domain(format!("D = {d} must be positive")));
    }
    let (n1, n2) = (grid.n1 as i64, grid.n2 as i64);
    let tables = if grid.h1 == grid.h2 { Some(Tables::new(p, grid)?) } else { None };
    let log_term = |k1: i64, k2: i64| -> Result<Complex64> {
        match &tables {
            Some(t) => Ok(t.log_term(k1, k2)),
            None => log_term_direct(p, grid, k1, k2),
        }
    };

    // real parts only: locate the peak and the boundary maximum
    let mut re = vec![0.0f64; ((2 * n1 + 1) * (2 * n2 + 1)) as usize];
    let mut peak = f64::NEG_INFINITY;
    let mut boundary = f64::NEG_INFINITY;
    for k2 in -n2..=n2 {
        for k1 in -n1..=n1 {
            let v = log_term(k1, k2)?.re;
            re[((k2 + n2) * (2 * n1 + 1) + k1 + n1) as usize] = v;
            peak = peak.max(v);
            if k1.abs() == n1 || k2.abs() == n2 {
                boundary = boundary.max(v);
            }
        }
    }

    let ln_pi3d = (PI.powi(3) * d).ln();
    let cut = peak - SIGNIFICANCE_LN;
    let mut inner = Vec::with_capacity((2 * n2 + 1) as usize);
    let mut abs_rel = 0.0f64;
    let mut max_log = 0.0f64;
    let mut retained = 0usize;
    for k2 in -n2..=n2 {
        let mut sum = ScaledSum::new();
        for k1 in -n1..=n1 {
            let r = re[((k2 + n2) * (2 * n1 + 1) + k1 + n1) as usize];
            if r < cut {
                continue;
            }
            let phase = k1 as f64 * grid.h1 * ln_pi3d;
            let l = log_term(k1, k2)? - Complex64::new(0.0, phase);
            max_log = max_log.max(l.norm());
            abs_rel += (r - peak).exp();
            retained += 1;
            sum.add(ScaledComplex::from_log(l));
        }
        inner.push(sum.value());
    }
    Ok(FixedDCache {
        d,
        params: *p,
        grid: *grid,
        inner,
        ln_pi3d,
        ln_abs_total: peak + abs_rel.ln(),
        ln_peak: peak,
        // a few ulps of the largest log-magnitude carried by any term
        term_eps: 8.0 * f64::EPSILON * max_log.max(1.0),
        boundary_ln: boundary - peak,
        retained,
        range: None,
        validated: false,
    })
}

impl FixedDCache {
    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn params(&self) -> &LanglandsParams {
        &self.params
    }

    pub fn grid(&self) -> &MellinGrid2D {
        &self.grid
    }

    /// Inner sums for `k2 = -n2..=n2`.
    pub fn inner(&self) -> &[ScaledComplex] {
        &self.inner
    }

    /// Number of `(k1, k2)` terms kept after the significance cut.
    pub fn retained_terms(&self) -> usize {
        self.retained
    }

    /// Natural log of the largest boundary term relative to the peak;
    /// well below `-SIGNIFICANCE_LN` when the box is wide enough.
    pub fn boundary_ln(&self) -> f64 {
        self.boundary_ln
    }

    /// Validated `y2` interval, if validation has run and succeeded.
    pub fn range(&self) -> Option<(f64, f64)> {
        self.range
    }

    fn prefactor_ln(&self, y2: f64) -> f64 {
        let g = &self.grid;
        0.5 * (1.0 - g.sigma1) * self.ln_pi3d + 0.5 * (1.0 - 2.0 * g.sigma2 + g.sigma1) * (PI * y2).ln()
            - (2.0 * PI * PI).ln()
            + (g.h1 * g.h2).ln()
            + self.params.scaling_exponent()
    }

    /// Outer sum at `y2` without range or cancellation checks.
    pub fn evaluate(&self, y2: f64) -> Result<SliceValue> {
        if !(y2 > 0.0 && y2.is_finite()) {
            return Err(Error::Domain(format!("y2 = {y2} must be positive")));
        }
        let n2 = self.grid.n2 as i64;
        let w = self.grid.h2 * (PI * y2).ln();
        let mut sum = ScaledSum::new();
        for (i, v) in self.inner.iter().enumerate() {
            let k2 = i as i64 - n2;
            sum.add(*v * Complex64::from_polar(1.0, -(k2 as f64) * w));
        }
        let pre = self.prefactor_ln(y2);
        let value = sum.value().scale_exp(pre);
        let abs_error = ScaledComplex::exp_real(self.ln_abs_total + pre) * self.term_eps;
        Ok(SliceValue {
            value,
            abs_error,
            cancellation_ln: self.ln_peak + pre - value.ln_abs(),
        })
    }

    /// Shrink `[lo, hi]` by factors of 1.25 until both ends and the geometric
    /// midpoint agree with [`w_eval`] to relative `tol`.
    pub fn validate_range(&mut self, lo: f64, hi: f64, tol: f64, policy: &EvalPolicy) -> Result<()> {
        let ok = |c: &Self, y2: f64| -> Result<bool> {
            let y1 = (c.d / y2).sqrt();
            let reference = w_eval(&c.params, WhittakerArgs::new(y1, y2)?, policy)?;
            let mine = c.evaluate(y2)?;
            Ok(ScaledComplex::rel_diff(&mine.value, &reference.value) <= tol)
        };
        let (mut lo, mut hi) = (lo, hi);
        self.range = None;
        while hi >= lo && !ok(self, hi)? {
            hi /= 1.25;
        }
        while lo <= hi && !ok(self, lo)? {
            lo *= 1.25;
        }
        if lo <= hi && ok(self, (lo * hi).sqrt())? {
            self.range = Some((lo, hi));
        }
        self.validated = true;
        Ok(())
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }
}

/// `e^{π|α-β|} W*(D, y2)` from a cache, restricted to its validated range.
pub fn w_mellin_fixed_d(cache: &FixedDCache, y2: f64) -> Result<Evaluation> {
    if cache.validated {
        let (lo, hi) = cache.range.unwrap_or((f64::NAN, f64::NAN));
        if !(y2 >= lo * (1.0 - 1e-12) && y2 <= hi * (1.0 + 1e-12)) {
            return Err(Error::AccuracyRange { y2, lo, hi });
        }
    }
    let v = cache.evaluate(y2)?;
    if v.cancellation_ln > CANCELLATION_LIMIT_LN {
        return Err(Error::Cancellation {
            digits: v.cancellation_ln / LN_10,
        });
    }
    Ok(Evaluation {
        value: v.value,
        rel_error: v.abs_error.ratio_abs(&v.value),
        algorithm: Algorithm::Mellin,
    })
}
