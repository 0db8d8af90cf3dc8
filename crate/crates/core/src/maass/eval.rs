//! Evaluation of even Maass forms from their cosine Fourier expansion.

use super::coefficients::CoefficientTable;
use super::cutoff::{cutoff_c, Cutoff};
use super::enumerate::{enumerate_cd, mod_inverse};
use super::iwasawa::{iwasawa_act, GroupWord, H3Point};
use crate::error::{Error, Result};
use crate::langlands::LanglandsParams;
use crate::quadrature::MellinGrid2D;
use crate::scaled::{ScaledComplex, ScaledSum};
use crate::whittaker::mellin::build_fixed_d_cache;
use crate::whittaker::{
    default_mellin_grid, w_eval, w_stade_default, Algorithm, EvalPolicy, Evaluation, FixedDCache, WhittakerArgs,
    CANCELLATION_LIMIT_LN,
};
use num_complex::Complex64;
use std::collections::{BTreeSet, HashMap};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// A Maass form given by Langlands parameters and Fourier coefficients.
#[derive(Clone, Debug)]
pub struct MaassForm {
    params: LanglandsParams,
    coeffs: CoefficientTable,
    cutoff: Cutoff,
}

impl MaassForm {
    /// Runs [`cutoff_c`] for the accuracy goal `eps`.
    pub fn new(params: LanglandsParams, coeffs: CoefficientTable, eps: f64) -> Result<Self> {
        let cutoff = cutoff_c(&params, eps, &EvalPolicy::default())?;
        Ok(Self::with_cutoff(params, coeffs, cutoff))
    }

    /// Reuse a cutoff computed earlier for the same parameters.
    pub fn with_cutoff(params: LanglandsParams, coeffs: CoefficientTable, cutoff: Cutoff) -> Self {
        Self { params, coeffs, cutoff }
    }

    pub fn params(&self) -> &LanglandsParams {
        &self.params
    }

    pub fn coeffs(&self) -> &CoefficientTable {
        &self.coeffs
    }

    pub fn cutoff(&self) -> &Cutoff {
        &self.cutoff
    }

    pub fn eps(&self) -> f64 {
        self.cutoff.eps
    }
}

/// Where Whittaker values come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Backend {
    /// Fixed-D caches, one per `D = (m1 y1)² m2 y2`.
    #[default]
    FixedD,
    /// Stade's integral for every term.
    Stade,
    /// The [`w_eval`] dispatcher for every term.
    Auto,
}

impl FromStr for Backend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fixed-d" | "mellin" => Ok(Backend::FixedD),
            "stade" => Ok(Backend::Stade),
            "auto" => Ok(Backend::Auto),
            _ => Err(Error::Domain(format!("unknown backend '{s}' (fixed-d, stade, auto)"))),
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::FixedD => "fixed-d",
            Backend::Stade => "stade",
            Backend::Auto => "auto",
        })
    }
}

/// One term `weight · W(u, v)` of the bracket for `(m1, m2)`.
/// `c = 0` marks the leading `cos(2πm2x2) cos(2πm1x1) W(m1y1, m2y2)` term.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Term {
    pub c: i64,
    pub d: i64,
    pub u: f64,
    pub v: f64,
    pub weight: f64,
}

/// Bounds of the outer `(m1, m2)` loops for cutoff `C` at `z`.
///
/// Every bracket argument satisfies `|c z2 + d| ≥ c y2 ≥ y2`, so terms
/// need `m1 < C/(y1 min(1, y2))`, and the annulus is non-empty only for
/// `m2 < C³/((m1 y1)² y2)`.
pub fn outer_bounds(cutoff: f64, z: &H3Point) -> (u32, impl Fn(u32) -> u32) {
    let (y1, y2) = (z.y1, z.y2);
    let m1_max = (cutoff / (y1 * y2.min(1.0))).ceil() as u32;
    let m2_max = move |m1: u32| {
        let m1y1 = m1 as f64 * y1;
        (cutoff / y2).max(cutoff.powi(3) / (m1y1 * m1y1 * y2)).ceil() as u32
    };
    (m1_max, m2_max)
}

/// The bracket terms for `(m1, m2)` that survive truncation, ordered by `(c, d)`.
pub fn bracket_terms(cutoff: f64, z: &H3Point, m1: u32, m2: u32) -> Vec<Term> {
    let (m1f, m2f) = (m1 as f64, m2 as f64);
    let (m1y1, m2y2) = (m1f * z.y1, m2f * z.y2);
    let mut out = Vec::new();
    if m1y1 < cutoff && m2y2 < cutoff {
        out.push(Term {
            c: 0,
            d: 0,
            u: m1y1,
            v: m2y2,
            weight: (2.0 * PI * m2f * z.x2).cos() * (2.0 * PI * m1f * z.x1).cos(),
        });
    }
    let z2 = Complex64::new(z.x2, z.y2);
    for (c, d) in enumerate_cd(cutoff, m1y1, m2y2, z2) {
        let w = c as f64 * z2 + d as f64;
        let q = w.norm_sqr();
        let a = mod_inverse(d, c) as f64;
        let re_inv = w.re / q;
        let weight = (2.0 * PI * m1f * (c as f64 * z.x3 + d as f64 * z.x1)).cos()
            * (2.0 * PI * (m2f / c as f64) * (a - re_inv)).cos();
        out.push(Term {
            c,
            d,
            u: m1y1 * q.sqrt(),
            v: m2y2 / q,
            weight,
        });
    }
    out
}

/// Counters reported alongside a Maass value.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct EvalStats {
    /// Whittaker evaluations performed.
    pub terms: usize,
    /// `(m1, m2)` pairs with at least one term.
    pub pairs: usize,
    /// Largest `m1` with a term reaching `eps·M`.
    pub max_m1: u32,
    /// Largest `m2` with a term reaching `eps·M`; the number of coefficients needed.
    pub max_m2: u32,
    /// Distinct values of `D` touched by this evaluation.
    pub distinct_d: usize,
    /// Caches built during this evaluation (the rest were reused).
    pub caches_built: usize,
    /// Fixed-D values rejected in favour of [`w_eval`].
    pub fallbacks: usize,
}

/// A Maass form value with an estimate of its quadrature error.
#[derive(Clone, Debug)]
pub struct MaassValue {
    pub value: Complex64,
    pub abs_error: f64,
    pub stats: EvalStats,
}

/// `D` rounded to 12 significant digits.
fn d_key(d: f64) -> String {
    format!("{d:.11e}")
}

/// Evaluates one form at many points, keeping fixed-D caches between calls.
pub struct MaassEvaluator<'a> {
    form: &'a MaassForm,
    backend: Backend,
    policy: EvalPolicy,
    grid: MellinGrid2D,
    caches: HashMap<String, FixedDCache>,
}

impl<'a> MaassEvaluator<'a> {
    pub fn new(form: &'a MaassForm, backend: Backend) -> Self {
        Self {
            form,
            backend,
            policy: EvalPolicy::default(),
            grid: default_mellin_grid(form.params()),
            caches: HashMap::new(),
        }
    }

    /// Override the Mellin grid used for new caches; existing caches are dropped.
    pub fn with_grid(mut self, grid: MellinGrid2D) -> Self {
        self.grid = grid;
        self.caches.clear();
        self
    }

    pub fn cache_count(&self) -> usize {
        self.caches.len()
    }

    fn whittaker(&mut self, t: &Term, d: f64, stats: &mut EvalStats) -> Result<Evaluation> {
        let p = *self.form.params();
        let args = WhittakerArgs::new(t.u, t.v)?;
        match self.backend {
            Backend::Stade => w_stade_default(&p, args),
            Backend::Auto => w_eval(&p, args, &self.policy),
            Backend::FixedD => {
                let key = d_key(d);
                if !self.caches.contains_key(&key) {
                    let cache = build_fixed_d_cache(&p, d, &self.grid)?;
                    self.caches.insert(key.clone(), cache);
                    stats.caches_built += 1;
                }
                let cache = &self.caches[&key];
                let sv = cache.evaluate(t.v)?;
                let in_range = cache.range().is_some_and(|(lo, hi)| t.v >= lo && t.v <= hi);
                // outside the validated range a value is still usable when its
                // error bound is below the truncation threshold
                let accepted = (in_range && sv.cancellation_ln <= CANCELLATION_LIMIT_LN)
                    || sv.abs_error.ln_abs() <= self.form.cutoff().threshold_ln();
                if accepted {
                    Ok(Evaluation {
                        value: sv.value,
                        rel_error: sv.abs_error.ratio_abs(&sv.value),
                        algorithm: Algorithm::Mellin,
                    })
                } else {
                    stats.fallbacks += 1;
                    w_eval(&p, args, &self.policy)
                }
            }
        }
    }

    /// `f(z)` from the truncated expansion.
    ///
    /// A coefficient may be absent from the table only if every term it
    /// multiplies stays below `eps·M`; otherwise the first such `(m1, m2)`
    /// is reported as missing.
    pub fn eval(&mut self, z: &H3Point) -> Result<MaassValue> {
        let cut = *self.form.cutoff();
        let (m1_max, m2_max) = outer_bounds(cut.c, z);
        let mut stats = EvalStats::default();
        let mut total = ScaledSum::new();
        let mut err_ln = ScaledSum::new();
        let mut ds = BTreeSet::new();
        for m1 in 1..=m1_max {
            for m2 in 1..=m2_max(m1) {
                let terms = bracket_terms(cut.c, z, m1, m2);
                if terms.is_empty() {
                    continue;
                }
                stats.pairs += 1;
                let d = (m1 as f64 * z.y1).powi(2) * m2 as f64 * z.y2;
                ds.insert(d_key(d));
                let mut bracket = ScaledSum::new();
                let mut bracket_err = ScaledSum::new();
                let mut significant = false;
                for t in &terms {
                    let w = self.whittaker(t, d, &mut stats)?;
                    stats.terms += 1;
                    if cut.is_significant(&w.value) {
                        significant = true;
                    }
                    bracket.add(w.value * t.weight);
                    bracket_err.add(ScaledComplex::exp_real(w.value.ln_abs() + (w.rel_error * t.weight.abs()).ln()));
                }
                if significant {
                    stats.max_m1 = stats.max_m1.max(m1);
                    stats.max_m2 = stats.max_m2.max(m2);
                }
                let a = match self.form.coeffs().get(m1, m2) {
                    Some(a) => a,
                    None if significant => return Err(Error::MissingCoefficient { m1, m2 }),
                    None => continue,
                };
                let k = 4.0 * a / (m1 as f64 * m2 as f64);
                total.add(bracket.value() * k);
                err_ln.add(bracket_err.value() * k.norm());
            }
        }
        stats.distinct_d = ds.len();
        let unscale = -self.form.params().scaling_exponent();
        Ok(MaassValue {
            value: total.value().scale_exp(unscale).to_complex(),
            abs_error: err_ln.value().scale_exp(unscale).abs(),
            stats,
        })
    }
}

/// `f(z)` with fixed-D caches that live for this call only.
pub fn eval_maass(form: &MaassForm, z: &H3Point) -> Result<MaassValue> {
    MaassEvaluator::new(form, Backend::FixedD).eval(z)
}

/// Both values and their difference for an automorphy check.
#[derive(Clone, Debug)]
pub struct Residual {
    pub z: H3Point,
    pub gz: H3Point,
    pub f_z: MaassValue,
    pub f_gz: MaassValue,
    pub residual: f64,
}

/// `|f(z) - f(g z)|` for the matrix of `word`.
pub fn automorphy_residual(ev: &mut MaassEvaluator<'_>, z: &H3Point, word: &GroupWord) -> Result<Residual> {
    let gz = iwasawa_act(&word.matrix(), z)?;
    let f_z = ev.eval(z)?;
    let f_gz = ev.eval(&gz)?;
    let residual = (f_z.value - f_gz.value).norm();
    Ok(Residual {
        z: *z,
        gz,
        f_z,
        f_gz,
        residual,
    })
}

/// Largest `m2` whose terms reach `eps·M` at `z`, found without coefficients.
///
/// For each `m1` and each distinct `|c z2 + d|²` the tail `|W(u, m2 y2/q)|`
/// decreases in `m2`, so the crossing is located by a descending geometric
/// search followed by bisection. Agrees with [`EvalStats::max_m2`].
pub fn coefficient_demand(p: &LanglandsParams, cut: &Cutoff, z: &H3Point, policy: &EvalPolicy) -> Result<u32> {
    let (m1_max, m2_max) = outer_bounds(cut.c, z);
    let z2 = Complex64::new(z.x2, z.y2);
    let mut best_m2 = 0u32;
    for m1 in 1..=m1_max {
        let m1y1 = m1 as f64 * z.y1;
        // smallest lower bound: m2 = 1
        let mut qs: Vec<f64> = enumerate_cd(cut.c, m1y1, z.y2, z2)
            .into_iter()
            .map(|(c, d)| (c as f64 * z2 + d as f64).norm_sqr())
            .collect();
        if m1y1 < cut.c {
            qs.push(1.0);
        }
        qs.sort_by(f64::total_cmp);
        qs.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs());
        for q in qs {
            let u = m1y1 * q.sqrt();
            if u >= cut.c {
                continue;
            }
            // q = 1 stands for the leading term, whose bound is m2 y2 < C
            let hi = ((cut.c * q / z.y2).ceil() as u32).min(m2_max(m1));
            let sig = |m2: u32| -> Result<bool> {
                let v = m2 as f64 * z.y2 / q;
                if v >= cut.c {
                    return Ok(false);
                }
                Ok(cut.is_significant(&w_eval(p, WhittakerArgs::new(u, v)?, policy)?.value))
            };
            if hi <= best_m2 {
                continue;
            }
            let mut upper = hi + 1;
            let mut m = hi;
            let found = loop {
                if sig(m)? {
                    break Some(m);
                }
                if m <= best_m2.max(1) {
                    break None;
                }
                upper = m;
                m = ((m as f64 / 1.25).floor() as u32).max(best_m2.max(1));
            };
            let Some(mut lo) = found else { continue };
            while upper - lo > 1 {
                let mid = lo + (upper - lo) / 2;
                if sig(mid)? {
                    lo = mid;
                } else {
                    upper = mid;
                }
            }
            best_m2 = best_m2.max(lo);
        }
    }
    Ok(best_m2)
}
