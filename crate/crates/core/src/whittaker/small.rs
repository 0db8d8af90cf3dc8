//! Power series in the small argument `y1` whose coefficients are
//! K-Bessel functions of `y2` times polynomials.
//!
//! For an ordering `δ` the `n`-th coefficient integral is
//! `I_n(y) = (-2)^{-n} (P_n(y) K_μ(2πy) + 2πy Q_n(y) K_μ'(2πy))` with
//! `μ = (δ2 - δ3)/2`, where `P_0 = 4`, `Q_0 = 0` and
//! `P_{n+1} = y P_n' + ((2πy)² + μ²) Q_n + a_n P_n`,
//! `Q_{n+1} = P_n + y Q_n' + a_n Q_n`, `a_n = 3δ1/2 + 2n + 2`.
//! The residues in `s1` of `Γ((s1+δ1)/2)` are `2(-1)^n/n!`, which puts a
//! factor 2 in front of each series.

use super::stade::roundoff;
use super::{Algorithm, Evaluation, SeriesBudget, WhittakerArgs, CANCELLATION_LIMIT_LN};
use crate::error::{Error, Result};
use crate::langlands::LanglandsParams;
use crate::scaled::{ScaledComplex, ScaledSum};
use crate::specfun::bessel::{bessel_k_pair, BesselOrder};
use crate::specfun::gamma::log_gamma;
use num_complex::Complex64;
use std::f64::consts::{LN_10, PI};

const FOUR_PI_SQ: f64 = 4.0 * PI * PI;

fn ci(im: f64) -> Complex64 {
    Complex64::new(0.0, im)
}

/// Generates `P_n`, `Q_n` divided by `c_n = (1+(δ1-δ2)/2)_n (1+(δ1-δ3)/2)_n 2^n n!`,
/// which keeps the coefficients bounded for large `n`.
#[derive(Clone, Debug)]
struct PQGen {
    n: usize,
    p: Vec<Complex64>,
    q: Vec<Complex64>,
    d1: Complex64,
    mu2: f64,
    poch_a: Complex64,
    poch_b: Complex64,
}

impl PQGen {
    fn new(delta: [f64; 3]) -> Self {
        let [d1, d2, d3] = delta;
        let half = 0.5 * (d2 - d3);
        Self {
            n: 0,
            p: vec![Complex64::new(4.0, 0.0)],
            q: vec![Complex64::new(0.0, 0.0)],
            d1: ci(d1),
            mu2: -half * half,
            poch_a: 1.0 + ci(0.5 * (d1 - d2)),
            poch_b: 1.0 + ci(0.5 * (d1 - d3)),
        }
    }

    fn step(&mut self) {
        let nf = self.n as f64;
        let an = 1.5 * self.d1 + 2.0 * nf + 2.0;
        let norm = 1.0 / ((self.poch_a + nf) * (self.poch_b + nf) * (2.0 * (nf + 1.0)));
        let len = self.p.len().max(self.q.len() + 2);
        let get = |v: &[Complex64], j: usize| v.get(j).copied().unwrap_or_default();
        let mut p = Vec::with_capacity(len);
        let mut q = Vec::with_capacity(len);
        for j in 0..len {
            let jf = j as f64;
            let (pj, qj) = (get(&self.p, j), get(&self.q, j));
            let q2 = if j >= 2 { get(&self.q, j - 2) } else { Complex64::default() };
            p.push((pj * (jf + an) + q2 * FOUR_PI_SQ + qj * self.mu2) * norm);
            q.push((pj + qj * (jf + an)) * norm);
        }
        trim(&mut p);
        trim(&mut q);
        self.p = p;
        self.q = q;
        self.n += 1;
    }
}

fn trim(v: &mut Vec<Complex64>) {
    while v.len() > 1 && v.last().is_some_and(|c| c.re == 0.0 && c.im == 0.0) {
        v.pop();
    }
}

fn horner(c: &[Complex64], y: f64) -> Complex64 {
    c.iter().rev().fold(Complex64::default(), |acc, &a| acc * y + a)
}

/// Normalized `P_0..P_nmax`, `Q_0..Q_nmax` for one ordering.
#[derive(Clone, Debug)]
pub struct PQTriple {
    pub delta: [f64; 3],
    /// `P_n / c_n`, coefficients in ascending powers of `y`.
    pub p: Vec<Vec<Complex64>>,
    /// `Q_n / c_n`.
    pub q: Vec<Vec<Complex64>>,
}

impl PQTriple {
    /// `c_n = (1+(δ1-δ2)/2)_n (1+(δ1-δ3)/2)_n 2^n n!`.
    pub fn normalizer(&self, n: usize) -> Complex64 {
        let [d1, d2, d3] = self.delta;
        let (a, b) = (1.0 + ci(0.5 * (d1 - d2)), 1.0 + ci(0.5 * (d1 - d3)));
        (0..n).fold(Complex64::new(1.0, 0.0), |acc, k| {
            let kf = k as f64;
            acc * (a + kf) * (b + kf) * (2.0 * (kf + 1.0))
        })
    }

    /// Unnormalized coefficients of `P_n`.
    pub fn raw_p(&self, n: usize) -> Vec<Complex64> {
        let c = self.normalizer(n);
        self.p[n].iter().map(|v| v * c).collect()
    }

    /// Unnormalized coefficients of `Q_n`.
    pub fn raw_q(&self, n: usize) -> Vec<Complex64> {
        let c = self.normalizer(n);
        self.q[n].iter().map(|v| v * c).collect()
    }

    /// Polynomial degree of `P_n` (0 for the zero polynomial).
    pub fn degree_p(&self, n: usize) -> usize {
        degree(&self.p[n])
    }

    pub fn degree_q(&self, n: usize) -> usize {
        degree(&self.q[n])
    }
}

fn degree(v: &[Complex64]) -> usize {
    v.iter().rposition(|c| c.re != 0.0 || c.im != 0.0).unwrap_or(0)
}

/// Tables for the three cyclic orderings (α,β,γ), (β,γ,α), (γ,α,β).
#[derive(Clone, Debug)]
pub struct PQTable {
    pub series: Vec<PQTriple>,
}

/// Polynomials for one ordering up to degree index `nmax`.
pub fn pq_build(delta: [f64; 3], nmax: usize) -> PQTriple {
    let mut g = PQGen::new(delta);
    let mut p = vec![g.p.clone()];
    let mut q = vec![g.q.clone()];
    for _ in 0..nmax {
        g.step();
        p.push(g.p.clone());
        q.push(g.q.clone());
    }
    PQTriple { delta, p, q }
}

impl PQTable {
    pub fn new(p: &LanglandsParams, nmax: usize) -> Self {
        Self {
            series: p.cyclic().iter().map(|&d| pq_build(d, nmax)).collect(),
        }
    }
}

/// The closed form `I_n(y) = (-2)^{-n} (P_n K_μ(2πy) + 2πy Q_n K_μ'(2πy))`
/// for ordering `delta`.
pub fn i_n_closed_form(delta: [f64; 3], n: usize, y: f64) -> Result<ScaledComplex> {
    let t = pq_build(delta, n);
    let (p, q) = (t.raw_p(n), t.raw_q(n));
    let k = bessel_k_pair(BesselOrder::imaginary(0.5 * (delta[1] - delta[2])), 2.0 * PI * y)?;
    let x = 2.0 * PI * y;
    let m = horner(&p, y) * k.value + x * horner(&q, y) * k.derivative;
    Ok(ScaledComplex::from_complex(m * (-2.0f64).powi(-(n as i32))).scale_exp(k.log_scale))
}

/// One ordering's series, with coefficients produced on demand.
trait Coefficients {
    fn get(&mut self, n: usize) -> Option<(&[Complex64], &[Complex64])>;
}

struct Lazy(PQGen);

impl Coefficients for Lazy {
    fn get(&mut self, n: usize) -> Option<(&[Complex64], &[Complex64])> {
        while self.0.n < n {
            self.0.step();
        }
        Some((&self.0.p, &self.0.q))
    }
}

impl Coefficients for &PQTriple {
    fn get(&mut self, n: usize) -> Option<(&[Complex64], &[Complex64])> {
        Some((self.p.get(n)?, self.q.get(n)?))
    }
}

struct SeriesOut {
    value: ScaledComplex,
    peak_ln: f64,
    tail: f64,
}

fn one_series<C: Coefficients>(delta: [f64; 3], a: WhittakerArgs, budget: SeriesBudget, mut coeffs: C) -> Result<SeriesOut> {
    let [d1, d2, d3] = delta;
    let (l1, l2) = ((PI * a.y1).ln(), (PI * a.y2).ln());
    let k = bessel_k_pair(BesselOrder::imaginary(0.5 * (d2 - d3)), 2.0 * PI * a.y2)?;
    let prefactor = ScaledComplex::from_log(
        (1.0 + ci(d1)) * l1
            + log_gamma(ci(0.5 * (d2 - d1)))?
            + log_gamma(ci(0.5 * (d3 - d1)))?
            + (1.0 + ci(0.5 * d1)) * l2,
    )
    .scale_exp(k.log_scale)
        * 2.0;
    let x = (PI * a.y1).powi(2);
    let two_pi_y = 2.0 * PI * a.y2;
    let mut sum = ScaledSum::new();
    let mut power = 1.0f64;
    let mut max_term = 0.0f64;
    let mut quiet = 0;
    for n in 0..=budget.nmax {
        let Some((p, q)) = coeffs.get(n) else {
            break;
        };
        let term = (horner(p, a.y2) * k.value + two_pi_y * horner(q, a.y2) * k.derivative) * power;
        let mag = term.norm();
        sum.add(ScaledComplex::from_complex(term));
        max_term = max_term.max(mag);
        if n > 0 && mag < budget.target_eps * 1e-3 * max_term {
            quiet += 1;
            if quiet >= 2 {
                return Ok(SeriesOut {
                    value: sum.value() * prefactor,
                    peak_ln: prefactor.ln_abs() + max_term.ln(),
                    tail: mag / max_term,
                });
            }
        } else {
            quiet = 0;
        }
        power *= x;
    }
    Err(Error::SeriesNonConvergence { terms: budget.nmax })
}

fn combine(parts: Vec<SeriesOut>, p: &LanglandsParams) -> Result<Evaluation> {
    let mut total = ScaledSum::new();
    let mut peak = f64::NEG_INFINITY;
    let mut tail = 0.0f64;
    for s in &parts {
        total.add(s.value);
        peak = peak.max(s.peak_ln);
        tail = tail.max(s.tail);
    }
    let value = total.value();
    let cancel = peak - value.ln_abs();
    if cancel > CANCELLATION_LIMIT_LN {
        return Err(Error::Cancellation { digits: cancel / LN_10 });
    }
    Ok(Evaluation {
        value: value.scale_exp(p.scaling_exponent()),
        rel_error: tail * cancel.exp().max(1.0) + roundoff(cancel),
        algorithm: Algorithm::SmallArg,
    })
}

/// `e^{π|α-β|} W(y1, y2)` from the three series in powers of `(πy1)²`.
/// When `y1 > y2` the series is summed at `(y2, y1)` and conjugated.
pub fn w_series_small(p: &LanglandsParams, a: WhittakerArgs, budget: SeriesBudget) -> Result<Evaluation> {
    p.require_nondegenerate()?;
    budget.validate()?;
    if a.y1 > a.y2 {
        return Ok(w_series_small(p, a.swapped(), budget)?.conj());
    }
    let parts = p
        .cyclic()
        .iter()
        .map(|&d| one_series(d, a, budget, Lazy(PQGen::new(d))))
        .collect::<Result<Vec<_>>>()?;
    combine(parts, p)
}

/// [`w_series_small`] with precomputed polynomials.
pub fn w_series_small_with(p: &LanglandsParams, a: WhittakerArgs, budget: SeriesBudget, pq: &PQTable) -> Result<Evaluation> {
    p.require_nondegenerate()?;
    budget.validate()?;
    if a.y1 > a.y2 {
        return Ok(w_series_small_with(p, a.swapped(), budget, pq)?.conj());
    }
    let parts = pq
        .series
        .iter()
        .map(|t| one_series(t.delta, a, budget, t))
        .collect::<Result<Vec<_>>>()?;
    combine(parts, p)
}
