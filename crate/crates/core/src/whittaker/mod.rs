//! Jacquet's Whittaker function `W(y1, y2)` for SL(3,Z).
//!
//! Every evaluator returns `e^{π|α-β|} W(y1, y2)` as a [`ScaledComplex`];
//! the scaling is shared, so relative comparisons between algorithms are
//! unaffected by it.

pub mod mellin;
pub mod origin;
pub mod small;
pub mod stade;

pub use mellin::{build_fixed_d_cache, default_mellin_grid, w_mellin_fixed_d, FixedDCache};
pub use origin::w_series_origin;
pub use small::{pq_build, w_series_small, PQTable, PQTriple};
pub use stade::{stade_grid, w_stade, w_stade_default, w_stade_refined};

use crate::error::{Error, Result};
use crate::langlands::LanglandsParams;
use crate::scaled::ScaledComplex;
use std::fmt;
use std::str::FromStr;

/// Binary64 working precision in decimal digits.
pub const WORKING_DIGITS: f64 = 16.0;

/// Series fail once the largest term exceeds the result by `10^(digits - 6)`.
pub const CANCELLATION_LIMIT_LN: f64 = (WORKING_DIGITS - 6.0) * std::f64::consts::LN_10;

/// A point `(y1, y2)` with both coordinates positive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WhittakerArgs {
    pub y1: f64,
    pub y2: f64,
}

impl WhittakerArgs {
    pub fn new(y1: f64, y2: f64) -> Result<Self> {
        if !(y1 > 0.0 && y2 > 0.0 && y1.is_finite() && y2.is_finite()) {
            return Err(Error::Domain(format!("Whittaker arguments ({y1}, {y2}) must be positive")));
        }
        Ok(Self { y1, y2 })
    }

    pub fn swapped(&self) -> Self {
        Self { y1: self.y2, y2: self.y1 }
    }

    /// `y1² y2`, constant along the orbits met in the Fourier expansion.
    pub fn d(&self) -> f64 {
        self.y1 * self.y1 * self.y2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Stade,
    Origin,
    SmallArg,
    Mellin,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::Stade, Algorithm::Origin, Algorithm::SmallArg, Algorithm::Mellin];

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Stade => "stade",
            Algorithm::Origin => "origin",
            Algorithm::SmallArg => "smallarg",
            Algorithm::Mellin => "mellin",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown algorithm '{s}'")))
    }
}

/// A Whittaker value with its estimated relative error and provenance.
#[derive(Clone, Copy, Debug)]
pub struct Evaluation {
    /// `e^{π|α-β|} W(y1, y2)`.
    pub value: ScaledComplex,
    pub rel_error: f64,
    pub algorithm: Algorithm,
}

impl Evaluation {
    /// `W(y1, y2)` itself.
    pub fn unscaled(&self, p: &LanglandsParams) -> ScaledComplex {
        self.value.scale_exp(-p.scaling_exponent())
    }

    pub(crate) fn conj(mut self) -> Self {
        self.value = self.value.conj();
        self
    }
}

/// Term cap and target accuracy for the power-series algorithms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesBudget {
    pub nmax: usize,
    pub target_eps: f64,
}

impl Default for SeriesBudget {
    fn default() -> Self {
        Self {
            nmax: 400,
            target_eps: 1e-17,
        }
    }
}

impl SeriesBudget {
    pub fn validate(&self) -> Result<()> {
        if self.nmax < 1 || !(self.target_eps > 0.0) {
            return Err(Error::Domain("series budget needs nmax >= 1 and target_eps > 0".into()));
        }
        Ok(())
    }
}

/// Routing rule for [`w_eval`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalPolicy {
    /// Arguments with `min(y1, y2)` at or below this go to the small-argument series.
    pub small_cut: f64,
    /// Series results with a larger error estimate are recomputed by Stade's integral.
    pub series_tolerance: f64,
    pub budget: SeriesBudget,
}

impl Default for EvalPolicy {
    fn default() -> Self {
        Self {
            small_cut: 1.0,
            series_tolerance: 1e-11,
            budget: SeriesBudget::default(),
        }
    }
}

/// Evaluate with the best-suited algorithm.
///
/// Arguments are first swapped (with conjugation) so that `y1 ≤ y2`; the
/// small-argument series is used when `y1 ≤ small_cut`, Stade's integral
/// otherwise, and also when the series reports excessive cancellation or an
/// error estimate above `series_tolerance`.
pub fn w_eval(p: &LanglandsParams, a: WhittakerArgs, policy: &EvalPolicy) -> Result<Evaluation> {
    if a.y1 > a.y2 {
        return Ok(eval_ordered(p, a.swapped(), policy)?.conj());
    }
    eval_ordered(p, a, policy)
}

fn eval_ordered(p: &LanglandsParams, a: WhittakerArgs, policy: &EvalPolicy) -> Result<Evaluation> {
    if a.y1 <= policy.small_cut && !p.is_degenerate() {
        match w_series_small(p, a, policy.budget) {
            Ok(e) if e.rel_error <= policy.series_tolerance => return Ok(e),
            Ok(_) | Err(Error::Cancellation { .. }) | Err(Error::SeriesNonConvergence { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    w_stade_default(p, a)
}
