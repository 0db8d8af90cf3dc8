//! The truncation radius `C` and the significance threshold derived from it.

use crate::error::{Error, Result};
use crate::langlands::LanglandsParams;
use crate::scaled::ScaledComplex;
use crate::whittaker::{w_eval, EvalPolicy, WhittakerArgs};

/// First point of the scan grid.
pub const SCAN_START: f64 = 0.05;
/// Ratio of the geometric scan grid.
pub const SCAN_RATIO: f64 = 1.25;
const MAX_SHELLS: usize = 64;
/// Shells that must fall below `1e-3·eps·M` past the peak before the scan stops.
const QUIET_SHELLS: usize = 3;

/// Result of [`cutoff_c`].
///
/// `|W(y1, y2)| < eps·M` at every scanned point with `y1 > C` or `y2 > C`,
/// where `M` is the largest scanned `|W|`. Both `M` and the threshold refer
/// to the scaled values `e^{π|α-β|} W`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cutoff {
    pub c: f64,
    pub eps: f64,
    /// `ln M`.
    pub ln_max: f64,
    /// Where `M` was attained.
    pub argmax: (f64, f64),
    /// Number of Whittaker evaluations spent on the scan.
    pub evaluations: usize,
}

impl Cutoff {
    /// `ln(eps·M)`.
    pub fn threshold_ln(&self) -> f64 {
        self.ln_max + self.eps.ln()
    }

    /// Whether a scaled Whittaker value reaches `eps·M`.
    pub fn is_significant(&self, w: &ScaledComplex) -> bool {
        w.ln_abs() >= self.threshold_ln()
    }
}

/// Scan `|W|` on the grid `g_k = 0.05·1.25^k` in both arguments.
///
/// Shell `k` holds the points whose larger coordinate is `g_k`; by the dual
/// symmetry `|W(y1, y2)| = |W(y2, y1)|` only `y1 = g_k ≥ y2` is evaluated.
/// The scan continues until three consecutive shells past the peak fall
/// below `1e-3·eps·M`. `C` is the grid point just above the last shell
/// reaching `eps·M`.
pub fn cutoff_c(p: &LanglandsParams, eps: f64, policy: &EvalPolicy) -> Result<Cutoff> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Domain(format!("eps = {eps} must lie in (0, 1)")));
    }
    let grid = |k: usize| SCAN_START * SCAN_RATIO.powi(k as i32);
    let mut shells: Vec<f64> = Vec::new();
    let mut ln_max = f64::NEG_INFINITY;
    let mut argmax = (f64::NAN, f64::NAN);
    let mut evaluations = 0usize;
    let mut peak_shell = 0usize;
    let mut quiet = 0usize;
    for k in 0..MAX_SHELLS {
        let y1 = grid(k);
        let mut shell = f64::NEG_INFINITY;
        for j in 0..=k {
            let y2 = grid(j);
            let w = w_eval(p, WhittakerArgs::new(y1, y2)?, policy)?;
            evaluations += 1;
            let l = w.value.ln_abs();
            if l > ln_max {
                ln_max = l;
                argmax = (y1, y2);
                peak_shell = k;
            }
            shell = shell.max(l);
        }
        shells.push(shell);
        let quiet_ln = ln_max + eps.ln() - 1e3f64.ln();
        if k > peak_shell && shell < quiet_ln {
            quiet += 1;
            if quiet >= QUIET_SHELLS {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    if quiet < QUIET_SHELLS {
        return Err(Error::NonConvergence { steps: MAX_SHELLS });
    }
    let thr = ln_max + eps.ln();
    let last = shells.iter().rposition(|&s| s >= thr).unwrap_or(0);
    Ok(Cutoff {
        c: grid(last + 1),
        eps,
        ln_max,
        argmax,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monotone_in_eps() {
        let p = LanglandsParams::from_imag(1.3, 2.1);
        let pol = EvalPolicy::default();
        let loose = cutoff_c(&p, 1e-3, &pol).unwrap();
        let tight = cutoff_c(&p, 1e-6, &pol).unwrap();
        let doubled = cutoff_c(&p, 2e-6, &pol).unwrap();
        assert!(loose.c <= tight.c);
        assert!(doubled.c <= tight.c);
        assert_eq!(loose.ln_max, tight.ln_max);
        assert!(loose.c > loose.argmax.0.max(loose.argmax.1));
    }

    #[test]
    fn rejects_bad_eps() {
        let p = LanglandsParams::from_imag(1.3, 2.1);
        assert!(cutoff_c(&p, 0.0, &EvalPolicy::default()).is_err());
        assert!(cutoff_c(&p, 2.0, &EvalPolicy::default()).is_err());
    }
}
