//! Double power series about the origin, from summing the residues of the
//! double Mellin integral over all six parameter orderings.

use super::stade::roundoff;
use super::{Algorithm, Evaluation, SeriesBudget, WhittakerArgs, CANCELLATION_LIMIT_LN};
use crate::error::{Error, Result};
use crate::langlands::LanglandsParams;
use crate::scaled::{ScaledComplex, ScaledSum};
use crate::specfun::gamma::log_gamma;
use num_complex::Complex64;
use std::f64::consts::{LN_10, PI};

fn ci(im: f64) -> Complex64 {
    Complex64::new(0.0, im)
}

/// Leading `(m, n) = (0, 0)` term for the ordering `δ` (imaginary parts):
/// `(πy1)^{1+δ1} (πy2)^{1-δ2} Γ((δ2-δ3)/2) Γ((δ2-δ1)/2) Γ((δ3-δ1)/2)`.
pub fn origin_leading_term(delta: [f64; 3], a: WhittakerArgs) -> Result<ScaledComplex> {
    let [d1, d2, d3] = delta;
    let (l1, l2) = ((PI * a.y1).ln(), (PI * a.y2).ln());
    let ln = (1.0 + ci(d1)) * l1
        + (1.0 - ci(d2)) * l2
        + log_gamma(ci(0.5 * (d2 - d3)))?
        + log_gamma(ci(0.5 * (d2 - d1)))?
        + log_gamma(ci(0.5 * (d3 - d1)))?;
    Ok(ScaledComplex::from_log(ln))
}

/// `e^{π|α-β|} W(y1, y2)` from the origin double series.
///
/// Each residue of `Γ((s+δ)/2)` in `s` is `2(-1)^n/n!`, so the double
/// residue sum carries an overall factor 4.
///
/// For each ordering the inner sum is
/// `Σ (A)_{m+n} X^n Y^m / ((A)_m (B)_m (A)_n (C)_n m! n!)`
/// with `A = 1 + (δ1-δ2)/2`, `B = 1 + (δ3-δ2)/2`, `C = 1 + (δ1-δ3)/2`,
/// `X = (πy1)²`, `Y = (πy2)²`, summed along anti-diagonals `m + n = s`.
pub fn w_series_origin(p: &LanglandsParams, a: WhittakerArgs, budget: SeriesBudget) -> Result<Evaluation> {
    p.require_nondegenerate()?;
    budget.validate()?;
    let x = (PI * a.y1).powi(2);
    let y = (PI * a.y2).powi(2);
    let mut total = ScaledSum::new();
    let mut tail = 0.0f64;
    let mut peak_ln = f64::NEG_INFINITY;
    for delta in p.permutations() {
        let [d1, d2, d3] = delta;
        let ca = 1.0 + ci(0.5 * (d1 - d2));
        let cb = 1.0 + ci(0.5 * (d3 - d2));
        let cc = 1.0 + ci(0.5 * (d1 - d3));
        let lead = origin_leading_term(delta, a)?;

        // first column t(m, 0), extended one diagonal at a time
        let mut col0: Vec<Complex64> = vec![Complex64::new(1.0, 0.0)];
        let mut rows: Vec<Vec<Complex64>> = vec![vec![Complex64::new(1.0, 0.0)]];
        let mut perm_sum = ScaledSum::new();
        let mut perm_max = 0.0f64;
        let mut quiet = 0usize;
        let mut converged = false;
        for s in 0..=budget.nmax {
            if s > 0 {
                let m = (s - 1) as f64;
                let next = col0[s - 1] * y / ((cb + m) * (m + 1.0));
                col0.push(next);
                rows.push(vec![next]);
                // extend row m (n = s - m) for every earlier row
                for (mi, row) in rows.iter_mut().enumerate().take(s) {
                    let n = row.len() - 1;
                    let nf = n as f64;
                    let t = row[n] * (ca + (mi + n) as f64) * x / ((ca + nf) * (cc + nf) * (nf + 1.0));
                    row.push(t);
                }
            }
            let mut diag = Complex64::new(0.0, 0.0);
            let mut diag_max = 0.0f64;
            for (mi, row) in rows.iter().enumerate().take(s + 1) {
                let t = row[s - mi];
                diag += t;
                diag_max = diag_max.max(t.norm());
            }
            perm_sum.add(ScaledComplex::from_complex(diag));
            perm_max = perm_max.max(diag_max);
            if diag_max < budget.target_eps * 1e-3 * perm_max {
                quiet += 1;
                if quiet >= 2 {
                    converged = true;
                    tail = tail.max(diag_max / perm_max);
                    break;
                }
            } else {
                quiet = 0;
            }
        }
        if !converged {
            return Err(Error::SeriesNonConvergence { terms: budget.nmax });
        }
        total.add(perm_sum.value() * lead * 4.0);
        peak_ln = peak_ln.max(lead.ln_abs() + perm_max.ln() + 4f64.ln());
    }
    let value = total.value();
    let cancel = peak_ln - value.ln_abs();
    if cancel > CANCELLATION_LIMIT_LN {
        return Err(Error::Cancellation { digits: cancel / LN_10 });
    }
    Ok(Evaluation {
        value: value.scale_exp(p.scaling_exponent()),
        rel_error: tail * cancel.exp().max(1.0) + roundoff(cancel),
        algorithm: Algorithm::Origin,
    })
}
