//! Langlands parameters `(α, β, γ)` of a tempered SL(3,Z) Maass form.
//!
//! All three parameters are purely imaginary and sum to zero, so only the
//! imaginary parts `r_α`, `r_β` are stored; `r_γ` is always derived.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Tolerance on real parts (from ν) and on the zero-sum check (from raw input).
pub const TEMPERED_TOLERANCE: f64 = 1e-9;

/// Pairs closer than this make the residue series hit gamma poles.
pub const DEGENERATE_TOLERANCE: f64 = 1e-9;

/// Parameters `α = i r_α`, `β = i r_β`, `γ = i r_γ` with `r_γ = -r_α - r_β`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LanglandsParams {
    r_alpha: f64,
    r_beta: f64,
}

/// `(λ1, λ2)`: the eigenvalues of the two invariant differential operators.
/// For imaginary parameters `λ1 = -1 - (r_α² + r_β² + r_γ²)/2` is real and
/// `λ2 = i r_α r_β r_γ` is imaginary.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenvaluePair {
    pub lambda1: Complex64,
    pub lambda2: Complex64,
}

impl LanglandsParams {
    /// From imaginary parts. `r_gamma` is checked against `-r_alpha - r_beta`
    /// with a tolerance relative to the input size, then discarded.
    pub fn new(r_alpha: f64, r_beta: f64, r_gamma: f64) -> Result<Self> {
        if !(r_alpha.is_finite() && r_beta.is_finite() && r_gamma.is_finite()) {
            return Err(Error::Domain("Langlands parameters must be finite".into()));
        }
        let scale = 1.0 + r_alpha.abs().max(r_beta.abs()).max(r_gamma.abs());
        // printed parameters are often rounded to six decimals each
        let tol = (1e-5 * scale).max(TEMPERED_TOLERANCE);
        let sum = r_alpha + r_beta + r_gamma;
        if sum.abs() > tol {
            return Err(Error::Domain(format!(
                "Langlands parameters must sum to zero (sum of imaginary parts = {sum:e})"
            )));
        }
        Ok(Self { r_alpha, r_beta })
    }

    /// From `(r_α, r_β)` alone.
    pub fn from_imag(r_alpha: f64, r_beta: f64) -> Self {
        Self { r_alpha, r_beta }
    }

    /// The Gelbart–Jacquet lift parameters `(-2ir, 2ir, 0)`.
    pub fn lift(r: f64) -> Self {
        Self::from_imag(-2.0 * r, 2.0 * r)
    }

    /// `α = -ν1 - 2ν2 + 1`, `β = 2ν1 + ν2 - 1`, `γ = -ν1 + ν2`.
    pub fn from_nu(nu1: Complex64, nu2: Complex64) -> Result<Self> {
        let one = Complex64::new(1.0, 0.0);
        let alpha = -nu1 - 2.0 * nu2 + one;
        let beta = 2.0 * nu1 + nu2 - one;
        let gamma = -nu1 + nu2;
        for (name, v) in [("alpha", alpha), ("beta", beta), ("gamma", gamma)] {
            if v.re.abs() > TEMPERED_TOLERANCE {
                return Err(Error::NonTempered(format!("Re({name}) = {}", v.re)));
            }
        }
        Ok(Self::from_imag(alpha.im, beta.im))
    }

    pub fn r_alpha(&self) -> f64 {
        self.r_alpha
    }

    pub fn r_beta(&self) -> f64 {
        self.r_beta
    }

    pub fn r_gamma(&self) -> f64 {
        -self.r_alpha - self.r_beta
    }

    /// `[r_α, r_β, r_γ]`.
    pub fn imag_parts(&self) -> [f64; 3] {
        [self.r_alpha, self.r_beta, self.r_gamma()]
    }

    pub fn alpha(&self) -> Complex64 {
        Complex64::new(0.0, self.r_alpha)
    }

    pub fn beta(&self) -> Complex64 {
        Complex64::new(0.0, self.r_beta)
    }

    pub fn gamma(&self) -> Complex64 {
        Complex64::new(0.0, self.r_gamma())
    }

    /// `max(|r_α|, |r_β|, |r_γ|)`.
    pub fn max_abs(&self) -> f64 {
        self.imag_parts().iter().fold(0.0f64, |m, r| m.max(r.abs()))
    }

    /// `π|α - β|`, the exponent of the output scaling `e^{π|α-β|} W`.
    pub fn scaling_exponent(&self) -> f64 {
        std::f64::consts::PI * (self.r_alpha - self.r_beta).abs()
    }

    pub fn eigenvalues(&self) -> EigenvaluePair {
        let (a, b, g) = (self.alpha(), self.beta(), self.gamma());
        EigenvaluePair {
            lambda1: -1.0 - b * g - g * a - a * b,
            lambda2: -(a * b * g),
        }
    }

    /// The six orderings as imaginary-part triples, in the order
    /// (α,β,γ), (α,γ,β), (β,α,γ), (β,γ,α), (γ,α,β), (γ,β,α).
    pub fn permutations(&self) -> [[f64; 3]; 6] {
        let [a, b, g] = self.imag_parts();
        [[a, b, g], [a, g, b], [b, a, g], [b, g, a], [g, a, b], [g, b, a]]
    }

    /// The three cyclic orderings (α,β,γ), (β,γ,α), (γ,α,β).
    pub fn cyclic(&self) -> [[f64; 3]; 3] {
        let [a, b, g] = self.imag_parts();
        [[a, b, g], [b, g, a], [g, a, b]]
    }

    /// True when two parameters coincide within [`DEGENERATE_TOLERANCE`].
    pub fn is_degenerate(&self) -> bool {
        let [a, b, g] = self.imag_parts();
        (a - b).abs() < DEGENERATE_TOLERANCE
            || (b - g).abs() < DEGENERATE_TOLERANCE
            || (a - g).abs() < DEGENERATE_TOLERANCE
    }

    pub fn require_nondegenerate(&self) -> Result<()> {
        if self.is_degenerate() {
            Err(Error::Degenerate)
        } else {
            Ok(())
        }
    }

    /// The ordering with `γ` in the middle, which maximizes `|α - β|`.
    /// `W` is symmetric in the three parameters, so this changes only
    /// how it is computed.
    pub fn median_gamma(&self) -> Self {
        let mut r = self.imag_parts();
        r.sort_by(f64::total_cmp);
        Self::from_imag(r[0], r[2])
    }

    /// Complex conjugate, which for imaginary parameters is the negation.
    pub fn conj(&self) -> Self {
        Self::from_imag(-self.r_alpha, -self.r_beta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn center_point() {
        let p = LanglandsParams::from_nu(c(1.0 / 3.0, 0.0), c(1.0 / 3.0, 0.0)).unwrap();
        assert_eq!(p.imag_parts(), [0.0, 0.0, 0.0]);
        let e = p.eigenvalues();
        assert_eq!(e.lambda1, c(-1.0, 0.0));
        assert_eq!(e.lambda2, c(0.0, 0.0));
    }

    #[test]
    fn from_nu_substitution() {
        let t = 1.7;
        let (nu1, nu2) = (c(1.0 / 3.0, t), c(1.0 / 3.0, -t));
        let p = LanglandsParams::from_nu(nu1, nu2).unwrap();
        let one = c(1.0, 0.0);
        assert!((p.alpha() - (-nu1 - 2.0 * nu2 + one)).norm() < 1e-15);
        assert!((p.beta() - (2.0 * nu1 + nu2 - one)).norm() < 1e-15);
        assert!((p.gamma() - c(0.0, -2.0 * t)).norm() < 1e-15);
    }

    #[test]
    fn non_tempered_rejected() {
        assert!(matches!(
            LanglandsParams::from_nu(c(0.5, 0.0), c(0.5, 0.0)),
            Err(Error::NonTempered(_))
        ));
    }

    #[test]
    fn raw_triple_checks_sum() {
        assert!(LanglandsParams::new(-14.141638, -2.380388, 16.522027).is_ok());
        assert!(LanglandsParams::new(1.0, 2.0, 3.0).is_err());
    }

    #[test]
    fn lift_eigenvalues() {
        let r = 9.533695;
        let e = LanglandsParams::lift(r).eigenvalues();
        assert!((e.lambda1 - c(-1.0 - 4.0 * r * r, 0.0)).norm() < 1e-10);
        assert_eq!(e.lambda2.norm(), 0.0);
    }

    #[test]
    fn permutation_structure() {
        let z = LanglandsParams::from_imag(0.0, 0.0);
        assert!(z.permutations().iter().all(|t| *t == [0.0; 3]));
        let p = LanglandsParams::from_imag(1.0, 2.5);
        let perms = p.permutations();
        for i in 0..6 {
            for j in 0..i {
                assert_ne!(perms[i], perms[j]);
            }
        }
    }

    #[test]
    fn median_ordering() {
        let p = LanglandsParams::new(-14.141638, -2.380388, 16.522027).unwrap();
        let q = p.median_gamma();
        assert_eq!(q.imag_parts()[2], p.r_beta());
        assert_eq!((q.r_alpha(), q.r_beta()), (p.r_alpha(), p.r_gamma()));
        let lift = LanglandsParams::lift(3.0);
        assert_eq!(lift.median_gamma(), lift);
    }

    #[test]
    fn degeneracy() {
        assert!(LanglandsParams::lift(0.0).is_degenerate());
        assert!(LanglandsParams::from_imag(1.0, 1.0).is_degenerate());
        assert!(!LanglandsParams::lift(9.5).is_degenerate());
    }

    proptest! {
        #[test]
        fn sum_is_exactly_zero(a in -50.0f64..50.0, b in -50.0f64..50.0) {
            let p = LanglandsParams::from_imag(a, b);
            // r_gamma is defined as -a - b, so the stored triple sums to zero
            prop_assert_eq!(p.r_alpha() + p.r_beta() + p.r_gamma(), 0.0);
            for t in p.permutations() {
                prop_assert!((t[0] + t[1] + t[2]).abs() < 1e-12);
            }
        }

        #[test]
        fn eigenvalues_are_symmetric(a in -30.0f64..30.0, b in -30.0f64..30.0) {
            let p = LanglandsParams::from_imag(a, b);
            let e = p.eigenvalues();
            let g = p.r_gamma();
            let l1 = -1.0 - 0.5 * (a * a + b * b + g * g);
            prop_assert!((e.lambda1 - c(l1, 0.0)).norm() <= 1e-12 * (1.0 + l1.abs()));
            prop_assert!((e.lambda2 - c(0.0, a * b * g)).norm() <= 1e-12 * (1.0 + (a * b * g).abs()));
            for t in p.permutations() {
                let q = LanglandsParams::from_imag(t[0], t[1]);
                let f = q.eigenvalues();
                prop_assert!((f.lambda1 - e.lambda1).norm() <= 1e-9 * (1.0 + e.lambda1.norm()));
                prop_assert!((f.lambda2 - e.lambda2).norm() <= 1e-9 * (1.0 + e.lambda2.norm()));
            }
        }

        #[test]
        fn conjugate_is_negation(a in -30.0f64..30.0, b in -30.0f64..30.0) {
            let p = LanglandsParams::from_imag(a, b);
            let q = p.conj();
            prop_assert_eq!(q.alpha(), p.alpha().conj());
            prop_assert_eq!(q.beta(), p.beta().conj());
            prop_assert_eq!(q.gamma(), -p.gamma());
        }
    }
}
