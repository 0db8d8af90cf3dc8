#![allow(clippy::excessive_precision)]

mod common;

use common::{bian, generic, lift};
use num_complex::Complex64;
use proptest::prelude::*;
use sl3_maass::langlands::LanglandsParams;
use sl3_maass::quadrature::{inverse_mellin_line, QuadratureGrid};
use sl3_maass::specfun::log_gamma;
use sl3_maass::whittaker::mellin::build_fixed_d_cache_unvalidated;
use sl3_maass::whittaker::origin::origin_leading_term;
use sl3_maass::whittaker::small::i_n_closed_form;
use sl3_maass::whittaker::*;
use sl3_maass::{Error, ScaledComplex, ScaledSum};
use std::f64::consts::PI;

fn args(y1: f64, y2: f64) -> WhittakerArgs {
    WhittakerArgs::new(y1, y2).unwrap()
}

fn mellin(p: &LanglandsParams, a: WhittakerArgs) -> Evaluation {
    let cache = build_fixed_d_cache_unvalidated(p, a.d(), &default_mellin_grid(p)).unwrap();
    w_mellin_fixed_d(&cache, a.y2).unwrap()
}

/// Every algorithm that accepts the input.
fn all_algorithms(p: &LanglandsParams, a: WhittakerArgs) -> Vec<Evaluation> {
    let budget = SeriesBudget::default();
    let mut out = vec![w_stade_default(p, a).unwrap(), mellin(p, a)];
    if let Ok(e) = w_series_origin(p, a, budget) {
        out.push(e);
    }
    if let Ok(e) = w_series_small(p, a, budget) {
        out.push(e);
    }
    out
}

fn check_frozen(p: &LanglandsParams, cases: &[(f64, f64, Complex64)]) {
    for &(y1, y2, want) in cases {
        let a = args(y1, y2);
        for e in [w_eval(p, a, &EvalPolicy::default()).unwrap(), w_stade_default(p, a).unwrap()] {
            let got = e.unscaled(p).to_complex();
            let err = (got - want).norm() / want.norm();
            assert!(err < 1e-10, "({y1}, {y2}) {}: {got} vs {want} ({err:e})", e.algorithm);
        }
    }
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[test]
fn frozen_lift_values() {
    check_frozen(
        &lift(),
        &[
            (0.3, 0.3, re(4.74549827334651833e-26)),
            (0.6, 1.0, re(-3.41051402389559075e-26)),
            (1.0, 1.0, re(1.51979064356537594e-26)),
            (0.05, 3.0, re(4.27010556501423807e-26)),
            (2.0, 2.0, re(2.95941251726864700e-24)),
            (0.9, 0.9, re(-5.74564852675108490e-25)),
        ],
    );
}

#[test]
fn frozen_generic_values() {
    check_frozen(
        &bian(),
        &[
            (0.3, 0.3, re(8.95078127858228505e-22)),
            (0.6, 1.0, Complex64::new(1.07769942850902460e-20, 3.81550634175865948e-20)),
            (1.0, 1.0, re(-7.40428673261556714e-20)),
            (0.05, 3.0, Complex64::new(-9.32864212397697110e-22, 4.47413651397460823e-22)),
            (2.0, 2.0, re(1.65540689062991489e-20)),
            (0.9, 0.9, re(9.56430760201429729e-20)),
        ],
    );
}

#[test]
fn lift_values_are_real() {
    let p = lift();
    for (y1, y2) in [(0.3, 0.7), (1.2, 0.4), (2.5, 0.1)] {
        for e in all_algorithms(&p, args(y1, y2)) {
            let v = e.value.to_complex();
            assert!(v.im.abs() <= 1e-9 * v.norm(), "({y1}, {y2}) {}: {v}", e.algorithm);
        }
    }
}

#[test]
fn algorithms_agree_on_lift_grid() {
    let p = lift();
    let grid = [0.3, 0.6, 1.0];
    for &y1 in &grid {
        for &y2 in &grid {
            let evs = all_algorithms(&p, args(y1, y2));
            assert_eq!(evs.len(), 4);
            for a in &evs {
                for b in &evs {
                    let d = ScaledComplex::rel_diff(&a.value, &b.value);
                    assert!(d < 1e-6, "({y1}, {y2}) {} vs {}: {d:e}", a.algorithm, b.algorithm);
                }
            }
        }
    }
}

/// Each algorithm's deviation from Stade stays within the two error estimates.
#[test]
fn error_estimates_cover_deviations() {
    for p in [generic(), bian()] {
        for &y1 in &[0.1, 0.3, 0.6, 1.0, 2.0] {
            for &y2 in &[0.1, 0.3, 0.6, 1.0, 2.0] {
                let evs = all_algorithms(&p, args(y1, y2));
                let s = &evs[0];
                for e in &evs[1..] {
                    let d = ScaledComplex::rel_diff(&e.value, &s.value);
                    assert!(
                        d <= 2.0 * (e.rel_error + s.rel_error) + 1e-13,
                        "{:?} ({y1}, {y2}) {}: deviation {d:e}, estimate {:e}",
                        p.imag_parts(),
                        e.algorithm,
                        e.rel_error
                    );
                }
            }
        }
    }
}

#[test]
fn dispatcher_routing() {
    let p = lift();
    let pol = EvalPolicy::default();
    assert_eq!(w_eval(&p, args(0.05, 3.0), &pol).unwrap().algorithm, Algorithm::SmallArg);
    assert_eq!(w_eval(&p, args(3.0, 0.05), &pol).unwrap().algorithm, Algorithm::SmallArg);
    assert_eq!(w_eval(&p, args(5.0, 5.0), &pol).unwrap().algorithm, Algorithm::Stade);
    // the series is not usable at coinciding parameters
    let deg = LanglandsParams::lift(0.0);
    assert_eq!(w_eval(&deg, args(0.05, 3.0), &pol).unwrap().algorithm, Algorithm::Stade);
}

#[test]
fn swapped_arguments_give_conjugate() {
    let p = bian();
    let pol = EvalPolicy::default();
    let a = w_eval(&p, args(0.4, 1.7), &pol).unwrap();
    let b = w_eval(&p, args(1.7, 0.4), &pol).unwrap();
    assert!(ScaledComplex::rel_diff(&a.value, &b.value.conj()) < 1e-9);
    assert!(ScaledComplex::rel_diff(&a.value, &b.value) > 1e-3);
}

#[test]
fn decays_at_large_arguments() {
    let p = lift();
    let w2 = w_stade_default(&p, args(2.0, 2.0)).unwrap().value;
    let w4 = w_stade_default(&p, args(4.0, 4.0)).unwrap().value;
    assert!(w4.ln_abs() - w2.ln_abs() < -4.0);
}

#[test]
fn origin_series_reduces_to_leading_terms() {
    for p in [lift(), generic()] {
        let a = args(1e-4, 2e-4);
        let mut lead = ScaledSum::new();
        for delta in p.permutations() {
            lead.add(origin_leading_term(delta, a).unwrap() * 4.0);
        }
        let want = lead.value().scale_exp(p.scaling_exponent());
        let got = w_series_origin(&p, a, SeriesBudget::default()).unwrap().value;
        // next terms are O((πy)²)
        assert!(ScaledComplex::rel_diff(&got, &want) < 1e-5);
    }
}

#[test]
fn i1_closed_form_matches_barnes_integral() {
    let delta = [-2.0, 2.0, 0.0];
    let [al, be, ga] = delta.map(|d| Complex64::new(0.0, d));
    // I_1(y) as the inverse Mellin transform at πy of (a - 1) Γ(b) Γ(c)
    let m = |s: Complex64| -> sl3_maass::Result<ScaledComplex> {
        let a = (s - 1.5 * al) / 2.0;
        let b = (s - be - 0.5 * al) / 2.0;
        let c = (s - ga - 0.5 * al) / 2.0;
        Ok(ScaledComplex::from_log(log_gamma(b)? + log_gamma(c)?) * (a - 1.0))
    };
    let grid = QuadratureGrid::adaptive(0.1, 1e-22, 100_000).with_sigma(1.0);
    for y in [0.3, 0.7, 1.5] {
        let barnes = inverse_mellin_line(m, PI * y, &grid).unwrap();
        let closed = i_n_closed_form(delta, 1, y).unwrap();
        assert!(ScaledComplex::rel_diff(&closed, &barnes) < 1e-9, "y = {y}");
    }
}

#[test]
fn pq_degree_bounds() {
    for p in [lift(), generic(), bian()] {
        for delta in p.cyclic() {
            let t = pq_build(delta, 40);
            for n in 1..=40 {
                assert!(t.degree_p(n) <= 2 * n, "deg P_{n}");
                assert!(t.degree_q(n) < 2 * n, "deg Q_{n}");
            }
        }
    }
}

#[test]
fn first_recursion_step() {
    let d1 = 1.7;
    let t = pq_build([d1, -0.4, -1.3], 1);
    assert_eq!(t.raw_p(0), vec![re(4.0)]);
    // P_1 = 4 a_0 = 6δ1 + 8 with δ1 = i r, and Q_1 = P_0 = 4
    let p1 = t.raw_p(1);
    assert!((p1[0] - Complex64::new(8.0, 6.0 * d1)).norm() < 1e-13);
    assert!(p1[1..].iter().all(|c| c.norm() < 1e-13));
    let q1 = t.raw_q(1);
    assert!((q1[0] - re(4.0)).norm() < 1e-13);
}

#[test]
fn mellin_cache_structure() {
    let p = lift();
    let g = default_mellin_grid(&p);
    let d = 0.3 * 0.3 * 0.6;
    let a = build_fixed_d_cache_unvalidated(&p, d, &g).unwrap();
    let b = build_fixed_d_cache_unvalidated(&p, d, &g).unwrap();
    assert_eq!(a.inner().len(), 2 * g.n2 + 1);
    assert!(a.retained_terms() <= (2 * g.n1 + 1) * (2 * g.n2 + 1));
    let (va, vb) = (a.evaluate(0.6).unwrap().value, b.evaluate(0.6).unwrap().value);
    assert_eq!(va.to_complex(), vb.to_complex());
    assert_eq!(va.log_scale(), vb.log_scale());
}

#[test]
fn mellin_slice_matches_direct_evaluation() {
    let p = lift();
    let d = 0.5;
    let cache = build_fixed_d_cache(&p, d, &default_mellin_grid(&p)).unwrap();
    let (lo, hi) = cache.range().unwrap();
    for k in 0..5 {
        let y2 = lo * (hi / lo).powf(k as f64 / 4.0);
        let a = args((d / y2).sqrt(), y2);
        let direct = w_stade_default(&p, a).unwrap().value;
        let sliced = w_mellin_fixed_d(&cache, y2).unwrap().value;
        assert!(ScaledComplex::rel_diff(&sliced, &direct) < 1e-7, "y2 = {y2}");
    }
}

#[test]
fn mellin_box_is_wide_enough() {
    let p = generic();
    let g = default_mellin_grid(&p);
    let wide = MellinGridExt::doubled(g);
    let a = args(0.6, 0.8);
    let narrow_v = w_mellin_fixed_d(&build_fixed_d_cache_unvalidated(&p, a.d(), &g).unwrap(), a.y2).unwrap();
    let wide_v = w_mellin_fixed_d(&build_fixed_d_cache_unvalidated(&p, a.d(), &wide).unwrap(), a.y2).unwrap();
    assert!(ScaledComplex::rel_diff(&narrow_v.value, &wide_v.value) < 1e-9);
}

trait MellinGridExt {
    fn doubled(self) -> Self;
}

impl MellinGridExt for sl3_maass::quadrature::MellinGrid2D {
    fn doubled(mut self) -> Self {
        self.n1 *= 2;
        self.n2 *= 2;
        self
    }
}

#[test]
fn error_paths() {
    let p = lift();
    assert!(matches!(WhittakerArgs::new(-1.0, 1.0), Err(Error::Domain(_))));
    assert!(matches!(WhittakerArgs::new(1.0, f64::NAN), Err(Error::Domain(_))));
    let deg = LanglandsParams::lift(0.0);
    let budget = SeriesBudget::default();
    assert!(matches!(w_series_origin(&deg, args(0.3, 0.3), budget), Err(Error::Degenerate)));
    assert!(matches!(w_series_small(&deg, args(0.3, 0.3), budget), Err(Error::Degenerate)));
    let bad = SeriesBudget { nmax: 0, ..budget };
    assert!(matches!(w_series_origin(&p, args(0.3, 0.3), bad), Err(Error::Domain(_))));
    let short = SeriesBudget { nmax: 3, ..budget };
    assert!(matches!(
        w_series_origin(&p, args(0.3, 0.3), short),
        Err(Error::SeriesNonConvergence { .. })
    ));
    // far from the origin the six series cancel beyond working precision
    assert!(matches!(w_series_origin(&p, args(5.0, 5.0), budget), Err(Error::Cancellation { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dual_symmetry_of_stade(y1 in 0.05f64..3.0, y2 in 0.05f64..3.0, lift_params in any::<bool>()) {
        let p = if lift_params { lift() } else { generic() };
        let a = w_stade_default(&p, args(y1, y2)).unwrap();
        let b = w_stade_default(&p, args(y2, y1)).unwrap();
        prop_assert!(ScaledComplex::rel_diff(&a.value, &b.value.conj()) < 1e-9);
    }

    #[test]
    fn dual_symmetry_of_origin_series(y1 in 0.05f64..0.8, y2 in 0.05f64..0.8) {
        let p = generic();
        let a = w_series_origin(&p, args(y1, y2), SeriesBudget::default()).unwrap();
        let b = w_series_origin(&p, args(y2, y1), SeriesBudget::default()).unwrap();
        prop_assert!(ScaledComplex::rel_diff(&a.value, &b.value.conj()) < 1e-9);
    }

    #[test]
    fn dispatcher_respects_dual_symmetry(y1 in 0.05f64..3.0, y2 in 0.05f64..3.0) {
        let pol = EvalPolicy::default();
        for p in [lift(), generic()] {
            let a = w_eval(&p, args(y1, y2), &pol).unwrap();
            let b = w_eval(&p, args(y2, y1), &pol).unwrap();
            prop_assert!(ScaledComplex::rel_diff(&a.value, &b.value.conj()) < 1e-9);
        }
    }
}
