#![allow(dead_code)]

use num_complex::Complex64;
use sl3_maass::langlands::LanglandsParams;
use sl3_maass::maass::{expand_coefficients, CoefficientTable};
use std::collections::BTreeMap;

pub const R_LIFT: f64 = 9.533695;
pub const K0_1: f64 = 0.421_024_438_240_708_3;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

pub fn lift() -> LanglandsParams {
    LanglandsParams::lift(R_LIFT)
}

/// Non-degenerate triple with no two parameters related by sign.
pub fn generic() -> LanglandsParams {
    LanglandsParams::from_imag(3.7, -1.2)
}

pub fn bian() -> LanglandsParams {
    LanglandsParams::new(-14.141638, -2.380388, 16.522027).unwrap()
}

/// Ascending series for `K_0(x)`, independent of both library backends.
pub fn k0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let (mut i0, mut s0, mut term, mut harmonic) = (0.0, 0.0, 1.0, 0.0);
    for k in 0..60 {
        let kf = k as f64;
        if k > 0 {
            term *= q / (kf * kf);
            harmonic += 1.0 / kf;
        }
        i0 += term;
        s0 += term * harmonic;
    }
    -((0.5 * x).ln() + EULER_GAMMA) * i0 + s0
}

/// Parameters of the synthetic forms used for the Maass checks.
pub fn synthetic_params() -> LanglandsParams {
    LanglandsParams::from_imag(1.3, 2.1)
}

/// Deterministic made-up Dirichlet coefficients, complex so that the
/// conjugate-symmetric parts of the expansion are exercised.
pub fn synthetic_dirichlet(n_max: u32, seed: f64) -> BTreeMap<u32, Complex64> {
    (1..=n_max)
        .map(|n| {
            let v = if n == 1 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::from_polar(0.8 / (n as f64).sqrt(), seed * n as f64)
            };
            (n, v)
        })
        .collect()
}

pub fn synthetic_table(n_max: u32, seed: f64) -> CoefficientTable {
    expand_coefficients(&synthetic_dirichlet(n_max, seed), n_max).unwrap()
}

pub fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}
