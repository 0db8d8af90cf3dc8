//! Special functions: complex log-gamma, gamma quotients, Pochhammer
//! symbols and K-Bessel functions of imaginary order.

pub mod bessel;
pub mod gamma;

pub use bessel::{bessel_k, bessel_k_barnes, bessel_k_pair, bessel_k_prime, BesselOrder, KPair};
pub use gamma::{gamma, gamma_ratio, log_gamma, pochhammer, GammaRatioSpec};
