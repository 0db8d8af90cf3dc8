//! Jacquet's Whittaker function for SL(3,Z) and Maass forms built on it.
//!
//! Four independent evaluators of the Whittaker function are provided
//! ([`whittaker`]), cross-checkable against one another, together with a
//! Fourier-expansion evaluator for even Maass forms ([`maass`]) driven by
//! the fixed-D cached inverse Mellin method.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod langlands;
pub mod maass;
pub mod quadrature;
pub mod scaled;
pub mod specfun;
pub mod whittaker;

pub use error::{Error, Result};
pub use scaled::{ScaledComplex, ScaledSum};
