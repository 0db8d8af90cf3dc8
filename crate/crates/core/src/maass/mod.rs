//! Maass forms for SL(3,Z): Iwasawa coordinates, coefficient tables and
//! evaluation of the truncated cosine expansion.

pub mod coefficients;
pub mod cutoff;
pub mod enumerate;
pub mod eval;
pub mod iwasawa;

pub use coefficients::{expand_coefficients, mobius, CoefficientTable};
pub use cutoff::{cutoff_c, Cutoff};
pub use enumerate::{enumerate_cd, mod_inverse};
pub use eval::{
    automorphy_residual, bracket_terms, coefficient_demand, eval_maass, Backend, EvalStats, MaassEvaluator, MaassForm,
    MaassValue, Residual, Term,
};
pub use iwasawa::{iwasawa_act, Generator, GroupWord, H3Point, IntMatrix};
