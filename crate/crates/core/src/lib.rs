//! Finite-n entanglement cost and distillable entanglement of
//! permutation-symmetric bipartite states.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop)]

pub mod budget;
pub mod cloning;
pub mod dense;
pub mod error;
pub mod exponents;
pub mod loccsim;
pub mod math;
pub mod prob;
pub mod ratelab;
pub mod repthy;
pub mod spectra;

pub use budget::Budget;
pub use error::{Error, Result};
pub use prob::ProbVector;
