//! Dilution error exponents: the known-basis clone, the i.i.d. benchmark,
//! a finite-m enumeration oracle and the rate–exponent trade-off.

mod objective;
mod optimize;
mod oracle;
mod tradeoff;

pub use optimize::{
    clone_dilution_exponent, exponent_curve, iid_dilution_argmin, iid_dilution_exponent, ExponentProblem,
    ExponentResult, ExponentRow, DEFAULT_GRID, DEFAULT_TOL, MAX_EXPONENT_DIM,
};
pub use oracle::finite_m_exponent_oracle;
pub use tradeoff::{rate_exponent_tradeoff, Tradeoff};
