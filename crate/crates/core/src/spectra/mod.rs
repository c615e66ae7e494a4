//! Entanglement-relevant spectra of symmetric states, in block form
//! (`b_λ`, optional `c_λk`) and in flat `(value, multiplicity)` form.

mod block;
mod iid;
mod oracle;
pub mod schema;
mod weighted;

pub use block::{Block, BlockSpectrum, CValue, Measure};
pub use iid::{iid_block_spectrum, iid_type_spectrum};
pub use oracle::{dense_oracle_spectrum, DenseOracle};
pub use weighted::{SpectrumEntry, WeightedSpectrum, MASS_TOL};

/// Free-function form of [`BlockSpectrum::flatten`].
pub fn flatten(bs: &BlockSpectrum, measure: Measure) -> crate::Result<WeightedSpectrum> {
    bs.flatten(measure)
}
