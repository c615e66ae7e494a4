//! Local spectra of the outputs of the two optimal `n → m` cloning
//! machines: one that knows the Schmidt basis, and the universal one.

mod clone1;
mod clone2;
mod oracle;
mod params;

pub use clone1::{alpha_sq, clone1_block_spectrum, clone1_spectrum, clone1_type_eigenvalues};
pub use clone2::{clone2_spectrum, diagonal_type, Clone2Spectrum, MixtureWeight, TypeMatrix};
pub use oracle::{dense_clone1_oracle, dense_clone2_oracle, Clone1Oracle, Clone2Oracle};
pub use params::CloneParams;
