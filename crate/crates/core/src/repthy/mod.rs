//! Young indices and the exact representation-theoretic quantities of
//! Schur–Weyl duality: `dim U_λ`, `d_λ = dim V_λ`, Kostka numbers and Schur
//! polynomials.

mod dims;
mod kostka;
mod partition;
mod schur;

pub use dims::{dim_u, dim_v, BigDim};
pub use kostka::{kostka, KostkaCache};
pub use partition::{
    count_partitions, count_types, enumerate_partitions, enumerate_types, for_each_bounded_composition, Partition,
    TypeVector,
};
pub use schur::{schur_exact, schur_log2, schur_poly};
