use crate::budget::Budget;
use crate::cloning::{clone1_type_eigenvalues, CloneParams};
use crate::error::Result;
use crate::math::entropy_bits;

/// Finite-m counterpart of the clone exponent: the minimum over types `t` of
/// `m` with `H(t/m) ≥ R` of `−(1/m) log2 e_t − H(t/m)`.
pub fn finite_m_exponent_oracle(params: &CloneParams, rate: f64, budget: &Budget) -> Result<f64> {
    let m = params.m() as f64;
    let best = clone1_type_eigenvalues(params, budget)?
        .into_iter()
        .filter_map(|(t, log2_e)| {
            let h = entropy_bits(&t.frequencies());
            (h >= rate).then(|| -log2_e / m - h)
        })
        .fold(f64::INFINITY, f64::min);
    Ok(best)
}
