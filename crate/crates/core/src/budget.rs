use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Enumeration caps. Every combinatorial loop checks one of these before it
/// starts so that blowups fail loudly instead of hanging.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Maximum number of Young indices enumerated for one block spectrum.
    pub max_partitions: u64,
    /// Maximum number of type vectors / type matrices enumerated.
    pub max_types: u64,
    /// Maximum Hilbert dimension `d^(2n)` for dense oracles.
    pub dense_cap: u64,
    /// Largest local dimension accepted by block-resolved clone spectra.
    pub max_block_dim: usize,
    /// Largest local dimension accepted by the universal-clone spectrum.
    pub max_clone2_dim: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_partitions: 2_000_000,
            max_types: 2_000_000,
            dense_cap: 4096,
            max_block_dim: 3,
            max_clone2_dim: 2,
        }
    }
}

impl Budget {
    pub(crate) fn check(what: &'static str, needed: u128, cap: u64) -> Result<()> {
        if needed > cap as u128 {
            Err(Error::BudgetExceeded {
                what,
                needed,
                cap: cap as u128,
            })
        } else {
            Ok(())
        }
    }
}
