//! Monte-Carlo simulation of the dilution and universal distillation
//! protocols at the level of Young-index measurement outcomes.

mod protocol;
mod sampler;

pub use protocol::{
    dilution_ebit_bound, dilution_ebits, simulate_dilution, simulate_distillation, ProtocolKind, ProtocolRun,
    ProtocolSummary, RngInfo, TrialRecord, CHUNK_SIZE, RNG_NAME,
};
pub use sampler::{BlockSampler, YoungSampler};
