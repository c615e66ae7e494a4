//! Finite-n information-spectrum tools: threshold masses, dilution
//! fidelities and quantile estimates of entanglement cost and distillable
//! entanglement.

mod converse;
pub(crate) mod fidelity;
mod quantile;

pub use converse::{strong_converse_report, ConverseReport, ConverseRow, CONVERSE_SPREAD_TOL};
pub use fidelity::{
    dimension_window_mass, pure_dilution_fidelity, pure_fidelity_curve, rate_grid, sigma_dilution,
    sigma_dilution_fidelity, sigma_fidelity_curve, FidelityCurve, FidelityPoint, FidelityRow, SigmaDilution,
};
pub use quantile::{
    estimate_ec, estimate_ed, surprisal_distribution, threshold_mass, EstimateKind, RateEstimate, Side, QUANTILE_SLACK,
};
