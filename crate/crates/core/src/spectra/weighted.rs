use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Mass tolerance for produced spectra.
pub const MASS_TOL: f64 = 1e-9;

/// One eigenvalue (log2) with its multiplicity (log2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    #[serde(with = "crate::math::serde_log")]
    pub log2_value: f64,
    #[serde(with = "crate::math::serde_log")]
    pub log2_multiplicity: f64,
}

impl SpectrumEntry {
    pub fn new(log2_value: f64, log2_multiplicity: f64) -> Self {
        Self {
            log2_value,
            log2_multiplicity,
        }
    }

    /// Probability mass `value × multiplicity`.
    pub fn mass(&self) -> f64 {
        (self.log2_value + self.log2_multiplicity).exp2()
    }
}

/// A flat spectrum: a list of `(value, multiplicity)` pairs in base-2 log
/// domain, normalized by the copy count `n` for rate computations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedSpectrum {
    pub n: u32,
    pub entries: Vec<SpectrumEntry>,
}

impl WeightedSpectrum {
    pub fn new(n: u32, entries: Vec<SpectrumEntry>) -> Result<Self> {
        if n == 0 {
            return Err(invalid("spectrum copy count must be positive"));
        }
        let ws = Self { n, entries };
        let mass = ws.total_mass();
        if (mass - 1.0).abs() > MASS_TOL {
            return Err(invalid(format!("spectrum mass {mass} differs from 1")));
        }
        Ok(ws)
    }

    /// Builds without the normalization check (used by dense oracles whose
    /// round-off is checked separately).
    pub(crate) fn unchecked(n: u32, entries: Vec<SpectrumEntry>) -> Self {
        Self { n, entries }
    }

    pub fn total_mass(&self) -> f64 {
        self.entries.iter().map(SpectrumEntry::mass).sum()
    }

    /// Distinct values in descending order with merged multiplicities. Values
    /// are merged only on exact equality of their logs.
    pub fn merged_descending(&self) -> Vec<SpectrumEntry> {
        let mut sorted: Vec<SpectrumEntry> = self
            .entries
            .iter()
            .copied()
            .filter(|e| e.log2_value.is_finite() && e.log2_multiplicity.is_finite())
            .collect();
        sorted.sort_by(|a, b| b.log2_value.total_cmp(&a.log2_value));
        let mut out: Vec<SpectrumEntry> = Vec::with_capacity(sorted.len());
        for e in sorted {
            match out.last_mut() {
                Some(last) if last.log2_value == e.log2_value => {
                    last.log2_multiplicity = crate::math::log2_add(last.log2_multiplicity, e.log2_multiplicity);
                }
                _ => out.push(e),
            }
        }
        out
    }

    /// Number of eigenvalues counted with multiplicity (rounded).
    pub fn support_size(&self) -> f64 {
        self.entries
            .iter()
            .filter(|e| e.log2_value.is_finite())
            .map(|e| e.log2_multiplicity.exp2())
            .sum()
    }

    /// Every eigenvalue listed individually, ascending. Refuses when the
    /// expansion would exceed `limit` values.
    pub fn expand_sorted(&self, limit: usize) -> Result<Vec<f64>> {
        let mut out = Vec::new();
        for e in &self.entries {
            if !e.log2_value.is_finite() {
                continue;
            }
            let mult = e.log2_multiplicity.exp2().round();
            if out.len() as f64 + mult > limit as f64 {
                return Err(invalid(format!("expansion exceeds {limit} eigenvalues")));
            }
            out.extend(std::iter::repeat_n(e.log2_value.exp2(), mult as usize));
        }
        out.sort_by(f64::total_cmp);
        Ok(out)
    }
}
