use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::prob::ProbVector;

/// An `n → m` cloning task on the pure state `Σ √p_i |ii⟩`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct CloneParams {
    n: u32,
    m: u32,
    p: ProbVector,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    n: u32,
    m: u32,
    #[serde(default, skip_deserializing)]
    r: f64,
    #[serde(default, skip_deserializing)]
    d: usize,
    p: ProbVector,
}

impl TryFrom<RawParams> for CloneParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        Self::new(raw.n, raw.m, raw.p)
    }
}

impl From<CloneParams> for RawParams {
    fn from(c: CloneParams) -> Self {
        Self {
            r: c.r(),
            d: c.d(),
            n: c.n,
            m: c.m,
            p: c.p,
        }
    }
}

impl CloneParams {
    pub fn new(n: u32, m: u32, p: ProbVector) -> Result<Self> {
        if n == 0 || m < n {
            return Err(invalid(format!("need 1 ≤ n ≤ m, got n = {n}, m = {m}")));
        }
        Ok(Self { n, m, p })
    }

    /// Parameters with `n = round(m / r)`.
    pub fn from_ratio(m: u32, r: f64, p: ProbVector) -> Result<Self> {
        if !(r >= 1.0) || !r.is_finite() {
            return Err(invalid(format!("ratio must be ≥ 1, got {r}")));
        }
        let n = (m as f64 / r).round().max(1.0) as u32;
        Self::new(n, m, p)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn r(&self) -> f64 {
        self.m as f64 / self.n as f64
    }

    pub fn p(&self) -> &ProbVector {
        &self.p
    }

    pub fn d(&self) -> usize {
        self.p.dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_m_below_n() {
        let p = ProbVector::uniform(2).unwrap();
        assert!(CloneParams::new(3, 2, p.clone()).is_err());
        assert!(CloneParams::new(0, 2, p).is_err());
    }

    #[test]
    fn serde_echoes_derived_fields() {
        let p: ProbVector = "0.7,0.3".parse().unwrap();
        let c = CloneParams::new(2, 5, p).unwrap();
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["r"], 2.5);
        assert_eq!(v["d"], 2);
        let back: CloneParams = serde_json::from_value(v).unwrap();
        assert_eq!(back, c);
        let bad = serde_json::json!({"n": 3, "m": 1, "p": {"probs": [1.0]}});
        assert!(serde_json::from_value::<CloneParams>(bad).is_err());
    }
}
