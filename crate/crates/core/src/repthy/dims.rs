use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Partition;
use crate::error::{invalid, Result};
use crate::math::{factorial, log2_biguint};

/// An exact non-negative integer dimension (or count). Serialized as a
/// decimal string.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BigDim(pub BigUint);

impl BigDim {
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn log2(&self) -> f64 {
        log2_biguint(&self.0)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::INFINITY)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl From<u64> for BigDim {
    fn from(x: u64) -> Self {
        Self(BigUint::from(x))
    }
}

impl fmt::Display for BigDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for BigDim {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_str_radix(10))
    }
}

impl<'de> Deserialize<'de> for BigDim {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse::<BigUint>().map(BigDim).map_err(serde::de::Error::custom)
    }
}

fn shifted_rows(lambda: &Partition, d: usize) -> Result<Vec<u64>> {
    let padded = lambda
        .with_rows(d)
        .map_err(|_| invalid(format!("{lambda} does not fit in {d} rows")))?;
    Ok(padded
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &x)| x as u64 + (d - 1 - i) as u64)
        .collect())
}

fn vandermonde(l: &[u64]) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..l.len() {
        for j in i + 1..l.len() {
            acc *= l[i] - l[j];
        }
    }
    acc
}

/// Dimension of the unitary-group irrep `U_λ` of `U(d)`:
/// `∏_{i<j}(l_i − l_j) / ∏_{i=1}^{d−1}(d − i)!` with `l_i = λ_i + d − i`.
pub fn dim_u(lambda: &Partition, d: usize) -> Result<BigDim> {
    if d == 0 {
        return Err(invalid("d must be positive"));
    }
    let l = shifted_rows(lambda, d)?;
    let num = vandermonde(&l);
    let den = (1..d as u64).fold(BigUint::one(), |acc, k| acc * factorial(k));
    debug_assert!((&num % &den).is_zero());
    Ok(BigDim(num / den))
}

/// Dimension `d_λ` of the symmetric-group irrep `V_λ`:
/// `n! ∏_{i<j}(l_i − l_j) / ∏_i l_i!`, with `d` the row count of `lambda`.
pub fn dim_v(lambda: &Partition) -> Result<BigDim> {
    let d = lambda.d();
    let l = shifted_rows(lambda, d)?;
    let num = factorial(lambda.n() as u64) * vandermonde(&l);
    let den = l.iter().fold(BigUint::one(), |acc, &x| acc * factorial(x));
    debug_assert!((&num % &den).is_zero());
    Ok(BigDim(num / den))
}
