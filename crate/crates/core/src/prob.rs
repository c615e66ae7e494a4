use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::math::entropy_bits;

const SUM_TOL: f64 = 1e-12;

/// A probability vector `p = (p_1, ..., p_d)`: the squared Schmidt
/// coefficients of the input pure state.
///
/// When built from rationals the exact values are kept alongside the
/// floating ones so that exact-arithmetic paths can be used.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbVector {
    probs: Vec<f64>,
    #[serde(skip)]
    exact: Option<Vec<BigRational>>,
}

impl ProbVector {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(invalid("probability vector is empty"));
        }
        if probs.iter().any(|&x| !x.is_finite() || x < 0.0) {
            return Err(invalid(format!("entries must be finite and non-negative: {probs:?}")));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(invalid(format!("probabilities sum to {sum}, not 1")));
        }
        Ok(Self { probs, exact: None })
    }

    pub fn from_rationals(exact: Vec<BigRational>) -> Result<Self> {
        if exact.is_empty() {
            return Err(invalid("probability vector is empty"));
        }
        if exact.iter().any(|x| x.is_negative()) {
            return Err(invalid("entries must be non-negative"));
        }
        let sum = exact.iter().fold(BigRational::zero(), |a, b| a + b);
        if !sum.is_one() {
            return Err(invalid(format!("rational probabilities sum to {sum}, not 1")));
        }
        let probs = exact
            .iter()
            .map(|x| x.to_f64().ok_or_else(|| invalid("rational out of f64 range")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            probs,
            exact: Some(exact),
        })
    }

    /// The uniform distribution on `d` symbols (exact).
    pub fn uniform(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(invalid("d must be positive"));
        }
        let x = BigRational::new(BigInt::one(), BigInt::from(d));
        Self::from_rationals(vec![x; d])
    }

    pub fn dim(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn exact(&self) -> Option<&[BigRational]> {
        self.exact.as_deref()
    }

    pub fn entropy(&self) -> f64 {
        entropy_bits(&self.probs)
    }

    pub fn is_full_support(&self) -> bool {
        self.probs.iter().all(|&x| x > 0.0)
    }

    /// The same distribution with zero entries removed (exactness preserved).
    pub fn support(&self) -> Self {
        let keep: Vec<usize> = (0..self.dim()).filter(|&i| self.probs[i] > 0.0).collect();
        Self {
            probs: keep.iter().map(|&i| self.probs[i]).collect(),
            exact: self
                .exact
                .as_ref()
                .map(|ex| keep.iter().map(|&i| ex[i].clone()).collect()),
        }
    }
}

impl fmt::Display for ProbVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(ex) => {
                let parts: Vec<String> = ex.iter().map(|x| x.to_string()).collect();
                write!(f, "{}", parts.join(","))
            }
            None => {
                let parts: Vec<String> = self.probs.iter().map(|x| x.to_string()).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}

/// Parses `"0.7,0.3"` (floating) or `"7/10,3/10"` (exact). Integers such as
/// `"1,0"` are taken as exact.
impl FromStr for ProbVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fields: Vec<&str> = s.split(',').map(str::trim).filter(|f| !f.is_empty()).collect();
        if fields.is_empty() {
            return Err(invalid("empty probability vector"));
        }
        let rational = fields.iter().all(|f| !f.contains(['.', 'e', 'E']));
        if rational {
            let exact = fields.iter().map(|f| parse_rational(f)).collect::<Result<Vec<_>>>()?;
            Self::from_rationals(exact)
        } else {
            let probs = fields
                .iter()
                .map(|f| {
                    f.parse::<f64>()
                        .map_err(|e| invalid(format!("bad probability {f:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Self::new(probs)
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || invalid(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().map_err(|_| bad())?;
            let den: BigInt = den.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(num, den))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimal_and_rational() {
        let p: ProbVector = "0.7,0.3".parse().unwrap();
        assert!(p.exact().is_none());
        assert_eq!(p.dim(), 2);
        let q: ProbVector = "7/10, 3/10".parse().unwrap();
        assert!(q.exact().is_some());
        assert_eq!(q.probs(), &[0.7, 0.3]);
        let r: ProbVector = "1,0".parse().unwrap();
        assert_eq!(r.support().dim(), 1);
        assert_eq!(q.to_string(), "7/10,3/10");
    }

    #[test]
    fn rejects_bad_vectors() {
        assert!("0.5,0.6".parse::<ProbVector>().is_err());
        assert!("1/2,1/3".parse::<ProbVector>().is_err());
        assert!("-0.5,1.5".parse::<ProbVector>().is_err());
        assert!("1/0,1".parse::<ProbVector>().is_err());
        assert!("".parse::<ProbVector>().is_err());
        assert!(ProbVector::new(vec![0.5, 0.5 + 1e-11]).is_err());
        assert!(ProbVector::new(vec![0.5, 0.5 + 1e-13]).is_ok());
    }

    #[test]
    fn uniform_is_exact() {
        let u = ProbVector::uniform(3).unwrap();
        assert!((u.entropy() - 3f64.log2()).abs() < 1e-15);
        assert!(u.exact().is_some());
    }
}
