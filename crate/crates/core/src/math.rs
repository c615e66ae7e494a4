//! Small numeric helpers shared across modules: log-factorials, binomials and
//! log-sum-exp accumulation, plus the entropy functionals used by the
//! exponent optimizer.

use std::f64::consts::LN_2;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

/// Table of `ln k!` for `k = 0..=max`.
#[derive(Debug, Clone)]
pub struct LogFactorials {
    table: Vec<f64>,
}

impl LogFactorials {
    pub fn new(max: usize) -> Self {
        let mut table = Vec::with_capacity(max + 1);
        table.push(0.0);
        let mut acc = 0.0f64;
        for k in 1..=max {
            acc += (k as f64).ln();
            table.push(acc);
        }
        Self { table }
    }

    #[inline]
    pub fn ln(&self, k: usize) -> f64 {
        self.table[k]
    }

    /// `ln C(a, b)`.
    #[inline]
    pub fn ln_binomial(&self, a: usize, b: usize) -> f64 {
        debug_assert!(b <= a);
        self.table[a] - self.table[b] - self.table[a - b]
    }

    /// `ln (total! / prod counts!)` with `total = sum counts`.
    pub fn ln_multinomial(&self, counts: &[u32]) -> f64 {
        let total: usize = counts.iter().map(|&c| c as usize).sum();
        counts
            .iter()
            .fold(self.table[total], |acc, &c| acc - self.table[c as usize])
    }
}

/// Online log-sum-exp in natural log domain.
#[derive(Debug, Clone, Copy)]
pub struct LogSumExp {
    max: f64,
    sum: f64,
}

impl Default for LogSumExp {
    fn default() -> Self {
        Self {
            max: f64::NEG_INFINITY,
            sum: 0.0,
        }
    }
}

impl LogSumExp {
    pub fn add(&mut self, x: f64) {
        if x == f64::NEG_INFINITY {
            return;
        }
        if x <= self.max {
            self.sum += (x - self.max).exp();
        } else {
            self.sum = self.sum * (self.max - x).exp() + 1.0;
            self.max = x;
        }
    }

    pub fn value(&self) -> f64 {
        if self.max == f64::NEG_INFINITY {
            f64::NEG_INFINITY
        } else {
            self.max + self.sum.ln()
        }
    }
}

/// `log2(2^a + 2^b)`.
pub fn log2_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp2().ln_1p() / LN_2
}

/// `log2` of an arbitrary-precision integer; `-inf` for zero.
pub fn log2_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 1000 {
        return x.to_f64().map(f64::log2).unwrap_or(f64::NAN);
    }
    let shift = bits - 64;
    let top: BigUint = x >> shift;
    top.to_f64().unwrap_or(f64::NAN).log2() + shift as f64
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Shannon entropy in bits with `0 log 0 = 0`.
pub fn entropy_bits(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum()
}

/// Binary entropy `h(x)` in bits, `h(0) = h(1) = 0`.
pub fn binary_entropy(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        0.0
    } else {
        -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
    }
}

/// Relative entropy `D(q||p)` in bits. Infinite when `q` is not absolutely
/// continuous with respect to `p`.
pub fn relative_entropy_bits(q: &[f64], p: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (&qi, &pi) in q.iter().zip(p) {
        if qi > 0.0 {
            if pi <= 0.0 {
                return f64::INFINITY;
            }
            acc += qi * (qi / pi).log2();
        }
    }
    acc
}

/// Serde adapter for log-domain values: `-inf` (log of zero) is written as
/// JSON `null`.
pub mod serde_log {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(de)?.unwrap_or(f64::NEG_INFINITY))
    }
}
