use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// A Young index `λ ⊢ n` with at most `d` rows, stored with explicit trailing
/// zeros so that `parts.len() == d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(invalid("partition needs at least one row"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(invalid(format!("parts must be non-increasing: {parts:?}")));
        }
        if parts.iter().all(|&x| x == 0) {
            return Err(invalid("partition weight must be positive"));
        }
        Ok(Self { parts })
    }

    /// Pads (or trims trailing zeros) to exactly `d` rows.
    pub fn with_rows(&self, d: usize) -> Result<Self> {
        if self.len_nonzero() > d {
            return Err(invalid(format!("{self} has more than {d} rows")));
        }
        let mut parts = self.parts.clone();
        parts.resize(d, 0);
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn n(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn d(&self) -> usize {
        self.parts.len()
    }

    pub fn len_nonzero(&self) -> usize {
        self.parts.iter().take_while(|&&x| x > 0).count()
    }

    /// Normalized shape `λ / n` as a probability vector.
    pub fn frequencies(&self) -> Vec<f64> {
        let n = self.n() as f64;
        self.parts.iter().map(|&x| x as f64 / n).collect()
    }

    /// Sum of box contents `Σ (column − row)`.
    pub fn content_sum(&self) -> i64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &len)| {
                let len = len as i64;
                len * (len - 1) / 2 - i as i64 * len
            })
            .sum()
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = crate::error::Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Self::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Every `λ ⊢ n` with at most `d` parts, in reverse-lexicographic order.
pub fn enumerate_partitions(n: u32, d: usize) -> Result<Vec<Partition>> {
    if n == 0 || d == 0 {
        return Err(invalid(format!("need n >= 1 and d >= 1, got n = {n}, d = {d}")));
    }
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(d);
    fill(n, n, d, &mut buf, &mut out);
    Ok(out)
}

fn fill(remaining: u32, cap: u32, rows: usize, buf: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rows == 0 {
        if remaining == 0 {
            out.push(Partition { parts: buf.clone() });
        }
        return;
    }
    // the remaining rows can absorb at most rows * cap boxes
    if remaining as u64 > rows as u64 * cap as u64 {
        return;
    }
    let lo = remaining.div_ceil(rows as u32);
    let hi = remaining.min(cap);
    for first in (lo..=hi).rev() {
        buf.push(first);
        fill(remaining - first, first, rows - 1, buf, out);
        buf.pop();
    }
}

/// Number of partitions of `n` into at most `d` parts, by the standard
/// recurrence `p(n, d) = p(n, d − 1) + p(n − d, d)`.
pub fn count_partitions(n: u32, d: usize) -> u128 {
    let n = n as usize;
    let mut table = vec![0u128; n + 1];
    table[0] = 1;
    for k in 1..=d {
        for m in k..=n {
            table[m] += table[m - k];
        }
    }
    table[n]
}

/// A composition of `total` into `d` non-negative parts (a type).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TypeVector {
    counts: Vec<u32>,
}

impl TypeVector {
    pub fn new(counts: Vec<u32>) -> Self {
        Self { counts }
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn total(&self) -> u32 {
        self.counts.iter().sum()
    }

    pub fn d(&self) -> usize {
        self.counts.len()
    }

    pub fn frequencies(&self) -> Vec<f64> {
        let t = self.total() as f64;
        self.counts.iter().map(|&x| x as f64 / t).collect()
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &TypeVector) -> bool {
        self.counts.len() == other.counts.len() && self.counts.iter().zip(&other.counts).all(|(a, b)| a <= b)
    }

    /// The type sorted into a partition shape (zeros kept).
    pub fn sorted_desc(&self) -> Vec<u32> {
        let mut v = self.counts.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }
}

impl fmt::Display for TypeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// `C(total + d − 1, d − 1)`, the number of types of `total` over `d` symbols.
pub fn count_types(total: u32, d: usize) -> u128 {
    if d == 0 {
        return u128::from(total == 0);
    }
    let (a, b) = (total as u128 + d as u128 - 1, d as u128 - 1);
    let mut acc: u128 = 1;
    for i in 0..b {
        acc = acc.saturating_mul(a - i) / (i + 1);
    }
    acc
}

/// All compositions of `total` into `d` parts, reverse-lexicographic.
pub fn enumerate_types(total: u32, d: usize) -> Vec<TypeVector> {
    let mut out = Vec::new();
    if d == 0 {
        return out;
    }
    let mut buf = vec![0u32; d];
    compositions(total, 0, &mut buf, &mut |c| out.push(TypeVector::new(c.to_vec())));
    out
}

/// Visits all compositions `c ≤ bound` (componentwise) with `Σ c = total`.
pub fn for_each_bounded_composition(total: u32, bound: &[u32], mut f: impl FnMut(&[u32])) {
    let d = bound.len();
    if d == 0 {
        if total == 0 {
            f(&[]);
        }
        return;
    }
    // suffix capacity
    let mut cap = vec![0u64; d + 1];
    for i in (0..d).rev() {
        cap[i] = cap[i + 1] + bound[i] as u64;
    }
    let mut buf = vec![0u32; d];
    bounded(total, 0, bound, &cap, &mut buf, &mut f);
}

fn bounded(remaining: u32, i: usize, bound: &[u32], cap: &[u64], buf: &mut [u32], f: &mut impl FnMut(&[u32])) {
    let d = bound.len();
    if i == d - 1 {
        if remaining <= bound[i] {
            buf[i] = remaining;
            f(buf);
        }
        return;
    }
    let lo = (remaining as u64).saturating_sub(cap[i + 1]) as u32;
    let hi = remaining.min(bound[i]);
    if lo > hi {
        return;
    }
    for x in (lo..=hi).rev() {
        buf[i] = x;
        bounded(remaining - x, i + 1, bound, cap, buf, f);
    }
}

fn compositions(remaining: u32, i: usize, buf: &mut [u32], f: &mut impl FnMut(&[u32])) {
    if i == buf.len() - 1 {
        buf[i] = remaining;
        f(buf);
        return;
    }
    for x in (0..=remaining).rev() {
        buf[i] = x;
        compositions(remaining - x, i + 1, buf, f);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_count(n: u32, d: usize) -> usize {
        // all non-increasing d-tuples with entries in 0..=n summing to n
        fn rec(n: u32, d: usize, cap: u32) -> usize {
            if d == 0 {
                return usize::from(n == 0);
            }
            (0..=cap.min(n)).map(|x| rec(n - x, d - 1, x)).sum()
        }
        rec(n, d, n)
    }

    #[test]
    fn small_enumerations() {
        let ps = enumerate_partitions(3, 2).unwrap();
        let parts: Vec<&[u32]> = ps.iter().map(|p| p.parts()).collect();
        assert_eq!(parts, vec![&[3, 0][..], &[2, 1][..]]);
        let single = enumerate_partitions(1, 4).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].parts(), &[1, 0, 0, 0]);
        assert_eq!(enumerate_partitions(10, 3).unwrap().len(), 14);
        assert_eq!(brute_force_count(10, 3), 14);
    }

    #[test]
    fn counts_match_recurrence_and_brute_force() {
        for n in 1..=20 {
            for d in 1..=5 {
                let listed = enumerate_partitions(n, d).unwrap();
                assert_eq!(listed.len() as u128, count_partitions(n, d));
                assert_eq!(listed.len(), brute_force_count(n, d));
                assert!(listed.windows(2).all(|w| w[0] > w[1]), "order");
                assert!(listed.iter().all(|p| p.n() == n && p.d() == d));
            }
        }
    }

    #[test]
    fn rejects_degenerate_arguments() {
        assert!(enumerate_partitions(0, 2).is_err());
        assert!(enumerate_partitions(2, 0).is_err());
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![0, 0]).is_err());
        assert!(Partition::new(vec![2, 1, 0]).unwrap().with_rows(1).is_err());
    }

    #[test]
    fn json_is_plain_array() {
        let p = Partition::new(vec![2, 1, 0]).unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), "[2,1,0]");
        let back: Partition = serde_json::from_str("[2,1,0]").unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
    }

    #[test]
    fn types_and_bounded_compositions() {
        assert_eq!(enumerate_types(4, 3).len() as u128, count_types(4, 3));
        assert_eq!(count_types(200, 2), 201);
        let mut seen = Vec::new();
        for_each_bounded_composition(3, &[2, 1, 2], |c| seen.push(c.to_vec()));
        let mut brute = Vec::new();
        for a in 0..=2u32 {
            for b in 0..=1u32 {
                for c in 0..=2u32 {
                    if a + b + c == 3 {
                        brute.push(vec![a, b, c]);
                    }
                }
            }
        }
        seen.sort();
        assert_eq!(seen, brute);
    }

    #[test]
    fn content_sums() {
        assert_eq!(Partition::new(vec![2, 1]).unwrap().content_sum(), 0);
        assert_eq!(Partition::new(vec![3]).unwrap().content_sum(), 3);
        assert_eq!(Partition::new(vec![1, 1, 1]).unwrap().content_sum(), -3);
    }
}
