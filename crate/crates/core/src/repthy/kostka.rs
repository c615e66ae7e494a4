use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{BigDim, Partition, TypeVector};
use crate::error::{invalid, Result};

/// Memoized Kostka numbers `K_{λμ}`: the number of semistandard tableaux of
/// shape `λ` and content `μ`.
///
/// The recursion peels off the largest letter as a horizontal strip. Since
/// `K_{λμ}` is symmetric in `μ`, contents are sorted before lookup, which
/// keeps the memo small when many types share a sorted shape.
#[derive(Debug, Default)]
pub struct KostkaCache {
    memo: HashMap<(Vec<u32>, Vec<u32>), BigUint>,
}

impl KostkaCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, lambda: &Partition, mu: &TypeVector) -> Result<BigDim> {
        if lambda.n() != mu.total() {
            return Err(invalid(format!(
                "weight mismatch: |{lambda}| = {} but |{mu}| = {}",
                lambda.n(),
                mu.total()
            )));
        }
        let mut content = mu.sorted_desc();
        content.retain(|&x| x > 0);
        let shape: Vec<u32> = lambda.parts().iter().copied().filter(|&x| x > 0).collect();
        Ok(BigDim(self.rec(shape, content)))
    }

    fn rec(&mut self, shape: Vec<u32>, content: Vec<u32>) -> BigUint {
        let Some(&last) = content.last() else {
            return if shape.is_empty() {
                BigUint::one()
            } else {
                BigUint::zero()
            };
        };
        let letters = content.len();
        if shape.len() > letters {
            return BigUint::zero();
        }
        let key = (shape, content);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let (shape, content) = &key;
        let prefix = content[..letters - 1].to_vec();
        let mut total = BigUint::zero();
        let mut nu = vec![0u32; shape.len()];
        self.strips(shape, 0, last, &mut nu, &prefix, &mut total);
        self.memo.insert(key.clone(), total.clone());
        total
    }

    /// Enumerates `ν` with `λ_{i+1} ≤ ν_i ≤ λ_i` and `|λ| − |ν| = strip`.
    fn strips(
        &mut self,
        shape: &[u32],
        i: usize,
        remaining: u32,
        nu: &mut Vec<u32>,
        prefix: &[u32],
        total: &mut BigUint,
    ) {
        if i == shape.len() {
            if remaining == 0 {
                let next: Vec<u32> = nu.iter().copied().filter(|&x| x > 0).collect();
                *total += self.rec(next, prefix.to_vec());
            }
            return;
        }
        let below = shape.get(i + 1).copied().unwrap_or(0);
        let max_take = (shape[i] - below).min(remaining);
        // the later rows can remove at most this many boxes
        let later: u32 = (i + 1..shape.len())
            .map(|j| shape[j] - shape.get(j + 1).copied().unwrap_or(0))
            .sum();
        let min_take = remaining.saturating_sub(later);
        if min_take > max_take {
            return;
        }
        for take in min_take..=max_take {
            nu[i] = shape[i] - take;
            self.strips(shape, i + 1, remaining - take, nu, prefix, total);
        }
    }
}

/// One-shot Kostka number.
pub fn kostka(lambda: &Partition, mu: &TypeVector) -> Result<BigDim> {
    KostkaCache::new().get(lambda, mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repthy::{dim_u, enumerate_partitions, enumerate_types};

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    /// Brute-force SSYT count with given content.
    fn ssyt_with_content(shape: &[u32], content: &[u32]) -> u64 {
        let cells: Vec<(usize, usize)> = shape
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c)))
            .collect();
        let width = shape.first().copied().unwrap_or(0) as usize;
        let mut grid = vec![vec![0u32; width]; shape.len()];
        let mut left = content.to_vec();
        fn rec(k: usize, cells: &[(usize, usize)], grid: &mut Vec<Vec<u32>>, left: &mut Vec<u32>) -> u64 {
            if k == cells.len() {
                return u64::from(left.iter().all(|&x| x == 0));
            }
            let (r, c) = cells[k];
            let mut lo = 1;
            if c > 0 {
                lo = lo.max(grid[r][c - 1]);
            }
            if r > 0 {
                lo = lo.max(grid[r - 1][c] + 1);
            }
            let mut total = 0;
            for v in lo..=left.len() as u32 {
                if left[v as usize - 1] == 0 {
                    continue;
                }
                left[v as usize - 1] -= 1;
                grid[r][c] = v;
                total += rec(k + 1, cells, grid, left);
                left[v as usize - 1] += 1;
            }
            grid[r][c] = 0;
            total
        }
        rec(0, &cells, &mut grid, &mut left)
    }

    #[test]
    fn examples() {
        let k = kostka(&part(&[2, 1]), &TypeVector::new(vec![1, 1, 1])).unwrap();
        assert_eq!(k, BigDim::from(2));
        assert_eq!(ssyt_with_content(&[2, 1], &[1, 1, 1]), 2);
        let k = kostka(&part(&[3, 1, 0]), &TypeVector::new(vec![3, 1, 0])).unwrap();
        assert_eq!(k, BigDim::from(1));
        let k = kostka(&part(&[1, 1]), &TypeVector::new(vec![2, 0])).unwrap();
        assert!(k.is_zero());
        assert!(kostka(&part(&[2, 1]), &TypeVector::new(vec![1, 1])).is_err());
    }

    #[test]
    fn matches_brute_force_and_is_symmetric() {
        let mut cache = KostkaCache::new();
        for n in 1..=8 {
            for d in 1..=4usize {
                for lambda in enumerate_partitions(n, d).unwrap() {
                    for mu in enumerate_types(n, d) {
                        let got = cache.get(&lambda, &mu).unwrap();
                        let want = ssyt_with_content(lambda.parts(), mu.counts());
                        assert_eq!(got, BigDim::from(want), "K[{lambda},{mu}]");
                        let mut rev = mu.counts().to_vec();
                        rev.reverse();
                        assert_eq!(cache.get(&lambda, &TypeVector::new(rev)).unwrap(), got);
                    }
                }
            }
        }
    }

    #[test]
    fn weight_space_sum_is_dim_u() {
        let mut cache = KostkaCache::new();
        for n in 1..=10 {
            for d in 1..=3usize {
                for lambda in enumerate_partitions(n, d).unwrap() {
                    let sum = enumerate_types(n, d)
                        .iter()
                        .fold(BigUint::zero(), |acc, mu| acc + cache.get(&lambda, mu).unwrap().0);
                    assert_eq!(BigDim(sum), dim_u(&lambda, d).unwrap());
                }
            }
        }
    }
}
