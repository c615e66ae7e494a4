use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Partition;
use crate::error::{invalid, Result};
use crate::math::LogSumExp;
use crate::prob::ProbVector;

/// `log2 s_λ(p)`; `-inf` when the polynomial vanishes (for instance when `λ`
/// has more rows than `p` has non-zero entries).
///
/// Evaluated as the positive branching sum
/// `s_λ(x_1..x_k) = Σ_{ν ≺ λ} s_ν(x_1..x_{k−1}) x_k^{|λ|−|ν|}`
/// over interlacing `ν`, with the two-variable case in closed form. Every term
/// is non-negative, so nothing cancels even for widely separated `p_i`.
pub fn schur_log2(lambda: &Partition, p: &ProbVector) -> Result<f64> {
    let xs = p.probs();
    let parts: Vec<u32> = lambda.parts().iter().copied().filter(|&x| x > 0).collect();
    if parts.len() > xs.len() {
        return Ok(f64::NEG_INFINITY);
    }
    let mut padded = parts;
    padded.resize(xs.len(), 0);
    Ok(ln_schur(&padded, xs) / std::f64::consts::LN_2)
}

/// `s_λ(p)` as a float.
pub fn schur_poly(lambda: &Partition, p: &ProbVector) -> Result<f64> {
    Ok(schur_log2(lambda, p)?.exp2())
}

fn ln_pow(x: f64, k: u32) -> f64 {
    if k == 0 {
        0.0
    } else {
        k as f64 * x.ln()
    }
}

/// `ln h_k(x, y)` without cancellation.
fn ln_h2(k: u32, x: f64, y: f64) -> f64 {
    let (hi, lo) = if x >= y { (x, y) } else { (y, x) };
    if k == 0 {
        return 0.0;
    }
    if hi <= 0.0 {
        return f64::NEG_INFINITY;
    }
    if lo <= 0.0 {
        return ln_pow(hi, k);
    }
    // Σ_{i=0}^{k} t^i with t = lo / hi ≤ 1
    let l = ((lo - hi) / hi).ln_1p();
    let geometric = if l == 0.0 {
        (k as f64 + 1.0).ln()
    } else {
        (((k as f64 + 1.0) * l).exp_m1() / l.exp_m1()).ln()
    };
    ln_pow(hi, k) + geometric
}

fn ln_schur(parts: &[u32], xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => ln_pow(xs[0], parts[0]),
        2 => {
            let (a, b) = (parts[0], parts[1]);
            let mixed = if b == 0 {
                0.0
            } else {
                b as f64 * (xs[0].ln() + xs[1].ln())
            };
            if b > 0 && (xs[0] <= 0.0 || xs[1] <= 0.0) {
                return f64::NEG_INFINITY;
            }
            mixed + ln_h2(a - b, xs[0], xs[1])
        }
        k => {
            let last = xs[k - 1];
            let total: u32 = parts.iter().sum();
            let mut acc = LogSumExp::default();
            let mut nu = vec![0u32; k - 1];
            interlace(parts, 0, &mut nu, &mut |nu| {
                let removed = total - nu.iter().sum::<u32>();
                if removed > 0 && last <= 0.0 {
                    return;
                }
                let rest = ln_schur(nu, &xs[..k - 1]);
                acc.add(rest + ln_pow(last, removed));
            });
            acc.value()
        }
    }
}

/// Enumerates `ν` of length `λ.len() − 1` with `λ_{i+1} ≤ ν_i ≤ λ_i`.
fn interlace(parts: &[u32], i: usize, nu: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if i == nu.len() {
        f(nu);
        return;
    }
    for v in parts[i + 1]..=parts[i] {
        nu[i] = v;
        interlace(parts, i + 1, nu, f);
    }
}

/// Exact `s_λ(p)` for rational `p` via the Jacobi–Trudi determinant
/// `det[h_{λ_i − i + j}]`, with `h_k` from Newton's identities.
pub fn schur_exact(lambda: &Partition, p: &[BigRational]) -> Result<BigRational> {
    if p.iter().any(|x| x.is_negative()) {
        return Err(invalid("negative probability"));
    }
    let sum = p.iter().fold(BigRational::zero(), |a, b| a + b);
    if !sum.is_one() {
        return Err(invalid(format!("probabilities sum to {sum}")));
    }
    let rows: Vec<u32> = lambda.parts().iter().copied().filter(|&x| x > 0).collect();
    let l = rows.len();
    let max_k = rows.first().copied().unwrap_or(0) as usize + l;
    let h = complete_homogeneous(p, max_k);
    let mut m = vec![vec![BigRational::zero(); l]; l];
    for i in 0..l {
        for j in 0..l {
            let k = rows[i] as i64 - i as i64 + j as i64;
            if k >= 0 {
                m[i][j] = h[k as usize].clone();
            }
        }
    }
    Ok(determinant(m))
}

/// `h_0..=h_max` by `k h_k = Σ_{i=1}^{k} P_i h_{k−i}` (power sums `P_i`).
fn complete_homogeneous(p: &[BigRational], max: usize) -> Vec<BigRational> {
    let mut power_sums = Vec::with_capacity(max + 1);
    power_sums.push(BigRational::from_integer(BigInt::from(p.len())));
    let mut powers: Vec<BigRational> = p.to_vec();
    for _ in 1..=max {
        power_sums.push(powers.iter().fold(BigRational::zero(), |a, b| a + b));
        for (pw, x) in powers.iter_mut().zip(p) {
            *pw = &*pw * x;
        }
    }
    let mut h = vec![BigRational::one()];
    for k in 1..=max {
        let mut acc = BigRational::zero();
        for i in 1..=k {
            acc += &power_sums[i] * &h[k - i];
        }
        h.push(acc / BigRational::from_integer(BigInt::from(k)));
    }
    h
}

fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let pv = m[col][col].clone();
        det *= &pv;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &pv;
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}
