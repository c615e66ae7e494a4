//! Dense linear-algebra oracles used to validate the formula-based spectra.
//!
//! Everything here works on explicit vectors and matrices of size `d^m` or
//! `d^(2m)` and is only meant for tiny instances.

use std::collections::HashMap;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::repthy::{dim_u, dim_v, enumerate_partitions, Partition};
use crate::spectra::{Block, BlockSpectrum, SpectrumEntry, WeightedSpectrum};

/// Eigenvalues below this are treated as exact zeros.
pub const ZERO_EIGENVALUE: f64 = 1e-14;

/// Digits of `index` in base `d`, most significant first, `len` digits.
pub fn digits(mut index: usize, d: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = index % d;
        index /= d;
    }
    out
}

pub fn from_digits(digits: &[usize], d: usize) -> usize {
    digits.iter().fold(0, |acc, &x| acc * d + x)
}

/// Index of the 2m-party basis vector `a_1 b_1 a_2 b_2 … a_m b_m`.
pub fn interleave(a: &[usize], b: &[usize], d: usize) -> usize {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| (acc * d + x) * d + y)
}

/// Reduced density on the A parties of a (sub-normalized) pure state on
/// `(A ⊗ B)^{⊗m}` given in interleaved order: `ρ_A = Σ_t ψ[s,t] ψ[s',t]`.
pub fn partial_trace_b(state: &[f64], d: usize, m: usize) -> DMatrix<f64> {
    let dim = d.pow(m as u32);
    let mut psi = DMatrix::<f64>::zeros(dim, dim);
    for (index, &amp) in state.iter().enumerate() {
        if amp == 0.0 {
            continue;
        }
        let dg = digits(index, d, 2 * m);
        let a: Vec<usize> = dg.iter().step_by(2).copied().collect();
        let b: Vec<usize> = dg.iter().skip(1).step_by(2).copied().collect();
        psi[(from_digits(&a, d), from_digits(&b, d))] = amp;
    }
    &psi * psi.transpose()
}

/// Eigenvalues of a real symmetric matrix, ascending, with numerical zeros
/// dropped.
pub fn eigenvalues(rho: &DMatrix<f64>) -> Vec<f64> {
    let eig = SymmetricEigen::new(rho.clone());
    let mut vals: Vec<f64> = eig
        .eigenvalues
        .iter()
        .copied()
        .filter(|&v| v > ZERO_EIGENVALUE)
        .collect();
    vals.sort_by(f64::total_cmp);
    vals
}

/// A spectrum listing each eigenvalue once.
pub fn spectrum_from_eigenvalues(n: u32, vals: &[f64]) -> WeightedSpectrum {
    WeightedSpectrum::unchecked(n, vals.iter().map(|&v| SpectrumEntry::new(v.log2(), 0.0)).collect())
}

/// `Σ_{i<j} SWAP_{ij}` on `(C^d)^{⊗n}`.
pub fn transposition_sum(d: usize, n: usize) -> DMatrix<f64> {
    let dim = d.pow(n as u32);
    let mut t = DMatrix::<f64>::zeros(dim, dim);
    for index in 0..dim {
        let dg = digits(index, d, n);
        for i in 0..n {
            for j in i + 1..n {
                let mut sw = dg.clone();
                sw.swap(i, j);
                t[(from_digits(&sw, d), index)] += 1.0;
            }
        }
    }
    t
}

/// Orthogonal projectors onto the isotypic components `U_λ ⊗ V_λ` of
/// `(C^d)^{⊗n}`, obtained as eigenspaces of the transposition sum, which acts
/// on component `λ` as the scalar content sum of `λ`.
pub fn isotypic_projectors(d: usize, n: usize) -> Result<Vec<(Partition, DMatrix<f64>)>> {
    let lambdas = enumerate_partitions(n as u32, d)?;
    let mut by_content: HashMap<i64, usize> = HashMap::new();
    for (i, l) in lambdas.iter().enumerate() {
        if by_content.insert(l.content_sum(), i).is_some() {
            return Err(Error::Numerical(format!(
                "content sums collide at n = {n}, d = {d}; transposition sum cannot separate blocks"
            )));
        }
    }
    let eig = SymmetricEigen::new(transposition_sum(d, n));
    let dim = d.pow(n as u32);
    let mut projectors: Vec<DMatrix<f64>> = vec![DMatrix::zeros(dim, dim); lambdas.len()];
    let mut ranks = vec![0usize; lambdas.len()];
    for (k, &ev) in eig.eigenvalues.iter().enumerate() {
        let content = ev.round() as i64;
        if (ev - content as f64).abs() > 1e-8 {
            return Err(Error::Numerical(format!("non-integral eigenvalue {ev}")));
        }
        let Some(&slot) = by_content.get(&content) else {
            return Err(Error::Numerical(format!("eigenvalue {ev} matches no Young index")));
        };
        let v = eig.eigenvectors.column(k);
        projectors[slot] += v * v.transpose();
        ranks[slot] += 1;
    }
    for (i, lambda) in lambdas.iter().enumerate() {
        let want = dim_u(lambda, d)?.to_f64() * dim_v(lambda)?.to_f64();
        if ranks[i] as f64 != want {
            return Err(Error::Numerical(format!(
                "isotypic component {lambda} has rank {} but dim U × dim V = {want}",
                ranks[i]
            )));
        }
    }
    Ok(lambdas.into_iter().zip(projectors).collect())
}

/// Block weights `b_λ = tr(ρ W_λ) / d_λ` from a dense local density matrix.
pub fn block_weights(rho: &DMatrix<f64>, d: usize, n: usize) -> Result<BlockSpectrum> {
    let mut blocks = Vec::new();
    for (lambda, w) in isotypic_projectors(d, n)? {
        let dv = dim_v(&lambda)?;
        let tr = (rho * &w).trace();
        let b = (tr / dv.to_f64()).max(0.0);
        blocks.push(Block {
            dim_u: dim_u(&lambda, d)?,
            dim_v: dv,
            lambda,
            log2_b: if b > 0.0 { b.log2() } else { f64::NEG_INFINITY },
            c_values: None,
            exact_b: None,
        });
    }
    Ok(BlockSpectrum { n: n as u32, d, blocks })
}

/// Real orthogonal `d × d` matrix built from fixed Givens rotations; used
/// to move the Schmidt basis away from the computational basis.
pub fn fixed_rotation(d: usize) -> DMatrix<f64> {
    let mut o = DMatrix::<f64>::identity(d, d);
    for k in 0..d.saturating_sub(1) {
        let theta = 0.37 + 0.11 * k as f64;
        let (s, c) = theta.sin_cos();
        let mut g = DMatrix::<f64>::identity(d, d);
        g[(k, k)] = c;
        g[(k, k + 1)] = -s;
        g[(k + 1, k)] = s;
        g[(k + 1, k + 1)] = c;
        o = g * o;
    }
    o
}
