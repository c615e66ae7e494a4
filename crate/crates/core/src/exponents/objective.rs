use crate::math::{binary_entropy, relative_entropy_bits};

/// Minimizer `q′` of the clone objective for fixed `q`, and the value.
///
/// With `t_i = q′_i / (r q_i)` the stationarity condition is
/// `t_i² / (1 − t_i) = c p_i / (r q_i)` for one multiplier `c`, chosen so
/// that `Σ q′_i = 1`. The objective is convex in `q′`, so this is the global
/// inner minimum.
pub(crate) fn inner_min(q: &[f64], r: f64, p: &[f64]) -> (f64, Vec<f64>) {
    if r <= 1.0 {
        return (relative_entropy_bits(q, p).max(0.0), q.to_vec());
    }
    let t_of = |ln_c: f64, i: usize| -> f64 {
        if q[i] <= 0.0 {
            return 0.0;
        }
        let k = ln_c.exp() * p[i] / (r * q[i]);
        2.0 / (1.0 + (1.0 + 4.0 / k).sqrt())
    };
    let mass = |ln_c: f64| -> f64 { (0..q.len()).map(|i| r * q[i] * t_of(ln_c, i)).sum() };
    let (mut lo, mut hi) = (-1.0, 1.0);
    while mass(lo) > 1.0 {
        lo *= 2.0;
    }
    while mass(hi) < 1.0 {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if mass(mid) < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let ln_c = 0.5 * (lo + hi);
    let t: Vec<f64> = (0..q.len()).map(|i| t_of(ln_c, i)).collect();
    let mut qp: Vec<f64> = (0..q.len()).map(|i| r * q[i] * t[i]).collect();
    let s: f64 = qp.iter().sum();
    qp.iter_mut().for_each(|x| *x /= s);
    (objective(q, &qp, r, p), qp)
}

/// `h(1/r) − Σ q_i h(q′_i / (r q_i)) + (1/r) D(q′||p)` in bits.
pub(crate) fn objective(q: &[f64], qp: &[f64], r: f64, p: &[f64]) -> f64 {
    let mut v = binary_entropy(1.0 / r);
    for (&qi, &qpi) in q.iter().zip(qp) {
        if qi > 0.0 {
            v -= qi * binary_entropy((qpi / (r * qi)).min(1.0));
        }
    }
    v + relative_entropy_bits(qp, p) / r
}

/// Golden-section minimization of a unimodal `f` on `[a, b]`, stopping once
/// the bracket is narrower than `xtol`.
pub(crate) fn golden_min(mut a: f64, mut b: f64, xtol: f64, f: impl Fn(f64) -> f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if (b - a) < xtol {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}
