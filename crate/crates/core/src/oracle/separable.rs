use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;

use super::config::{gaussian_matrix, run_restarts, OptimizerConfig, OracleResult, Trial};
use crate::error::{invalid, Result};

/// `P_{∧²}^{⊗n}` with rows indexed by `(a, b)`, `a, b ∈ [d]^n` and `a` most
/// significant.
fn antisym_power(n: usize, d: usize) -> DMatrix<f64> {
    let side = d.pow(n as u32);
    let digit = |x: usize, i: usize| (x / d.pow((n - 1 - i) as u32)) % d;
    DMatrix::from_fn(side * side, side * side, |r, c| {
        let (a, b, a2, b2) = (r / side, r % side, c / side, c % side);
        (0..n)
            .map(|i| {
                let (x, y, x2, y2) = (digit(a, i), digit(b, i), digit(a2, i), digit(b2, i));
                let direct = if x == x2 && y == y2 { 1.0 } else { 0.0 };
                let swapped = if x == y2 && y == x2 { 1.0 } else { 0.0 };
                (direct - swapped) / 2.0
            })
            .product()
    })
}

/// `(⟨·| ⊗ ⟨β|) P (|·⟩ ⊗ |β⟩)` on the first factor, or on the second when
/// `first` is false.
fn contract(p: &DMatrix<f64>, side: usize, v: &DVector<Complex64>, first: bool) -> DMatrix<Complex64> {
    DMatrix::from_fn(side, side, |i, j| {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..side {
            for l in 0..side {
                let (r, c) = if first {
                    (i * side + k, j * side + l)
                } else {
                    (k * side + i, l * side + j)
                };
                let w = p[(r, c)];
                if w != 0.0 {
                    acc += v[k].conj() * v[l] * w;
                }
            }
        }
        acc
    })
}

fn top(h: &DMatrix<Complex64>) -> (f64, DVector<Complex64>) {
    let eig = SymmetricEigen::new(h.clone());
    let i = eig.eigenvalues.imax();
    (eig.eigenvalues[i], eig.eigenvectors.column(i).into_owned())
}

fn unit_vector(side: usize, rng: &mut ChaCha8Rng) -> DVector<Complex64> {
    let v = gaussian_matrix(side, 1, rng).column(0).into_owned();
    let norm = v.norm();
    v / Complex64::from(norm)
}

/// Maximum of `⟨αβ|P_{∧²}^{⊗n}|αβ⟩` over unit product vectors
/// `α ∈ (C^d)^{⊗n}` (the `A` legs) and `β ∈ (C^d)^{⊗n}` (the `B` legs).
pub fn max_separable_overlap(n: usize, d: usize, cfg: &OptimizerConfig) -> Result<OracleResult> {
    if !(1..=2).contains(&n) || !(3..=5).contains(&d) {
        return invalid(format!("oracle supports n in 1..=2 and d in 3..=5, got n={n} d={d}"));
    }
    let side = d.pow(n as u32);
    let p = antisym_power(n, d);
    Ok(run_restarts(cfg, |rng| {
        let mut beta = unit_vector(side, rng);
        let mut alpha = unit_vector(side, rng);
        let mut value = f64::NEG_INFINITY;
        let mut iterations = cfg.max_iterations;
        let mut converged = false;
        for it in 1..=cfg.max_iterations {
            alpha = top(&contract(&p, side, &beta, false)).1;
            let (next, b) = top(&contract(&p, side, &alpha, true));
            beta = b;
            let gain = next - value;
            value = next;
            if gain.abs() < cfg.tolerance {
                iterations = it;
                converged = true;
                break;
            }
        }
        let point = DMatrix::from_fn(side, 2, |i, j| if j == 0 { alpha[i] } else { beta[i] });
        let ab = alpha.kronecker(&beta);
        let certified = (ab.adjoint() * p.map(Complex64::from) * &ab)[(0, 0)].re;
        Trial { value: certified, point, iterations, converged }
    }))
}
