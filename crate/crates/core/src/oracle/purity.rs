use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::config::{gaussian_matrix, normalize, run_restarts, OptimizerConfig, OracleResult, Trial};
use crate::error::{invalid, Result};

const MAX_SPACE_DIM: usize = 500;

/// Shape of `ψ ∈ ∧²(C^d)^{⊗n}` as a `d^n × d^n` matrix, rows indexed by
/// `(a_1,…,a_n)` and columns by `(b_1,…,b_n)`, first copy most significant.
struct WedgePower {
    d: usize,
    n: usize,
}

impl WedgePower {
    fn new(n: usize, d: usize) -> Result<Self> {
        if !(1..=2).contains(&n) || !(3..=6).contains(&d) {
            return invalid(format!("oracle supports n in 1..=2 and d in 3..=6, got n={n} d={d}"));
        }
        let dim = (d * (d - 1) / 2).pow(n as u32);
        if dim > MAX_SPACE_DIM {
            return invalid(format!("dim ∧²(C^{d})^⊗{n} = {dim} exceeds {MAX_SPACE_DIM}"));
        }
        Ok(Self { d, n })
    }

    fn side(&self) -> usize {
        self.d.pow(self.n as u32)
    }

    /// Orthogonal projection onto states antisymmetric in every `(a_i, b_i)`.
    fn project(&self, m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        let mut out = m.clone();
        for copy in 0..self.n {
            let stride = self.d.pow((self.n - 1 - copy) as u32);
            let prev = out.clone();
            let side = self.side();
            for r in 0..side {
                let a = (r / stride) % self.d;
                for c in 0..side {
                    let b = (c / stride) % self.d;
                    let (r2, c2) = (r + b * stride - a * stride, c + a * stride - b * stride);
                    out[(r, c)] = (prev[(r, c)] - prev[(r2, c2)]) * 0.5;
                }
            }
        }
        out
    }

    fn random_point(&self, rng: &mut rand_chacha::ChaCha8Rng) -> DMatrix<Complex64> {
        let side = self.side();
        let mut m = self.project(&gaussian_matrix(side, side, rng));
        normalize(&mut m);
        m
    }
}

/// `tr[(tr_B ψψ†)²]` for a unit coefficient matrix `M`, i.e. `‖M M†‖_F²`.
fn purity(m: &DMatrix<Complex64>) -> f64 {
    (m * m.adjoint()).norm_squared()
}

fn ascend<F, S>(cfg: &OptimizerConfig, mut point: DMatrix<Complex64>, objective: F, step: S) -> Trial
where
    F: Fn(&DMatrix<Complex64>) -> f64,
    S: Fn(&DMatrix<Complex64>) -> DMatrix<Complex64>,
{
    let mut value = objective(&point);
    for it in 1..=cfg.max_iterations {
        let mut next = step(&point);
        if normalize(&mut next) == 0.0 {
            return Trial { value, point, iterations: it, converged: true };
        }
        let next_value = objective(&next);
        let gain = next_value - value;
        if gain > 0.0 {
            point = next;
            value = next_value;
        }
        if gain < cfg.tolerance {
            return Trial { value, point, iterations: it, converged: true };
        }
    }
    Trial { value, point, iterations: cfg.max_iterations, converged: false }
}

/// Maximum of `tr[(tr_{B^n} ψ)²]` over unit `ψ ∈ ∧²(C^d)^{⊗n}` by the
/// fixed-point iteration `ψ ← Π((ψ_A ⊗ 1) ψ)`.
pub fn max_purity(n: usize, d: usize, cfg: &OptimizerConfig) -> Result<OracleResult> {
    let space = WedgePower::new(n, d)?;
    Ok(run_restarts(cfg, |rng| {
        let start = space.random_point(rng);
        ascend(cfg, start, purity, |m| space.project(&(m * m.adjoint() * m)))
    }))
}

fn top_eigenvector(h: &DMatrix<Complex64>) -> (f64, nalgebra::DVector<Complex64>) {
    let eig = SymmetricEigen::new(h.clone());
    let i = eig.eigenvalues.imax();
    (eig.eigenvalues[i], eig.eigenvectors.column(i).into_owned())
}

/// Maximum of `‖tr_{B^n} ψ‖_∞` over unit `ψ ∈ ∧²(C^d)^{⊗n}`, alternating a
/// top-eigenvector step for the `A^n` vector with a power step for `ψ`.
pub fn max_reduced_operator_norm(n: usize, d: usize, cfg: &OptimizerConfig) -> Result<OracleResult> {
    let space = WedgePower::new(n, d)?;
    let objective = |m: &DMatrix<Complex64>| top_eigenvector(&(m * m.adjoint())).0;
    Ok(run_restarts(cfg, |rng| {
        let start = space.random_point(rng);
        ascend(cfg, start, objective, |m| {
            let (_, u) = top_eigenvector(&(m * m.adjoint()));
            space.project(&(&u * (u.adjoint() * m)))
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> OptimizerConfig {
        OptimizerConfig::default().with_restarts(8)
    }

    #[test]
    fn projection_is_idempotent_and_antisymmetric() {
        let space = WedgePower::new(2, 3).unwrap();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(1);
        let m = space.random_point(&mut rng);
        assert!((space.project(&m) - &m).norm() < 1e-12);
        assert!((m.norm() - 1.0).abs() < 1e-12);
        let n1 = WedgePower::new(1, 4).unwrap();
        let x = n1.random_point(&mut rng);
        assert!((&x + x.transpose()).norm() < 1e-12);
    }

    #[test]
    fn single_copy_purity_is_one_half() {
        for d in 3..=5 {
            let r = max_purity(1, d, &quick()).unwrap();
            assert!((r.value - 0.5).abs() < 1e-6, "d={d}: {}", r.value);
            assert!(r.value <= 0.5 + 1e-9);
        }
    }

    #[test]
    fn reduced_norm_single_copy() {
        let r = max_reduced_operator_norm(1, 4, &quick()).unwrap();
        assert!((r.value - 0.5).abs() < 1e-8);
    }

    #[test]
    fn deterministic_under_seed() {
        let cfg = quick().with_seed(11);
        let a = max_purity(2, 3, &cfg).unwrap();
        let b = max_purity(2, 3, &cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.value <= 0.25 + 1e-9);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(max_purity(3, 3, &quick()).is_err());
        assert!(max_purity(1, 7, &quick()).is_err());
    }
}
