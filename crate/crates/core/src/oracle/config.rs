use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub max_iterations: usize,
    /// Stop a restart once the objective improves by less than this.
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 200,
            max_iterations: 2000,
            tolerance: 1e-13,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub fn with_restarts(self, restarts: usize) -> Self {
        Self { restarts, ..self }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub value: f64,
    /// Row-major coefficients of the best point.
    pub point: Vec<Complex64>,
    pub point_shape: (usize, usize),
    pub best_restart: usize,
    pub iterations: usize,
    pub converged: bool,
}

/// Outcome of one restart.
pub(crate) struct Trial {
    pub value: f64,
    pub point: DMatrix<Complex64>,
    pub iterations: usize,
    pub converged: bool,
}

pub(crate) fn run_restarts<F>(cfg: &OptimizerConfig, trial: F) -> OracleResult
where
    F: Fn(&mut ChaCha8Rng) -> Trial + Sync,
{
    let restarts = cfg.restarts.max(1);
    let trials: Vec<Trial> = (0..restarts)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(i as u64));
            trial(&mut rng)
        })
        .collect();
    let mut best = 0;
    for (i, t) in trials.iter().enumerate() {
        if t.value > trials[best].value {
            best = i;
        }
    }
    let iterations = trials.iter().map(|t| t.iterations).sum();
    let winner = &trials[best];
    OracleResult {
        value: winner.value,
        point: winner.point.transpose().iter().copied().collect(),
        point_shape: winner.point.shape(),
        best_restart: best,
        iterations,
        converged: winner.converged,
    }
}

pub(crate) fn gaussian_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
    DMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex64::new(re, im)
    })
}

pub(crate) fn normalize(m: &mut DMatrix<Complex64>) -> f64 {
    let norm = m.norm();
    if norm > 0.0 {
        *m /= Complex64::from(norm);
    }
    norm
}
