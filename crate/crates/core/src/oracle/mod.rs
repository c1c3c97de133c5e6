//! Brute-force numerical oracles.
//!
//! Every maximizer here reports the value of an explicit feasible point, so
//! its output is a lower bound on the true optimum. Restarts run in parallel;
//! restart `i` draws from a generator seeded with `seed + i` and the merge
//! keeps the best value, preferring the lowest restart index on ties.

mod config;
mod negativity;
mod ppt;
mod purity;
mod separable;

pub use config::{OptimizerConfig, OracleResult};
pub use negativity::{antisymmetric_state, negativity_trace_norm};
pub use ppt::{ppt_direct_check, PptCheck};
pub use purity::{max_purity, max_reduced_operator_norm};
pub use separable::max_separable_overlap;
