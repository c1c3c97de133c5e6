//! Computational bounds on the entanglement of the d×d antisymmetric state.
//!
//! The crate is split along the lines of the computation:
//!
//! - [`exact`]: big rational arithmetic and an exact simplex solver that
//!   returns primal and dual optima.
//! - [`repspace`]: explicit operators on `(C^d)^{⊗4}`: antisymmetrizers, flips,
//!   the three isotypic states of `∧²⊗∧²`, their partial transposes and the
//!   coefficient matrix `T_d`.
//! - [`bounds`]: closed-form key, squashed-entanglement, cost, negativity and
//!   relative-entropy bounds.
//! - [`zeta`]: the symmetry-reduced purity linear programs, their duals and the
//!   `(3/4)^n` dual certificate.
//! - [`oracle`]: brute-force numerical optimizers that bracket the relaxations
//!   from below.

pub mod bounds;
pub mod error;
pub mod exact;
pub mod oracle;
pub mod repspace;
pub mod zeta;

pub use error::{Error, Result};
pub use exact::{LpSolution, LpStatus, Rational, RationalLp};

pub use repspace::{HermitianOperator, LegLayout, TMatrix, YoungSymbol};
pub use zeta::{DualCertificate, ReducedLp, TypeVector};
