//! Symmetry-reduced purity linear programs.
//!
//! The relaxed purity program has one variable per symbol sequence
//! `y^n ∈ {[1111],[22],[211]}^n` and one PPT constraint per block sequence.
//! Both sides are permutation invariant, so variables and constraints are
//! indexed here by occurrence counts ([`TypeVector`]) instead of sequences.

mod certificate;
mod reduced;
mod types;

pub use certificate::{
    check_certificate, simplified_dual_coefficient, simplified_dual_lp, tampered_certificate,
    CertificateReport, DualCertificate,
};
pub use reduced::{
    build_expanded_lp, build_reduced_lp, build_reduced_lp_from, build_simplified_lp,
    ef_lower_bound, substitute_y211, zeta_full, zeta_simplified, EfBound, ReducedLp, ZetaSource,
    SIMPLIFIED_MAX_N, T_COEFFICIENTS,
};
pub use types::TypeVector;
