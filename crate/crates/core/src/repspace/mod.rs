//! Explicit operators on `(C^d)^{⊗4}` with legs ordered `(A, B, A', B')`.
//!
//! Heavy computations run in the compressed space `∧²(AB) ⊗ ∧²(A'B')`, in the
//! real orthonormal basis `(|ab⟩ − |ba⟩)/√2 ⊗ (|a'b'⟩ − |b'a'⟩)/√2`. Every
//! isotypic state and every partial transpose of one is supported there, so
//! dimensions stay at `binomial(d,2)²` instead of `d⁴`.

mod isotypic;
mod layout;
mod perm;
mod tmatrix;
mod young;

pub use isotypic::{isotypic_states, t_vector, IsotypicStates, WedgePairs};
pub use layout::{antisym_projector, flip_operator, haar_unitary, HermitianOperator, LegLayout};
pub use perm::Permutation;
pub use tmatrix::{
    is_row_permutation_match, match_up_to_row_scaling, max_entry_gap, rational_tmatrix_numeric, tmatrix_closed_form, tmatrix_numeric,
    Dimension, NumericTMatrix, RowMatch, TMatrix,
};
pub use young::YoungSymbol;
