use crate::error::{invalid, Result};
use crate::repspace::{flip_operator, HermitianOperator, LegLayout};

/// `α_d = (1 − F)/(d(d−1))` on `C^d ⊗ C^d`.
pub fn antisymmetric_state(d: usize) -> Result<HermitianOperator> {
    if d < 2 {
        return invalid(format!("d must be at least 2, got {d}"));
    }
    let layout = LegLayout::bipartite(d);
    let flip = flip_operator(&layout, ("A", "B"))?;
    let id = HermitianOperator::identity(layout.clone());
    let matrix = (id.matrix() - flip.matrix()) / nalgebra::Complex::from((d * (d - 1)) as f64);
    HermitianOperator::new(matrix, layout)
}

/// `‖α_d^{T_B}‖₁` from the full spectrum.
pub fn negativity_trace_norm(d: usize) -> Result<f64> {
    if !(2..=12).contains(&d) {
        return invalid(format!("d must lie in 2..=12, got {d}"));
    }
    Ok(antisymmetric_state(d)?.partial_transpose(&["B"])?.trace_norm())
}
