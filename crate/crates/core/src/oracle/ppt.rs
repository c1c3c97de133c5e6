use nalgebra::SymmetricEigen;

use crate::error::{internal, invalid, Result};
use crate::exact::to_f64;
use crate::repspace::{
    rational_tmatrix_numeric, tmatrix_closed_form, tmatrix_numeric, Dimension, IsotypicStates, TMatrix,
    YoungSymbol,
};

const AGREEMENT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct PptCheck {
    /// Smallest eigenvalue of `Ω^Γ`.
    pub min_eigenvalue: f64,
    /// Smallest entry of `T^{⊗n} p`.
    pub min_lp_entry: f64,
    pub direct_ppt: bool,
    pub lp_ppt: bool,
}

fn lp_matrix(d: usize) -> Result<TMatrix<f64>> {
    let exact = if d == 3 {
        rational_tmatrix_numeric(3, 0)?
    } else {
        tmatrix_closed_form(Dimension::Finite(d))?
    };
    Ok(TMatrix {
        columns: exact.columns.clone(),
        rows: exact.rows.iter().map(|r| r.iter().map(to_f64).collect()).collect(),
    })
}

/// Applies `rows^{⊗n}` to `p`, where `p` is indexed by sequences over
/// [`YoungSymbol::ALL`] and `rows` lists only the symbols in `columns`.
fn tensor_apply(rows: &[Vec<f64>], columns: &[YoungSymbol], p: &[f64], n: usize) -> Vec<f64> {
    let r = rows.len();
    let mut out = Vec::new();
    let mut row_digits = vec![0; n];
    for ri in 0..r.pow(n as u32) {
        let mut x = ri;
        for slot in row_digits.iter_mut().rev() {
            *slot = x % r;
            x /= r;
        }
        let mut acc = 0.0;
        for (s, &weight) in p.iter().enumerate() {
            if weight == 0.0 {
                continue;
            }
            let mut term = weight;
            let mut x = s;
            for i in (0..n).rev() {
                let y = YoungSymbol::ALL[x % 3];
                x /= 3;
                term *= match columns.iter().position(|&c| c == y) {
                    Some(col) => rows[row_digits[i]][col],
                    None => 0.0,
                };
            }
            acc += term;
        }
        out.push(acc);
    }
    out
}

/// Compares the PPT status of `Ω = Σ p_{y^n} ρ_{y_1} ⊗ … ⊗ ρ_{y_n}` computed
/// from its spectrum with the sign test `T_d^{⊗n} p ≥ 0`.
///
/// At `n = 1` the spectrum of `Ω^Γ` is computed directly. At `n = 2` it is
/// assembled from the single-copy joint block eigenvalues of the commuting
/// `ρ_y^Γ`. Disagreement is an internal error.
pub fn ppt_direct_check(d: usize, p: &[f64], n: usize) -> Result<PptCheck> {
    if !(3..=6).contains(&d) || !(1..=2).contains(&n) {
        return invalid(format!("ppt check supports d in 3..=6 and n in 1..=2, got d={d} n={n}"));
    }
    if p.len() != 3usize.pow(n as u32) {
        return invalid(format!("p has {} entries, expected {}", p.len(), 3usize.pow(n as u32)));
    }
    if p.iter().any(|&x| x < 0.0 || !x.is_finite()) || (p.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
        return invalid("p must be a probability vector");
    }

    let min_eigenvalue = if n == 1 {
        let iso = IsotypicStates::new(d)?;
        let m = iso.space_dim();
        let mut omega = nalgebra::DMatrix::<f64>::zeros(m, m);
        for (y, &w) in YoungSymbol::ALL.iter().zip(p) {
            omega += iso.state(*y) * w;
        }
        SymmetricEigen::new(iso.partial_transpose(&omega)).eigenvalues.min()
    } else {
        let blocks = tmatrix_numeric(d, 0)?.matrix;
        tensor_apply(&blocks.rows, &blocks.columns, p, n)
            .into_iter()
            .fold(f64::INFINITY, f64::min)
    };

    let t = lp_matrix(d)?;
    let min_lp_entry = tensor_apply(&t.rows, &t.columns, p, n)
        .into_iter()
        .fold(f64::INFINITY, f64::min);

    let check = PptCheck {
        min_eigenvalue,
        min_lp_entry,
        direct_ppt: min_eigenvalue >= -AGREEMENT_TOL,
        lp_ppt: min_lp_entry >= -AGREEMENT_TOL,
    };
    if check.direct_ppt != check.lp_ppt {
        return internal(format!(
            "PPT verdicts disagree at d={d}, n={n}: min eigenvalue {min_eigenvalue:e}, min T·p {min_lp_entry:e}"
        ));
    }
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_symbol_verdicts() {
        let y22 = ppt_direct_check(4, &[0.0, 1.0, 0.0], 1).unwrap();
        assert!(y22.direct_ppt && y22.min_eigenvalue >= -1e-9);
        let y1111 = ppt_direct_check(4, &[1.0, 0.0, 0.0], 1).unwrap();
        assert!(!y1111.direct_ppt && y1111.min_eigenvalue < 0.0);
        let third = 1.0 / 3.0;
        ppt_direct_check(4, &[third, third, third], 1).unwrap();
    }

    #[test]
    fn two_copy_verdicts() {
        let mut p = vec![0.0; 9];
        p[4] = 1.0;
        assert!(ppt_direct_check(4, &p, 2).unwrap().lp_ppt);
        p[4] = 0.5;
        p[0] = 0.5;
        let mixed = ppt_direct_check(5, &p, 2).unwrap();
        assert_eq!(mixed.direct_ppt, mixed.lp_ppt);
        let qutrit = ppt_direct_check(3, &[0.0, 0.5, 0.5], 1).unwrap();
        assert!(qutrit.direct_ppt);
    }

    #[test]
    fn malformed_inputs() {
        assert!(ppt_direct_check(4, &[0.5, 0.5], 1).is_err());
        assert!(ppt_direct_check(4, &[0.5, 0.6, -0.1], 1).is_err());
        assert!(ppt_direct_check(7, &[1.0, 0.0, 0.0], 1).is_err());
    }
}
