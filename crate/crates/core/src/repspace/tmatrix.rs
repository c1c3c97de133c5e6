use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::isotypic::{IsotypicStates, MAX_COMPRESSED_DIM};
use super::young::YoungSymbol;
use crate::error::{internal, invalid, Result};
use crate::exact::{int, rat, rationalize, to_f64, Rational, RationalMatrix};

/// Local dimension, with a marker for the `d → ∞` limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dimension {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Finite(d) => write!(f, "{d}"),
            Dimension::Infinite => f.write_str("inf"),
        }
    }
}

/// Coefficient matrix relating mixtures over [`YoungSymbol`]s to the PPT
/// blocks. Rows are blocks of the commutant of `g⊗g⊗ḡ⊗ḡ`; columns are symbols.
#[derive(Debug, Clone, PartialEq)]
pub struct TMatrix<T> {
    pub columns: Vec<YoungSymbol>,
    pub rows: Vec<Vec<T>>,
}

impl TMatrix<Rational> {
    pub fn to_f64(&self) -> TMatrix<f64> {
        TMatrix {
            columns: self.columns.clone(),
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(to_f64).collect())
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> RationalMatrix {
        RationalMatrix::from_rows(self.rows.clone())
    }
}

impl<T> TMatrix<T> {
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }
}

/// The displayed closed form of `T_d` (rows `(1,1,−1)`, the `[2,1,1]`-weighted
/// row and the `O(1/d)`-corrected row), or its `d → ∞` limit.
pub fn tmatrix_closed_form(d: Dimension) -> Result<TMatrix<Rational>> {
    let rows = match d {
        Dimension::Infinite => vec![
            vec![int(1), int(1), int(-1)],
            vec![int(-2), int(1), int(0)],
            vec![int(1), int(1), int(1)],
        ],
        Dimension::Finite(d) if d < 4 => {
            return invalid(format!("closed-form T_d needs d >= 4 (got {d})"));
        }
        Dimension::Finite(d) => {
            let d = d as i64;
            let dm1 = d - 1;
            let dm2 = d - 2;
            vec![
                vec![int(1), int(1), int(-1)],
                vec![int(-2) - rat(6, dm2), int(1), rat(2, dm2)],
                vec![
                    int(1) + rat(2 * (d * d - d + 1), d * dm1 * dm2),
                    int(1) - rat(d + 1, d * dm1),
                    int(1) - rat(2 * d - 3, d * dm1 * dm2),
                ],
            ]
        }
    };
    Ok(TMatrix {
        columns: YoungSymbol::ALL.to_vec(),
        rows,
    })
}

/// Joint-eigenvalue extraction of the block structure of the `ρ_y^Γ`.
#[derive(Debug, Clone)]
pub struct NumericTMatrix {
    /// Row `r`, column `y`: eigenvalue of `ρ_y^Γ` on block `r`.
    pub matrix: TMatrix<f64>,
    /// Dimension of each block, ascending, in row order.
    pub block_dims: Vec<usize>,
    /// Largest `‖[ρ_y^Γ, ρ_{y'}^Γ]‖_max` seen.
    pub max_commutator: f64,
}

const COMMUTATOR_TOL: f64 = 1e-9;
const CLUSTER_REL_TOL: f64 = 1e-6;

/// Simultaneously diagonalizes the partial transposes `ρ_y^Γ` (on `A'B'`)
/// through one random real combination and groups its eigenvectors by their
/// joint eigenvalue triple. Components absent at this `d` are dropped as columns.
pub fn tmatrix_numeric(d: usize, seed: u64) -> Result<NumericTMatrix> {
    if !(3..=MAX_COMPRESSED_DIM).contains(&d) {
        return invalid(format!("numeric T-matrix requires 3 <= d <= {MAX_COMPRESSED_DIM}, got {d}"));
    }
    let iso = IsotypicStates::new(d)?;
    let columns = iso.present();
    let gammas: Vec<DMatrix<f64>> = columns.iter().map(|&y| iso.partial_transpose_state(y)).collect();

    let mut max_commutator: f64 = 0.0;
    for (i, a) in gammas.iter().enumerate() {
        for b in &gammas[i + 1..] {
            max_commutator = max_commutator.max((a * b - b * a).amax());
        }
    }
    if max_commutator > COMMUTATOR_TOL {
        return internal(format!(
            "partial transposes do not commute at d={d}: {max_commutator:e}"
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = iso.space_dim();
    let mut combo = DMatrix::<f64>::zeros(m, m);
    for g in &gammas {
        combo += g * rng.random_range(0.5..1.5);
    }
    let eig = SymmetricEigen::new(combo);

    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let scale = eig.eigenvalues.amax().max(f64::MIN_POSITIVE);

    // Consecutive eigenvalues closer than the relative tolerance share a block.
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for &i in &order {
        let lambda = eig.eigenvalues[i];
        if lambda - last > CLUSTER_REL_TOL * scale || clusters.is_empty() {
            clusters.push(Vec::new());
        }
        clusters.last_mut().unwrap().push(i);
        last = lambda;
    }
    if clusters.len() > 3 {
        return internal(format!(
            "{} joint-eigenvalue clusters at d={d}; expected at most 3",
            clusters.len()
        ));
    }

    let mut blocks: Vec<(usize, Vec<f64>)> = Vec::new();
    for cluster in &clusters {
        let mut mean = vec![0.0; gammas.len()];
        let mut triples = Vec::with_capacity(cluster.len());
        for &i in cluster {
            let v = eig.eigenvectors.column(i);
            let t: Vec<f64> = gammas.iter().map(|g| v.dot(&(g * v))).collect();
            for (acc, x) in mean.iter_mut().zip(&t) {
                *acc += x;
            }
            triples.push(t);
        }
        for x in mean.iter_mut() {
            *x /= cluster.len() as f64;
        }
        let spread = triples
            .iter()
            .flat_map(|t| t.iter().zip(&mean).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if spread > CLUSTER_REL_TOL * scale {
            return internal(format!("block at d={d} has inconsistent joint eigenvalues (spread {spread:e})"));
        }
        blocks.push((cluster.len(), mean));
    }
    blocks.sort_by_key(|(dim, _)| *dim);

    Ok(NumericTMatrix {
        block_dims: blocks.iter().map(|(dim, _)| *dim).collect(),
        matrix: TMatrix {
            columns,
            rows: blocks.into_iter().map(|(_, row)| row).collect(),
        },
        max_commutator,
    })
}

/// Exact version of [`tmatrix_numeric`]: each row is divided by its largest
/// absolute entry and rounded to a rational with denominator at most 4096.
pub fn rational_tmatrix_numeric(d: usize, seed: u64) -> Result<TMatrix<Rational>> {
    let numeric = tmatrix_numeric(d, seed)?;
    let mut rows = Vec::new();
    for row in &numeric.matrix.rows {
        let norm = row.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let mut exact = Vec::with_capacity(row.len());
        for x in row {
            let (r, err) = rationalize(x / norm, 4096);
            if err > 1e-9 {
                return internal(format!("block eigenvalue ratio {} is not a small rational", x / norm));
            }
            exact.push(r);
        }
        rows.push(exact);
    }
    Ok(TMatrix {
        columns: numeric.matrix.columns,
        rows,
    })
}

/// Best positive-scaling match of one numeric row against the reference rows.
#[derive(Debug, Clone, PartialEq)]
pub struct RowMatch {
    pub numeric_row: usize,
    /// Reference row with the smallest error, if any admits a positive scale.
    pub reference_row: Option<usize>,
    pub scale: f64,
    /// `max_k |s·n_k − r_k| / |r_k|` (absolute where `r_k = 0`).
    pub max_rel_error: f64,
}

impl RowMatch {
    pub fn within(&self, tol: f64) -> bool {
        self.reference_row.is_some() && self.max_rel_error <= tol
    }
}

/// Matches every numeric row to a reference row up to a positive factor.
pub fn match_up_to_row_scaling(numeric: &TMatrix<f64>, reference: &TMatrix<f64>) -> Vec<RowMatch> {
    let cols: Vec<usize> = numeric
        .columns
        .iter()
        .map(|c| reference.columns.iter().position(|r| r == c).expect("column missing from reference"))
        .collect();
    numeric
        .rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut best = RowMatch {
                numeric_row: i,
                reference_row: None,
                scale: 0.0,
                max_rel_error: f64::INFINITY,
            };
            for (j, reference_row) in reference.rows.iter().enumerate() {
                let target: Vec<f64> = cols.iter().map(|&c| reference_row[c]).collect();
                let nn: f64 = row.iter().map(|x| x * x).sum();
                let s = row.iter().zip(&target).map(|(a, b)| a * b).sum::<f64>() / nn;
                if s.is_nan() || s <= 0.0 {
                    continue;
                }
                let err = row
                    .iter()
                    .zip(&target)
                    .map(|(n, r)| {
                        let diff = (s * n - r).abs();
                        if *r == 0.0 { diff } else { diff / r.abs() }
                    })
                    .fold(0.0, f64::max);
                if err < best.max_rel_error {
                    best = RowMatch {
                        numeric_row: i,
                        reference_row: Some(j),
                        scale: s,
                        max_rel_error: err,
                    };
                }
            }
            best
        })
        .collect()
}

/// Whether every numeric row matches a distinct reference row within `tol`.
pub fn is_row_permutation_match(matches: &[RowMatch], tol: f64) -> bool {
    let mut used: Vec<usize> = matches.iter().filter_map(|m| m.reference_row).collect();
    used.sort_unstable();
    used.dedup();
    used.len() == matches.len() && matches.iter().all(|m| m.within(tol))
}

/// Entrywise `max |a − b|` between two rational T-matrices.
pub fn max_entry_gap(a: &TMatrix<Rational>, b: &TMatrix<Rational>) -> Rational {
    a.rows
        .iter()
        .flatten()
        .zip(b.rows.iter().flatten())
        .map(|(x, y)| (x - y).abs())
        .fold(Rational::zero(), |m, v| if v > m { v } else { m })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_at_four() {
        let t = tmatrix_closed_form(Dimension::Finite(4)).unwrap();
        assert_eq!(t.rows[0], vec![int(1), int(1), int(-1)]);
        assert_eq!(t.rows[1], vec![int(-5), int(1), int(1)]);
        assert_eq!(t.rows[2], vec![rat(25, 12), rat(7, 12), rat(19, 24)]);
        assert!(tmatrix_closed_form(Dimension::Finite(3)).is_err());
    }

    #[test]
    fn closed_form_limit() {
        let inf = tmatrix_closed_form(Dimension::Infinite).unwrap();
        assert_eq!(inf.rows[1], vec![int(-2), int(1), int(0)]);
        assert_eq!(inf.rows[2], vec![int(1), int(1), int(1)]);
        let big = tmatrix_closed_form(Dimension::Finite(1_000_000)).unwrap();
        // each O(1/d) term of the display is at most 10/(d-2) in size
        assert!(max_entry_gap(&big, &inf) <= rat(10, 999_998));
    }

    #[test]
    fn numeric_block_structure() {
        for d in 4..=6 {
            let t = tmatrix_numeric(d, 0).unwrap();
            let dd = d * (d - 1) / 2;
            assert_eq!(t.block_dims, vec![1, d * d - 1, dd * dd - d * d], "d={d}");
            assert!(t.max_commutator <= 1e-9);
        }
        let t3 = tmatrix_numeric(3, 0).unwrap();
        assert_eq!(t3.block_dims, vec![1, 8]);
        assert_eq!(t3.matrix.columns, vec![YoungSymbol::Y22, YoungSymbol::Y211]);
        assert!(tmatrix_numeric(2, 0).is_err());
        assert!(tmatrix_numeric(9, 0).is_err());
    }

    #[test]
    fn first_two_closed_form_rows_are_block_eigenvalues() {
        for d in 4..=6 {
            let numeric = tmatrix_numeric(d, 1).unwrap();
            let closed = tmatrix_closed_form(Dimension::Finite(d)).unwrap().to_f64();
            let matches = match_up_to_row_scaling(&numeric.matrix, &closed);
            // blocks ordered by dimension: 1 (rows (1,1,-1)), d²-1 (second row)
            assert_eq!(matches[0].reference_row, Some(0));
            assert!(matches[0].within(1e-8));
            assert_eq!(matches[1].reference_row, Some(1));
            assert!(matches[1].within(1e-8));
        }
    }

    #[test]
    fn third_block_row_in_closed_form() {
        // Largest block: ρ_y^Γ eigenvalues proportional to
        // (d(d+1)/((d-2)(d-3)), 1, d/(d-2)), which tends to (1, 1, 1).
        for d in 4..=7 {
            let numeric = rational_tmatrix_numeric(d, 5).unwrap();
            let row = &numeric.rows[2];
            let df = d as i64;
            let expected_ratio0 = rat(df * (df + 1), (df - 2) * (df - 3));
            let expected_ratio2 = rat(df, df - 2);
            assert_eq!(&row[0] / &row[1], expected_ratio0, "d={d}");
            assert_eq!(&row[2] / &row[1], expected_ratio2, "d={d}");
        }
    }

    #[test]
    fn displayed_third_row_is_a_positive_mix_of_blocks() {
        // The displayed third row is a nonnegative combination of all three
        // block rows, so constraints built from it are implied by PPT.
        for d in 4..=6 {
            let numeric = tmatrix_numeric(d, 2).unwrap();
            let closed = tmatrix_closed_form(Dimension::Finite(d)).unwrap().to_f64();
            let a = DMatrix::from_fn(3, 3, |i, j| numeric.matrix.rows[j][i]);
            let b = nalgebra::DVector::from_vec(closed.rows[2].clone());
            let w = a.lu().solve(&b).unwrap();
            assert!(w.iter().all(|&x| x > 0.0), "d={d}: weights {w:?}");
        }
    }

    #[test]
    fn qutrit_case_has_positive_y22_column() {
        let t = rational_tmatrix_numeric(3, 0).unwrap();
        assert!(t.rows.iter().all(|r| r[0].is_positive()));
    }
}
