use std::collections::HashMap;

use num_traits::{One, Zero};

use super::types::TypeVector;
use crate::bounds::bits;
use crate::error::{internal, invalid, Result};
use crate::exact::{int, rat, rpow, solve_lp, LpSolution, LpStatus, Rational, RationalLp, RationalMatrix, Sense};
use crate::repspace::{rational_tmatrix_numeric, tmatrix_closed_form, Dimension, TMatrix, YoungSymbol};

/// `t = (t_[1111], t_[22], t_[211])` as exact `(numerator, denominator)` pairs.
pub const T_COEFFICIENTS: [(i64, i64); 3] = [(-1, 1), (1, 2), (0, 1)];

/// Largest `n` accepted by [`zeta_simplified`].
pub const SIMPLIFIED_MAX_N: usize = 64;
/// Cap on the number of reduced variables of the full program.
const FULL_MAX_TYPES: usize = 500;
/// Seed for the numeric block extraction used at `d = 3`.
const QUTRIT_SEED: u64 = 0;

fn t_coefficient(y: YoungSymbol) -> Rational {
    let (p, q) = T_COEFFICIENTS[y.index()];
    rat(p, q)
}

/// A permutation-reduced purity program.
///
/// Constraint 0 is the normalization `Σ_τ mult(τ) x_τ (=|≤) 1`; constraint
/// `1 + i` is the PPT row for block type `row_types[i]`. Variable `j` is the
/// common value `p_{y^n}` of every sequence of type `column_types[j]`.
#[derive(Debug, Clone)]
pub struct ReducedLp {
    pub lp: RationalLp,
    pub n: usize,
    pub label: String,
    pub symbols: Vec<YoungSymbol>,
    pub column_types: Vec<TypeVector>,
    pub row_types: Vec<TypeVector>,
}

impl ReducedLp {
    pub fn solve(&self) -> Result<LpSolution> {
        solve_lp(&self.lp)
    }

    /// Exact optimum. Any status other than optimal is an internal error.
    pub fn value(&self) -> Result<Rational> {
        let sol = self.solve()?;
        match sol.status {
            LpStatus::Optimal => Ok(sol.value.expect("optimal solutions carry a value")),
            status => internal(format!("reduced program {} is {status:?}", self.label)),
        }
    }

    /// Spreads a reduced point over all `c^n` sequences (base-`c` digits,
    /// first position most significant).
    pub fn expand_point(&self, x: &[Rational]) -> Vec<Rational> {
        let c = self.symbols.len();
        let index: HashMap<&TypeVector, usize> =
            self.column_types.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut digits = vec![0; self.n];
        (0..c.pow(self.n as u32))
            .map(|s| {
                decode(s, c, &mut digits);
                x[index[&TypeVector::of_sequence(&digits, c)]].clone()
            })
            .collect()
    }
}

fn decode(mut s: usize, base: usize, digits: &mut [usize]) {
    for slot in digits.iter_mut().rev() {
        *slot = s % base;
        s /= base;
    }
}

/// Polynomial in `c` commuting variables, keyed by exponent vector.
type Poly = HashMap<Vec<usize>, Rational>;

fn multiply_linear(poly: &Poly, form: &[Rational]) -> Poly {
    let mut out = Poly::new();
    for (exps, coeff) in poly {
        for (y, a) in form.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mut e = exps.clone();
            e[y] += 1;
            *out.entry(e).or_insert_with(Rational::zero) += coeff * a;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Builds the reduced program of `max t^{⊗n}·p` s.t. `p ≥ 0`, the
/// normalization and `T^{⊗n} p ≥ 0`.
///
/// The coefficient of column type `τ` in the row of block type `a` is the sum
/// over all sequences of type `τ` of `Π_i T[r_i][y_i]` for one fixed block
/// sequence `r` of type `a`, which is the coefficient of `u^τ` in
/// `Π_r (Σ_y T[r][y] u_y)^{a_r}`.
pub fn build_reduced_lp_from(
    n: usize,
    tmatrix: &TMatrix<Rational>,
    t: &[Rational],
    normalization: Sense,
    label: impl Into<String>,
) -> Result<ReducedLp> {
    let c = tmatrix.ncols();
    if t.len() != c {
        return invalid(format!("{} objective coefficients for {c} columns", t.len()));
    }
    if n == 0 {
        return invalid("n must be at least 1");
    }
    let column_types = TypeVector::enumerate(n, c);
    let row_types = TypeVector::enumerate(n, tmatrix.nrows());
    let col_index: HashMap<&TypeVector, usize> =
        column_types.iter().enumerate().map(|(i, t)| (t, i)).collect();

    let objective: Vec<Rational> = column_types
        .iter()
        .map(|ty| {
            let weight = Rational::from_integer(ty.multiplicity());
            ty.counts()
                .iter()
                .zip(t)
                .fold(weight, |acc, (&k, ty_coeff)| acc * rpow(ty_coeff, k as i32))
        })
        .collect();
    let mut lp = RationalLp::maximize(objective);
    lp.push_constraint(
        column_types
            .iter()
            .map(|ty| Rational::from_integer(ty.multiplicity()))
            .collect(),
        normalization,
        Rational::one(),
    );

    for rt in &row_types {
        let mut poly = Poly::new();
        poly.insert(vec![0; c], Rational::one());
        for (r, &count) in rt.counts().iter().enumerate() {
            for _ in 0..count {
                poly = multiply_linear(&poly, &tmatrix.rows[r]);
            }
        }
        let mut row = vec![Rational::zero(); column_types.len()];
        for (exps, coeff) in poly {
            row[col_index[&TypeVector(exps)]] = coeff;
        }
        lp.push_constraint(row, Sense::Ge, Rational::zero());
    }

    Ok(ReducedLp {
        lp,
        n,
        label: label.into(),
        symbols: tmatrix.columns.clone(),
        column_types,
        row_types,
    })
}

/// The full program at local dimension `d`: the closed-form `T_d` for
/// `d ≥ 4` or `d = ∞`, and at `d = 3` the numerically extracted two-block
/// matrix on the columns `[2,2]`, `[2,1,1]`.
pub fn build_reduced_lp(n: usize, d: Dimension) -> Result<ReducedLp> {
    let types = (n + 1) * (n + 2) / 2;
    if types > FULL_MAX_TYPES {
        return invalid(format!("n = {n} gives {types} reduced variables (cap {FULL_MAX_TYPES})"));
    }
    let tmatrix = match d {
        Dimension::Finite(3) => rational_tmatrix_numeric(3, QUTRIT_SEED)?,
        Dimension::Finite(d) if d < 3 => return invalid(format!("d = {d} is below 3")),
        other => tmatrix_closed_form(other)?,
    };
    let t: Vec<Rational> = tmatrix.columns.iter().map(|&y| t_coefficient(y)).collect();
    build_reduced_lp_from(n, &tmatrix, &t, Sense::Eq, format!("full n={n} d={d}"))
}

/// The two-symbol program with `T = ((−2, 1), (1, 1))`, `t = (−1, ½)` and
/// `Σ p ≤ 1`, with variable `m` standing for sequences containing `m` copies
/// of `[1,1,1,1]`.
pub fn build_simplified_lp(n: usize) -> Result<ReducedLp> {
    if n > SIMPLIFIED_MAX_N {
        return invalid(format!("n = {n} exceeds {SIMPLIFIED_MAX_N}"));
    }
    let tmatrix = TMatrix {
        columns: vec![YoungSymbol::Y1111, YoungSymbol::Y22],
        rows: vec![vec![int(-2), int(1)], vec![int(1), int(1)]],
    };
    let t = [int(-1), rat(1, 2)];
    let reduced = build_reduced_lp_from(n, &tmatrix, &t, Sense::Le, format!("simplified n={n}"))?;
    debug_assert!(reduced.column_types.iter().enumerate().all(|(m, ty)| ty.counts()[0] == m));
    Ok(reduced)
}

pub fn zeta_full(n: usize, d: Dimension) -> Result<Rational> {
    build_reduced_lp(n, d)?.value()
}

pub fn zeta_simplified(n: usize) -> Result<Rational> {
    build_simplified_lp(n)?.value()
}

/// The unreduced program over all `c^n` sequences, with `T^{⊗n}` formed by
/// explicit Kronecker products.
pub fn build_expanded_lp(n: usize, tmatrix: &TMatrix<Rational>, t: &[Rational]) -> Result<RationalLp> {
    if n == 0 || n > 4 {
        return invalid(format!("expanded program supports 1 <= n <= 4, got {n}"));
    }
    let base = tmatrix.to_matrix();
    let mut big = base.clone();
    let mut tt = RationalMatrix::from_rows(vec![t.to_vec()]);
    let t1 = tt.clone();
    for _ in 1..n {
        big = big.kron(&base);
        tt = tt.kron(&t1);
    }
    let vars = tt.ncols();
    let mut lp = RationalLp::maximize(tt.row(0).to_vec());
    lp.push_constraint(vec![Rational::one(); vars], Sense::Eq, Rational::one());
    for row in big.to_rows() {
        lp.push_constraint(row, Sense::Ge, Rational::zero());
    }
    Ok(lp)
}

/// Moves the weight of every sequence with `[2,1,1]` at `position` onto the
/// same sequence with `[1,1,1,1]` (weight ⅓) and `[2,2]` (weight ⅔) there.
/// `p` is indexed by base-3 sequences in [`YoungSymbol::ALL`] order.
pub fn substitute_y211(p: &[Rational], n: usize, position: usize) -> Vec<Rational> {
    assert_eq!(p.len(), 3usize.pow(n as u32));
    assert!(position < n);
    let stride = 3usize.pow((n - 1 - position) as u32);
    let mut out = p.to_vec();
    let mut digits = vec![0; n];
    for (s, w) in p.iter().enumerate() {
        decode(s, 3, &mut digits);
        if digits[position] != YoungSymbol::Y211.index() || w.is_zero() {
            continue;
        }
        let base = s - YoungSymbol::Y211.index() * stride;
        out[s] = Rational::zero();
        out[base + YoungSymbol::Y1111.index() * stride] += w * rat(1, 3);
        out[base + YoungSymbol::Y22.index() * stride] += w * rat(2, 3);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZetaSource {
    Full(Dimension),
    Simplified,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EfBound {
    pub zeta: Rational,
    /// `−log2 ζ`, a lower bound on `E_F(α_d^{⊗n})`.
    pub total_bits: f64,
    pub per_copy_bits: f64,
}

/// `E_F ≥ −log2 ζ` in bits, total and per copy.
pub fn ef_lower_bound(n: usize, source: ZetaSource) -> Result<EfBound> {
    let zeta = match source {
        ZetaSource::Full(d) => zeta_full(n, d)?,
        ZetaSource::Simplified => zeta_simplified(n)?,
    };
    let total_bits = -bits(&zeta);
    let per_copy_bits = total_bits / n as f64;
    if source == ZetaSource::Simplified {
        let floor = bits(&rat(4, 3)) - 1e-12;
        if per_copy_bits < floor {
            return internal(format!("per-copy bound {per_copy_bits} below log2(4/3) at n={n}"));
        }
    }
    Ok(EfBound {
        zeta,
        total_bits,
        per_copy_bits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{verify_feasible, verify_optimality};
    use crate::repspace::t_vector;
    use proptest::prelude::*;

    #[test]
    fn single_copy_programs() {
        let inf = build_reduced_lp(1, Dimension::Infinite).unwrap();
        assert_eq!(inf.lp.num_vars(), 3);
        // rows of T_∞ appear, one per block type
        let t = tmatrix_closed_form(Dimension::Infinite).unwrap();
        for (i, rt) in inf.row_types.iter().enumerate() {
            let block = rt.counts().iter().position(|&c| c == 1).unwrap();
            // column types (0,0,1),(0,1,0),(1,0,0) -> symbols 211, 22, 1111
            let row = &inf.lp.rows[i + 1];
            assert_eq!(row[2], t.rows[block][0]);
            assert_eq!(row[1], t.rows[block][1]);
            assert_eq!(row[0], t.rows[block][2]);
        }
        let four = build_reduced_lp(1, Dimension::Finite(4)).unwrap();
        let rows: Vec<Vec<Rational>> = four.lp.rows[1..].iter().map(|r| r.iter().rev().cloned().collect()).collect();
        assert!(rows.contains(&vec![int(1), int(1), int(-1)]));
        assert!(rows.contains(&vec![int(-5), int(1), int(1)]));
        assert!(rows.contains(&vec![rat(25, 12), rat(7, 12), rat(19, 24)]));
    }

    #[test]
    fn simplified_objective_at_two_copies() {
        let lp = build_simplified_lp(2).unwrap();
        assert_eq!(lp.lp.num_vars(), 3);
        assert_eq!(lp.lp.objective, vec![rat(1, 4), rat(-1, 1), int(1)]);
        // multiplicities (1,2,1) times (−2)^m / 4
        assert_eq!(lp.lp.rows[0], vec![int(1), int(2), int(1)]);
    }

    #[test]
    fn one_copy_value_is_one_half() {
        for d in [Dimension::Finite(4), Dimension::Finite(5), Dimension::Finite(9), Dimension::Infinite] {
            assert_eq!(zeta_full(1, d).unwrap(), rat(1, 2));
        }
        assert_eq!(zeta_simplified(1).unwrap(), rat(1, 2));
    }

    #[test]
    fn qutrit_values() {
        for n in 1..=4 {
            assert_eq!(zeta_full(n, Dimension::Finite(3)).unwrap(), rpow(&rat(1, 2), n as i32));
            let ef = ef_lower_bound(n, ZetaSource::Full(Dimension::Finite(3))).unwrap();
            assert_eq!(ef.total_bits, n as f64);
        }
    }

    #[test]
    fn constant_t_matches_construction() {
        let expected: Vec<Rational> = YoungSymbol::ALL.iter().map(|&y| t_coefficient(y)).collect();
        assert_eq!(t_vector(4).unwrap().to_vec(), expected);
    }

    #[test]
    fn simplified_bounded_by_three_quarters_power() {
        for n in 1..=8 {
            let z = zeta_simplified(n).unwrap();
            assert!(z <= rpow(&rat(3, 4), n as i32), "n={n}");
            let ef = ef_lower_bound(n, ZetaSource::Simplified).unwrap();
            assert!(ef.per_copy_bits >= 0.415037);
        }
    }

    #[test]
    fn relaxation_order() {
        for n in 1..=3 {
            let simple = zeta_simplified(n).unwrap();
            for d in 4..=6 {
                assert!(zeta_full(n, Dimension::Finite(d)).unwrap() <= simple, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn reduced_equals_expanded_at_two_copies() {
        let t4 = tmatrix_closed_form(Dimension::Finite(4)).unwrap();
        let t: Vec<Rational> = YoungSymbol::ALL.iter().map(|&y| t_coefficient(y)).collect();
        let expanded = build_expanded_lp(2, &t4, &t).unwrap();
        assert_eq!(expanded.num_vars(), 9);
        let sol = solve_lp(&expanded).unwrap();
        assert!(verify_optimality(&expanded, &sol).unwrap());
        let reduced = build_reduced_lp(2, Dimension::Finite(4)).unwrap();
        let rsol = reduced.solve().unwrap();
        assert_eq!(sol.value, rsol.value);
        // the reduced optimum, spread over sequences, is feasible for the expanded program
        let spread = reduced.expand_point(&rsol.primal);
        assert!(verify_feasible(&expanded, &spread).unwrap());
    }

    #[test]
    fn full_size_cap() {
        assert!(build_reduced_lp(31, Dimension::Infinite).is_err());
        assert!(build_simplified_lp(65).is_err());
        assert!(build_reduced_lp(0, Dimension::Infinite).is_err());
    }

    fn row23_relaxation(n: usize) -> RationalLp {
        let t = TMatrix {
            columns: YoungSymbol::ALL.to_vec(),
            rows: vec![vec![int(-2), int(1), int(0)], vec![int(1), int(1), int(1)]],
        };
        let tv: Vec<Rational> = YoungSymbol::ALL.iter().map(|&y| t_coefficient(y)).collect();
        build_expanded_lp(n, &t, &tv).unwrap()
    }

    fn single_copy(raw: &(u32, u32, u32)) -> Vec<Rational> {
        // [1111] weight a, [22] weight 2a + b, [211] weight c: feasible for (−2, 1, 0)
        let (a, b, c) = (raw.0 as i64, raw.1 as i64, raw.2 as i64);
        let total = 3 * a + b + c;
        vec![rat(a, total), rat(2 * a + b, total), rat(c, total)]
    }

    fn feasible_point() -> impl Strategy<Value = Vec<Rational>> {
        let local = (0u32..6, 0u32..6, 1u32..6);
        prop::collection::vec((local.clone(), local, 1u32..5), 1..4).prop_map(|terms| {
            let total: u32 = terms.iter().map(|t| t.2).sum();
            let mut p = vec![Rational::zero(); 9];
            for (x, y, w) in &terms {
                let (x, y) = (single_copy(x), single_copy(y));
                for i in 0..3 {
                    for j in 0..3 {
                        p[3 * i + j] += &x[i] * &y[j] * rat(*w as i64, total as i64);
                    }
                }
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn y211_substitution_keeps_objective_and_feasibility(p in feasible_point(), position in 0usize..2) {
            let lp = row23_relaxation(2);
            prop_assert!(verify_feasible(&lp, &p).unwrap());
            let q = substitute_y211(&p, 2, position);
            prop_assert!(verify_feasible(&lp, &q).unwrap());
            prop_assert_eq!(lp.objective_value(&q), lp.objective_value(&p));
            let r = substitute_y211(&q, 2, 1 - position);
            prop_assert!(verify_feasible(&lp, &r).unwrap());
            prop_assert_eq!(lp.objective_value(&r), lp.objective_value(&p));
            let y211 = YoungSymbol::Y211.index();
            for (s, w) in r.iter().enumerate() {
                if s / 3 == y211 || s % 3 == y211 {
                    prop_assert!(w.is_zero());
                }
            }
        }
    }
}
