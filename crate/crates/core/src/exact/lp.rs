use num_traits::{Signed, Zero};

use super::{simplex, Rational};
use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarBound {
    NonNegative,
    Free,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjectiveSense {
    Maximize,
    Minimize,
}

/// `opt c·x` subject to `a_i·x (sense_i) b_i` and per-variable lower bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalLp {
    pub sense: ObjectiveSense,
    pub objective: Vec<Rational>,
    pub rows: Vec<Vec<Rational>>,
    pub senses: Vec<Sense>,
    pub rhs: Vec<Rational>,
    pub bounds: Vec<VarBound>,
}

impl RationalLp {
    /// Empty program over `objective.len()` nonnegative variables.
    pub fn new(sense: ObjectiveSense, objective: Vec<Rational>) -> Self {
        let n = objective.len();
        Self {
            sense,
            objective,
            rows: Vec::new(),
            senses: Vec::new(),
            rhs: Vec::new(),
            bounds: vec![VarBound::NonNegative; n],
        }
    }

    pub fn maximize(objective: Vec<Rational>) -> Self {
        Self::new(ObjectiveSense::Maximize, objective)
    }

    pub fn minimize(objective: Vec<Rational>) -> Self {
        Self::new(ObjectiveSense::Minimize, objective)
    }

    pub fn constraint(mut self, row: Vec<Rational>, sense: Sense, rhs: Rational) -> Self {
        self.push_constraint(row, sense, rhs);
        self
    }

    pub fn push_constraint(&mut self, row: Vec<Rational>, sense: Sense, rhs: Rational) {
        self.rows.push(row);
        self.senses.push(sense);
        self.rhs.push(rhs);
    }

    pub fn free(mut self, var: usize) -> Self {
        self.bounds[var] = VarBound::Free;
        self
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.rows.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.objective.len();
        if self.bounds.len() != n {
            return invalid(format!(
                "{} variable bounds for {} variables",
                self.bounds.len(),
                n
            ));
        }
        if self.senses.len() != self.rows.len() || self.rhs.len() != self.rows.len() {
            return invalid(format!(
                "{} rows, {} senses, {} right-hand sides",
                self.rows.len(),
                self.senses.len(),
                self.rhs.len()
            ));
        }
        if let Some((i, row)) = self.rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return invalid(format!("row {i} has {} entries, expected {n}", row.len()));
        }
        Ok(())
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        dot(&self.objective, x)
    }

    /// Row activities `a_i·x`.
    pub fn activities(&self, x: &[Rational]) -> Vec<Rational> {
        self.rows.iter().map(|r| dot(r, x)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Solver output. `value`, `primal` and `dual` are populated only for
/// [`LpStatus::Optimal`].
///
/// The dual is expressed against the original constraints: `b·y` equals the
/// optimum, and for a maximization `y_i ≥ 0` on `≤` rows, `y_i ≤ 0` on `≥` rows
/// and `Aᵀy ≥ c` on nonnegative variables (signs reversed for minimization).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub value: Option<Rational>,
    pub primal: Vec<Rational>,
    pub dual: Vec<Rational>,
}

impl LpSolution {
    pub(crate) fn without_point(status: LpStatus) -> Self {
        Self {
            status,
            value: None,
            primal: Vec::new(),
            dual: Vec::new(),
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

/// Solves `lp` exactly with a two-phase tableau simplex under Bland's rule.
pub fn solve_lp(lp: &RationalLp) -> Result<LpSolution> {
    lp.validate()?;
    Ok(simplex::solve(lp))
}

/// True iff `point` satisfies every constraint and variable bound exactly.
pub fn verify_feasible(lp: &RationalLp, point: &[Rational]) -> Result<bool> {
    lp.validate()?;
    if point.len() != lp.num_vars() {
        return invalid(format!(
            "point has {} coordinates, program has {} variables",
            point.len(),
            lp.num_vars()
        ));
    }
    let bounds_ok = point
        .iter()
        .zip(&lp.bounds)
        .all(|(x, b)| *b == VarBound::Free || !x.is_negative());
    let rows_ok = lp
        .activities(point)
        .iter()
        .zip(lp.senses.iter().zip(&lp.rhs))
        .all(|(act, (sense, b))| satisfies(act, *sense, b));
    Ok(bounds_ok && rows_ok)
}

/// Checks that an optimal solution is exactly certified: primal feasibility,
/// dual feasibility, equal objective values and complementary slackness.
pub fn verify_optimality(lp: &RationalLp, sol: &LpSolution) -> Result<bool> {
    if sol.status != LpStatus::Optimal {
        return Ok(false);
    }
    if !verify_feasible(lp, &sol.primal)? || sol.dual.len() != lp.num_constraints() {
        return Ok(false);
    }
    // Normalize to a maximization so one set of sign rules applies.
    let flip = lp.sense == ObjectiveSense::Minimize;
    let y: Vec<Rational> = if flip {
        sol.dual.iter().map(|v| -v).collect()
    } else {
        sol.dual.clone()
    };
    let c: Vec<Rational> = if flip {
        lp.objective.iter().map(|v| -v).collect()
    } else {
        lp.objective.clone()
    };

    for (yi, sense) in y.iter().zip(&lp.senses) {
        let ok = match sense {
            Sense::Le => !yi.is_negative(),
            Sense::Ge => !yi.is_positive(),
            Sense::Eq => true,
        };
        if !ok {
            return Ok(false);
        }
    }
    for j in 0..lp.num_vars() {
        let aty = lp
            .rows
            .iter()
            .zip(&y)
            .fold(Rational::zero(), |acc, (row, yi)| acc + &row[j] * yi);
        let reduced = aty - &c[j];
        let ok = match lp.bounds[j] {
            VarBound::NonNegative => !reduced.is_negative() && (reduced * &sol.primal[j]).is_zero(),
            VarBound::Free => reduced.is_zero(),
        };
        if !ok {
            return Ok(false);
        }
    }
    for ((act, b), yi) in lp.activities(&sol.primal).iter().zip(&lp.rhs).zip(&y) {
        if !((act - b) * yi).is_zero() {
            return Ok(false);
        }
    }
    let primal_value = lp.objective_value(&sol.primal);
    let dual_value = dot(&lp.rhs, &sol.dual);
    Ok(Some(&primal_value) == sol.value.as_ref() && primal_value == dual_value)
}

fn satisfies(activity: &Rational, sense: Sense, rhs: &Rational) -> bool {
    match sense {
        Sense::Le => activity <= rhs,
        Sense::Eq => activity == rhs,
        Sense::Ge => activity >= rhs,
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}
