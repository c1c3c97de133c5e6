//! Dense two-phase tableau simplex over exact rationals.
//!
//! Every row of the standard form starts with an identity column (a slack for
//! `≤` rows, an artificial otherwise). Those columns stay in the tableau for the
//! whole solve, so the dual of row `i` is read off as minus the reduced cost of
//! its identity column in the final basis.

use num_traits::{One, Signed, Zero};

use super::lp::{LpSolution, LpStatus, ObjectiveSense, RationalLp, Sense, VarBound};
use super::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ColumnKind {
    Structural,
    Slack,
    Artificial,
}

struct Tableau {
    /// `m` constraint rows, each `ncols + 1` wide with the rhs last.
    rows: Vec<Vec<Rational>>,
    /// Reduced costs `c_j − c_Bᵀ B⁻¹ A_j`; the last entry is minus the objective.
    obj: Vec<Rational>,
    basis: Vec<usize>,
    kinds: Vec<ColumnKind>,
}

impl Tableau {
    fn ncols(&self) -> usize {
        self.kinds.len()
    }

    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.ncols()]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Rational::one() / &self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = self.rows[r].clone();
        let eliminate = |target: &mut Vec<Rational>| {
            let factor = target[c].clone();
            if factor.is_zero() {
                return;
            }
            for (t, p) in target.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *t -= &factor * p;
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.basis[r] = c;
    }

    /// Installs `cost` and prices out the current basis.
    fn set_costs(&mut self, cost: &[Rational]) {
        let mut obj: Vec<Rational> = cost.to_vec();
        obj.push(Rational::zero());
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (o, v) in obj.iter_mut().zip(&self.rows[i]) {
                if !v.is_zero() {
                    *o -= cb * v;
                }
            }
        }
        self.obj = obj;
    }

    /// Runs Bland-rule pivots until optimal. Returns false when unbounded.
    fn optimize(&mut self, may_enter: impl Fn(ColumnKind) -> bool) -> bool {
        loop {
            let entering = (0..self.ncols())
                .find(|&j| may_enter(self.kinds[j]) && self.obj[j].is_positive());
            let Some(c) = entering else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((li, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

pub(super) fn solve(lp: &RationalLp) -> LpSolution {
    let m = lp.num_constraints();
    let maximize = lp.sense == ObjectiveSense::Maximize;

    // Structural columns; free variables split as x = x⁺ − x⁻.
    let mut split: Vec<(usize, Option<usize>)> = Vec::with_capacity(lp.num_vars());
    let mut kinds = Vec::new();
    for b in &lp.bounds {
        let pos = kinds.len();
        kinds.push(ColumnKind::Structural);
        let neg = match b {
            VarBound::Free => {
                kinds.push(ColumnKind::Structural);
                Some(pos + 1)
            }
            VarBound::NonNegative => None,
        };
        split.push((pos, neg));
    }
    let n_struct = kinds.len();

    // Rows with nonnegative rhs; `flipped[i]` records a negation.
    let mut flipped = vec![false; m];
    let mut senses = lp.senses.clone();
    for i in 0..m {
        if lp.rhs[i].is_negative() {
            flipped[i] = true;
            senses[i] = match senses[i] {
                Sense::Le => Sense::Ge,
                Sense::Ge => Sense::Le,
                Sense::Eq => Sense::Eq,
            };
        }
    }

    // Auxiliary columns: surplus for ≥ rows, then the identity column per row.
    let mut surplus_col = vec![None; m];
    for (i, s) in senses.iter().enumerate() {
        if *s == Sense::Ge {
            surplus_col[i] = Some(kinds.len());
            kinds.push(ColumnKind::Slack);
        }
    }
    let mut identity_col = vec![0; m];
    for (i, s) in senses.iter().enumerate() {
        identity_col[i] = kinds.len();
        kinds.push(match s {
            Sense::Le => ColumnKind::Slack,
            _ => ColumnKind::Artificial,
        });
    }
    let ncols = kinds.len();

    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![Rational::zero(); ncols + 1];
        let sign = if flipped[i] { -Rational::one() } else { Rational::one() };
        for (j, &(pos, neg)) in split.iter().enumerate() {
            let a = &lp.rows[i][j];
            if a.is_zero() {
                continue;
            }
            let v = a * &sign;
            if let Some(neg) = neg {
                row[neg] = -v.clone();
            }
            row[pos] = v;
        }
        if let Some(s) = surplus_col[i] {
            row[s] = -Rational::one();
        }
        row[identity_col[i]] = Rational::one();
        row[ncols] = &lp.rhs[i] * &sign;
        rows.push(row);
    }

    let mut tab = Tableau {
        rows,
        obj: Vec::new(),
        basis: identity_col.clone(),
        kinds,
    };

    // Phase 1: drive the artificials to zero.
    if tab.kinds.contains(&ColumnKind::Artificial) {
        let cost: Vec<Rational> = tab
            .kinds
            .iter()
            .map(|k| match k {
                ColumnKind::Artificial => -Rational::one(),
                _ => Rational::zero(),
            })
            .collect();
        tab.set_costs(&cost);
        tab.optimize(|_| true);
        if !tab.obj[ncols].is_zero() {
            return LpSolution::without_point(LpStatus::Infeasible);
        }
        // Pivot zero-level artificials out where some real column allows it.
        // Rows where none does are redundant and keep their artificial basic.
        for r in 0..m {
            if tab.kinds[tab.basis[r]] != ColumnKind::Artificial {
                continue;
            }
            if let Some(c) = (0..ncols)
                .find(|&j| tab.kinds[j] != ColumnKind::Artificial && !tab.rows[r][j].is_zero())
            {
                tab.pivot(r, c);
            }
        }
    }

    // Phase 2 always maximizes; minimization negates the costs.
    let mut cost = vec![Rational::zero(); ncols];
    for (j, &(pos, neg)) in split.iter().enumerate() {
        let c = if maximize {
            lp.objective[j].clone()
        } else {
            -lp.objective[j].clone()
        };
        if let Some(neg) = neg {
            cost[neg] = -c.clone();
        }
        cost[pos] = c;
    }
    tab.set_costs(&cost);
    if !tab.optimize(|k| k != ColumnKind::Artificial) {
        return LpSolution::without_point(LpStatus::Unbounded);
    }

    let mut x_std = vec![Rational::zero(); n_struct];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < n_struct {
            x_std[b] = tab.rhs(i).clone();
        }
    }
    let primal: Vec<Rational> = split
        .iter()
        .map(|&(pos, neg)| match neg {
            Some(neg) => &x_std[pos] - &x_std[neg],
            None => x_std[pos].clone(),
        })
        .collect();

    let mut value = -tab.obj[ncols].clone();
    let dual: Vec<Rational> = (0..m)
        .map(|i| {
            let mut y = -tab.obj[identity_col[i]].clone();
            if flipped[i] {
                y = -y;
            }
            if !maximize {
                y = -y;
            }
            y
        })
        .collect();
    if !maximize {
        value = -value;
    }

    LpSolution {
        status: LpStatus::Optimal,
        value: Some(value),
        primal,
        dual,
    }
}
