//! Exact rational arithmetic and linear programming.

mod lp;
mod matrix;
mod rational;
mod simplex;

pub use lp::{
    solve_lp, verify_feasible, verify_optimality, LpSolution, LpStatus, ObjectiveSense,
    RationalLp, Sense, VarBound,
};
pub use matrix::RationalMatrix;
pub use rational::{
    binomial_exact, format_rational, int, parse_rational, rat, rationalize, rpow, to_f64, Rational,
};
