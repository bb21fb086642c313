//! Reduction of CNF satisfiability to solvability of tropical polynomial
//! systems, with exhaustive solvers on both sides.
//!
//! Each Boolean variable `u_i` becomes two tropical unknowns `x_i` (for the
//! literal `u_i`) and `y_i` (for `¬u_i`), tied by `x_i ⊗ y_i = 1`. A clause
//! becomes `⊕` of one unknown per literal set equal to 0: the literal `u_i`
//! contributes `y_i` and `¬u_i` contributes `x_i`, so
//! `u_1 ∨ ¬u_2 ∨ ¬u_3` maps to `y_1 ⊕ x_2 ⊕ x_3 = 0`.

mod cnf;
mod reduce;
mod solve;

pub use cnf::{parse_dimacs, random_cnf, CnfFormula};
pub use reduce::{lift_assignment, project_assignment, reduce, unknown_name, TropEqSystem, TropEquation};
pub use solve::{solve_sat_brute, solve_tropical_brute, DEFAULT_BUDGET, MAX_SAT_VARS};
