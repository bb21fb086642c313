use std::fmt;

use serde::{Deserialize, Serialize};

use super::cnf::CnfFormula;
use crate::error::{Error, Result};
use crate::symbolic::{TropMonomial, TropPoly};

/// `poly = target`, satisfied when the minimum over the monomials equals
/// `target` exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TropEquation {
    pub poly: TropPoly,
    pub target: i64,
}

impl TropEquation {
    pub fn is_satisfied_by(&self, point: &[i64]) -> Result<bool> {
        Ok(self.poly.eval(point)? == self.target)
    }
}

/// Unknowns are interleaved: index `2(i-1)` is `x_i`, `2(i-1)+1` is `y_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TropEqSystem {
    pub num_vars: usize,
    pub equations: Vec<TropEquation>,
}

impl TropEqSystem {
    pub fn is_satisfied_by(&self, point: &[i64]) -> Result<bool> {
        for eq in &self.equations {
            if !eq.is_satisfied_by(point)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `x1`, `y1`, `x2`, … for unknown indices `0, 1, 2, …`.
pub fn unknown_name(k: usize) -> String {
    format!("{}{}", if k % 2 == 0 { 'x' } else { 'y' }, k / 2 + 1)
}

impl fmt::Display for TropEqSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for eq in &self.equations {
            writeln!(f, "{} = {}", eq.poly.render(unknown_name), eq.target)?;
        }
        Ok(())
    }
}

fn unit(nvars: usize, indices: &[usize]) -> TropMonomial {
    let mut exps = vec![0; nvars];
    for &i in indices {
        exps[i] += 1;
    }
    TropMonomial::new(0, exps)
}

/// One `x_i ⊗ y_i = 1` per variable, then one equation per clause.
pub fn reduce(f: &CnfFormula) -> TropEqSystem {
    let nvars = 2 * f.num_vars;
    let mut equations: Vec<TropEquation> = (0..f.num_vars)
        .map(|i| TropEquation {
            poly: TropPoly::monomial(unit(nvars, &[2 * i, 2 * i + 1])),
            target: 1,
        })
        .collect();
    for clause in &f.clauses {
        let terms = clause.iter().map(|&lit| {
            let var = lit.unsigned_abs() as usize - 1;
            // u_i is true exactly when y_i = 0; ¬u_i exactly when x_i = 0.
            let idx = if lit > 0 { 2 * var + 1 } else { 2 * var };
            unit(nvars, &[idx])
        });
        let poly = TropPoly::new(nvars, terms.collect::<Vec<_>>()).expect("clauses are nonempty");
        equations.push(TropEquation { poly, target: 0 });
    }
    TropEqSystem { num_vars: nvars, equations }
}

/// `u_i = 1 ↦ (x_i, y_i) = (1, 0)`, `u_i = 0 ↦ (0, 1)`.
pub fn lift_assignment(assignment: &[bool]) -> Vec<i64> {
    assignment
        .iter()
        .flat_map(|&u| if u { [1, 0] } else { [0, 1] })
        .collect()
}

/// Inverse of [`lift_assignment`] on 0/1 points with `x_i + y_i = 1`.
pub fn project_assignment(point: &[i64]) -> Result<Vec<bool>> {
    if point.len() % 2 != 0 {
        return Err(Error::InvalidAssignment("odd number of unknowns".into()));
    }
    point
        .chunks(2)
        .enumerate()
        .map(|(i, pair)| match pair {
            [1, 0] => Ok(true),
            [0, 1] => Ok(false),
            [x, y] => Err(Error::InvalidAssignment(format!(
                "(x{n}, y{n}) = ({x}, {y}) violates x{n} (x) y{n} = 1 over {{0, 1}}",
                n = i + 1
            ))),
            _ => unreachable!(),
        })
        .collect()
}
