//! Worked examples with known answers, checked by `tropkit selftest` and
//! the acceptance suite.

use serde::Serialize;

use crate::linalg::TropMatrix;
use crate::scalar::{Finite, TropScalar};
use crate::symbolic::{TropMonomial, TropPoly};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
}

fn check<T: PartialEq + std::fmt::Display>(name: &'static str, expected: T, actual: crate::Result<T>) -> Check {
    let (passed, actual) = match actual {
        Ok(v) => (v == expected, v.to_string()),
        Err(e) => (false, format!("error: {e}")),
    };
    Check { name, passed, expected: expected.to_string(), actual }
}

fn m(rows: &[&[i64]]) -> TropMatrix {
    TropMatrix::from_finite_rows(rows).expect("fixture matrices are square")
}

/// `x⊗x⊗y⊗z⊗z`
pub fn sample_monomial() -> TropMonomial {
    TropMonomial::new(0, vec![2, 1, 2])
}

/// `5⊗x⊗y⊗z ⊕ x⊗x ⊕ 2⊗z ⊕ 17`
pub fn sample_polynomial() -> TropPoly {
    let terms = [(5, [1, 1, 1]), (0, [2, 0, 0]), (2, [0, 0, 1]), (17, [0, 0, 0])];
    TropPoly::new(3, terms.map(|(c, e)| TropMonomial::new(c, e.to_vec())))
        .expect("fixture polynomial is well formed")
}

/// Runs every fixture; the list is never empty.
pub fn run_all() -> Vec<Check> {
    let a = m(&[&[1, 2], &[5, -1]]);
    let b = m(&[&[0, 3], &[2, 8]]);
    let two: TropScalar = Finite(2);
    vec![
        check("matrix sum", m(&[&[0, 2], &[2, -1]]), a.oplus(&b)),
        check("matrix product", m(&[&[1, 4], &[1, 7]]), a.otimes(&b)),
        check("scalar times matrix", m(&[&[3, 4], &[7, 1]]), a.scale(two)),
        check(
            "scalar matrix times matrix",
            m(&[&[3, 4], &[7, 1]]),
            TropMatrix::scalar(two, 2).otimes(&a),
        ),
        check("monomial degree", 5, Ok(sample_monomial().degree())),
        check("polynomial degree", 3, Ok(sample_polynomial().degree())),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_pass() {
        let checks = run_all();
        assert_eq!(checks.len(), 6);
        for c in checks {
            assert!(c.passed, "{}: expected {}, got {}", c.name, c.expected, c.actual);
        }
    }
}
