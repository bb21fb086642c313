use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A CNF formula; literal `k > 0` is `u_k`, `-k` is `¬u_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        if num_vars == 0 {
            return Err(Error::InvalidParams("formula needs at least one variable".into()));
        }
        for c in &clauses {
            if c.is_empty() {
                return Err(Error::InvalidParams("empty clause".into()));
            }
            if let Some(&l) = c.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > num_vars) {
                return Err(Error::InvalidParams(format!("literal {l} out of range 1..={num_vars}")));
            }
        }
        Ok(Self { num_vars, clauses })
    }

    /// Truth value under `assignment[i]` for `u_{i+1}`.
    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            c.iter().any(|&l| assignment[l.unsigned_abs() as usize - 1] == (l > 0))
        })
    }
}

/// Parses DIMACS CNF: `c` comment lines, a `p cnf V C` header, and
/// zero-terminated clauses that may span lines. A `%` line ends the input.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let err = |line: usize, msg: String| Error::Dimacs { line, msg };
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(err(line_no, "duplicate header".into()));
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [_, "cnf", vars, count] = fields.as_slice() else {
                return Err(err(line_no, format!("malformed header {line:?}")));
            };
            let vars: usize =
                vars.parse().map_err(|_| err(line_no, format!("bad variable count {vars:?}")))?;
            let count: usize =
                count.parse().map_err(|_| err(line_no, format!("bad clause count {count:?}")))?;
            if vars == 0 {
                return Err(err(line_no, "variable count must be positive".into()));
            }
            header = Some((vars, count));
            continue;
        }
        let Some((vars, _)) = header else {
            return Err(err(line_no, "clause before header".into()));
        };
        for tok in line.split_whitespace() {
            let lit: i32 = tok.parse().map_err(|_| err(line_no, format!("bad literal {tok:?}")))?;
            if lit == 0 {
                if current.is_empty() {
                    return Err(err(line_no, "empty clause".into()));
                }
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > vars {
                return Err(err(line_no, format!("literal {lit} out of range 1..={vars}")));
            } else {
                current.push(lit);
            }
        }
    }

    let Some((vars, count)) = header else {
        return Err(err(last_line, "missing `p cnf` header".into()));
    };
    if !current.is_empty() {
        return Err(err(last_line, "last clause is not terminated by 0".into()));
    }
    if clauses.len() != count {
        return Err(err(
            last_line,
            format!("header declares {count} clauses, found {}", clauses.len()),
        ));
    }
    CnfFormula::new(vars, clauses)
}

/// `num_clauses` clauses of `width` distinct variables with random signs.
pub fn random_cnf(num_vars: usize, num_clauses: usize, width: usize, rng: &mut impl Rng) -> CnfFormula {
    assert!(width >= 1 && width <= num_vars);
    let clauses = (0..num_clauses)
        .map(|_| {
            rand::seq::index::sample(rng, num_vars, width)
                .into_iter()
                .map(|v| {
                    let lit = v as i32 + 1;
                    if rng.gen_bool(0.5) { lit } else { -lit }
                })
                .collect()
        })
        .collect();
    CnfFormula { num_vars, clauses }
}
