use super::cnf::CnfFormula;
use super::reduce::TropEqSystem;
use crate::error::{Error, Result};

/// Default bound on candidate assignments for the tropical search.
pub const DEFAULT_BUDGET: u128 = 1 << 24;
pub const MAX_SAT_VARS: usize = 24;

/// First satisfying point in lexicographic order over `domain^{num_vars}`,
/// or `None` when no point of the domain solves the system.
pub fn solve_tropical_brute(sys: &TropEqSystem, domain: &[i64], budget: u128) -> Result<Option<Vec<i64>>> {
    let mut domain = domain.to_vec();
    domain.sort_unstable();
    domain.dedup();
    if domain.is_empty() {
        return Err(Error::InvalidParams("empty search domain".into()));
    }
    let size = (domain.len() as u128)
        .checked_pow(sys.num_vars as u32)
        .unwrap_or(u128::MAX);
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    let mut digits = vec![0usize; sys.num_vars];
    let mut point = vec![domain[0]; sys.num_vars];
    loop {
        if sys.is_satisfied_by(&point)? {
            return Ok(Some(point));
        }
        // Odometer with the last unknown fastest.
        let mut pos = sys.num_vars;
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < domain.len() {
                point[pos] = domain[digits[pos]];
                break;
            }
            digits[pos] = 0;
            point[pos] = domain[0];
        }
    }
}

/// Truth-table search, `u_1` most significant and false before true.
pub fn solve_sat_brute(f: &CnfFormula) -> Result<Option<Vec<bool>>> {
    if f.num_vars > MAX_SAT_VARS {
        return Err(Error::InvalidParams(format!(
            "{} variables exceeds the exhaustive limit of {MAX_SAT_VARS}",
            f.num_vars
        )));
    }
    let n = f.num_vars;
    for bits in 0u32..1 << n {
        let a: Vec<bool> = (0..n).map(|i| bits >> (n - 1 - i) & 1 == 1).collect();
        if f.is_satisfied_by(&a) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sat::{lift_assignment, project_assignment, reduce};

    #[test]
    fn contradiction_is_unsolvable() {
        let f = CnfFormula::new(1, vec![vec![1], vec![-1]]).unwrap();
        assert_eq!(solve_sat_brute(&f).unwrap(), None);
        assert_eq!(solve_tropical_brute(&reduce(&f), &[0, 1], DEFAULT_BUDGET).unwrap(), None);
    }

    #[test]
    fn single_clause_is_solvable() {
        let f = CnfFormula::new(3, vec![vec![1, -2, 3]]).unwrap();
        // First lexicographic point: x1=0,y1=1, x2=0,y2=1 makes x2 = 0.
        let sol = solve_tropical_brute(&reduce(&f), &[0, 1], DEFAULT_BUDGET).unwrap().unwrap();
        assert_eq!(sol, vec![0, 1, 0, 1, 0, 1]);
        assert!(f.is_satisfied_by(&project_assignment(&sol).unwrap()));
        assert_eq!(solve_sat_brute(&f).unwrap(), Some(vec![false, false, false]));
    }

    #[test]
    fn unit_clause() {
        let f = CnfFormula::new(1, vec![vec![1]]).unwrap();
        assert_eq!(solve_sat_brute(&f).unwrap(), Some(vec![true]));
        let sol = solve_tropical_brute(&reduce(&f), &[1, 0], DEFAULT_BUDGET).unwrap().unwrap();
        assert_eq!(sol, lift_assignment(&[true]));
    }

    #[test]
    fn empty_system_takes_minimum() {
        let sys = TropEqSystem { num_vars: 3, equations: vec![] };
        assert_eq!(solve_tropical_brute(&sys, &[5, -2, 7], 100).unwrap(), Some(vec![-2, -2, -2]));
    }

    #[test]
    fn budget_and_limits() {
        let sys = TropEqSystem { num_vars: 30, equations: vec![] };
        assert!(matches!(
            solve_tropical_brute(&sys, &[0, 1], DEFAULT_BUDGET),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(solve_tropical_brute(&sys, &[], DEFAULT_BUDGET).is_err());
        let f = CnfFormula::new(25, vec![vec![1]]).unwrap();
        assert!(solve_sat_brute(&f).is_err());
    }

    #[test]
    fn wider_domain_keeps_unsat_unsolvable_only_over_zero_one() {
        // Over {0,1,2}, x1=2,y1=-1 is unavailable, but (x1,y1)=(0,1) etc. still
        // conflict with y1 = 0 and x1 = 0 simultaneously.
        let f = CnfFormula::new(1, vec![vec![1], vec![-1]]).unwrap();
        assert_eq!(solve_tropical_brute(&reduce(&f), &[-1, 0, 1, 2], DEFAULT_BUDGET).unwrap(), None);
    }
}
