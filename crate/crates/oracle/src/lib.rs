//! Brute-force reference machinery for checking the solver.
//!
//! Everything here trades speed for obviousness: exhaustive enumeration,
//! truth tables, and a queue-based unit propagator that rescans whole
//! clause lists instead of using occurrence or watch structures. None of
//! the solver's propagation code is reused, so agreement between the two
//! is a meaningful cross-check. Only tests and the acceptance suite link
//! this crate.

use std::fmt;

use phasat::{w_cnf, w_xor, Formula, Lit, Var, XorConstraint};

pub mod gen;

/// Variable cap for exhaustive enumeration.
pub const MAX_BRUTE_FORCE_VARS: usize = 20;
/// Variable cap for the naive ACE evaluator.
pub const MAX_NAIVE_ACE_VARS: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    TooManyVariables { vars: usize, cap: usize },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::TooManyVariables { vars, cap } => {
                write!(f, "{vars} variables exceed the oracle cap of {cap}")
            }
        }
    }
}

impl std::error::Error for OracleError {}

/// Outcome of exhaustive enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub satisfiable: bool,
    /// First satisfying assignment in enumeration order.
    pub witness: Option<Vec<bool>>,
    /// Number of satisfying assignments.
    pub count: u64,
}

fn assignment_satisfies(formula: &Formula, assignment: &[bool]) -> bool {
    if formula.is_trivially_unsat() {
        return false;
    }
    let lit_true = |lit: Lit| assignment[lit.var().index()] == lit.is_positive();
    formula
        .cnf_clauses()
        .iter()
        .all(|c| c.literals.iter().any(|&l| lit_true(l)))
        && formula
            .xor_constraints()
            .iter()
            .all(|x| x.eval(|v| assignment[v.index()]))
}

/// Enumerates all 2^V assignments and evaluates the formula directly.
pub fn brute_force_solve(formula: &Formula) -> Result<OracleResult, OracleError> {
    let vars = formula.num_vars();
    if vars > MAX_BRUTE_FORCE_VARS {
        return Err(OracleError::TooManyVariables {
            vars,
            cap: MAX_BRUTE_FORCE_VARS,
        });
    }
    let mut count = 0u64;
    let mut witness = None;
    for mask in 0u64..(1u64 << vars) {
        let assignment: Vec<bool> = (0..vars).map(|i| mask & (1 << i) != 0).collect();
        if assignment_satisfies(formula, &assignment) {
            count += 1;
            if witness.is_none() {
                witness = Some(assignment);
            }
        }
    }
    Ok(OracleResult {
        satisfiable: count > 0,
        witness,
        count,
    })
}

/// All satisfying assignments as bitmasks (bit i = variable i true).
pub fn enumerate_models(formula: &Formula) -> Result<Vec<u64>, OracleError> {
    let vars = formula.num_vars();
    if vars > MAX_BRUTE_FORCE_VARS {
        return Err(OracleError::TooManyVariables {
            vars,
            cap: MAX_BRUTE_FORCE_VARS,
        });
    }
    let mut models = Vec::new();
    for mask in 0u64..(1u64 << vars) {
        let assignment: Vec<bool> = (0..vars).map(|i| mask & (1 << i) != 0).collect();
        if assignment_satisfies(formula, &assignment) {
            models.push(mask);
        }
    }
    Ok(models)
}

/// Naive ACE score for `var = phase`.
///
/// Copies the assignment, assigns the variable, runs queue-based unit
/// propagation by rescanning every clause and XOR constraint until nothing
/// changes, then sums W_CNF over unsatisfied reduced clauses containing
/// the variable and W_XOR over reduced constraints containing it. A
/// conflicting propagation scores 0 with the flag set.
pub fn naive_ace(
    formula: &Formula,
    var: Var,
    phase: bool,
) -> Result<(f64, bool), OracleError> {
    let vars = formula.num_vars();
    if vars > MAX_NAIVE_ACE_VARS {
        return Err(OracleError::TooManyVariables {
            vars,
            cap: MAX_NAIVE_ACE_VARS,
        });
    }
    let mut values: Vec<Option<bool>> = vec![None; vars];
    values[var.index()] = Some(phase);

    let conflicted = loop {
        let mut changed = false;
        for clause in formula.cnf_clauses() {
            let mut satisfied = false;
            let mut unassigned = None;
            let mut n_unassigned = 0usize;
            for &l in &clause.literals {
                match values[l.var().index()] {
                    Some(v) if v == l.is_positive() => {
                        satisfied = true;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        n_unassigned += 1;
                        unassigned = Some(l);
                    }
                }
            }
            if satisfied {
                continue;
            }
            match n_unassigned {
                0 => return Ok((0.0, true)),
                1 => {
                    let l = unassigned.expect("single unassigned literal");
                    values[l.var().index()] = Some(l.is_positive());
                    changed = true;
                }
                _ => {}
            }
        }
        for xor in formula.xor_constraints() {
            let mut ones = 0usize;
            let mut unassigned = None;
            let mut n_unassigned = 0usize;
            for &v in &xor.variables {
                match values[v.index()] {
                    Some(true) => ones += 1,
                    Some(false) => {}
                    None => {
                        n_unassigned += 1;
                        unassigned = Some(v);
                    }
                }
            }
            let current_odd = ones % 2 == 1;
            match n_unassigned {
                0 => {
                    if current_odd != xor.parity {
                        return Ok((0.0, true));
                    }
                }
                1 => {
                    let v = unassigned.expect("single unassigned variable");
                    values[v.index()] = Some(current_odd != xor.parity);
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break false;
        }
    };

    let mut weight = 0.0;
    for clause in formula.cnf_clauses() {
        if !clause.literals.iter().any(|l| l.var() == var) {
            continue;
        }
        let mut satisfied = false;
        let mut n_unassigned = 0u32;
        for &l in &clause.literals {
            match values[l.var().index()] {
                Some(v) if v == l.is_positive() => {
                    satisfied = true;
                    break;
                }
                Some(_) => {}
                None => n_unassigned += 1,
            }
        }
        if !satisfied {
            weight += w_cnf(n_unassigned);
        }
    }
    for xor in formula.xor_constraints() {
        if !xor.variables.contains(&var) {
            continue;
        }
        let n_unassigned = xor
            .variables
            .iter()
            .filter(|&&v| values[v.index()].is_none())
            .count() as u32;
        if n_unassigned > 0 {
            weight += w_xor(n_unassigned);
        }
    }
    Ok((weight, conflicted))
}

/// Exhaustive truth-table equivalence between a clause set and an XOR
/// constraint, over the union of their variables.
pub fn tt_equivalent(clauses: &[Vec<Lit>], xor: &XorConstraint) -> bool {
    let mut vars: Vec<Var> = clauses
        .iter()
        .flatten()
        .map(|l| l.var())
        .chain(xor.variables.iter().copied())
        .collect();
    vars.sort_unstable();
    vars.dedup();
    assert!(vars.len() <= 16, "truth table restricted to small variable sets");

    for mask in 0u32..(1 << vars.len()) {
        let value_of = |v: Var| -> bool {
            let pos = vars.binary_search(&v).expect("variable in union");
            mask & (1 << pos) != 0
        };
        let clauses_hold = clauses
            .iter()
            .all(|c| c.iter().any(|&l| value_of(l.var()) == l.is_positive()));
        let xor_holds = xor.eval(value_of);
        if clauses_hold != xor_holds {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use phasat::Clause;

    fn formula(num_vars: usize, specs: &[&[i32]]) -> Formula {
        let clauses = specs
            .iter()
            .map(|s| Clause::original(s.iter().map(|&l| Lit::from_dimacs(l)).collect()))
            .collect();
        Formula::new(num_vars, clauses, false)
    }

    fn lits(spec: &[i32]) -> Vec<Lit> {
        spec.iter().map(|&l| Lit::from_dimacs(l)).collect()
    }

    #[test]
    fn contradiction_is_unsat() {
        let result = brute_force_solve(&formula(1, &[&[1], &[-1]])).unwrap();
        assert!(!result.satisfiable);
        assert_eq!(result.count, 0);
        assert_eq!(result.witness, None);
    }

    #[test]
    fn empty_formula_counts_all_assignments() {
        let result = brute_force_solve(&formula(2, &[])).unwrap();
        assert_eq!(result.count, 4);
        assert!(result.satisfiable);
    }

    #[test]
    fn xor_has_half_the_models() {
        let f = formula(2, &[&[1, 2], &[-1, -2]]).detect_xor();
        let result = brute_force_solve(&f).unwrap();
        assert_eq!(result.count, 2);
    }

    #[test]
    fn witness_satisfies() {
        let f = formula(3, &[&[1, 2], &[-1, 3], &[-2]]);
        let result = brute_force_solve(&f).unwrap();
        let witness = result.witness.unwrap();
        assert!(assignment_satisfies(&f, &witness));
    }

    #[test]
    fn count_matches_model_enumeration() {
        let f = formula(3, &[&[1, 2], &[-2, 3]]);
        let result = brute_force_solve(&f).unwrap();
        let models = enumerate_models(&f).unwrap();
        assert_eq!(result.count as usize, models.len());
    }

    #[test]
    fn oversize_rejected() {
        let f = formula(21, &[]);
        assert!(brute_force_solve(&f).is_err());
        let f = formula(31, &[]);
        assert!(naive_ace(&f, Var(0), true).is_err());
    }

    #[test]
    fn naive_ace_on_fixture() {
        let f = formula(3, &[&[1, 2], &[-1, 2, 3], &[-2, 3]]).detect_xor();
        let (w_true, c_true) = naive_ace(&f, Var(0), true).unwrap();
        assert!((w_true - 1.0).abs() < 1e-12);
        assert!(!c_true);
        let (w_false, c_false) = naive_ace(&f, Var(0), false).unwrap();
        assert_eq!(w_false, 0.0);
        assert!(!c_false);
    }

    #[test]
    fn naive_ace_isolated_variable() {
        let f = formula(2, &[&[1]]);
        let (w, conflicted) = naive_ace(&f, Var(1), true).unwrap();
        assert_eq!(w, 0.0);
        assert!(!conflicted);
    }

    #[test]
    fn naive_ace_conflict_flag() {
        let f = formula(1, &[&[1], &[-1]]);
        let (w, conflicted) = naive_ace(&f, Var(0), false).unwrap();
        assert_eq!(w, 0.0);
        assert!(conflicted);
    }

    #[test]
    fn tt_equivalence_examples() {
        let odd = XorConstraint::new(vec![Var(0), Var(1)], true);
        let even = XorConstraint::new(vec![Var(0), Var(1)], false);
        let encoding = vec![lits(&[1, 2]), lits(&[-1, -2])];
        assert!(tt_equivalent(&encoding, &odd));
        assert!(!tt_equivalent(&encoding, &even));
        // A single clause never matches an XOR of arity >= 2.
        assert!(!tt_equivalent(&[lits(&[1, 2])], &odd));
    }
}
