//! Bounded WalkSAT-style local search used to seed phases.
//!
//! Starts from a random assignment and repeatedly repairs a random
//! unsatisfied constraint, flipping the variable that breaks the fewest
//! satisfied constraints, with a fixed random-walk probability. XOR
//! constraints participate alongside clauses: flipping any of their
//! variables toggles them. The best assignment seen is returned whether or
//! not the search converges.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::formula::Formula;
use crate::lit::{Lit, Var};

const WALK_PROBABILITY: f64 = 0.3;

#[derive(Debug, Clone)]
pub struct LocalSearchResult {
    /// Assignment with the fewest unsatisfied constraints seen.
    pub assignment: Vec<bool>,
    /// Unsatisfied constraints under that assignment.
    pub unsatisfied: usize,
    pub flips_used: u64,
    pub satisfied_all: bool,
}

struct SearchState<'f> {
    formula: &'f Formula,
    values: Vec<bool>,
    /// Per clause: number of true literals.
    clause_sat_lits: Vec<usize>,
    /// Per XOR: number of true variables.
    xor_ones: Vec<usize>,
    /// Unsatisfied constraint ids: clause index, or clauses.len() + xor index.
    unsat: Vec<usize>,
    /// Position of each constraint in `unsat`, usize::MAX when absent.
    unsat_pos: Vec<usize>,
}

impl<'f> SearchState<'f> {
    fn new(formula: &'f Formula, values: Vec<bool>) -> SearchState<'f> {
        let n_constraints = formula.cnf_clauses().len() + formula.xor_constraints().len();
        let mut state = SearchState {
            formula,
            values,
            clause_sat_lits: vec![0; formula.cnf_clauses().len()],
            xor_ones: vec![0; formula.xor_constraints().len()],
            unsat: Vec::new(),
            unsat_pos: vec![usize::MAX; n_constraints],
        };
        for (ci, clause) in formula.cnf_clauses().iter().enumerate() {
            state.clause_sat_lits[ci] = clause
                .literals
                .iter()
                .filter(|&&l| state.lit_true(l))
                .count();
            if state.clause_sat_lits[ci] == 0 {
                state.mark_unsat(ci);
            }
        }
        for (xi, xor) in formula.xor_constraints().iter().enumerate() {
            state.xor_ones[xi] = xor
                .variables
                .iter()
                .filter(|&&v| state.values[v.index()])
                .count();
            if (state.xor_ones[xi] % 2 == 1) != xor.parity {
                state.mark_unsat(formula.cnf_clauses().len() + xi);
            }
        }
        state
    }

    #[inline]
    fn lit_true(&self, lit: Lit) -> bool {
        self.values[lit.var().index()] == lit.is_positive()
    }

    fn mark_unsat(&mut self, constraint: usize) {
        if self.unsat_pos[constraint] == usize::MAX {
            self.unsat_pos[constraint] = self.unsat.len();
            self.unsat.push(constraint);
        }
    }

    fn mark_sat(&mut self, constraint: usize) {
        let pos = self.unsat_pos[constraint];
        if pos == usize::MAX {
            return;
        }
        self.unsat.swap_remove(pos);
        self.unsat_pos[constraint] = usize::MAX;
        if pos < self.unsat.len() {
            self.unsat_pos[self.unsat[pos]] = pos;
        }
    }

    /// Satisfied constraints that flipping `var` would falsify.
    fn break_count(&self, var: Var) -> usize {
        let mut breaks = 0;
        // Clauses kept alive solely by this variable's current literal.
        let current = Lit::new(var, self.values[var.index()]);
        for &ci in self.formula.clauses_with(current) {
            if self.clause_sat_lits[ci as usize] == 1 {
                breaks += 1;
            }
        }
        // Every satisfied XOR containing the variable toggles off.
        for &xi in self.formula.xors_with(var) {
            let xor = &self.formula.xor_constraints()[xi as usize];
            if (self.xor_ones[xi as usize] % 2 == 1) == xor.parity {
                breaks += 1;
            }
        }
        breaks
    }

    fn flip(&mut self, var: Var) {
        let old_lit = Lit::new(var, self.values[var.index()]);
        let new_lit = !old_lit;
        self.values[var.index()] = new_lit.is_positive();
        for &ci in self.formula.clauses_with(old_lit) {
            let ci = ci as usize;
            self.clause_sat_lits[ci] -= 1;
            if self.clause_sat_lits[ci] == 0 {
                self.mark_unsat(ci);
            }
        }
        for &ci in self.formula.clauses_with(new_lit) {
            let ci = ci as usize;
            self.clause_sat_lits[ci] += 1;
            if self.clause_sat_lits[ci] == 1 {
                self.mark_sat(ci);
            }
        }
        let clause_count = self.formula.cnf_clauses().len();
        for &xi in self.formula.xors_with(var) {
            let xi = xi as usize;
            let xor = &self.formula.xor_constraints()[xi];
            if new_lit.is_positive() {
                self.xor_ones[xi] += 1;
            } else {
                self.xor_ones[xi] -= 1;
            }
            if (self.xor_ones[xi] % 2 == 1) == xor.parity {
                self.mark_sat(clause_count + xi);
            } else {
                self.mark_unsat(clause_count + xi);
            }
        }
    }

    /// Variables of an unsatisfied constraint, in stored order.
    fn constraint_vars(&self, constraint: usize) -> Vec<Var> {
        let clause_count = self.formula.cnf_clauses().len();
        if constraint < clause_count {
            self.formula.cnf_clauses()[constraint]
                .literals
                .iter()
                .map(|l| l.var())
                .collect()
        } else {
            self.formula.xor_constraints()[constraint - clause_count]
                .variables
                .clone()
        }
    }
}

/// Runs the bounded local search and returns the best assignment seen.
/// A zero flip budget returns the initial random assignment.
pub fn local_search_seed(
    formula: &Formula,
    flip_budget: u64,
    rng: &mut ChaCha8Rng,
) -> LocalSearchResult {
    let values: Vec<bool> = (0..formula.num_vars()).map(|_| rng.gen_bool(0.5)).collect();
    let mut state = SearchState::new(formula, values);
    let mut best_assignment = state.values.clone();
    let mut best_unsat = state.unsat.len();
    let mut flips_used = 0;

    for _ in 0..flip_budget {
        if state.unsat.is_empty() {
            break;
        }
        let constraint = state.unsat[rng.gen_range(0..state.unsat.len())];
        let vars = state.constraint_vars(constraint);
        let var = if rng.gen_bool(WALK_PROBABILITY) {
            vars[rng.gen_range(0..vars.len())]
        } else {
            // Lowest break count, first occurrence breaking ties.
            let mut best = vars[0];
            let mut best_breaks = state.break_count(best);
            for &v in &vars[1..] {
                let breaks = state.break_count(v);
                if breaks < best_breaks {
                    best = v;
                    best_breaks = breaks;
                }
            }
            best
        };
        state.flip(var);
        flips_used += 1;
        if state.unsat.len() < best_unsat {
            best_unsat = state.unsat.len();
            best_assignment.copy_from_slice(&state.values);
        }
    }

    LocalSearchResult {
        assignment: best_assignment,
        unsatisfied: best_unsat,
        flips_used,
        satisfied_all: best_unsat == 0,
    }
}
