//! Isolated lookahead probes for ACE scoring.
//!
//! A probe assigns one variable on a scratch decision level, runs unit
//! propagation to fixpoint over the formula's clauses and XOR constraints,
//! measures how the constraints containing the variable shrank, and then
//! pops every probe assignment. Propagation here walks the formula's
//! occurrence lists instead of the solver's watch machinery: probes run at
//! every shallow decision, and leaving the watch lists untouched is what
//! makes the probe invisible to the rest of the search state.
//!
//! The probed formula is the problem as loaded (original clauses plus XOR
//! constraints); learned clauses play no part, matching the scoring of the
//! probe result against the formula's own occurrence structure.

use crate::lit::{Lit, Var};
use crate::phase::{w_cnf, w_xor};
use crate::solver::Solver;
use crate::trail::Reason;

/// How one constraint looks under the probe assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeSize {
    Satisfied,
    /// Count of unassigned literals (clauses) or variables (XORs).
    ReducedTo(u32),
}

/// Outcome of probing `var = phase`.
#[derive(Debug, Clone, PartialEq)]
pub struct LookaheadReport {
    pub var: Var,
    pub phase: bool,
    pub conflicted: bool,
    /// Whether the probe stopped early on a step cap.
    pub truncated: bool,
    /// Status of every CNF clause containing the variable.
    pub reduced_cnf_sizes: Vec<(u32, ProbeSize)>,
    /// Status of every XOR constraint containing the variable.
    pub reduced_xor_sizes: Vec<(u32, ProbeSize)>,
}

impl LookaheadReport {
    /// The ACE sum for this report: W_CNF over reduced clauses plus W_XOR
    /// over reduced constraints. Satisfied entries contribute nothing; a
    /// conflicted probe scores 0.
    pub fn ace_value(&self) -> f64 {
        if self.conflicted {
            return 0.0;
        }
        let cnf: f64 = self
            .reduced_cnf_sizes
            .iter()
            .filter_map(|(_, size)| match size {
                ProbeSize::ReducedTo(n) => Some(w_cnf(*n)),
                ProbeSize::Satisfied => None,
            })
            .sum();
        let xor: f64 = self
            .reduced_xor_sizes
            .iter()
            .filter_map(|(_, size)| match size {
                ProbeSize::ReducedTo(n) => Some(w_xor(*n)),
                ProbeSize::Satisfied => None,
            })
            .sum();
        cnf + xor
    }
}

impl Solver {
    /// Probes `var = phase` and restores the solver exactly.
    ///
    /// Requires the variable unassigned and propagation at fixpoint. The
    /// trail, values, watch lists, activities, saved phases, and clause
    /// database are bit-identical before and after the call.
    pub fn lookahead(&mut self, var: Var, phase: bool) -> LookaheadReport {
        assert!(!self.trail.is_assigned(var), "lookahead on assigned variable");
        debug_assert_eq!(
            self.queue_head,
            self.trail.len(),
            "lookahead requires propagation at fixpoint"
        );

        let mark = self.trail.len();
        self.trail.new_level();
        self.trail.assign(Lit::new(var, phase), Reason::Decision);

        let (conflicted, truncated) = self.probe_propagate(mark);

        let mut reduced_cnf_sizes = Vec::new();
        for positive in [true, false] {
            let lit = Lit::new(var, positive);
            for &ci in self.formula.clauses_with(lit) {
                reduced_cnf_sizes.push((ci, self.clause_probe_size(ci)));
            }
        }
        reduced_cnf_sizes.sort_by_key(|(ci, _)| *ci);
        let mut reduced_xor_sizes = Vec::new();
        for &xi in self.formula.xors_with(var) {
            reduced_xor_sizes.push((xi, self.xor_probe_size(xi)));
        }

        // Undo everything the probe pushed.
        while self.trail.len() > mark {
            self.trail.pop();
        }
        self.trail.truncate_levels(self.trail.decision_level() - 1);
        debug_assert_eq!(self.queue_head, self.trail.len());

        LookaheadReport {
            var,
            phase,
            conflicted,
            truncated,
            reduced_cnf_sizes,
            reduced_xor_sizes,
        }
    }

    /// Queue-based unit propagation over the formula's occurrence lists.
    /// Returns (conflicted, truncated). Probe assignments go straight onto
    /// the trail without touching saved phases or watch lists.
    fn probe_propagate(&mut self, mark: usize) -> (bool, bool) {
        let formula = std::sync::Arc::clone(&self.formula);
        let cap = self.params.probe_step_cap.unwrap_or(usize::MAX);
        let mut steps = 0usize;
        let mut head = mark;
        while head < self.trail.len() {
            let lit = self.trail.lit_at(head);
            head += 1;

            for &ci in formula.clauses_with(!lit) {
                let clause = &formula.cnf_clauses()[ci as usize];
                let mut satisfied = false;
                let mut unassigned = None;
                let mut n_unassigned = 0;
                for &l in &clause.literals {
                    match self.trail.truth(l) {
                        Some(true) => {
                            satisfied = true;
                            break;
                        }
                        None => {
                            n_unassigned += 1;
                            unassigned = Some(l);
                        }
                        Some(false) => {}
                    }
                }
                if satisfied {
                    continue;
                }
                match n_unassigned {
                    0 => return (true, false),
                    1 => {
                        let forced = unassigned.expect("one unassigned literal");
                        self.trail.assign(forced, Reason::Decision);
                        steps += 1;
                        if steps >= cap {
                            return (false, true);
                        }
                    }
                    _ => {}
                }
            }

            for &xi in formula.xors_with(lit.var()) {
                let xor = &formula.xor_constraints()[xi as usize];
                let mut ones = 0usize;
                let mut unassigned = None;
                let mut n_unassigned = 0;
                for &v in &xor.variables {
                    match self.trail.var_value(v) {
                        None => {
                            n_unassigned += 1;
                            unassigned = Some(v);
                        }
                        Some(true) => ones += 1,
                        Some(false) => {}
                    }
                }
                let current_odd = ones % 2 == 1;
                match n_unassigned {
                    0 => {
                        if current_odd != xor.parity {
                            return (true, false);
                        }
                    }
                    1 => {
                        let v = unassigned.expect("one unassigned variable");
                        let needed = current_odd != xor.parity;
                        self.trail.assign(Lit::new(v, needed), Reason::Decision);
                        steps += 1;
                        if steps >= cap {
                            return (false, true);
                        }
                    }
                    _ => {}
                }
            }
        }
        (false, false)
    }

    fn clause_probe_size(&self, ci: u32) -> ProbeSize {
        let clause = &self.formula.cnf_clauses()[ci as usize];
        let mut n_unassigned = 0u32;
        for &l in &clause.literals {
            match self.trail.truth(l) {
                Some(true) => return ProbeSize::Satisfied,
                None => n_unassigned += 1,
                Some(false) => {}
            }
        }
        ProbeSize::ReducedTo(n_unassigned)
    }

    fn xor_probe_size(&self, xi: u32) -> ProbeSize {
        let xor = &self.formula.xor_constraints()[xi as usize];
        let n_unassigned = xor
            .variables
            .iter()
            .filter(|&&v| !self.trail.is_assigned(v))
            .count() as u32;
        if n_unassigned == 0 {
            ProbeSize::Satisfied
        } else {
            ProbeSize::ReducedTo(n_unassigned)
        }
    }
}
