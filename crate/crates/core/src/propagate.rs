//! Boolean constraint propagation.
//!
//! CNF clauses use the two-watched-literal scheme: a clause is only
//! inspected when one of its two watched literals turns false, and the
//! watch moves to another non-false literal whenever possible. XOR
//! constraints watch two variables; when no unassigned replacement exists
//! the constraint is down to at most one free variable and either forces
//! it to the parity-completing value or reports a conflict.

use crate::lit::{Lit, Var};
use crate::solver::{Conflict, PropagationOutcome, Solver, Watch};
use crate::trail::Reason;

impl Solver {
    /// Propagates queued assignments to fixpoint or a conflict.
    pub fn propagate(&mut self) -> PropagationOutcome {
        if let Some(conflict) = self.root_conflict {
            return PropagationOutcome {
                conflict: Some(conflict),
                assigned_count: 0,
            };
        }
        let mut assigned_count = 0u64;
        while self.queue_head < self.trail.len() {
            let lit = self.trail.lit_at(self.queue_head);
            self.queue_head += 1;
            if let Some(conflict) = self.propagate_cnf(lit, &mut assigned_count) {
                self.stats.propagations += assigned_count;
                return PropagationOutcome {
                    conflict: Some(conflict),
                    assigned_count,
                };
            }
            if let Some(conflict) = self.propagate_xor(lit.var(), &mut assigned_count) {
                self.stats.propagations += assigned_count;
                return PropagationOutcome {
                    conflict: Some(conflict),
                    assigned_count,
                };
            }
        }
        self.stats.propagations += assigned_count;
        PropagationOutcome {
            conflict: None,
            assigned_count,
        }
    }

    /// Visits every clause watching `!lit` now that `lit` is true.
    fn propagate_cnf(&mut self, lit: Lit, assigned_count: &mut u64) -> Option<Conflict> {
        let falsified = !lit;
        let mut list = std::mem::take(&mut self.watches[falsified.code()]);
        let mut kept = 0usize;
        let mut conflict = None;

        'watches: for i in 0..list.len() {
            let watch = list[i];
            if self.db(watch.clause).deleted {
                continue; // dropped lazily if reduction missed it
            }
            if self.trail.truth(watch.blocker) == Some(true) {
                list[kept] = watch;
                kept += 1;
                continue;
            }
            let ci = watch.clause as usize;
            // Normalize so the falsified literal sits at position 1.
            if self.db[ci].lits[0] == falsified {
                self.db[ci].lits.swap(0, 1);
            }
            debug_assert_eq!(self.db[ci].lits[1], falsified);
            let first = self.db[ci].lits[0];
            if self.trail.truth(first) == Some(true) {
                list[kept] = Watch {
                    clause: watch.clause,
                    blocker: first,
                };
                kept += 1;
                continue;
            }
            // Look for a replacement watch among the remaining literals.
            for k in 2..self.db[ci].lits.len() {
                let candidate = self.db[ci].lits[k];
                if self.trail.truth(candidate) != Some(false) {
                    self.db[ci].lits.swap(1, k);
                    self.watches[candidate.code()].push(Watch {
                        clause: watch.clause,
                        blocker: first,
                    });
                    continue 'watches;
                }
            }
            // No replacement: unit or conflicting.
            list[kept] = Watch {
                clause: watch.clause,
                blocker: first,
            };
            kept += 1;
            match self.trail.truth(first) {
                None => {
                    self.enqueue(first, Reason::Clause(watch.clause));
                    *assigned_count += 1;
                }
                Some(false) => {
                    conflict = Some(Conflict::Clause(watch.clause));
                    // Keep the unvisited suffix of the watch list.
                    for j in i + 1..list.len() {
                        list[kept] = list[j];
                        kept += 1;
                    }
                    break;
                }
                Some(true) => unreachable!("first literal checked above"),
            }
        }
        list.truncate(kept);
        self.watches[falsified.code()] = list;
        conflict
    }

    /// Visits every XOR constraint watching `var` after it was assigned.
    fn propagate_xor(&mut self, var: Var, assigned_count: &mut u64) -> Option<Conflict> {
        if self.formula.xor_constraints().is_empty() {
            return None;
        }
        let mut list = std::mem::take(&mut self.xor_watches[var.index()]);
        let mut kept = 0usize;
        let mut conflict = None;

        'constraints: for i in 0..list.len() {
            let xi = list[i];
            let [w0, w1] = self.xor_watch_vars[xi as usize];
            let other = if w0 == var { w1 } else { w0 };
            let xor = &self.formula.xor_constraints()[xi as usize];
            // Try to move this watch to an unassigned variable.
            for &candidate in &xor.variables {
                if candidate != w0 && candidate != w1 && !self.trail.is_assigned(candidate) {
                    self.xor_watch_vars[xi as usize] =
                        [if w0 == var { candidate } else { w0 }, if w0 == var { w1 } else { candidate }];
                    self.xor_watches[candidate.index()].push(xi);
                    continue 'constraints;
                }
            }
            // Every variable except possibly `other` is assigned.
            list[kept] = xi;
            kept += 1;
            let parity = xor.parity;
            let mut ones = 0usize;
            for &v in &xor.variables {
                if v == other && !self.trail.is_assigned(other) {
                    continue;
                }
                if self.trail.var_value(v) == Some(true) {
                    ones += 1;
                }
            }
            let current_odd = ones % 2 == 1;
            if self.trail.is_assigned(other) {
                if current_odd != parity {
                    conflict = Some(Conflict::Xor(xi));
                    for j in i + 1..list.len() {
                        list[kept] = list[j];
                        kept += 1;
                    }
                    break;
                }
            } else {
                // Force the remaining variable to complete the parity.
                let needed = current_odd != parity;
                self.enqueue(Lit::new(other, needed), Reason::Xor(xi));
                *assigned_count += 1;
            }
        }
        list.truncate(kept);
        self.xor_watches[var.index()] = list;
        conflict
    }

    /// Literals of the clause or constraint behind a reason, materialized
    /// for conflict analysis. For an XOR reason this is the implication
    /// clause: the implied literal plus the negation of every other
    /// variable's current value.
    pub(crate) fn reason_literals(&self, var: Var) -> Vec<Lit> {
        match self.trail.var_reason(var) {
            Reason::Decision => panic!("decision has no reason clause"),
            Reason::Clause(ci) => self.db(ci).lits.clone(),
            Reason::Xor(xi) => self.xor_clause_for(xi, Some(var)),
        }
    }

    /// The falsified pseudo-clause of a conflicting constraint.
    pub(crate) fn conflict_literals(&self, conflict: Conflict) -> Vec<Lit> {
        match conflict {
            Conflict::Clause(ci) => self.db(ci).lits.clone(),
            Conflict::Xor(xi) => self.xor_clause_for(xi, None),
        }
    }

    /// CNF view of an XOR constraint under the current assignment. With
    /// `implied` set, that variable contributes its current (true) literal
    /// and everything else is negated; with `implied` unset every literal
    /// is false, which is the conflict case.
    fn xor_clause_for(&self, xi: u32, implied: Option<Var>) -> Vec<Lit> {
        let xor = &self.formula.xor_constraints()[xi as usize];
        xor.variables
            .iter()
            .map(|&v| {
                let value = self.trail.var_value(v).expect("xor reason fully assigned");
                if Some(v) == implied {
                    Lit::new(v, value)
                } else {
                    Lit::new(v, !value)
                }
            })
            .collect()
    }

    /// Verifies the watched-literal invariant: every live unsatisfied
    /// clause of size >= 2 watches two distinct non-false literals, and the
    /// watch lists agree with the clause database. Test support.
    pub fn check_watch_invariant(&self) -> Result<(), String> {
        for (ci, clause) in self.db.iter().enumerate() {
            if clause.deleted || clause.lits.len() < 2 {
                continue;
            }
            let satisfied = clause
                .lits
                .iter()
                .any(|&l| self.trail.truth(l) == Some(true));
            if satisfied {
                continue;
            }
            let (w0, w1) = (clause.lits[0], clause.lits[1]);
            if w0 == w1 {
                return Err(format!("clause {ci} watches a single literal"));
            }
            for w in [w0, w1] {
                if self.trail.truth(w) == Some(false) {
                    return Err(format!("clause {ci} watches false literal {w}"));
                }
                let listed = self.watches[w.code()]
                    .iter()
                    .any(|entry| entry.clause == ci as u32);
                if !listed {
                    return Err(format!("clause {ci} missing from watch list of {w}"));
                }
            }
        }
        Ok(())
    }
}
