//! First-UIP conflict analysis with recursive clause minimization.

use crate::lit::{Lit, Var};
use crate::solver::{Conflict, Solver};
use crate::trail::Reason;

/// Product of analyzing one conflict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictAnalysis {
    /// Learned clause; `clause[0]` is the asserting literal and, for
    /// clauses of size >= 2, `clause[1]` sits at the backjump level.
    pub clause: Vec<Lit>,
    /// Second-highest decision level in the clause; 0 for unit clauses.
    pub backjump_level: u32,
    /// Number of distinct decision levels among the literals.
    pub lbd: u32,
}

impl Solver {
    /// Derives the 1UIP clause for a conflict at decision level >= 1.
    ///
    /// Resolves backwards along the trail until exactly one literal of the
    /// current level remains, bumping every variable seen on the way, then
    /// removes literals implied by the rest of the clause.
    pub fn analyze_conflict(&mut self, conflict: Conflict) -> ConflictAnalysis {
        let conflict_level = self.trail.decision_level();
        debug_assert!(conflict_level >= 1);

        let mut learned: Vec<Lit> = vec![Lit::positive(Var(0))]; // placeholder for the UIP
        let mut reason_lits = self.conflict_literals(conflict);
        let mut counter = 0usize;
        let mut trail_index = self.trail.len();
        let mut uip: Option<Lit> = None;

        loop {
            for &q in &reason_lits {
                // Skip the literal this reason implied.
                if Some(q) == uip {
                    continue;
                }
                let var = q.var();
                debug_assert_eq!(self.trail.truth(q), Some(false));
                let level = self.trail.var_level(var);
                if !self.seen[var.index()] && level > 0 {
                    self.seen[var.index()] = true;
                    self.analyze_clear.push(var);
                    self.vsids.bump(var);
                    if level >= conflict_level {
                        counter += 1;
                    } else {
                        learned.push(q);
                    }
                }
            }
            // Walk back to the next marked trail literal.
            loop {
                trail_index -= 1;
                if self.seen[self.trail.lit_at(trail_index).var().index()] {
                    break;
                }
            }
            let p = self.trail.lit_at(trail_index);
            self.seen[p.var().index()] = false;
            counter -= 1;
            if counter == 0 {
                uip = Some(p);
                break;
            }
            reason_lits = self.reason_literals(p.var());
            uip = Some(p);
        }

        let uip = uip.expect("conflict at level >= 1 always has a UIP");
        learned[0] = !uip;
        // `seen` stays set for the kept tail literals during minimization.
        self.minimize_learned(&mut learned);

        // Place a literal of the backjump level at index 1.
        let mut backjump_level = 0;
        if learned.len() > 1 {
            let mut max_index = 1;
            for i in 1..learned.len() {
                if self.trail.var_level(learned[i].var())
                    > self.trail.var_level(learned[max_index].var())
                {
                    max_index = i;
                }
            }
            learned.swap(1, max_index);
            backjump_level = self.trail.var_level(learned[1].var());
        }

        let mut levels: Vec<u32> = learned
            .iter()
            .map(|l| self.trail.var_level(l.var()))
            .collect();
        levels.sort_unstable();
        levels.dedup();
        let lbd = levels.len() as u32;

        for var in self.analyze_clear.drain(..) {
            self.seen[var.index()] = false;
        }

        ConflictAnalysis {
            clause: learned,
            backjump_level,
            lbd,
        }
    }

    /// Drops every non-asserting literal whose negation is implied by the
    /// remaining clause, following reasons recursively.
    fn minimize_learned(&mut self, learned: &mut Vec<Lit>) {
        let tail: Vec<Lit> = learned[1..].to_vec();
        learned.truncate(1);
        for lit in tail {
            if !self.literal_redundant(lit) {
                learned.push(lit);
            }
        }
    }

    /// A literal is redundant when the reason chain below it stays inside
    /// the set already marked `seen` (the rest of the learned clause).
    fn literal_redundant(&mut self, lit: Lit) -> bool {
        if self.trail.var_reason(lit.var()) == Reason::Decision {
            return false;
        }
        let mut stack = vec![lit.var()];
        let mut newly_marked: Vec<Var> = Vec::new();
        while let Some(var) = stack.pop() {
            debug_assert!(self.trail.var_reason(var) != Reason::Decision);
            for q in self.reason_literals(var) {
                let qv = q.var();
                if qv == var {
                    continue;
                }
                if self.seen[qv.index()] || self.trail.var_level(qv) == 0 {
                    continue;
                }
                if self.trail.var_reason(qv) == Reason::Decision {
                    // Reached outside the marked set: not redundant.
                    for v in newly_marked {
                        self.seen[v.index()] = false;
                    }
                    return false;
                }
                self.seen[qv.index()] = true;
                newly_marked.push(qv);
                stack.push(qv);
            }
        }
        // Keep the transient marks out of the final clause bookkeeping.
        for v in newly_marked {
            self.seen[v.index()] = false;
        }
        true
    }
}
