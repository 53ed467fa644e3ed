//! Learned-clause database reduction.
//!
//! Glue clauses (lbd <= 2) and clauses currently acting as reasons are
//! kept unconditionally; the worst half of the rest, ordered by lbd and
//! then size, is dropped. The trigger threshold grows geometrically, which
//! the search loop owns.

use crate::clause::ClauseOrigin;
use crate::solver::Solver;
use crate::trail::Reason;

impl Solver {
    /// Removes the worst half of the removable learned clauses.
    pub fn reduce_learned_db(&mut self) {
        let locked = self.locked_clauses();
        let mut removable: Vec<u32> = (0..self.db.len() as u32)
            .filter(|&ci| {
                let clause = self.db(ci);
                clause.origin == ClauseOrigin::Learned
                    && !clause.deleted
                    && clause.lbd > 2
                    && !locked[ci as usize]
            })
            .collect();
        // Worst first: highest lbd, then longest, then newest.
        removable.sort_by(|&a, &b| {
            let (ca, cb) = (self.db(a), self.db(b));
            cb.lbd
                .cmp(&ca.lbd)
                .then(cb.lits.len().cmp(&ca.lits.len()))
                .then(b.cmp(&a))
        });
        let victims = removable.len() / 2;
        for &ci in &removable[..victims] {
            self.delete_clause(ci);
        }
    }

    fn locked_clauses(&self) -> Vec<bool> {
        let mut locked = vec![false; self.db.len()];
        for &lit in self.trail.stack() {
            if let Reason::Clause(ci) = self.trail.var_reason(lit.var()) {
                locked[ci as usize] = true;
            }
        }
        locked
    }

    fn delete_clause(&mut self, ci: u32) {
        let (w0, w1) = {
            let clause = &mut self.db[ci as usize];
            debug_assert!(!clause.deleted);
            clause.deleted = true;
            (clause.lits[0], clause.lits[1])
        };
        self.learned_live -= 1;
        for w in [w0, w1] {
            self.watches[w.code()].retain(|watch| watch.clause != ci);
        }
    }

    /// Live learned clauses, for tests and stats.
    pub fn learned_clause_count(&self) -> usize {
        self.learned_live
    }

    /// Literal lists of the live learned clauses.
    pub fn learned_clauses(&self) -> Vec<Vec<crate::lit::Lit>> {
        self.db
            .iter()
            .filter(|c| c.origin == ClauseOrigin::Learned && !c.deleted)
            .map(|c| c.lits.clone())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use crate::clause::ClauseOrigin;
    use crate::formula::Formula;
    use crate::lit::{Lit, Var};
    use crate::solver::{DbClause, Solver, SolverConfig};
    use crate::trail::Reason;
    use std::sync::Arc;

    fn empty_solver(num_vars: usize) -> Solver {
        Solver::new(
            Arc::new(Formula::empty(num_vars)),
            SolverConfig::default(),
        )
    }

    fn push_learned(s: &mut Solver, lits: &[i32], lbd: u32) -> u32 {
        let idx = s.db.len() as u32;
        s.db.push(DbClause {
            lits: lits.iter().map(|&l| Lit::from_dimacs(l)).collect(),
            origin: ClauseOrigin::Learned,
            lbd,
            deleted: false,
        });
        s.learned_live += 1;
        let (w0, w1) = (s.db(idx).lits[0], s.db(idx).lits[1]);
        s.add_watch(w0, idx);
        s.add_watch(w1, idx);
        idx
    }

    #[test]
    fn glue_clauses_survive() {
        let mut s = empty_solver(6);
        for i in 0..4 {
            push_learned(&mut s, &[1 + i, 2 + i], 2);
        }
        s.reduce_learned_db();
        assert_eq!(s.learned_clause_count(), 4);
    }

    #[test]
    fn half_of_removable_clauses_dropped() {
        let mut s = empty_solver(10);
        for i in 0..10i32 {
            let a = 1 + (i % 9);
            let b = 1 + ((i + 1) % 9);
            push_learned(&mut s, &[a, b], 3 + (i as u32 % 4));
        }
        s.reduce_learned_db();
        assert_eq!(s.learned_clause_count(), 5);
    }

    #[test]
    fn thousand_removable_clauses_keep_at_least_half() {
        let mut s = empty_solver(40);
        for i in 0..1000i32 {
            let a = 1 + (i % 39);
            let b = 1 + ((i + 7) % 39);
            if a == b {
                continue;
            }
            push_learned(&mut s, &[a, b], 3 + (i as u32 % 7));
        }
        let before = s.learned_clause_count();
        s.reduce_learned_db();
        assert!(s.learned_clause_count() * 2 >= before);
    }

    #[test]
    fn worst_lbd_goes_first() {
        let mut s = empty_solver(6);
        let low = push_learned(&mut s, &[1, 2], 3);
        let high = push_learned(&mut s, &[3, 4], 9);
        s.reduce_learned_db();
        assert!(s.db(high).deleted);
        assert!(!s.db(low).deleted);
    }

    #[test]
    fn reason_clauses_are_locked() {
        let mut s = empty_solver(8);
        let reason = push_learned(&mut s, &[1, 2], 9);
        let other_a = push_learned(&mut s, &[3, 4], 9);
        let other_b = push_learned(&mut s, &[5, 6], 9);
        s.trail.new_level();
        s.enqueue(Lit::from_dimacs(1), Reason::Clause(reason));
        // Removable: the two unlocked clauses; half of them go. Ties on
        // (lbd, size) drop the newest first.
        s.reduce_learned_db();
        assert!(!s.db(reason).deleted, "locked clause must survive");
        assert!(s.db(other_b).deleted);
        assert!(!s.db(other_a).deleted);
        assert!(
            !s.watches.iter().flatten().any(|w| w.clause == other_b),
            "watches of deleted clause removed"
        );
        let _ = Var(0);
    }
}
