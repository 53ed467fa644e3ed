//! The assignment trail.
//!
//! Assignments are stacked in order with the decision level and the reason
//! that forced them. Backtracking pops a suffix of the stack; the solver
//! layers phase saving and heap reinsertion on top of the raw pop.

use crate::lit::{Lit, Var};

/// Why a literal is on the trail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reason {
    Decision,
    /// Index into the solver clause database.
    Clause(u32),
    /// Index into the formula's XOR constraints.
    Xor(u32),
}

#[derive(Debug)]
pub struct Trail {
    stack: Vec<Lit>,
    /// Stack position where each decision level begins; `level_marks[i]` is
    /// the start of level i+1.
    level_marks: Vec<usize>,
    /// Per-variable truth value; `None` when unassigned.
    values: Vec<Option<bool>>,
    /// Per-variable decision level; stale for unassigned variables.
    level: Vec<u32>,
    /// Per-variable reason; stale for unassigned variables.
    reason: Vec<Reason>,
}

impl Trail {
    pub fn new(num_vars: usize) -> Trail {
        Trail {
            stack: Vec::with_capacity(num_vars),
            level_marks: Vec::new(),
            values: vec![None; num_vars],
            level: vec![0; num_vars],
            reason: vec![Reason::Decision; num_vars],
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.stack.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.stack.is_empty()
    }

    #[inline]
    pub fn stack(&self) -> &[Lit] {
        &self.stack
    }

    #[inline]
    pub fn lit_at(&self, index: usize) -> Lit {
        self.stack[index]
    }

    #[inline]
    pub fn decision_level(&self) -> u32 {
        self.level_marks.len() as u32
    }

    #[inline]
    pub fn level_marks(&self) -> &[usize] {
        &self.level_marks
    }

    /// Truth value of a literal under the current assignment.
    #[inline]
    pub fn truth(&self, lit: Lit) -> Option<bool> {
        self.values[lit.var().index()].map(|v| v == lit.is_positive())
    }

    #[inline]
    pub fn var_value(&self, var: Var) -> Option<bool> {
        self.values[var.index()]
    }

    #[inline]
    pub fn is_assigned(&self, var: Var) -> bool {
        self.values[var.index()].is_some()
    }

    #[inline]
    pub fn var_level(&self, var: Var) -> u32 {
        debug_assert!(self.is_assigned(var));
        self.level[var.index()]
    }

    #[inline]
    pub fn var_reason(&self, var: Var) -> Reason {
        debug_assert!(self.is_assigned(var));
        self.reason[var.index()]
    }

    pub fn new_level(&mut self) {
        self.level_marks.push(self.stack.len());
    }

    /// Pushes an assignment at the current decision level.
    ///
    /// The variable must be unassigned; violating that is an internal
    /// contract breach.
    pub fn assign(&mut self, lit: Lit, reason: Reason) {
        let var = lit.var();
        assert!(
            self.values[var.index()].is_none(),
            "assign on already-assigned variable {var}"
        );
        self.values[var.index()] = Some(lit.is_positive());
        self.level[var.index()] = self.decision_level();
        self.reason[var.index()] = reason;
        self.stack.push(lit);
    }

    /// Pops one assignment off the stack.
    pub fn pop(&mut self) -> Lit {
        let lit = self.stack.pop().expect("pop on empty trail");
        self.values[lit.var().index()] = None;
        lit
    }

    /// Stack position where backtracking to `level` will cut.
    pub fn level_start(&self, level: u32) -> usize {
        if level as usize >= self.level_marks.len() {
            self.stack.len()
        } else {
            self.level_marks[level as usize]
        }
    }

    /// Drops level marks above `level`; the caller pops the stack suffix.
    pub fn truncate_levels(&mut self, level: u32) {
        self.level_marks.truncate(level as usize);
    }

    /// Number of variables assigned at decision level 0.
    pub fn level_zero_len(&self) -> usize {
        self.level_start(0)
    }
}
