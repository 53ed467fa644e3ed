//! Clause representation shared by the formula and the solver database.

use crate::lit::Lit;

/// Where a clause came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClauseOrigin {
    Original,
    Learned,
}

/// A disjunction of literals.
///
/// Stored clauses never contain duplicate variables and never have size 0;
/// an empty clause in the input is recorded as a formula-level
/// unsatisfiability marker instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    pub literals: Vec<Lit>,
    pub origin: ClauseOrigin,
    /// Glue value; meaningful for learned clauses only.
    pub lbd: u32,
}

impl Clause {
    pub fn original(literals: Vec<Lit>) -> Clause {
        debug_assert!(!literals.is_empty());
        Clause {
            literals,
            origin: ClauseOrigin::Original,
            lbd: 0,
        }
    }

    pub fn learned(literals: Vec<Lit>, lbd: u32) -> Clause {
        debug_assert!(!literals.is_empty());
        Clause {
            literals,
            origin: ClauseOrigin::Learned,
            lbd,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.literals.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    #[inline]
    pub fn contains(&self, lit: Lit) -> bool {
        self.literals.contains(&lit)
    }
}
