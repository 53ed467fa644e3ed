//! The immutable problem representation.
//!
//! A `Formula` holds the normalized CNF, any parity constraints recovered
//! from it, and occurrence lists for both. It also keeps a snapshot of the
//! clause set as it looked before XOR extraction: instance features and
//! Jeroslow-Wang weights are defined over that raw CNF, and satisfying
//! models are validated against it.

use std::collections::BTreeMap;

use crate::clause::Clause;
use crate::lit::{Lit, Var};
use crate::xor::{detect_xor_clauses, XorConstraint, XorExtraction, DEFAULT_XOR_ARITY_CAP};

/// Clause counts captured after parse-time normalization and before XOR
/// extraction: total clauses, binary clauses, and clauses of size 9 or more.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RawCounts {
    pub clauses: usize,
    pub binary: usize,
    pub large: usize,
}

/// A parsed, normalized SAT problem.
#[derive(Debug, Clone)]
pub struct Formula {
    num_vars: usize,
    cnf_clauses: Vec<Clause>,
    xor_constraints: Vec<XorConstraint>,
    /// Per-literal indices into `cnf_clauses`, keyed by `Lit::code()`.
    occ_cnf: Vec<Vec<u32>>,
    /// Per-variable indices into `xor_constraints`.
    occ_xor: Vec<Vec<u32>>,
    /// The clause set before XOR extraction; never mutated afterwards.
    raw_clauses: Vec<Clause>,
    trivially_unsat: bool,
}

impl Formula {
    /// Builds a formula from normalized clauses. `trivially_unsat` marks an
    /// empty clause seen in the input.
    pub fn new(num_vars: usize, clauses: Vec<Clause>, trivially_unsat: bool) -> Formula {
        let raw_clauses = clauses.clone();
        let mut formula = Formula {
            num_vars,
            cnf_clauses: clauses,
            xor_constraints: Vec::new(),
            occ_cnf: Vec::new(),
            occ_xor: Vec::new(),
            raw_clauses,
            trivially_unsat,
        };
        formula.rebuild_occurrence_lists();
        formula
    }

    pub fn empty(num_vars: usize) -> Formula {
        Formula::new(num_vars, Vec::new(), false)
    }

    #[inline]
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    #[inline]
    pub fn cnf_clauses(&self) -> &[Clause] {
        &self.cnf_clauses
    }

    #[inline]
    pub fn xor_constraints(&self) -> &[XorConstraint] {
        &self.xor_constraints
    }

    /// The normalized clause set as it was before XOR extraction.
    #[inline]
    pub fn raw_clauses(&self) -> &[Clause] {
        &self.raw_clauses
    }

    #[inline]
    pub fn is_trivially_unsat(&self) -> bool {
        self.trivially_unsat
    }

    /// Indices of CNF clauses containing `lit`.
    #[inline]
    pub fn clauses_with(&self, lit: Lit) -> &[u32] {
        &self.occ_cnf[lit.code()]
    }

    /// Indices of XOR constraints containing `var`.
    #[inline]
    pub fn xors_with(&self, var: Var) -> &[u32] {
        &self.occ_xor[var.index()]
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> {
        (0..self.num_vars as u32).map(Var)
    }

    /// Clause size histogram over the raw (pre-extraction) clause set.
    pub fn clause_size_histogram(&self) -> BTreeMap<usize, usize> {
        let mut hist = BTreeMap::new();
        for clause in &self.raw_clauses {
            *hist.entry(clause.len()).or_insert(0) += 1;
        }
        hist
    }

    /// Counts over the raw clause set used by the instance features.
    pub fn raw_counts(&self) -> RawCounts {
        let mut counts = RawCounts {
            clauses: self.raw_clauses.len(),
            ..RawCounts::default()
        };
        for clause in &self.raw_clauses {
            match clause.len() {
                2 => counts.binary += 1,
                n if n >= 9 => counts.large += 1,
                _ => {}
            }
        }
        counts
    }

    /// Recovers XOR constraints encoded in the CNF, with the default arity
    /// cap. See [`Formula::detect_xor_capped`].
    pub fn detect_xor(self) -> Formula {
        self.detect_xor_capped(DEFAULT_XOR_ARITY_CAP).0
    }

    /// Recovers XOR constraints and reports what was extracted.
    pub fn detect_xor_logged(self) -> (Formula, Vec<XorExtraction>) {
        self.detect_xor_capped(DEFAULT_XOR_ARITY_CAP)
    }

    /// XOR recovery with an explicit arity cap. The raw snapshot is left
    /// untouched; occurrence lists are rebuilt for the new clause layout.
    pub fn detect_xor_capped(mut self, arity_cap: usize) -> (Formula, Vec<XorExtraction>) {
        let mut removed = vec![false; self.cnf_clauses.len()];
        let extractions = detect_xor_clauses(&self.cnf_clauses, arity_cap, &mut removed);
        if extractions.is_empty() {
            return (self, extractions);
        }
        let mut kept = Vec::with_capacity(self.cnf_clauses.len());
        for (idx, clause) in self.cnf_clauses.drain(..).enumerate() {
            if !removed[idx] {
                kept.push(clause);
            }
        }
        self.cnf_clauses = kept;
        self.xor_constraints
            .extend(extractions.iter().map(|e| e.constraint.clone()));
        self.rebuild_occurrence_lists();
        (self, extractions)
    }

    fn rebuild_occurrence_lists(&mut self) {
        self.occ_cnf = vec![Vec::new(); 2 * self.num_vars];
        self.occ_xor = vec![Vec::new(); self.num_vars];
        for (idx, clause) in self.cnf_clauses.iter().enumerate() {
            for lit in &clause.literals {
                self.occ_cnf[lit.code()].push(idx as u32);
            }
        }
        for (idx, xor) in self.xor_constraints.iter().enumerate() {
            for var in &xor.variables {
                self.occ_xor[var.index()].push(idx as u32);
            }
        }
    }

    /// Checks a total assignment against the current clause/XOR database
    /// and against the raw pre-extraction clause set.
    pub fn is_model(&self, assignment: &[bool]) -> bool {
        assert_eq!(assignment.len(), self.num_vars);
        if self.trivially_unsat {
            return false;
        }
        let lit_true =
            |lit: Lit| assignment[lit.var().index()] == lit.is_positive();
        self.cnf_clauses
            .iter()
            .chain(self.raw_clauses.iter())
            .all(|c| c.literals.iter().any(|&l| lit_true(l)))
            && self
                .xor_constraints
                .iter()
                .all(|x| x.eval(|v| assignment[v.index()]))
    }
}
