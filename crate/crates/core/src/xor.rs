//! Parity constraints and their recovery from CNF encodings.
//!
//! An XOR over k variables is encoded in CNF by the 2^(k-1) clauses whose
//! sign patterns exclude exactly the assignments of the wrong parity.
//! Detection groups clauses by their variable set and checks whether one of
//! the two parity classes of sign patterns is completely present. It never
//! reasons semantically: a clause that happens to be implied by a detected
//! constraint but is not part of the pattern stays in the CNF.

use std::collections::HashMap;

use crate::clause::Clause;
use crate::lit::{Lit, Var};

/// Maximum XOR arity recovered during preprocessing. Pattern groups grow as
/// 2^(k-1), so recovery beyond small arities is pointless.
pub const DEFAULT_XOR_ARITY_CAP: usize = 6;

/// A parity constraint over a set of variables.
///
/// `parity` is true when an odd number of the variables must be true.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XorConstraint {
    /// Distinct variables, sorted ascending.
    pub variables: Vec<Var>,
    pub parity: bool,
}

impl XorConstraint {
    pub fn new(mut variables: Vec<Var>, parity: bool) -> XorConstraint {
        variables.sort_unstable();
        variables.dedup();
        XorConstraint { variables, parity }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.variables.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.variables.is_empty()
    }

    /// Evaluates the constraint under a total assignment.
    pub fn eval(&self, value_of: impl Fn(Var) -> bool) -> bool {
        let ones = self.variables.iter().filter(|&&v| value_of(v)).count();
        (ones % 2 == 1) == self.parity
    }
}

/// One recovered constraint together with the clauses it replaced,
/// kept for equivalence checking in tests.
#[derive(Debug, Clone)]
pub struct XorExtraction {
    pub constraint: XorConstraint,
    pub removed_clauses: Vec<Vec<Lit>>,
}

/// Scans `clauses` for complete XOR encodings of arity 2..=`arity_cap`.
///
/// Returns the recovered constraints and marks the participating clause
/// indices in `removed`. Duplicate clauses with the same sign pattern are
/// all removed with their group.
pub fn detect_xor_clauses(
    clauses: &[Clause],
    arity_cap: usize,
    removed: &mut [bool],
) -> Vec<XorExtraction> {
    debug_assert_eq!(clauses.len(), removed.len());

    // Group clause indices by sorted variable signature.
    let mut groups: HashMap<Vec<Var>, Vec<usize>> = HashMap::new();
    for (idx, clause) in clauses.iter().enumerate() {
        let k = clause.len();
        if !(2..=arity_cap).contains(&k) {
            continue;
        }
        let mut sig: Vec<Var> = clause.literals.iter().map(|l| l.var()).collect();
        sig.sort_unstable();
        groups.entry(sig).or_default().push(idx);
    }

    // Deterministic output order: by smallest clause index in the group.
    let mut ordered: Vec<(Vec<Var>, Vec<usize>)> = groups.into_iter().collect();
    ordered.sort_by_key(|(_, idxs)| *idxs.iter().min().expect("nonempty group"));

    let mut extractions = Vec::new();
    for (sig, idxs) in ordered {
        let k = sig.len();
        if idxs.len() < 1usize << (k - 1) {
            continue;
        }
        // Sign pattern of a clause: bit i set when variable sig[i] occurs
        // negatively. The clause excludes the assignment where sig[i] is
        // true iff bit i is set, so a pattern of even weight excludes an
        // even-parity point.
        let mut masks_even: Vec<u32> = Vec::new();
        let mut masks_odd: Vec<u32> = Vec::new();
        let mut by_mask: HashMap<u32, Vec<usize>> = HashMap::new();
        for &idx in &idxs {
            let mut mask = 0u32;
            for lit in &clauses[idx].literals {
                let pos = sig.binary_search(&lit.var()).expect("var in signature");
                if !lit.is_positive() {
                    mask |= 1 << pos;
                }
            }
            let entry = by_mask.entry(mask).or_default();
            if entry.is_empty() {
                if mask.count_ones() % 2 == 0 {
                    masks_even.push(mask);
                } else {
                    masks_odd.push(mask);
                }
            }
            entry.push(idx);
        }

        let full = 1usize << (k - 1);
        // Even-weight patterns exclude even-parity points: complete class
        // forces odd parity. Odd-weight patterns force even parity. Both
        // classes can be complete at once (a contradiction over sig); each
        // complete class yields its own constraint.
        for (masks, parity) in [(&masks_even, true), (&masks_odd, false)] {
            if masks.len() != full {
                continue;
            }
            let mut removed_clauses = Vec::new();
            for mask in masks {
                for &idx in &by_mask[mask] {
                    removed[idx] = true;
                    removed_clauses.push(clauses[idx].literals.clone());
                }
            }
            extractions.push(XorExtraction {
                constraint: XorConstraint::new(sig.clone(), parity),
                removed_clauses,
            });
        }
    }
    extractions
}

/// Expands a constraint into its canonical 2^(k-1) clause CNF encoding.
pub fn xor_to_cnf(xor: &XorConstraint) -> Vec<Vec<Lit>> {
    let k = xor.len();
    assert!(k >= 1);
    let want_weight_parity = u32::from(!xor.parity);
    let mut out = Vec::new();
    for mask in 0u32..(1 << k) {
        if mask.count_ones() % 2 != want_weight_parity {
            continue;
        }
        let clause = xor
            .variables
            .iter()
            .enumerate()
            .map(|(i, &v)| Lit::new(v, mask & (1 << i) == 0))
            .collect();
        out.push(clause);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clause(lits: &[i32]) -> Clause {
        Clause::original(lits.iter().map(|&l| Lit::from_dimacs(l)).collect())
    }

    fn detect(specs: &[&[i32]]) -> (Vec<XorExtraction>, Vec<bool>) {
        let clauses: Vec<Clause> = specs.iter().map(|s| clause(s)).collect();
        let mut removed = vec![false; clauses.len()];
        let found = detect_xor_clauses(&clauses, DEFAULT_XOR_ARITY_CAP, &mut removed);
        (found, removed)
    }

    #[test]
    fn two_var_odd_parity() {
        let (found, removed) = detect(&[&[1, 2], &[-1, -2]]);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].constraint, XorConstraint::new(vec![Var(0), Var(1)], true));
        assert!(removed.iter().all(|&r| r));
    }

    #[test]
    fn two_var_even_parity() {
        let (found, _) = detect(&[&[1, -2], &[-1, 2]]);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].constraint, XorConstraint::new(vec![Var(0), Var(1)], false));
    }

    #[test]
    fn incomplete_pattern_is_left_alone() {
        // (1 2) and (1 -2) mix parity classes; neither class is complete.
        let (found, removed) = detect(&[&[1, 2], &[1, -2]]);
        assert!(found.is_empty());
        assert!(removed.iter().all(|&r| !r));
    }

    #[test]
    fn three_var_group() {
        // x1 ^ x2 ^ x3 = 1: the four even-weight sign patterns.
        let (found, removed) = detect(&[&[1, 2, 3], &[1, -2, -3], &[-1, 2, -3], &[-1, -2, 3]]);
        assert_eq!(found.len(), 1);
        assert!(found[0].constraint.parity);
        assert_eq!(found[0].constraint.len(), 3);
        assert!(removed.iter().all(|&r| r));
    }

    #[test]
    fn both_parity_classes_extracted_when_contradictory() {
        let (found, removed) = detect(&[&[1, 2], &[-1, -2], &[1, -2], &[-1, 2]]);
        assert_eq!(found.len(), 2);
        assert!(removed.iter().all(|&r| r));
    }

    #[test]
    fn arity_cap_respected() {
        let clauses: Vec<Clause> = xor_to_cnf(&XorConstraint::new(
            (0..3).map(Var).collect(),
            true,
        ))
        .into_iter()
        .map(Clause::original)
        .collect();
        let mut removed = vec![false; clauses.len()];
        let found = detect_xor_clauses(&clauses, 2, &mut removed);
        assert!(found.is_empty());
    }

    #[test]
    fn expansion_matches_detection() {
        let xor = XorConstraint::new(vec![Var(0), Var(2), Var(4), Var(5)], false);
        let clauses: Vec<Clause> = xor_to_cnf(&xor).into_iter().map(Clause::original).collect();
        assert_eq!(clauses.len(), 8);
        let mut removed = vec![false; clauses.len()];
        let found = detect_xor_clauses(&clauses, DEFAULT_XOR_ARITY_CAP, &mut removed);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].constraint, xor);
    }
}
