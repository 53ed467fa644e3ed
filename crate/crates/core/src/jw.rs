//! Jeroslow-Wang literal weights.
//!
//! The weight of a clause set is sum over sizes k of n_k / 2^k. Per
//! literal, that is one 2^-size term per clause containing the literal,
//! taken over the raw CNF before XOR extraction. The weights are static:
//! they depend only on the original clause set, so they are computed once
//! at load time.

use crate::formula::Formula;
use crate::lit::{Lit, Var};

#[derive(Debug, Clone)]
pub struct JwWeights {
    w_pos: Vec<f64>,
    w_neg: Vec<f64>,
}

impl JwWeights {
    pub fn new(formula: &Formula) -> JwWeights {
        let mut w_pos = vec![0.0; formula.num_vars()];
        let mut w_neg = vec![0.0; formula.num_vars()];
        for clause in formula.raw_clauses() {
            let weight = (clause.len() as f64).exp2().recip();
            for lit in &clause.literals {
                if lit.is_positive() {
                    w_pos[lit.var().index()] += weight;
                } else {
                    w_neg[lit.var().index()] += weight;
                }
            }
        }
        JwWeights { w_pos, w_neg }
    }

    /// Weight of the clause set containing `lit`.
    #[inline]
    pub fn literal_weight(&self, lit: Lit) -> f64 {
        if lit.is_positive() {
            self.w_pos[lit.var().index()]
        } else {
            self.w_neg[lit.var().index()]
        }
    }

    /// Positive phase only when it strictly outweighs the negative one;
    /// ties pick negative.
    #[inline]
    pub fn phase(&self, var: Var) -> bool {
        self.w_pos[var.index()] > self.w_neg[var.index()]
    }

    pub fn weight_bits(&self) -> impl Iterator<Item = u64> + '_ {
        self.w_pos
            .iter()
            .chain(self.w_neg.iter())
            .map(|w| w.to_bits())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clause::Clause;

    fn formula(num_vars: usize, specs: &[&[i32]]) -> Formula {
        let clauses = specs
            .iter()
            .map(|s| Clause::original(s.iter().map(|&l| Lit::from_dimacs(l)).collect()))
            .collect();
        Formula::new(num_vars, clauses, false)
    }

    #[test]
    fn fixture_weights() {
        let f = formula(4, &[&[1, 2], &[1, -3, 4], &[-1, 2], &[-1], &[2, 3]]);
        let jw = JwWeights::new(&f);
        assert_eq!(jw.literal_weight(Lit::from_dimacs(1)), 0.375);
        assert_eq!(jw.literal_weight(Lit::from_dimacs(-1)), 0.75);
        assert!(!jw.phase(Var(0)));
    }

    #[test]
    fn absent_literal_has_zero_weight() {
        let f = formula(2, &[&[1]]);
        let jw = JwWeights::new(&f);
        assert_eq!(jw.literal_weight(Lit::from_dimacs(2)), 0.0);
        assert_eq!(jw.literal_weight(Lit::from_dimacs(-2)), 0.0);
    }

    #[test]
    fn tie_picks_negative() {
        let f = formula(1, &[]);
        let jw = JwWeights::new(&f);
        assert!(!jw.phase(Var(0)));

        let balanced = formula(2, &[&[1, 2], &[-1, 2]]);
        let jw = JwWeights::new(&balanced);
        assert!(!jw.phase(Var(0)));
    }

    #[test]
    fn strictly_heavier_positive_wins() {
        let f = formula(1, &[&[1]]);
        let jw = JwWeights::new(&f);
        assert!(jw.phase(Var(0)));
    }

    #[test]
    fn weights_use_pre_extraction_clauses() {
        let f = formula(2, &[&[1, 2], &[-1, -2]]).detect_xor();
        assert!(f.cnf_clauses().is_empty());
        let jw = JwWeights::new(&f);
        assert_eq!(jw.literal_weight(Lit::from_dimacs(1)), 0.25);
        assert_eq!(jw.literal_weight(Lit::from_dimacs(-1)), 0.25);
    }
}
