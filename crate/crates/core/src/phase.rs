//! Phase-selection policies.
//!
//! Seven heuristics choose the truth value of a fresh decision variable:
//!
//! 1. `Jw` — the sign with the larger Jeroslow-Wang weight.
//! 2. `Ace` — lookahead scoring below a depth cutoff, JW beyond it.
//! 3. `Precosat` — the last saved value, JW for never-assigned variables.
//! 4. `PrecosatTailJw` — Precosat, except plain JW within the deepest 20
//!    levels reached in the previous restart interval.
//! 5. `AcePlusPrecosat` — Ace while the decision count is below a cutoff,
//!    Precosat afterwards.
//! 6. `PrecosatRandom` — Precosat with random flips, paired with random
//!    variable picks in the decision step.
//! 7. `LocalSearchPhase` — values seeded by a bounded local search.
//!
//! The dispatch itself lives on the solver, which owns the trail and
//! lookahead machinery; this module holds the policy identifiers, their
//! parameters, and the saved-phase store.

use std::fmt;

use crate::lit::Var;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhasePolicy {
    Jw,
    Ace,
    Precosat,
    PrecosatTailJw,
    AcePlusPrecosat,
    PrecosatRandom,
    LocalSearchPhase,
}

impl PhasePolicy {
    pub const ALL: [PhasePolicy; 7] = [
        PhasePolicy::Jw,
        PhasePolicy::Ace,
        PhasePolicy::Precosat,
        PhasePolicy::PrecosatTailJw,
        PhasePolicy::AcePlusPrecosat,
        PhasePolicy::PrecosatRandom,
        PhasePolicy::LocalSearchPhase,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PhasePolicy::Jw => "jw",
            PhasePolicy::Ace => "ace",
            PhasePolicy::Precosat => "precosat",
            PhasePolicy::PrecosatTailJw => "precosat-tailjw",
            PhasePolicy::AcePlusPrecosat => "ace-precosat",
            PhasePolicy::PrecosatRandom => "precosat-random",
            PhasePolicy::LocalSearchPhase => "local-search",
        }
    }

    pub fn from_name(name: &str) -> Option<PhasePolicy> {
        PhasePolicy::ALL.into_iter().find(|p| p.name() == name)
    }
}

impl fmt::Display for PhasePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Tunable policy parameters with the published defaults.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolicyParams {
    /// ACE probes only below this decision level.
    pub ace_depth_cutoff: u32,
    /// AcePlusPrecosat switches to Precosat at this decision count.
    pub ace_decision_cutoff: u64,
    /// Width of the JW tail in PrecosatTailJw.
    pub tail_window: u32,
    /// Probability of a random decision variable under PrecosatRandom.
    pub p_random_var: f64,
    /// Probability of flipping the chosen phase under PrecosatRandom.
    pub p_flip: f64,
    /// Flip budget for the local-search phase seeder.
    pub ls_flip_budget: u64,
    /// Optional cap on assignments made by a single lookahead probe.
    pub probe_step_cap: Option<usize>,
}

impl Default for PolicyParams {
    fn default() -> Self {
        PolicyParams {
            ace_depth_cutoff: 30,
            ace_decision_cutoff: 300_000,
            tail_window: 20,
            p_random_var: 0.02,
            p_flip: 1.0 / 30.0,
            ls_flip_budget: 100_000,
            probe_step_cap: None,
        }
    }
}

/// Per-variable phase memory.
#[derive(Debug, Clone)]
pub struct SavedPhases {
    /// Value the variable held most recently, set on every assignment.
    last_value: Vec<Option<bool>>,
    /// Seed assignment produced by local search, if any.
    ls_seed: Vec<Option<bool>>,
}

impl SavedPhases {
    pub fn new(num_vars: usize) -> SavedPhases {
        SavedPhases {
            last_value: vec![None; num_vars],
            ls_seed: vec![None; num_vars],
        }
    }

    #[inline]
    pub fn save(&mut self, var: Var, value: bool) {
        self.last_value[var.index()] = Some(value);
    }

    #[inline]
    pub fn last(&self, var: Var) -> Option<bool> {
        self.last_value[var.index()]
    }

    #[inline]
    pub fn ls_seed(&self, var: Var) -> Option<bool> {
        self.ls_seed[var.index()]
    }

    pub fn set_ls_seed(&mut self, seed: &[bool]) {
        debug_assert_eq!(seed.len(), self.ls_seed.len());
        for (slot, &value) in self.ls_seed.iter_mut().zip(seed) {
            *slot = Some(value);
        }
    }

    pub fn has_ls_seed(&self) -> bool {
        !self.ls_seed.is_empty() && self.ls_seed[0].is_some()
    }

    pub fn fingerprint_bits(&self) -> impl Iterator<Item = u8> + '_ {
        let enc = |v: &Option<bool>| match v {
            None => 0u8,
            Some(false) => 1,
            Some(true) => 2,
        };
        self.last_value
            .iter()
            .map(enc)
            .chain(self.ls_seed.iter().map(enc))
    }
}

/// An ACE score for one probe direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AceWeight {
    /// Accumulated constraint weights; 0 when the probe conflicted.
    pub value: f64,
    pub conflicted: bool,
}

/// CNF clause weight 5^(2-n) for a clause reduced to n literals.
#[inline]
pub fn w_cnf(n: u32) -> f64 {
    5f64.powi(2 - n as i32)
}

/// XOR weight 5.5 * 0.85^n for a constraint reduced to n variables.
#[inline]
pub fn w_xor(n: u32) -> f64 {
    5.5 * 0.85f64.powi(n as i32)
}
