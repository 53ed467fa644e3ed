//! Instance features and the phase-policy classifier.
//!
//! Eight cheap features describe an instance: clause and variable counts,
//! their ratio, mean conflict depth and unfixed variables from a probing
//! run, and the binary, XOR, and large-clause counts. A small rule set
//! maps the features to a solve plan: a bounded pre-solving stage plus a
//! main phase policy.
//!
//! Clause counts (`clauses`, `binary`, `large`) come from the raw CNF
//! before XOR extraction; `xor` counts the constraints recovered by
//! extraction. The rules are evaluated most-specific first — the tail-JW
//! rules, then the ACE rules, then the Precosat rules — because the ACE
//! XOR rule strictly implies one of the Precosat rules and would be dead
//! under listed order. The listed order remains available for ablation.

use crate::formula::Formula;
use crate::phase::PhasePolicy;
use crate::solver::ProbeReport;

/// Decision budget for every pre-solving stage.
pub const PRESOLVE_DECISION_BUDGET: u64 = 200_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeatureVector {
    /// Clause count before XOR extraction.
    pub clauses: usize,
    pub vars: usize,
    /// clauses / vars, 0 when there are no variables.
    pub ratio: f64,
    /// Mean decision level at conflicts during probing.
    pub mean_conflict_depth: f64,
    /// Variables not fixed at level 0 after probing.
    pub unfixed: usize,
    /// Binary clause count before XOR extraction.
    pub binary: usize,
    /// Recovered XOR constraints.
    pub xor: usize,
    /// Clauses of size 9 or more before XOR extraction.
    pub large: usize,
}

impl FeatureVector {
    pub fn new(formula: &Formula, report: &ProbeReport) -> FeatureVector {
        let counts = formula.raw_counts();
        let vars = formula.num_vars();
        FeatureVector {
            clauses: counts.clauses,
            vars,
            ratio: if vars > 0 {
                counts.clauses as f64 / vars as f64
            } else {
                0.0
            },
            mean_conflict_depth: report.mean_conflict_depth,
            unfixed: report.unfixed_vars,
            binary: counts.binary,
            xor: formula.xor_constraints().len(),
            large: counts.large,
        }
    }
}

/// A bounded initial stage run before the main policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Presolve {
    pub policy: PhasePolicy,
    pub decision_budget: u64,
}

/// Classifier output: what to run and which rules fired.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolvePlan {
    pub presolve: Option<Presolve>,
    pub main: PhasePolicy,
    /// Fired rule identifiers, e.g. `presolve:1`, `main:3d`.
    pub trace: Vec<String>,
}

impl SolvePlan {
    /// A plan with no pre-solving, for explicitly chosen policies.
    pub fn fixed(policy: PhasePolicy) -> SolvePlan {
        SolvePlan {
            presolve: None,
            main: policy,
            trace: vec!["fixed".to_string()],
        }
    }
}

/// Rule evaluation order for the main policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleOrder {
    /// Most-specific first: 4, 3, 2, default.
    Priority,
    /// As listed: 2, 3, 4, default.
    Listed,
}

pub fn classify(features: &FeatureVector) -> SolvePlan {
    classify_ordered(features, RuleOrder::Priority)
}

type RuleGroup = fn(&FeatureVector) -> Option<(&'static str, PhasePolicy)>;

pub fn classify_ordered(features: &FeatureVector, order: RuleOrder) -> SolvePlan {
    let mut trace = Vec::new();

    let presolve = presolve_rule(features, &mut trace);

    let groups: [RuleGroup; 3] = match order {
        RuleOrder::Priority => [rule_4, rule_3, rule_2],
        RuleOrder::Listed => [rule_2, rule_3, rule_4],
    };
    let main = groups
        .iter()
        .find_map(|rule| rule(features))
        .unwrap_or(("5", PhasePolicy::AcePlusPrecosat));
    trace.push(format!("main:{}", main.0));

    SolvePlan {
        presolve: Some(presolve),
        main: main.1,
        trace,
    }
}

fn presolve_rule(f: &FeatureVector, trace: &mut Vec<String>) -> Presolve {
    let (id, policy) = if 50_000 < f.clauses && f.clauses < 220_000 {
        ("1", PhasePolicy::PrecosatRandom)
    } else if f.clauses < 18_000 {
        ("3a", PhasePolicy::Ace)
    } else {
        ("5", PhasePolicy::Precosat)
    };
    trace.push(format!("presolve:{id}"));
    Presolve {
        policy,
        decision_budget: PRESOLVE_DECISION_BUDGET,
    }
}

fn rule_2(f: &FeatureVector) -> Option<(&'static str, PhasePolicy)> {
    let id = if f.xor < 1000 && f.clauses > 300_000 {
        "2a"
    } else if f.xor > 2000 && f.unfixed < 15_000 {
        "2b"
    } else if f.ratio < 6.0
        && f.clauses as f64 / 15.0 > f.vars as f64
        && (f.clauses as f64) / 3.0 < f.binary as f64 / 2.0
    {
        "2c"
    } else if f.large > 5 && f.large < 40 {
        "2d"
    } else {
        return None;
    };
    Some((id, PhasePolicy::Precosat))
}

fn rule_3(f: &FeatureVector) -> Option<(&'static str, PhasePolicy)> {
    // A mean of 0 means probing saw no conflicts at all; that is no
    // evidence of shallow conflicts, so 3b stays quiet.
    let id = if f.mean_conflict_depth > 0.0 && f.mean_conflict_depth < 30.0 {
        "3b"
    } else if f.binary > 400_000
        && f.binary as f64 > f.clauses as f64 / 2.0
        && f.vars as f64 / 20.0 > f.unfixed as f64
    {
        "3c"
    } else if f.xor > 2000
        && f.xor as f64 > f.clauses as f64 / 12.0
        && f.unfixed < 15_000
    {
        "3d"
    } else {
        return None;
    };
    Some((id, PhasePolicy::Ace))
}

fn rule_4(f: &FeatureVector) -> Option<(&'static str, PhasePolicy)> {
    if f.xor != 0 {
        return None;
    }
    let id = if f.ratio > 100.0 && f.vars < 1500 {
        "4a"
    } else if f.ratio > 55.0
        && f.binary > 0
        && (f.clauses as f64 / f.binary as f64) < 0.9
    {
        "4b"
    } else {
        return None;
    };
    Some((id, PhasePolicy::PrecosatTailJw))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> FeatureVector {
        FeatureVector {
            clauses: 30_000,
            vars: 10_000,
            ratio: 3.0,
            mean_conflict_depth: 100.0,
            unfixed: 20_000,
            binary: 100,
            xor: 0,
            large: 0,
        }
    }

    #[test]
    fn presolve_rule_1_crypto_band() {
        let f = FeatureVector {
            clauses: 100_000,
            ..base()
        };
        let plan = classify(&f);
        assert_eq!(
            plan.presolve,
            Some(Presolve {
                policy: PhasePolicy::PrecosatRandom,
                decision_budget: 200_000
            })
        );
        assert!(plan.trace.contains(&"presolve:1".to_string()));
    }

    #[test]
    fn presolve_rule_boundaries_are_strict() {
        for clauses in [50_000, 220_000] {
            let f = FeatureVector { clauses, ..base() };
            let plan = classify(&f);
            assert_ne!(
                plan.presolve.unwrap().policy,
                PhasePolicy::PrecosatRandom,
                "clauses={clauses} must not fire rule 1"
            );
        }
    }

    #[test]
    fn presolve_small_instances_use_ace() {
        let f = FeatureVector {
            clauses: 17_999,
            ..base()
        };
        let plan = classify(&f);
        assert_eq!(plan.presolve.unwrap().policy, PhasePolicy::Ace);
        assert!(plan.trace.contains(&"presolve:3a".to_string()));
    }

    #[test]
    fn rule_3d_beats_2b_under_priority_order() {
        let f = FeatureVector {
            clauses: 24_000,
            xor: 2500,
            unfixed: 10_000,
            ..base()
        };
        let plan = classify(&f);
        assert_eq!(plan.main, PhasePolicy::Ace);
        assert!(plan.trace.contains(&"main:3d".to_string()));
        // Listed order sees 2b first.
        let listed = classify_ordered(&f, RuleOrder::Listed);
        assert_eq!(listed.main, PhasePolicy::Precosat);
        assert!(listed.trace.contains(&"main:2b".to_string()));
    }

    #[test]
    fn rule_2b_when_xor_share_too_small() {
        let f = FeatureVector {
            clauses: 40_000,
            xor: 2500,
            unfixed: 10_000,
            ..base()
        };
        let plan = classify(&f);
        assert_eq!(plan.main, PhasePolicy::Precosat);
        assert!(plan.trace.contains(&"main:2b".to_string()));
    }

    #[test]
    fn rule_4a_dense_small_instances() {
        let f = FeatureVector {
            clauses: 120_000,
            vars: 1000,
            ratio: 120.0,
            ..base()
        };
        let plan = classify(&f);
        assert_eq!(plan.main, PhasePolicy::PrecosatTailJw);
        assert!(plan.trace.contains(&"main:4a".to_string()));
    }

    #[test]
    fn default_rule_when_nothing_fires() {
        let plan = classify(&base());
        assert_eq!(plan.main, PhasePolicy::AcePlusPrecosat);
        assert!(plan.trace.contains(&"main:5".to_string()));
    }

    #[test]
    fn mean_depth_boundary_is_strict() {
        let f = FeatureVector {
            mean_conflict_depth: 30.0,
            ..base()
        };
        assert_ne!(classify(&f).main, PhasePolicy::Ace);
        let f = FeatureVector {
            mean_conflict_depth: 29.999,
            ..base()
        };
        assert_eq!(classify(&f).main, PhasePolicy::Ace);
    }

    #[test]
    fn large_clause_boundaries_are_strict() {
        for large in [5, 40] {
            let f = FeatureVector { large, ..base() };
            assert_ne!(
                classify(&f).main,
                PhasePolicy::Precosat,
                "large={large} must not fire 2d"
            );
        }
        let f = FeatureVector { large: 6, ..base() };
        let plan = classify(&f);
        assert_eq!(plan.main, PhasePolicy::Precosat);
        assert!(plan.trace.contains(&"main:2d".to_string()));
    }

    #[test]
    fn classify_is_pure() {
        let f = FeatureVector {
            clauses: 60_000,
            xor: 3000,
            unfixed: 100,
            ..base()
        };
        assert_eq!(classify(&f), classify(&f));
    }
}
