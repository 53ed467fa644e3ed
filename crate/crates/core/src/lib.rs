//! A CDCL SAT solver built around pluggable phase selection.
//!
//! The engine is a standard conflict-driven solver: two-watched-literal
//! propagation (with native XOR constraints recovered from the CNF during
//! preprocessing), VSIDS decisions, first-UIP conflict analysis with
//! recursive minimization, glue-based learned-clause reduction, and Luby
//! restarts. What varies is the phase given to each decision variable:
//! seven interchangeable heuristics range from static Jeroslow-Wang
//! weights over phase saving to an ACE lookahead score that probes both
//! values of the variable and measures how the formula shrinks.
//!
//! A lightweight classifier reads eight instance features, most of them
//! static counts plus two measured by a bounded probing run, and picks a
//! solve plan: a budgeted pre-solving stage and a main phase policy.
//!
//! ```
//! use phasat::{parse_dimacs, solve_with_policy, Budget, PhasePolicy, SolverConfig};
//! use std::sync::Arc;
//!
//! let out = parse_dimacs(b"p cnf 2 2\n1 2 0\n-1 0\n").unwrap();
//! let formula = Arc::new(out.formula.detect_xor());
//! let (verdict, _stats) = solve_with_policy(
//!     &formula,
//!     PhasePolicy::Jw,
//!     SolverConfig::default(),
//!     &Budget::UNLIMITED,
//! );
//! assert!(verdict.is_sat());
//! ```

pub mod clause;
pub mod dimacs;
pub mod features;
pub mod formula;
pub mod jw;
pub mod lit;
pub mod lookahead;
pub mod luby;
pub mod phase;
pub mod solver;
pub mod trail;
pub mod verdict;
pub mod walksat;
pub mod xor;

mod analyze;
mod propagate;
mod reduce;
mod vsids;

#[cfg(doctest)]
mod book;

pub use clause::{Clause, ClauseOrigin};
pub use dimacs::{
    emit_verdict, parse_dimacs, write_dimacs, DiagnosticKind, ParseDiagnostic, ParseOutput,
    ParseWarning,
};
pub use features::{
    classify, classify_ordered, FeatureVector, Presolve, RuleOrder, SolvePlan,
    PRESOLVE_DECISION_BUDGET,
};
pub use formula::{Formula, RawCounts};
pub use jw::JwWeights;
pub use lit::{Lit, Var};
pub use lookahead::{LookaheadReport, ProbeSize};
pub use luby::{luby, LubyRestarts};
pub use phase::{w_cnf, w_xor, AceWeight, PhasePolicy, PolicyParams, SavedPhases};
pub use solver::{
    default_probe_budget, solve_with_plan, solve_with_policy, Budget, Conflict, ProbeOutcome,
    ProbeReport, PropagationOutcome, SolveStats, Solver, SolverConfig,
};
pub use verdict::Verdict;
pub use walksat::{local_search_seed, LocalSearchResult};
pub use xor::{xor_to_cnf, XorConstraint, XorExtraction};

use std::sync::Arc;

/// End-to-end pipeline outcome for feature-driven solving.
#[derive(Debug, Clone)]
pub struct AutoSolveOutcome {
    pub verdict: Verdict,
    pub stats: SolveStats,
    /// Absent when probing already decided the instance.
    pub features: Option<FeatureVector>,
    pub plan: Option<SolvePlan>,
}

/// Probes the instance, classifies it, and solves under the resulting
/// plan. Literals fixed at level 0 during probing carry over.
pub fn solve_auto(
    formula: &Arc<Formula>,
    config: SolverConfig,
    budget: &Budget,
    order: RuleOrder,
) -> AutoSolveOutcome {
    let mut prober = Solver::new(Arc::clone(formula), config);
    let probe_result = prober.probe(&default_probe_budget());
    let probe_stats = prober.stats().clone();
    drop(prober);

    // A verdict from probing bypasses classification entirely.
    if let Some(verdict) = probe_result.verdict {
        return AutoSolveOutcome {
            verdict,
            stats: probe_stats,
            features: None,
            plan: None,
        };
    }
    let features = FeatureVector::new(formula, &probe_result.report);
    let plan = classify_ordered(&features, order);
    let (verdict, solve_stats) =
        solve_with_plan(formula, &plan, &probe_result.units, config, budget);
    let mut stats = probe_stats;
    stats.absorb(&solve_stats);
    AutoSolveOutcome {
        verdict,
        stats,
        features: Some(features),
        plan: Some(plan),
    }
}

/// Probes and classifies without solving; the feature-dump entry point.
/// Features come out even when probing already decided the instance.
pub fn plan_only(
    formula: &Arc<Formula>,
    config: SolverConfig,
    order: RuleOrder,
) -> (FeatureVector, SolvePlan, Option<Verdict>) {
    let mut prober = Solver::new(Arc::clone(formula), config);
    let outcome = prober.probe(&default_probe_budget());
    let features = FeatureVector::new(formula, &outcome.report);
    let plan = classify_ordered(&features, order);
    (features, plan, outcome.verdict)
}
