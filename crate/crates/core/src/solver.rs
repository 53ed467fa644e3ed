//! The conflict-driven search engine.
//!
//! One `Solver` owns all mutable search state for a single solve: the
//! clause database, watch lists, trail, VSIDS activities, saved phases,
//! and the random stream. Runs are resumable, which is how pre-solving
//! works: a plan may run a bounded stage under one phase policy and then
//! continue under another with everything learned so far intact.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clause::ClauseOrigin;
use crate::features::SolvePlan;
use crate::formula::Formula;
use crate::jw::JwWeights;
use crate::lit::{Lit, Var};
use crate::luby::LubyRestarts;
use crate::phase::{AceWeight, PhasePolicy, PolicyParams, SavedPhases};
use crate::trail::{Reason, Trail};
use crate::verdict::Verdict;
use crate::vsids::Vsids;
use crate::walksat;

const LEARNED_LIMIT_START: f64 = 4000.0;
const LEARNED_LIMIT_GROWTH: f64 = 1.1;
const RESTART_SCALE: u64 = 64;

/// A clause stored in the solver database.
#[derive(Debug, Clone)]
pub(crate) struct DbClause {
    pub lits: Vec<Lit>,
    pub origin: ClauseOrigin,
    pub lbd: u32,
    pub deleted: bool,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Watch {
    pub clause: u32,
    pub blocker: Lit,
}

/// What falsified during propagation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conflict {
    Clause(u32),
    Xor(u32),
}

/// Result of running propagation to fixpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PropagationOutcome {
    pub conflict: Option<Conflict>,
    /// Literals enqueued during this call.
    pub assigned_count: u64,
}

/// Relative resource limits for a run.
#[derive(Debug, Clone, Copy, Default)]
pub struct Budget {
    pub max_conflicts: Option<u64>,
    pub max_decisions: Option<u64>,
    pub timeout: Option<Duration>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget {
        max_conflicts: None,
        max_decisions: None,
        timeout: None,
    };
}

#[derive(Debug, Clone, Copy)]
struct RunLimits {
    conflicts_cap: u64,
    decisions_cap: u64,
    deadline: Option<Instant>,
}

/// Counters exposed after a run. All counters are cumulative over the
/// solver's lifetime and monotonically non-decreasing.
#[derive(Debug, Clone, Default)]
pub struct SolveStats {
    pub decisions: u64,
    pub conflicts: u64,
    pub propagations: u64,
    pub restarts: u64,
    /// Learned clauses added (including units), before any reduction.
    pub learned: u64,
    /// Times the learned database was reduced.
    pub db_reductions: u64,
    pub max_decision_level: u32,
    /// Lookahead probes run for ACE scoring.
    pub ace_probes: u64,
    /// Probes observed at or beyond the depth cutoff; zero by construction.
    pub ace_probes_beyond_depth_cutoff: u64,
    /// Probes observed at or beyond the decision cutoff while running
    /// AcePlusPrecosat; zero by construction.
    pub ace_probes_beyond_decision_cutoff: u64,
    /// Decisions whose variable was picked at random (PrecosatRandom).
    pub random_var_decisions: u64,
    /// Decisions whose phase was randomly flipped (PrecosatRandom).
    pub phase_flips: u64,
    /// Stage labels in execution order, e.g. `probe:precosat`, `main:jw`.
    pub stages: Vec<String>,
}

impl SolveStats {
    /// Folds another stats block into this one; used when a pipeline runs
    /// several solver instances (probing, then the planned solve).
    pub fn absorb(&mut self, other: &SolveStats) {
        self.decisions += other.decisions;
        self.conflicts += other.conflicts;
        self.propagations += other.propagations;
        self.restarts += other.restarts;
        self.learned += other.learned;
        self.db_reductions += other.db_reductions;
        self.max_decision_level = self.max_decision_level.max(other.max_decision_level);
        self.ace_probes += other.ace_probes;
        self.ace_probes_beyond_depth_cutoff += other.ace_probes_beyond_depth_cutoff;
        self.ace_probes_beyond_decision_cutoff += other.ace_probes_beyond_decision_cutoff;
        self.random_var_decisions += other.random_var_decisions;
        self.phase_flips += other.phase_flips;
        self.stages.extend(other.stages.iter().cloned());
    }

    /// Stable key=value rendering, one line per counter.
    pub fn render_key_values(&self) -> Vec<String> {
        vec![
            format!("decisions={}", self.decisions),
            format!("conflicts={}", self.conflicts),
            format!("propagations={}", self.propagations),
            format!("restarts={}", self.restarts),
            format!("learned={}", self.learned),
            format!("db_reductions={}", self.db_reductions),
            format!("max_decision_level={}", self.max_decision_level),
            format!("ace_probes={}", self.ace_probes),
            format!("random_var_decisions={}", self.random_var_decisions),
            format!("phase_flips={}", self.phase_flips),
            format!("policy={}", self.stages.join(",")),
        ]
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SolverConfig {
    pub seed: u64,
    pub params: PolicyParams,
}

pub struct Solver {
    pub(crate) formula: Arc<Formula>,
    pub(crate) db: Vec<DbClause>,
    pub(crate) learned_live: usize,
    /// Per literal: clauses watching that literal, visited when it turns false.
    pub(crate) watches: Vec<Vec<Watch>>,
    /// Per variable: XOR constraints watching that variable.
    pub(crate) xor_watches: Vec<Vec<u32>>,
    /// The two watched variables of each XOR constraint.
    pub(crate) xor_watch_vars: Vec<[Var; 2]>,
    pub(crate) trail: Trail,
    pub(crate) queue_head: usize,
    pub(crate) vsids: Vsids,
    pub(crate) phases: SavedPhases,
    pub(crate) jw: JwWeights,
    pub(crate) params: PolicyParams,
    pub(crate) policy: PhasePolicy,
    pub(crate) rng: ChaCha8Rng,
    restarts: LubyRestarts,
    conflicts_since_restart: u64,
    epoch_max_level: u32,
    pub(crate) max_level_prev_epoch: Option<u32>,
    learned_limit: f64,
    /// Set when unsatisfiability is established at level 0 (including
    /// attach time and trivially-unsat input).
    pub(crate) unsat_at_root: bool,
    /// A clause found falsified while attaching; reported by `propagate`.
    pub(crate) root_conflict: Option<Conflict>,
    pub(crate) stats: SolveStats,
    /// When present, the decision level of every conflict is appended here.
    pub(crate) conflict_level_log: Option<Vec<u32>>,
    // Conflict-analysis scratch, kept allocated across conflicts.
    pub(crate) seen: Vec<bool>,
    pub(crate) analyze_clear: Vec<Var>,
}

impl Solver {
    pub fn new(formula: Arc<Formula>, config: SolverConfig) -> Solver {
        let num_vars = formula.num_vars();
        let jw = JwWeights::new(&formula);
        let mut solver = Solver {
            db: Vec::with_capacity(formula.cnf_clauses().len()),
            learned_live: 0,
            watches: vec![Vec::new(); 2 * num_vars],
            xor_watches: vec![Vec::new(); num_vars],
            xor_watch_vars: Vec::with_capacity(formula.xor_constraints().len()),
            trail: Trail::new(num_vars),
            queue_head: 0,
            vsids: Vsids::new(num_vars),
            phases: SavedPhases::new(num_vars),
            jw,
            params: config.params,
            policy: PhasePolicy::Precosat,
            rng: ChaCha8Rng::seed_from_u64(config.seed),
            restarts: LubyRestarts::new(RESTART_SCALE),
            conflicts_since_restart: 0,
            epoch_max_level: 0,
            max_level_prev_epoch: None,
            learned_limit: LEARNED_LIMIT_START,
            unsat_at_root: formula.is_trivially_unsat(),
            root_conflict: None,
            stats: SolveStats::default(),
            conflict_level_log: None,
            seen: vec![false; num_vars],
            analyze_clear: Vec::new(),
            formula,
        };
        solver.attach_original_clauses();
        solver.attach_xor_constraints();
        solver
    }

    fn attach_original_clauses(&mut self) {
        let formula = Arc::clone(&self.formula);
        for clause in formula.cnf_clauses() {
            let idx = self.db.len() as u32;
            self.db.push(DbClause {
                lits: clause.literals.clone(),
                origin: ClauseOrigin::Original,
                lbd: 0,
                deleted: false,
            });
            if clause.literals.len() == 1 {
                let unit = clause.literals[0];
                match self.trail.truth(unit) {
                    Some(true) => {}
                    Some(false) => {
                        self.unsat_at_root = true;
                        self.root_conflict.get_or_insert(Conflict::Clause(idx));
                    }
                    None => self.enqueue(unit, Reason::Clause(idx)),
                }
            } else {
                self.add_watch(clause.literals[0], idx);
                self.add_watch(clause.literals[1], idx);
            }
        }
    }

    fn attach_xor_constraints(&mut self) {
        let formula = Arc::clone(&self.formula);
        for (idx, xor) in formula.xor_constraints().iter().enumerate() {
            debug_assert!(xor.len() >= 2);
            let (a, b) = (xor.variables[0], xor.variables[1]);
            self.xor_watch_vars.push([a, b]);
            self.xor_watches[a.index()].push(idx as u32);
            self.xor_watches[b.index()].push(idx as u32);
        }
    }

    #[inline]
    pub(crate) fn add_watch(&mut self, lit: Lit, clause: u32) {
        let blocker = self
            .db(clause)
            .lits
            .iter()
            .copied()
            .find(|&l| l != lit)
            .unwrap_or(lit);
        self.watches[lit.code()].push(Watch { clause, blocker });
    }

    #[inline]
    pub(crate) fn db(&self, idx: u32) -> &DbClause {
        &self.db[idx as usize]
    }

    /// Pushes an assignment and records its phase. Decisions and implied
    /// literals both pass through here; probe assignments do not.
    pub fn enqueue(&mut self, lit: Lit, reason: Reason) {
        self.trail.assign(lit, reason);
        self.phases.save(lit.var(), lit.is_positive());
    }

    pub fn trail(&self) -> &Trail {
        &self.trail
    }

    pub fn stats(&self) -> &SolveStats {
        &self.stats
    }

    pub fn formula(&self) -> &Arc<Formula> {
        &self.formula
    }

    pub fn saved_phases(&self) -> &SavedPhases {
        &self.phases
    }

    pub fn jw_weights(&self) -> &JwWeights {
        &self.jw
    }

    pub fn set_policy(&mut self, policy: PhasePolicy) {
        self.policy = policy;
    }

    pub fn policy(&self) -> PhasePolicy {
        self.policy
    }

    /// Overrides the learned-clause count that triggers database
    /// reduction (default 4000). Mainly a test hook: small limits force
    /// reduction churn on instances small enough to verify exhaustively.
    pub fn set_learned_limit(&mut self, limit: f64) {
        self.learned_limit = limit;
    }

    /// Overrides the Luby restart scale (default 64 conflicts), resetting
    /// the sequence.
    pub fn set_restart_scale(&mut self, scale: u64) {
        self.restarts = LubyRestarts::new(scale);
        self.conflicts_since_restart = 0;
    }

    /// Injects a literal as a learned unit clause at level 0. Used to carry
    /// what probing fixed into the planned solve.
    pub fn add_learned_unit(&mut self, lit: Lit) {
        let idx = self.db.len() as u32;
        self.db.push(DbClause {
            lits: vec![lit],
            origin: ClauseOrigin::Learned,
            lbd: 1,
            deleted: false,
        });
        self.learned_live += 1;
        self.stats.learned += 1;
        match self.trail.truth(lit) {
            Some(true) => {}
            Some(false) => {
                self.unsat_at_root = true;
                self.root_conflict.get_or_insert(Conflict::Clause(idx));
            }
            None => {
                debug_assert_eq!(self.trail.decision_level(), 0);
                self.enqueue(lit, Reason::Clause(idx));
            }
        }
    }

    /// Pops trail entries above `level`, reinserting their variables into
    /// the decision heap.
    pub(crate) fn backtrack_to(&mut self, level: u32) {
        let cut = self.trail.level_start(level);
        while self.trail.len() > cut {
            let lit = self.trail.pop();
            self.vsids.insert(lit.var());
        }
        self.trail.truncate_levels(level);
        self.queue_head = self.trail.len();
    }

    fn restart(&mut self) {
        self.backtrack_to(0);
        self.stats.restarts += 1;
        self.restarts.advance();
        self.conflicts_since_restart = 0;
        self.max_level_prev_epoch = Some(self.epoch_max_level);
        self.epoch_max_level = 0;
    }

    /// True when the current restart interval is exhausted.
    pub fn restart_due(&self) -> bool {
        self.restarts.should_restart(self.conflicts_since_restart)
    }

    fn pick_decision_var(&mut self) -> Option<Var> {
        let num_vars = self.formula.num_vars();
        if self.policy == PhasePolicy::PrecosatRandom
            && self.trail.len() < num_vars
            && self.rng.gen_bool(self.params.p_random_var)
        {
            // Rejection sampling over the unassigned variables; the length
            // check above guarantees one exists.
            loop {
                let var = Var(self.rng.gen_range(0..num_vars as u32));
                if !self.trail.is_assigned(var) {
                    self.stats.random_var_decisions += 1;
                    return Some(var);
                }
            }
        }
        while let Some(var) = self.vsids.pop_max() {
            if !self.trail.is_assigned(var) {
                return Some(var);
            }
        }
        None
    }

    fn decide(&mut self) -> bool {
        let Some(var) = self.pick_decision_var() else {
            return false;
        };
        self.stats.decisions += 1;
        let phase = self.select_phase(var);
        self.trail.new_level();
        let level = self.trail.decision_level();
        self.epoch_max_level = self.epoch_max_level.max(level);
        self.stats.max_decision_level = self.stats.max_decision_level.max(level);
        self.enqueue(Lit::new(var, phase), Reason::Decision);
        true
    }

    /// Chooses the phase for a fresh decision variable under the active
    /// policy. The search depth seen by depth-sensitive policies is the
    /// decision level in effect before the new decision is pushed.
    pub fn select_phase(&mut self, var: Var) -> bool {
        match self.policy {
            PhasePolicy::Jw => self.jw.phase(var),
            PhasePolicy::Ace => self.ace_phase(var),
            PhasePolicy::Precosat => self.precosat_phase(var),
            PhasePolicy::PrecosatTailJw => match self.max_level_prev_epoch {
                // No previous restart interval: no tail estimate yet.
                None => self.precosat_phase(var),
                Some(prev_max) => {
                    let threshold = prev_max.saturating_sub(self.params.tail_window);
                    if self.trail.decision_level() > threshold {
                        self.jw.phase(var)
                    } else {
                        self.precosat_phase(var)
                    }
                }
            },
            PhasePolicy::AcePlusPrecosat => {
                if self.stats.decisions < self.params.ace_decision_cutoff {
                    self.ace_phase(var)
                } else {
                    self.precosat_phase(var)
                }
            }
            PhasePolicy::PrecosatRandom => {
                let phase = self.precosat_phase(var);
                if self.rng.gen_bool(self.params.p_flip) {
                    self.stats.phase_flips += 1;
                    !phase
                } else {
                    phase
                }
            }
            PhasePolicy::LocalSearchPhase => self
                .phases
                .ls_seed(var)
                .unwrap_or_else(|| self.jw.phase(var)),
        }
    }

    /// Saved value if the variable has ever been assigned, JW otherwise.
    #[inline]
    fn precosat_phase(&self, var: Var) -> bool {
        self.phases.last(var).unwrap_or_else(|| self.jw.phase(var))
    }

    /// ACE phase rule: probe both values below the depth cutoff and keep
    /// the one with the strictly larger weight. A single conflicting probe
    /// selects the opposite phase; two conflicting probes select true and
    /// let real propagation raise the conflict. Ties fall back to JW.
    pub fn ace_phase(&mut self, var: Var) -> bool {
        let depth = self.trail.decision_level();
        if depth >= self.params.ace_depth_cutoff {
            return self.jw.phase(var);
        }
        let pos = self.ace_weight(var, true);
        let neg = self.ace_weight(var, false);
        match (pos.conflicted, neg.conflicted) {
            (true, true) => true,
            (true, false) => false,
            (false, true) => true,
            (false, false) => {
                if pos.value > neg.value {
                    true
                } else if neg.value > pos.value {
                    false
                } else {
                    self.jw.phase(var)
                }
            }
        }
    }

    /// Scores one probe direction: lookahead on `var = phase`, then the sum
    /// of W_CNF over reduced clauses containing the variable plus W_XOR
    /// over reduced constraints containing it. Satisfied entries add
    /// nothing; a conflicting probe scores 0 with the flag set.
    pub fn ace_weight(&mut self, var: Var, phase: bool) -> AceWeight {
        self.stats.ace_probes += 1;
        if self.trail.decision_level() >= self.params.ace_depth_cutoff {
            self.stats.ace_probes_beyond_depth_cutoff += 1;
        }
        if self.policy == PhasePolicy::AcePlusPrecosat
            && self.stats.decisions >= self.params.ace_decision_cutoff
        {
            self.stats.ace_probes_beyond_decision_cutoff += 1;
        }
        let report = self.lookahead(var, phase);
        AceWeight {
            value: report.ace_value(),
            conflicted: report.conflicted,
        }
    }

    /// Runs the search loop under `policy` until a verdict or until the
    /// budget is exhausted. Resumable: counters, the trail, and everything
    /// learned persist across calls.
    pub fn run(&mut self, policy: PhasePolicy, budget: &Budget) -> Option<Verdict> {
        let deadline = budget.timeout.map(|t| Instant::now() + t);
        self.run_with_deadline(policy, budget, deadline)
    }

    pub(crate) fn run_with_deadline(
        &mut self,
        policy: PhasePolicy,
        budget: &Budget,
        deadline: Option<Instant>,
    ) -> Option<Verdict> {
        self.policy = policy;
        if self.unsat_at_root {
            return Some(Verdict::Unsat);
        }
        if policy == PhasePolicy::LocalSearchPhase && !self.phases.has_ls_seed() {
            let result = walksat::local_search_seed(
                &self.formula,
                self.params.ls_flip_budget,
                &mut self.rng,
            );
            self.phases.set_ls_seed(&result.assignment);
        }
        let limits = RunLimits {
            conflicts_cap: budget
                .max_conflicts
                .map_or(u64::MAX, |m| self.stats.conflicts.saturating_add(m)),
            decisions_cap: budget
                .max_decisions
                .map_or(u64::MAX, |m| self.stats.decisions.saturating_add(m)),
            deadline,
        };

        loop {
            let outcome = self.propagate();
            if let Some(conflict) = outcome.conflict {
                self.stats.conflicts += 1;
                self.conflicts_since_restart += 1;
                let level = self.trail.decision_level();
                if let Some(log) = self.conflict_level_log.as_mut() {
                    log.push(level);
                }
                if level == 0 {
                    self.unsat_at_root = true;
                    return Some(Verdict::Unsat);
                }
                self.learn_from(conflict);
                self.vsids.decay();
                if self.learned_live as f64 > self.learned_limit {
                    self.reduce_learned_db();
                    self.learned_limit *= LEARNED_LIMIT_GROWTH;
                    self.stats.db_reductions += 1;
                }
                continue;
            }

            // At fixpoint: budget, restarts, then the next decision.
            // Budgets are only checked here, so a budget-bound run always
            // stops in a probe-ready state.
            if self.stats.conflicts >= limits.conflicts_cap
                || self.stats.decisions >= limits.decisions_cap
            {
                return None;
            }
            if let Some(deadline) = limits.deadline {
                if Instant::now() >= deadline {
                    return None;
                }
            }
            if self.restart_due() {
                self.restart();
            }
            if !self.decide() {
                let model = self.extract_model();
                assert!(
                    self.formula.is_model(&model),
                    "internal error: produced model fails validation"
                );
                return Some(Verdict::Sat(model));
            }
        }
    }

    fn extract_model(&self) -> Vec<bool> {
        self.formula
            .vars()
            .map(|v| self.trail.var_value(v).expect("total assignment"))
            .collect()
    }

    /// Learns from a conflict: derive the 1UIP clause, jump back, and
    /// assert it.
    fn learn_from(&mut self, conflict: Conflict) {
        let analysis = self.analyze_conflict(conflict);
        self.backtrack_to(analysis.backjump_level);
        let lits = analysis.clause;
        self.stats.learned += 1;
        let idx = self.db.len() as u32;
        if lits.len() == 1 {
            self.db.push(DbClause {
                lits: lits.clone(),
                origin: ClauseOrigin::Learned,
                lbd: analysis.lbd,
                deleted: false,
            });
            self.learned_live += 1;
            self.enqueue(lits[0], Reason::Clause(idx));
        } else {
            let asserting = lits[0];
            self.db.push(DbClause {
                lits,
                origin: ClauseOrigin::Learned,
                lbd: analysis.lbd,
                deleted: false,
            });
            self.learned_live += 1;
            let (w0, w1) = {
                let c = self.db(idx);
                (c.lits[0], c.lits[1])
            };
            self.add_watch(w0, idx);
            self.add_watch(w1, idx);
            self.enqueue(asserting, Reason::Clause(idx));
        }
    }

    /// Runs DPLL-style probing under the Precosat policy, recording the
    /// decision level of every conflict.
    ///
    /// Probing that happens to finish the instance carries the verdict;
    /// the measurements are taken either way, so feature extraction works
    /// even on instances the probe dispatches outright.
    pub fn probe(&mut self, budget: &Budget) -> ProbeOutcome {
        self.conflict_level_log = Some(Vec::new());
        self.stats.stages.push(format!(
            "probe:{}",
            PhasePolicy::Precosat.name()
        ));
        let verdict = self.run(PhasePolicy::Precosat, budget);
        let log = self.conflict_level_log.take().unwrap_or_default();
        self.backtrack_to(0);
        let fixed = self.trail.len();
        let units: Vec<Lit> = self.trail.stack().to_vec();
        let mean = if log.is_empty() {
            0.0
        } else {
            log.iter().map(|&l| l as f64).sum::<f64>() / log.len() as f64
        };
        ProbeOutcome {
            verdict,
            report: ProbeReport {
                mean_conflict_depth: mean,
                unfixed_vars: self.formula.num_vars() - fixed,
                conflicts_seen: log.len() as u64,
            },
            units,
        }
    }

    /// Deep hash of the search state, covering the trail, assignment
    /// arrays, watch lists, clause database, activities, saved phases, and
    /// the random stream. Instrumentation counters are observability, not
    /// search state, and are excluded.
    pub fn state_fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        for &lit in self.trail.stack() {
            lit.code().hash(&mut h);
        }
        self.trail.level_marks().hash(&mut h);
        for var in self.formula.vars() {
            match self.trail.var_value(var) {
                None => 0u8.hash(&mut h),
                Some(value) => {
                    (1u8 + u8::from(value)).hash(&mut h);
                    self.trail.var_level(var).hash(&mut h);
                    match self.trail.var_reason(var) {
                        Reason::Decision => (0u8, 0u32).hash(&mut h),
                        Reason::Clause(c) => (1u8, c).hash(&mut h),
                        Reason::Xor(x) => (2u8, x).hash(&mut h),
                    }
                }
            }
        }
        self.queue_head.hash(&mut h);
        for list in &self.watches {
            list.len().hash(&mut h);
            for watch in list {
                (watch.clause, watch.blocker.code()).hash(&mut h);
            }
        }
        self.xor_watches.hash(&mut h);
        for pair in &self.xor_watch_vars {
            (pair[0].0, pair[1].0).hash(&mut h);
        }
        for clause in &self.db {
            clause.deleted.hash(&mut h);
            if !clause.deleted {
                clause.lbd.hash(&mut h);
                (clause.origin == ClauseOrigin::Learned).hash(&mut h);
                for &lit in &clause.lits {
                    lit.code().hash(&mut h);
                }
            }
        }
        self.vsids.heap_entries().hash(&mut h);
        for bits in self.vsids.raw_activity_bits() {
            bits.hash(&mut h);
        }
        for bits in self.phases.fingerprint_bits() {
            bits.hash(&mut h);
        }
        for bits in self.jw.weight_bits() {
            bits.hash(&mut h);
        }
        self.conflicts_since_restart.hash(&mut h);
        self.epoch_max_level.hash(&mut h);
        self.max_level_prev_epoch.hash(&mut h);
        self.learned_limit.to_bits().hash(&mut h);
        self.rng.get_seed().hash(&mut h);
        self.rng.get_word_pos().hash(&mut h);
        self.rng.get_stream().hash(&mut h);
        h.finish()
    }
}

/// Mean conflict depth and root-level fixing observed while probing.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeReport {
    pub mean_conflict_depth: f64,
    pub unfixed_vars: usize,
    pub conflicts_seen: u64,
}

#[derive(Debug, Clone)]
pub struct ProbeOutcome {
    /// Present when probing decided the instance outright.
    pub verdict: Option<Verdict>,
    pub report: ProbeReport,
    /// Every literal fixed at level 0, to be carried into the planned
    /// solve.
    pub units: Vec<Lit>,
}

/// Default probing budget for feature extraction.
pub fn default_probe_budget() -> Budget {
    Budget {
        max_conflicts: Some(2000),
        max_decisions: Some(100_000),
        timeout: None,
    }
}

/// Solves under an explicit plan: assumed units first, then the optional
/// bounded pre-solving stage, then the main policy on the same solver.
pub fn solve_with_plan(
    formula: &Arc<Formula>,
    plan: &SolvePlan,
    units: &[Lit],
    config: SolverConfig,
    budget: &Budget,
) -> (Verdict, SolveStats) {
    let deadline = budget.timeout.map(|t| Instant::now() + t);
    let mut solver = Solver::new(Arc::clone(formula), config);
    for &unit in units {
        solver.add_learned_unit(unit);
    }
    if let Some(presolve) = &plan.presolve {
        solver
            .stats
            .stages
            .push(format!("presolve:{}", presolve.policy.name()));
        let stage_budget = Budget {
            max_conflicts: budget.max_conflicts,
            max_decisions: Some(match budget.max_decisions {
                Some(global) => global.min(presolve.decision_budget),
                None => presolve.decision_budget,
            }),
            timeout: None,
        };
        if let Some(verdict) =
            solver.run_with_deadline(presolve.policy, &stage_budget, deadline)
        {
            return (verdict, solver.stats);
        }
    }
    solver.stats.stages.push(format!("main:{}", plan.main.name()));
    let remaining = Budget {
        max_conflicts: budget
            .max_conflicts
            .map(|m| m.saturating_sub(solver.stats.conflicts)),
        max_decisions: budget
            .max_decisions
            .map(|m| m.saturating_sub(solver.stats.decisions)),
        timeout: None,
    };
    let verdict = solver
        .run_with_deadline(plan.main, &remaining, deadline)
        .unwrap_or(Verdict::Unknown);
    (verdict, solver.stats)
}

/// Solves under a single fixed policy with no pre-solving.
pub fn solve_with_policy(
    formula: &Arc<Formula>,
    policy: PhasePolicy,
    config: SolverConfig,
    budget: &Budget,
) -> (Verdict, SolveStats) {
    let mut solver = Solver::new(Arc::clone(formula), config);
    solver.stats.stages.push(format!("main:{}", policy.name()));
    let verdict = solver.run(policy, budget).unwrap_or(Verdict::Unknown);
    (verdict, solver.stats)
}
