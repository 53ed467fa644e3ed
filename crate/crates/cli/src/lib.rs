//! Command-line front end: solve, features, bench, gen.
//!
//! Commands build their entire stdout as a string before printing, which
//! keeps output byte-reproducible for a given (file, flags, seed) and
//! makes the binary easy to test. Diagnostics and warnings go to stderr.

pub mod bench;
pub mod gen;

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use phasat::{
    emit_verdict, parse_dimacs, solve_auto, solve_with_policy, Budget, Formula, ParseOutput,
    PhasePolicy, PolicyParams, RuleOrder, SolvePlan, SolveStats, SolverConfig, Verdict,
};

#[derive(Debug, Parser)]
#[command(
    name = "phasat",
    version,
    about = "CDCL SAT solver with selectable phase heuristics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a DIMACS CNF file and print the verdict.
    Solve(SolveArgs),
    /// Print instance features and the plan the classifier selects.
    Features(FeaturesArgs),
    /// Solve a matrix of instances x policies and emit CSV statistics.
    Bench(bench::BenchArgs),
    /// Generate benchmark instances as DIMACS on stdout.
    Gen(gen::GenArgs),
}

/// Phase heuristic choice on the command line; `auto` engages the
/// feature classifier, everything else bypasses it (no pre-solving).
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Heuristic {
    Auto,
    Jw,
    Ace,
    Precosat,
    #[value(name = "precosat-tailjw")]
    PrecosatTailJw,
    #[value(name = "ace-precosat")]
    AcePrecosat,
    #[value(name = "precosat-random")]
    PrecosatRandom,
    #[value(name = "local-search")]
    LocalSearch,
}

impl Heuristic {
    pub fn policy(self) -> Option<PhasePolicy> {
        match self {
            Heuristic::Auto => None,
            Heuristic::Jw => Some(PhasePolicy::Jw),
            Heuristic::Ace => Some(PhasePolicy::Ace),
            Heuristic::Precosat => Some(PhasePolicy::Precosat),
            Heuristic::PrecosatTailJw => Some(PhasePolicy::PrecosatTailJw),
            Heuristic::AcePrecosat => Some(PhasePolicy::AcePlusPrecosat),
            Heuristic::PrecosatRandom => Some(PhasePolicy::PrecosatRandom),
            Heuristic::LocalSearch => Some(PhasePolicy::LocalSearchPhase),
        }
    }

    pub fn name(self) -> &'static str {
        match self.policy() {
            Some(policy) => policy.name(),
            None => "auto",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassifierOrder {
    Priority,
    Listed,
}

impl From<ClassifierOrder> for RuleOrder {
    fn from(order: ClassifierOrder) -> RuleOrder {
        match order {
            ClassifierOrder::Priority => RuleOrder::Priority,
            ClassifierOrder::Listed => RuleOrder::Listed,
        }
    }
}

/// Overrides for the published policy parameters, mainly for ablation.
#[derive(Debug, Clone, Copy, Args, Default)]
pub struct ParamArgs {
    #[arg(long)]
    pub ace_depth_cutoff: Option<u32>,
    #[arg(long)]
    pub ace_decision_cutoff: Option<u64>,
    #[arg(long)]
    pub tail_window: Option<u32>,
    #[arg(long)]
    pub p_random_var: Option<f64>,
    #[arg(long)]
    pub p_flip: Option<f64>,
    #[arg(long)]
    pub ls_flip_budget: Option<u64>,
    #[arg(long)]
    pub probe_step_cap: Option<usize>,
}

impl ParamArgs {
    pub fn build(&self) -> Result<PolicyParams, String> {
        let mut params = PolicyParams::default();
        if let Some(v) = self.ace_depth_cutoff {
            params.ace_depth_cutoff = v;
        }
        if let Some(v) = self.ace_decision_cutoff {
            params.ace_decision_cutoff = v;
        }
        if let Some(v) = self.tail_window {
            params.tail_window = v;
        }
        if let Some(v) = self.p_random_var {
            params.p_random_var = v;
        }
        if let Some(v) = self.p_flip {
            params.p_flip = v;
        }
        if let Some(v) = self.ls_flip_budget {
            params.ls_flip_budget = v;
        }
        if let Some(v) = self.probe_step_cap {
            params.probe_step_cap = Some(v);
        }
        for (name, p) in [("p-random-var", params.p_random_var), ("p-flip", params.p_flip)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(format!("--{name} must be a probability in [0, 1]"));
            }
        }
        Ok(params)
    }
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    #[arg(long)]
    pub max_conflicts: Option<u64>,
    #[arg(long)]
    pub max_decisions: Option<u64>,
    #[arg(long)]
    pub timeout_seconds: Option<f64>,
}

impl BudgetArgs {
    pub fn build(&self) -> Budget {
        Budget {
            max_conflicts: self.max_conflicts,
            max_decisions: self.max_decisions,
            timeout: self.timeout_seconds.map(Duration::from_secs_f64),
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// DIMACS CNF input file.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Heuristic::Auto)]
    pub heuristic: Heuristic,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub budget: BudgetArgs,
    /// Append solver statistics as `c` comment lines.
    #[arg(long)]
    pub stats: bool,
    #[arg(long, value_enum, default_value_t = ClassifierOrder::Priority)]
    pub classifier_order: ClassifierOrder,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Debug, Args)]
pub struct FeaturesArgs {
    /// DIMACS CNF input file.
    pub input: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = ClassifierOrder::Priority)]
    pub classifier_order: ClassifierOrder,
    #[command(flatten)]
    pub params: ParamArgs,
}

/// Everything a command produced; the binary prints and exits with it.
#[derive(Debug)]
pub struct CmdResult {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl CmdResult {
    fn ok(stdout: String) -> CmdResult {
        CmdResult {
            stdout,
            stderr: String::new(),
            code: 0,
        }
    }

    fn fail(message: String) -> CmdResult {
        CmdResult {
            stdout: String::new(),
            stderr: message,
            code: 1,
        }
    }
}

pub fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Solve(args) => cmd_solve(&args),
        Command::Features(args) => cmd_features(&args),
        Command::Bench(args) => bench::cmd_bench(&args),
        Command::Gen(args) => gen::cmd_gen(&args),
    }
}

/// Loads and normalizes a formula, collecting warnings for stderr.
fn load_formula(path: &PathBuf, stderr: &mut String) -> Result<Arc<Formula>, String> {
    let bytes = std::fs::read(path)
        .map_err(|e| format!("error: cannot read {}: {e}\n", path.display()))?;
    let ParseOutput {
        formula,
        tautologies_dropped,
        warnings,
    } = parse_dimacs(&bytes).map_err(|diag| {
        format!("error: {}:{diag}\n", path.display())
    })?;
    for warning in warnings {
        stderr.push_str(&format!("c warning: {warning}\n"));
    }
    if tautologies_dropped > 0 {
        stderr.push_str(&format!(
            "c warning: dropped {tautologies_dropped} tautological clause(s)\n"
        ));
    }
    Ok(Arc::new(formula.detect_xor()))
}

pub fn cmd_solve(args: &SolveArgs) -> CmdResult {
    let mut stderr = String::new();
    let formula = match load_formula(&args.input, &mut stderr) {
        Ok(f) => f,
        Err(message) => return CmdResult::fail(message),
    };
    let params = match args.params.build() {
        Ok(p) => p,
        Err(message) => return CmdResult::fail(format!("error: {message}\n")),
    };
    let config = SolverConfig {
        seed: args.seed,
        params,
    };
    let budget = args.budget.build();

    let (verdict, stats, plan): (Verdict, SolveStats, Option<SolvePlan>) =
        match args.heuristic.policy() {
            None => {
                let outcome =
                    solve_auto(&formula, config, &budget, args.classifier_order.into());
                (outcome.verdict, outcome.stats, outcome.plan)
            }
            Some(policy) => {
                let (verdict, stats) = solve_with_policy(&formula, policy, config, &budget);
                (verdict, stats, None)
            }
        };

    let mut stdout = emit_verdict(&verdict);
    if args.stats {
        match &plan {
            Some(plan) => stdout.push_str(&render_plan_lines(plan)),
            // The probing stage decided the instance before any
            // classification happened.
            None if args.heuristic == Heuristic::Auto => {
                stdout.push_str("c plan.trace=probe-solved\n");
            }
            None => {}
        }
        for line in stats.render_key_values() {
            stdout.push_str(&format!("c {line}\n"));
        }
    }
    CmdResult {
        stdout,
        stderr,
        code: verdict.exit_code(),
    }
}

fn render_plan_lines(plan: &SolvePlan) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "c plan.presolve={}\n",
        match &plan.presolve {
            Some(p) => format!("{}:{}", p.policy.name(), p.decision_budget),
            None => "none".to_string(),
        }
    ));
    out.push_str(&format!("c plan.main={}\n", plan.main.name()));
    out.push_str(&format!("c plan.trace={}\n", plan.trace.join(",")));
    out
}

pub fn cmd_features(args: &FeaturesArgs) -> CmdResult {
    let mut stderr = String::new();
    let formula = match load_formula(&args.input, &mut stderr) {
        Ok(f) => f,
        Err(message) => return CmdResult::fail(message),
    };
    let params = match args.params.build() {
        Ok(p) => p,
        Err(message) => return CmdResult::fail(format!("error: {message}\n")),
    };
    let config = SolverConfig {
        seed: args.seed,
        params,
    };
    let (features, plan, _) =
        phasat::plan_only(&formula, config, args.classifier_order.into());

    let mut stdout = String::new();
    stdout.push_str(&format!("c={}\n", features.clauses));
    stdout.push_str(&format!("v={}\n", features.vars));
    stdout.push_str(&format!("ratio={}\n", features.ratio));
    stdout.push_str(&format!(
        "mean_conflict_depth={}\n",
        features.mean_conflict_depth
    ));
    stdout.push_str(&format!("unfixed={}\n", features.unfixed));
    stdout.push_str(&format!("bin={}\n", features.binary));
    stdout.push_str(&format!("xor={}\n", features.xor));
    stdout.push_str(&format!("large={}\n", features.large));
    stdout.push_str(&format!(
        "plan.presolve={}\n",
        match &plan.presolve {
            Some(p) => format!("{}:{}", p.policy.name(), p.decision_budget),
            None => "none".to_string(),
        }
    ));
    stdout.push_str(&format!("plan.main={}\n", plan.main.name()));
    stdout.push_str(&format!("plan.trace={}\n", plan.trace.join(",")));

    let mut result = CmdResult::ok(stdout);
    result.stderr = stderr;
    result
}
