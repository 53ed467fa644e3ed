//! The benchmark matrix: every (instance, policy) cell solved under a
//! shared budget, results as CSV.
//!
//! Cells are independent solves, so they run on a rayon pool sized by
//! `--parallelism`; output order is fixed by (instance, policy) position
//! regardless of scheduling. The wall-time column is zero unless
//! `--timing wall` is passed: measured time is inherently nonreproducible
//! and the default output stays byte-identical across reruns.

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, ValueEnum};
use rayon::prelude::*;

use phasat::{solve_auto, solve_with_policy, RuleOrder, SolverConfig, Verdict};

use crate::{BudgetArgs, CmdResult, Heuristic, ParamArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Timing {
    /// Report 0 in the ms column (reproducible output).
    Off,
    /// Report measured wall milliseconds.
    Wall,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Instance files or directories of `.cnf`/`.dimacs` files.
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    /// Policies to run; defaults to all seven fixed heuristics.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub policies: Vec<Heuristic>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[arg(long, default_value_t = 1)]
    pub parallelism: usize,
    #[arg(long, value_enum, default_value_t = Timing::Off)]
    pub timing: Timing,
    #[command(flatten)]
    pub params: ParamArgs,
}

const DEFAULT_POLICIES: [Heuristic; 7] = [
    Heuristic::Jw,
    Heuristic::Ace,
    Heuristic::Precosat,
    Heuristic::PrecosatTailJw,
    Heuristic::AcePrecosat,
    Heuristic::PrecosatRandom,
    Heuristic::LocalSearch,
];

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub instance: String,
    pub policy: &'static str,
    pub verdict: String,
    pub decisions: u64,
    pub conflicts: u64,
    pub propagations: u64,
    pub restarts: u64,
    pub ms: u64,
}

pub const CSV_HEADER: &str = "instance,policy,verdict,decisions,conflicts,propagations,restarts,ms";

pub fn cmd_bench(args: &BenchArgs) -> CmdResult {
    let instances = match collect_instances(&args.inputs) {
        Ok(list) => list,
        Err(message) => {
            return CmdResult {
                stdout: String::new(),
                stderr: format!("error: {message}\n"),
                code: 1,
            }
        }
    };
    let policies: &[Heuristic] = if args.policies.is_empty() {
        &DEFAULT_POLICIES
    } else {
        &args.policies
    };
    let params = match args.params.build() {
        Ok(p) => p,
        Err(message) => {
            return CmdResult {
                stdout: String::new(),
                stderr: format!("error: {message}\n"),
                code: 1,
            }
        }
    };

    let cells: Vec<(String, PathBuf, Heuristic)> = instances
        .iter()
        .flat_map(|(name, path)| {
            policies
                .iter()
                .map(move |&policy| (name.clone(), path.clone(), policy))
        })
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.parallelism.max(1))
        .build()
        .expect("rayon pool");
    let budget = args.budget.build();
    let timing = args.timing;
    let seed = args.seed;
    let rows: Vec<BenchRow> = pool.install(|| {
        cells
            .par_iter()
            .map(|(name, path, policy)| run_cell(name, path, *policy, seed, params, &budget, timing))
            .collect()
    });

    let mut stdout = String::with_capacity(64 * rows.len());
    stdout.push_str(CSV_HEADER);
    stdout.push('\n');
    for row in &rows {
        stdout.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            csv_field(&row.instance),
            row.policy,
            row.verdict,
            row.decisions,
            row.conflicts,
            row.propagations,
            row.restarts,
            row.ms
        ));
    }

    // Soundness sentinel: one instance decided both ways is a solver bug.
    let disagreements = find_disagreements(&rows);
    let mut stderr = String::new();
    for name in &disagreements {
        stderr.push_str(&format!(
            "error: policies disagree on {name}: both sat and unsat reported\n"
        ));
    }

    CmdResult {
        stdout,
        stderr,
        code: if disagreements.is_empty() { 0 } else { 2 },
    }
}

/// Instances that some policy decided sat and another unsat.
fn find_disagreements(rows: &[BenchRow]) -> Vec<String> {
    let mut names: Vec<&str> = rows.iter().map(|r| r.instance.as_str()).collect();
    names.sort_unstable();
    names.dedup();
    names
        .into_iter()
        .filter(|name| {
            let verdicts: Vec<&str> = rows
                .iter()
                .filter(|r| r.instance == *name)
                .map(|r| r.verdict.as_str())
                .collect();
            verdicts.contains(&"sat") && verdicts.contains(&"unsat")
        })
        .map(str::to_string)
        .collect()
}

fn run_cell(
    name: &str,
    path: &Path,
    policy: Heuristic,
    seed: u64,
    params: phasat::PolicyParams,
    budget: &phasat::Budget,
    timing: Timing,
) -> BenchRow {
    let error_row = |verdict: String| BenchRow {
        instance: name.to_string(),
        policy: policy.name(),
        verdict,
        decisions: 0,
        conflicts: 0,
        propagations: 0,
        restarts: 0,
        ms: 0,
    };
    let Ok(bytes) = std::fs::read(path) else {
        return error_row("error".to_string());
    };
    let Ok(parsed) = phasat::parse_dimacs(&bytes) else {
        return error_row("error".to_string());
    };
    let formula = Arc::new(parsed.formula.detect_xor());
    let config = SolverConfig { seed, params };

    let start = Instant::now();
    let (verdict, stats) = match policy.policy() {
        Some(p) => solve_with_policy(&formula, p, config, budget),
        None => {
            let outcome = solve_auto(&formula, config, budget, RuleOrder::Priority);
            (outcome.verdict, outcome.stats)
        }
    };
    let ms = match timing {
        Timing::Off => 0,
        Timing::Wall => start.elapsed().as_millis() as u64,
    };

    BenchRow {
        instance: name.to_string(),
        policy: policy.name(),
        verdict: match verdict {
            Verdict::Sat(_) => "sat".to_string(),
            Verdict::Unsat => "unsat".to_string(),
            Verdict::Unknown => "unknown".to_string(),
        },
        decisions: stats.decisions,
        conflicts: stats.conflicts,
        propagations: stats.propagations,
        restarts: stats.restarts,
        ms,
    }
}

/// Expands directories and sorts everything by display name.
fn collect_instances(inputs: &[PathBuf]) -> Result<Vec<(String, PathBuf)>, String> {
    let mut found = Vec::new();
    for input in inputs {
        if input.is_dir() {
            let mut entries: Vec<PathBuf> = std::fs::read_dir(input)
                .map_err(|e| format!("cannot read directory {}: {e}", input.display()))?
                .filter_map(|entry| entry.ok().map(|e| e.path()))
                .filter(|p| {
                    p.is_file()
                        && matches!(
                            p.extension().and_then(|e| e.to_str()),
                            Some("cnf") | Some("dimacs")
                        )
                })
                .collect();
            entries.sort();
            found.extend(entries);
        } else if input.is_file() {
            found.push(input.clone());
        } else {
            return Err(format!("no such file or directory: {}", input.display()));
        }
    }
    if found.is_empty() {
        return Err("no instances found".to_string());
    }
    let mut named: Vec<(String, PathBuf)> = found
        .into_iter()
        .map(|p| (p.display().to_string(), p))
        .collect();
    named.sort();
    named.dedup_by(|a, b| a.0 == b.0);
    Ok(named)
}

/// CSV-quotes a field only when it needs it.
fn csv_field(raw: &str) -> String {
    if raw.contains(',') || raw.contains('"') || raw.contains('\n') {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_fields_escape_commas_and_quotes() {
        assert_eq!(csv_field("plain.cnf"), "plain.cnf");
        assert_eq!(csv_field("a,b.cnf"), "\"a,b.cnf\"");
        assert_eq!(csv_field("we\"ird"), "\"we\"\"ird\"");
    }

    fn row(instance: &str, verdict: &str) -> BenchRow {
        BenchRow {
            instance: instance.to_string(),
            policy: "jw",
            verdict: verdict.to_string(),
            decisions: 0,
            conflicts: 0,
            propagations: 0,
            restarts: 0,
            ms: 0,
        }
    }

    #[test]
    fn disagreement_sentinel_flags_conflicting_verdicts() {
        let rows = vec![
            row("a.cnf", "sat"),
            row("a.cnf", "unsat"),
            row("b.cnf", "sat"),
            row("b.cnf", "unknown"),
            row("c.cnf", "error"),
            row("c.cnf", "unsat"),
        ];
        assert_eq!(find_disagreements(&rows), vec!["a.cnf".to_string()]);
        assert!(find_disagreements(&rows[2..]).is_empty());
    }
}
