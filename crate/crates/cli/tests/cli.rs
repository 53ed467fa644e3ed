//! Binary-level behavior: exit codes, output formats, determinism.

use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_phasat");

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path.display().to_string()
}

#[test]
fn solve_exit_codes_and_output() {
    let dir = TempDir::new().unwrap();
    let sat = write(dir.path(), "sat.cnf", "p cnf 2 2\n1 2 0\n-1 0\n");
    let unsat = write(dir.path(), "unsat.cnf", "p cnf 1 2\n1 0\n-1 0\n");

    let out = run(&["solve", &sat]);
    assert_eq!(out.status.code(), Some(10));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("s SATISFIABLE\nv "));
    assert!(text.contains(" 0\n"));

    let out = run(&["solve", &unsat, "--heuristic", "jw"]);
    assert_eq!(out.status.code(), Some(20));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "s UNSATISFIABLE\n");
}

#[test]
fn budget_exhaustion_reports_unknown_with_exit_zero() {
    let dir = TempDir::new().unwrap();
    let gen = run(&["gen", "random-ksat", "--vars", "60", "--ratio", "4.3", "--seed", "9"]);
    let hard = write(
        dir.path(),
        "hard.cnf",
        &String::from_utf8(gen.stdout).unwrap(),
    );
    let out = run(&["solve", &hard, "--heuristic", "jw", "--max-conflicts", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "s UNKNOWN\n");
}

#[test]
fn clause_count_mismatch_warns_on_stderr() {
    let dir = TempDir::new().unwrap();
    let file = write(dir.path(), "mismatch.cnf", "p cnf 2 5\n1 2 0\n");
    let out = run(&["solve", &file]);
    assert_eq!(out.status.code(), Some(10), "mismatch is tolerated");
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("declares 5 clauses"), "warning missing: {err}");
}

#[test]
fn parse_failure_exits_one_with_diagnostic() {
    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.cnf", "p cnf 2 1\n1 5 0\n");
    let out = run(&["solve", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("2:3"), "diagnostic position missing: {err}");
}

#[test]
fn model_satisfies_the_instance() {
    let dir = TempDir::new().unwrap();
    let gen = run(&["gen", "random-ksat", "--vars", "12", "--clauses", "30", "--seed", "4"]);
    let text = String::from_utf8(gen.stdout).unwrap();
    let file = write(dir.path(), "r.cnf", &text);
    let out = run(&["solve", &file, "--heuristic", "precosat"]);
    if out.status.code() == Some(10) {
        let stdout = String::from_utf8(out.stdout).unwrap();
        let v_line = stdout.lines().find(|l| l.starts_with("v ")).unwrap();
        let lits: Vec<i32> = v_line[2..]
            .split_whitespace()
            .map(|t| t.parse().unwrap())
            .filter(|&l| l != 0)
            .collect();
        let parsed = phasat::parse_dimacs(text.as_bytes()).unwrap().formula;
        let assignment: Vec<bool> = {
            let mut a = vec![false; parsed.num_vars()];
            for l in lits {
                a[(l.unsigned_abs() - 1) as usize] = l > 0;
            }
            a
        };
        assert!(parsed.is_model(&assignment));
    }
}

#[test]
fn stats_include_plan_trace_under_auto() {
    let dir = TempDir::new().unwrap();
    // Hard enough that the probing stage's 2000-conflict budget runs out.
    let gen = run(&["gen", "random-ksat", "--vars", "150", "--ratio", "4.27", "--seed", "1"]);
    let file = write(
        dir.path(),
        "hard.cnf",
        &String::from_utf8(gen.stdout).unwrap(),
    );
    let out = run(&[
        "solve",
        &file,
        "--heuristic",
        "auto",
        "--stats",
        "--max-conflicts",
        "3000",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("c plan.trace="), "missing trace: {text}");
    assert!(text.contains("c plan.main="));
    assert!(text.contains("c decisions="));
    assert!(text.contains("c policy=probe:precosat,presolve:"));
}

#[test]
fn auto_stats_mark_probe_solved_instances() {
    let dir = TempDir::new().unwrap();
    let easy = write(dir.path(), "easy.cnf", "p cnf 2 2\n1 2 0\n-1 0\n");
    let out = run(&["solve", &easy, "--heuristic", "auto", "--stats"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("c plan.trace=probe-solved"),
        "auto must always explain itself: {text}"
    );
}

#[test]
fn features_output_is_stable_and_complete() {
    let dir = TempDir::new().unwrap();
    let file = write(
        dir.path(),
        "f.cnf",
        "p cnf 3 3\n1 2 0\n-1 3 0\n1 2 3 0\n",
    );
    let out = run(&["features", &file]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let keys: Vec<&str> = text
        .lines()
        .map(|l| l.split('=').next().unwrap())
        .collect();
    assert_eq!(
        keys,
        vec![
            "c",
            "v",
            "ratio",
            "mean_conflict_depth",
            "unfixed",
            "bin",
            "xor",
            "large",
            "plan.presolve",
            "plan.main",
            "plan.trace"
        ]
    );
    assert!(text.contains("c=3\n"));
    assert!(text.contains("v=3\n"));
    assert!(text.contains("ratio=1\n"));
    assert!(text.contains("bin=2\n"));
    assert!(text.contains("xor=0\n"));
    assert!(text.contains("large=0\n"));
}

#[test]
fn features_on_xor_fixture_counts_constraints() {
    let dir = TempDir::new().unwrap();
    let file = write(dir.path(), "x.cnf", "p cnf 2 2\n1 2 0\n-1 -2 0\n");
    let out = run(&["features", &file]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("c=2\n"));
    assert!(text.contains("bin=2\n"));
    assert!(text.contains("xor=1\n"));
}

#[test]
fn features_on_empty_formula_uses_default_rule() {
    let dir = TempDir::new().unwrap();
    let file = write(dir.path(), "empty.cnf", "p cnf 0 0\n");
    let out = run(&["features", &file]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("c=0\n"));
    assert!(text.contains("v=0\n"));
    assert!(text.contains("ratio=0\n"));
    assert!(text.contains("plan.main=ace-precosat\n"), "{text}");
}

#[test]
fn bench_shape_and_agreement() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "a.cnf", "p cnf 2 2\n1 2 0\n-1 0\n");
    let b = write(dir.path(), "b.cnf", "p cnf 1 2\n1 0\n-1 0\n");
    let out = run(&["bench", &a, &b, "--policies", "jw,ace,precosat"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "instance,policy,verdict,decisions,conflicts,propagations,restarts,ms"
    );
    assert_eq!(lines.len(), 1 + 2 * 3, "6 rows plus header");
    for line in &lines[1..] {
        assert_eq!(line.split(',').count(), 8);
    }
}

#[test]
fn bench_is_deterministic_across_parallelism() {
    let dir = TempDir::new().unwrap();
    let mut files = Vec::new();
    for seed in 0..4 {
        let gen = run(&[
            "gen",
            "random-ksat",
            "--vars",
            "30",
            "--ratio",
            "4.2",
            "--seed",
            &seed.to_string(),
        ]);
        files.push(write(
            dir.path(),
            &format!("i{seed}.cnf"),
            &String::from_utf8(gen.stdout).unwrap(),
        ));
    }
    let mut base_args = vec!["bench"];
    base_args.extend(files.iter().map(|s| s.as_str()));
    base_args.extend(["--seed", "7", "--max-conflicts", "2000"]);

    let mut serial = base_args.clone();
    serial.extend(["--parallelism", "1"]);
    let mut parallel = base_args.clone();
    parallel.extend(["--parallelism", "8"]);

    let out1 = run(&serial);
    let out8 = run(&parallel);
    assert_eq!(out1.stdout, out8.stdout, "CSV must not depend on scheduling");
}

#[test]
fn bench_records_error_cells_and_continues() {
    let dir = TempDir::new().unwrap();
    let good = write(dir.path(), "good.cnf", "p cnf 1 1\n1 0\n");
    let bad = write(dir.path(), "broken.cnf", "not a cnf at all\n");
    let out = run(&["bench", &good, &bad, "--policies", "jw"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains(",error,0,0,0,0,0"));
    assert!(text.contains(",jw,sat,"));
}

#[test]
fn bench_accepts_directories() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "one.cnf", "p cnf 1 1\n1 0\n");
    write(dir.path(), "two.dimacs", "p cnf 1 1\n-1 0\n");
    write(dir.path(), "ignored.txt", "not picked up");
    let out = run(&[
        "bench",
        &dir.path().display().to_string(),
        "--policies",
        "jw",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 3, "two instances plus header: {text}");
}

#[test]
fn gen_is_byte_reproducible() {
    let args = [
        "gen",
        "random-ksat",
        "--vars",
        "25",
        "--ratio",
        "4.0",
        "--seed",
        "11",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let chain = ["gen", "parity-chain", "--vars", "12", "--seed", "5"];
    assert_eq!(run(&chain).stdout, run(&chain).stdout);
}

#[test]
fn generated_families_have_expected_verdicts() {
    let dir = TempDir::new().unwrap();
    // Small enough to confirm by enumeration.
    let chain = run(&["gen", "parity-chain", "--vars", "5", "--seed", "3"]);
    let chain_file = write(
        dir.path(),
        "chain.cnf",
        &String::from_utf8(chain.stdout).unwrap(),
    );
    let text = std::fs::read_to_string(&chain_file).unwrap();
    let formula = phasat::parse_dimacs(text.as_bytes()).unwrap().formula.detect_xor();
    let oracle = phasat_oracle::brute_force_solve(&formula).unwrap();
    assert!(!oracle.satisfiable, "odd-parity chain must be unsat");
    let out = run(&["solve", &chain_file, "--heuristic", "ace"]);
    assert_eq!(out.status.code(), Some(20));

    let php = run(&["gen", "pigeonhole", "--holes", "2"]);
    let php_file = write(
        dir.path(),
        "php.cnf",
        &String::from_utf8(php.stdout).unwrap(),
    );
    let text = std::fs::read_to_string(&php_file).unwrap();
    let formula = phasat::parse_dimacs(text.as_bytes()).unwrap().formula;
    let oracle = phasat_oracle::brute_force_solve(&formula).unwrap();
    assert!(!oracle.satisfiable, "PHP(3,2) must be unsat");
    let out = run(&["solve", &php_file]);
    assert_eq!(out.status.code(), Some(20));

    let sat_chain = run(&["gen", "parity-chain", "--vars", "5", "--seed", "3", "--sat"]);
    let sat_file = write(
        dir.path(),
        "sat_chain.cnf",
        &String::from_utf8(sat_chain.stdout).unwrap(),
    );
    let out = run(&["solve", &sat_file, "--heuristic", "precosat"]);
    assert_eq!(out.status.code(), Some(10));
}

#[test]
fn solve_stdout_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let gen = run(&["gen", "random-ksat", "--vars", "40", "--ratio", "4.2", "--seed", "6"]);
    let file = write(
        dir.path(),
        "d.cnf",
        &String::from_utf8(gen.stdout).unwrap(),
    );
    for heuristic in ["auto", "precosat-random", "local-search"] {
        let args = [
            "solve",
            &file,
            "--heuristic",
            heuristic,
            "--seed",
            "13",
            "--stats",
            "--max-conflicts",
            "3000",
        ];
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first.stdout, second.stdout, "heuristic {heuristic}");
        assert_eq!(first.status.code(), second.status.code());
    }
}
