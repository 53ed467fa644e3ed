//! Instance generators: parity chains, pigeonhole, uniform random k-SAT.

use clap::{Args, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::CmdResult;

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(subcommand)]
    pub family: GenFamily,
}

#[derive(Debug, Subcommand)]
pub enum GenFamily {
    /// A closed chain of XOR constraints, CNF-encoded. Total parity is
    /// odd by default, which makes the instance unsatisfiable; `--sat`
    /// closes the chain consistently instead.
    ParityChain {
        #[arg(long)]
        vars: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Close the chain with even total parity (satisfiable).
        #[arg(long)]
        sat: bool,
        /// Constraint arity: 2 gives a plain cycle, 3 puts the parities
        /// on a random cubic graph (much harder to refute).
        #[arg(long, default_value_t = 2)]
        arity: usize,
    },
    /// The pigeonhole principle PHP(holes+1, holes); unsatisfiable.
    Pigeonhole {
        #[arg(long)]
        holes: usize,
    },
    /// Uniform random k-CNF at a clause/variable ratio.
    RandomKsat {
        #[arg(long)]
        vars: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Explicit clause count; overrides --ratio.
        #[arg(long)]
        clauses: Option<usize>,
        #[arg(long, default_value_t = 4.2)]
        ratio: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

pub fn cmd_gen(args: &GenArgs) -> CmdResult {
    match &args.family {
        GenFamily::ParityChain {
            vars,
            seed,
            sat,
            arity,
        } => {
            if *vars < 3 {
                return fail("parity-chain needs at least 3 variables");
            }
            let text = match arity {
                2 => parity_chain(*vars, *seed, !*sat),
                3 => parity_chain_cubic(*vars, *seed, !*sat),
                _ => return fail("parity-chain supports arity 2 or 3"),
            };
            CmdResult {
                stdout: text,
                stderr: String::new(),
                code: 0,
            }
        }
        GenFamily::Pigeonhole { holes } => {
            if *holes == 0 {
                return fail("pigeonhole needs at least 1 hole");
            }
            CmdResult {
                stdout: pigeonhole(*holes),
                stderr: String::new(),
                code: 0,
            }
        }
        GenFamily::RandomKsat {
            vars,
            k,
            clauses,
            ratio,
            seed,
        } => {
            if *k == 0 || *k > *vars {
                return fail("random-ksat needs 1 <= k <= vars");
            }
            let count = clauses.unwrap_or_else(|| (*ratio * *vars as f64).round() as usize);
            CmdResult {
                stdout: random_ksat(*vars, *k, count, *seed),
                stderr: String::new(),
                code: 0,
            }
        }
    }
}

fn fail(message: &str) -> CmdResult {
    CmdResult {
        stdout: String::new(),
        stderr: format!("error: {message}\n"),
        code: 1,
    }
}

/// XOR cycle x1^x2=p1, x2^x3=p2, ..., xn^x1=pn. The sum of the left-hand
/// sides is 0 because every variable occurs twice, so the system is
/// satisfiable exactly when the parities sum to even. Each constraint is
/// emitted as its 2-clause CNF encoding.
pub fn parity_chain(vars: usize, seed: u64, unsat: bool) -> String {
    assert!(vars >= 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parities: Vec<bool> = (0..vars - 1).map(|_| rng.gen_bool(0.5)).collect();
    let sum_odd = parities.iter().filter(|&&p| p).count() % 2 == 1;
    // Closing parity forces the total to the requested satisfiability.
    parities.push(sum_odd != unsat);

    let mut clauses: Vec<Vec<i64>> = Vec::with_capacity(2 * vars);
    for (i, &parity) in parities.iter().enumerate() {
        let a = (i + 1) as i64;
        let b = (if i + 1 == vars { 1 } else { i + 2 }) as i64;
        if parity {
            // a ^ b = 1: (a b), (-a -b)
            clauses.push(vec![a, b]);
            clauses.push(vec![-a, -b]);
        } else {
            // a ^ b = 0: (a -b), (-a b)
            clauses.push(vec![a, -b]);
            clauses.push(vec![-a, b]);
        }
    }

    let mut out = format!(
        "c parity-chain vars={vars} seed={seed} {}\n",
        if unsat { "parity=odd" } else { "parity=even" }
    );
    out.push_str(&render(vars, &clauses));
    out
}

/// Parity constraints on a random connected cubic graph: one variable per
/// edge, one 3-variable XOR per vertex against a random charge. Summing
/// every constraint cancels each edge (it has two endpoints), so the
/// system is satisfiable exactly when the charges sum to even. Refuting
/// the odd case needs genuine search, unlike the 2-variable cycle which
/// collapses by unit propagation.
///
/// `vars` is rounded down to a multiple of 3: a cubic graph on 2k
/// vertices has 3k edges.
pub fn parity_chain_cubic(vars: usize, seed: u64, unsat: bool) -> String {
    assert!(vars >= 3);
    let k = vars / 3;
    let vertices = 2 * k;
    let edges = 3 * k;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Degree 3 everywhere: a Hamiltonian cycle plus a perfect matching
    // over a shuffled vertex order.
    let mut order: Vec<usize> = (0..vertices).collect();
    for i in (1..order.len()).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); vertices];
    let mut edge_id = 0usize;
    for i in 0..vertices {
        let (a, b) = (order[i], order[(i + 1) % vertices]);
        incident[a].push(edge_id);
        incident[b].push(edge_id);
        edge_id += 1;
    }
    let mut matching: Vec<usize> = (0..vertices).collect();
    for i in (1..matching.len()).rev() {
        matching.swap(i, rng.gen_range(0..=i));
    }
    for pair in matching.chunks(2) {
        incident[pair[0]].push(edge_id);
        incident[pair[1]].push(edge_id);
        edge_id += 1;
    }
    debug_assert_eq!(edge_id, edges);

    let mut charges: Vec<bool> = (0..vertices).map(|_| rng.gen_bool(0.5)).collect();
    let sum_odd = charges.iter().filter(|&&c| c).count() % 2 == 1;
    if sum_odd != unsat {
        charges[0] = !charges[0];
    }

    let mut clauses: Vec<Vec<i64>> = Vec::new();
    for (vertex, edge_vars) in incident.iter().enumerate() {
        debug_assert_eq!(edge_vars.len(), 3);
        // CNF encoding of e1 ^ e2 ^ e3 = charge: the sign patterns whose
        // negation count has the opposite parity of the charge.
        for mask in 0u32..8 {
            if (mask.count_ones() % 2 == 0) != charges[vertex] {
                continue;
            }
            clauses.push(
                edge_vars
                    .iter()
                    .enumerate()
                    .map(|(i, &e)| {
                        let v = (e + 1) as i64;
                        if mask & (1 << i) != 0 {
                            -v
                        } else {
                            v
                        }
                    })
                    .collect(),
            );
        }
    }

    let mut out = format!(
        "c parity-chain vars={edges} arity=3 seed={seed} {}\n",
        if unsat { "parity=odd" } else { "parity=even" }
    );
    out.push_str(&render(edges, &clauses));
    out
}

/// PHP(holes+1, holes): each pigeon sits in some hole, no hole holds two.
pub fn pigeonhole(holes: usize) -> String {
    let pigeons = holes + 1;
    let var = |pigeon: usize, hole: usize| -> i64 { (pigeon * holes + hole + 1) as i64 };
    let mut clauses: Vec<Vec<i64>> = Vec::new();
    for pigeon in 0..pigeons {
        clauses.push((0..holes).map(|h| var(pigeon, h)).collect());
    }
    for hole in 0..holes {
        for a in 0..pigeons {
            for b in a + 1..pigeons {
                clauses.push(vec![-var(a, hole), -var(b, hole)]);
            }
        }
    }
    let mut out = format!("c pigeonhole holes={holes}\n");
    out.push_str(&render(pigeons * holes, &clauses));
    out
}

/// Uniform k-CNF: distinct variables per clause, independent random signs.
pub fn random_ksat(vars: usize, k: usize, clauses: usize, seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lines: Vec<Vec<i64>> = Vec::with_capacity(clauses);
    for _ in 0..clauses {
        let mut pool: Vec<usize> = (1..=vars).collect();
        let mut clause = Vec::with_capacity(k);
        for _ in 0..k {
            let i = rng.gen_range(0..pool.len());
            let v = pool.swap_remove(i) as i64;
            clause.push(if rng.gen_bool(0.5) { v } else { -v });
        }
        lines.push(clause);
    }
    let mut out = format!("c random-ksat vars={vars} k={k} clauses={clauses} seed={seed}\n");
    out.push_str(&render(vars, &lines));
    out
}

fn render(vars: usize, clauses: &[Vec<i64>]) -> String {
    let mut out = format!("p cnf {} {}\n", vars, clauses.len());
    for clause in clauses {
        for lit in clause {
            out.push_str(&format!("{lit} "));
        }
        out.push_str("0\n");
    }
    out
}
