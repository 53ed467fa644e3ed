//! Small random instances for cross-checking the solver.
//!
//! The mixed generator produces short-clause CNF with optional XOR groups
//! spliced in as their full CNF encodings, which keeps everything
//! brute-force checkable while exercising the detection and propagation
//! paths. Output is plain DIMACS text so generated instances flow through
//! the same parser as everything else.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Shape of a generated mixed instance.
#[derive(Debug, Clone, Copy)]
pub struct MixedSpec {
    pub vars: usize,
    pub clauses: usize,
    /// XOR groups emitted as CNF encodings, arity 2..=4.
    pub xor_groups: usize,
    pub min_clause_len: usize,
    pub max_clause_len: usize,
}

/// Random CNF with optional XOR groups, as DIMACS text.
pub fn random_mixed_dimacs(spec: &MixedSpec, rng: &mut ChaCha8Rng) -> String {
    assert!(spec.vars >= spec.max_clause_len.max(4));
    let mut lines: Vec<Vec<i32>> = Vec::new();

    for _ in 0..spec.clauses {
        let len = rng.gen_range(spec.min_clause_len..=spec.max_clause_len);
        lines.push(random_clause(spec.vars, len, rng));
    }
    for _ in 0..spec.xor_groups {
        let arity = rng.gen_range(2..=4usize);
        let vars = pick_distinct(spec.vars, arity, rng);
        let parity = rng.gen_bool(0.5);
        for mask in 0u32..(1 << arity) {
            if (mask.count_ones() % 2 == 0) != parity {
                continue;
            }
            // Sign patterns of one parity class encode the XOR.
            let clause: Vec<i32> = vars
                .iter()
                .enumerate()
                .map(|(i, &v)| if mask & (1 << i) != 0 { -(v as i32) } else { v as i32 })
                .collect();
            lines.push(clause);
        }
    }

    let mut out = format!("p cnf {} {}\n", spec.vars, lines.len());
    for clause in lines {
        for lit in clause {
            out.push_str(&format!("{lit} "));
        }
        out.push_str("0\n");
    }
    out
}

fn random_clause(num_vars: usize, len: usize, rng: &mut ChaCha8Rng) -> Vec<i32> {
    pick_distinct(num_vars, len, rng)
        .into_iter()
        .map(|v| if rng.gen_bool(0.5) { v as i32 } else { -(v as i32) })
        .collect()
}

/// `count` distinct 1-based variable numbers.
fn pick_distinct(num_vars: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    debug_assert!(count <= num_vars);
    let mut pool: Vec<usize> = (1..=num_vars).collect();
    let mut picked = Vec::with_capacity(count);
    for _ in 0..count {
        let i = rng.gen_range(0..pool.len());
        picked.push(pool.swap_remove(i));
    }
    picked
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn generated_text_parses() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let spec = MixedSpec {
            vars: 10,
            clauses: 20,
            xor_groups: 2,
            min_clause_len: 1,
            max_clause_len: 4,
        };
        let text = random_mixed_dimacs(&spec, &mut rng);
        let parsed = phasat::parse_dimacs(text.as_bytes()).expect("generated text parses");
        assert_eq!(parsed.formula.num_vars(), 10);
    }

    #[test]
    fn xor_groups_are_detectable() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let spec = MixedSpec {
            vars: 8,
            clauses: 0,
            xor_groups: 2,
            min_clause_len: 1,
            max_clause_len: 3,
        };
        let text = random_mixed_dimacs(&spec, &mut rng);
        let parsed = phasat::parse_dimacs(text.as_bytes()).unwrap();
        let formula = parsed.formula.detect_xor();
        // Groups can overlap and merge, but something must be recovered.
        assert!(!formula.xor_constraints().is_empty());
    }

    #[test]
    fn fixed_seed_reproduces_bytes() {
        let spec = MixedSpec {
            vars: 12,
            clauses: 30,
            xor_groups: 1,
            min_clause_len: 1,
            max_clause_len: 4,
        };
        let mut rng_a = ChaCha8Rng::seed_from_u64(9);
        let mut rng_b = ChaCha8Rng::seed_from_u64(9);
        assert_eq!(
            random_mixed_dimacs(&spec, &mut rng_a),
            random_mixed_dimacs(&spec, &mut rng_b)
        );
    }
}
