//! Property tests for the DIMACS layer.

use phasat::{parse_dimacs, write_dimacs, Formula, Lit};
use proptest::prelude::*;

proptest! {
    // The parser must return a formula or a diagnostic for any byte soup.
    #[test]
    fn parser_never_panics(input in proptest::collection::vec(any::<u8>(), 0..512)) {
        let _ = parse_dimacs(&input);
    }

    // Same, for inputs that look more like real files.
    #[test]
    fn parser_never_panics_on_tokenish_input(
        tokens in proptest::collection::vec(-30i64..30, 0..60),
        header in "(p cnf [0-9]{1,3} [0-9]{1,3}\n)?",
    ) {
        let mut text = header;
        for t in tokens {
            text.push_str(&format!("{t} "));
        }
        let _ = parse_dimacs(text.as_bytes());
    }

    #[test]
    fn round_trip_preserves_normalized_formula(
        num_vars in 1usize..12,
        raw_clauses in proptest::collection::vec(
            proptest::collection::vec((1i32..12, any::<bool>()), 1..5),
            0..20,
        ),
    ) {
        let mut text = String::new();
        let mut clause_lines = Vec::new();
        for clause in &raw_clauses {
            let lits: Vec<i32> = clause
                .iter()
                .map(|&(v, pos)| {
                    let v = ((v as usize - 1) % num_vars + 1) as i32;
                    if pos { v } else { -v }
                })
                .collect();
            clause_lines.push(lits);
        }
        text.push_str(&format!("p cnf {} {}\n", num_vars, clause_lines.len()));
        for lits in &clause_lines {
            for l in lits {
                text.push_str(&format!("{l} "));
            }
            text.push_str("0\n");
        }

        let first = parse_dimacs(text.as_bytes()).expect("valid file");
        let serialized = write_dimacs(&first.formula);
        let second = parse_dimacs(serialized.as_bytes()).expect("serialized file");

        let view = |f: &Formula| -> (usize, Vec<Vec<Lit>>, bool) {
            (
                f.num_vars(),
                f.raw_clauses().iter().map(|c| c.literals.clone()).collect(),
                f.is_trivially_unsat(),
            )
        };
        prop_assert_eq!(view(&first.formula), view(&second.formula));
    }
}
