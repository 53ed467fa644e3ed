//! DIMACS CNF input and SAT-competition output.
//!
//! The parser works on raw bytes and never panics on malformed input; every
//! failure is reported as a [`ParseDiagnostic`] with a 1-based line and
//! column. Clauses are normalized while reading: duplicate literals are
//! dropped, tautologies are discarded (and counted), and an empty clause
//! marks the whole formula as trivially unsatisfiable. A clause count that
//! disagrees with the header is tolerated with a warning; the actual
//! clauses win.

use std::fmt;

use crate::clause::Clause;
use crate::formula::Formula;
use crate::lit::Lit;
use crate::verdict::Verdict;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagnosticKind {
    BadHeader,
    LiteralOutOfRange,
    MissingTerminator,
    UnexpectedToken,
    EmptyFile,
}

/// A parse failure, pointing at the offending position in the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDiagnostic {
    pub line: usize,
    pub column: usize,
    pub kind: DiagnosticKind,
    pub message: String,
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseDiagnostic {}

/// Non-fatal observations made while parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseWarning {
    ClauseCountMismatch { declared: usize, actual: usize },
}

impl fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseWarning::ClauseCountMismatch { declared, actual } => write!(
                f,
                "header declares {declared} clauses but the file contains {actual}"
            ),
        }
    }
}

/// A successfully parsed formula plus normalization notes.
#[derive(Debug)]
pub struct ParseOutput {
    pub formula: Formula,
    pub tautologies_dropped: usize,
    pub warnings: Vec<ParseWarning>,
}

struct Scanner<'a> {
    input: &'a [u8],
    pos: usize,
    line: usize,
    column: usize,
}

#[derive(Debug, Clone, Copy)]
struct Token {
    value: i64,
    line: usize,
    column: usize,
}

impl<'a> Scanner<'a> {
    fn new(input: &'a [u8]) -> Scanner<'a> {
        Scanner {
            input,
            pos: 0,
            line: 1,
            column: 1,
        }
    }

    fn bump(&mut self) -> Option<u8> {
        let byte = *self.input.get(self.pos)?;
        self.pos += 1;
        if byte == b'\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(byte)
    }

    fn peek(&self) -> Option<u8> {
        self.input.get(self.pos).copied()
    }

    fn skip_line(&mut self) {
        while let Some(byte) = self.bump() {
            if byte == b'\n' {
                break;
            }
        }
    }

    /// Skips whitespace and comment lines; `c` starts a comment only at the
    /// beginning of a line.
    fn skip_trivia(&mut self) {
        loop {
            match self.peek() {
                Some(b) if b.is_ascii_whitespace() => {
                    self.bump();
                }
                Some(b'c') if self.column == 1 => self.skip_line(),
                _ => return,
            }
        }
    }

    /// Reads the next signed integer token. Returns None at end of input.
    fn next_int(&mut self) -> Result<Option<Token>, ParseDiagnostic> {
        self.skip_trivia();
        let (line, column) = (self.line, self.column);
        let Some(first) = self.peek() else {
            return Ok(None);
        };
        let negative = first == b'-';
        if negative {
            self.bump();
        }
        let mut digits = 0usize;
        let mut value: i64 = 0;
        while let Some(b @ b'0'..=b'9') = self.peek() {
            self.bump();
            digits += 1;
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(i64::from(b - b'0')))
                .ok_or_else(|| {
                    self.diag_at(line, column, DiagnosticKind::UnexpectedToken, "integer overflow")
                })?;
        }
        if digits == 0 {
            let shown = if first.is_ascii_graphic() {
                format!("unexpected character '{}'", first as char)
            } else {
                format!("unexpected byte 0x{first:02x}")
            };
            return Err(self.diag_at(line, column, DiagnosticKind::UnexpectedToken, shown));
        }
        // A token must end at whitespace or end of input.
        if let Some(b) = self.peek() {
            if !b.is_ascii_whitespace() {
                return Err(self.diag_at(
                    line,
                    column,
                    DiagnosticKind::UnexpectedToken,
                    "malformed integer token",
                ));
            }
        }
        Ok(Some(Token {
            value: if negative { -value } else { value },
            line,
            column,
        }))
    }

    fn diag_at(
        &self,
        line: usize,
        column: usize,
        kind: DiagnosticKind,
        message: impl Into<String>,
    ) -> ParseDiagnostic {
        ParseDiagnostic {
            line,
            column,
            kind,
            message: message.into(),
        }
    }
}

/// Parses DIMACS CNF text into a normalized [`Formula`].
pub fn parse_dimacs(input: &[u8]) -> Result<ParseOutput, ParseDiagnostic> {
    let mut scanner = Scanner::new(input);
    scanner.skip_trivia();

    if scanner.peek().is_none() {
        return Err(scanner.diag_at(1, 1, DiagnosticKind::EmptyFile, "no problem line found"));
    }

    // Header: p cnf <vars> <clauses>
    let (num_vars, declared_clauses) = parse_header(&mut scanner)?;

    let mut clauses: Vec<Clause> = Vec::new();
    let mut current: Vec<Lit> = Vec::new();
    let mut tautologies_dropped = 0usize;
    let mut trivially_unsat = false;
    let mut clauses_read = 0usize;
    let mut open_clause_start: Option<(usize, usize)> = None;

    loop {
        let token = scanner.next_int()?;
        let Some(token) = token else {
            if let Some((line, column)) = open_clause_start {
                return Err(scanner.diag_at(
                    line,
                    column,
                    DiagnosticKind::MissingTerminator,
                    "clause not terminated by 0 at end of input",
                ));
            }
            break;
        };
        if token.value == 0 {
            clauses_read += 1;
            open_clause_start = None;
            match normalize_clause(&mut current) {
                NormalizedClause::Empty => trivially_unsat = true,
                NormalizedClause::Tautology => tautologies_dropped += 1,
                NormalizedClause::Clause(lits) => clauses.push(Clause::original(lits)),
            }
            continue;
        }
        if token.value.unsigned_abs() > num_vars as u64 {
            return Err(scanner.diag_at(
                token.line,
                token.column,
                DiagnosticKind::LiteralOutOfRange,
                format!(
                    "literal {} outside the declared range of {} variables",
                    token.value, num_vars
                ),
            ));
        }
        if current.is_empty() {
            open_clause_start = Some((token.line, token.column));
        }
        current.push(Lit::from_dimacs(token.value as i32));
    }

    let mut warnings = Vec::new();
    if clauses_read != declared_clauses {
        warnings.push(ParseWarning::ClauseCountMismatch {
            declared: declared_clauses,
            actual: clauses_read,
        });
    }

    Ok(ParseOutput {
        formula: Formula::new(num_vars, clauses, trivially_unsat),
        tautologies_dropped,
        warnings,
    })
}

fn parse_header(scanner: &mut Scanner<'_>) -> Result<(usize, usize), ParseDiagnostic> {
    let (line, column) = (scanner.line, scanner.column);
    let bad = |s: &mut Scanner<'_>, msg: &str| {
        s.diag_at(line, column, DiagnosticKind::BadHeader, msg.to_string())
    };

    if scanner.peek() != Some(b'p') {
        return Err(scanner.diag_at(
            scanner.line,
            scanner.column,
            DiagnosticKind::UnexpectedToken,
            "expected problem line 'p cnf <vars> <clauses>'",
        ));
    }
    scanner.bump();

    let mut word = Vec::new();
    scanner.skip_spaces_in_line();
    while let Some(b) = scanner.peek() {
        if b.is_ascii_whitespace() {
            break;
        }
        word.push(b);
        scanner.bump();
    }
    if word != b"cnf" {
        return Err(bad(scanner, "problem line format must be 'p cnf'"));
    }

    let vars = match scanner.next_int() {
        Ok(Some(t)) if t.value >= 0 => t.value,
        _ => return Err(bad(scanner, "missing or invalid variable count")),
    };
    let clauses = match scanner.next_int() {
        Ok(Some(t)) if t.value >= 0 => t.value,
        _ => return Err(bad(scanner, "missing or invalid clause count")),
    };
    const MAX_VARS: i64 = 50_000_000;
    if vars > MAX_VARS {
        return Err(bad(scanner, "variable count out of supported range"));
    }
    Ok((vars as usize, clauses as usize))
}

impl Scanner<'_> {
    fn skip_spaces_in_line(&mut self) {
        while let Some(b) = self.peek() {
            if b == b' ' || b == b'\t' || b == b'\r' {
                self.bump();
            } else {
                break;
            }
        }
    }
}

enum NormalizedClause {
    Empty,
    Tautology,
    Clause(Vec<Lit>),
}

/// Deduplicates literals (keeping first occurrence order) and detects
/// tautologies. Drains the scratch buffer either way.
fn normalize_clause(current: &mut Vec<Lit>) -> NormalizedClause {
    let mut lits: Vec<Lit> = Vec::with_capacity(current.len());
    let mut tautology = false;
    for &lit in current.iter() {
        if lits.contains(&!lit) {
            tautology = true;
        }
        if !lits.contains(&lit) {
            lits.push(lit);
        }
    }
    current.clear();
    if tautology {
        NormalizedClause::Tautology
    } else if lits.is_empty() {
        NormalizedClause::Empty
    } else {
        NormalizedClause::Clause(lits)
    }
}

/// Serializes a formula back to DIMACS. XOR constraints are written as
/// their CNF encodings, so a round trip through the parser reproduces the
/// raw clause set.
pub fn write_dimacs(formula: &Formula) -> String {
    let mut out = String::new();
    let clauses = formula.raw_clauses();
    let extra = usize::from(formula.is_trivially_unsat());
    out.push_str(&format!(
        "p cnf {} {}\n",
        formula.num_vars(),
        clauses.len() + extra
    ));
    for clause in clauses {
        for lit in &clause.literals {
            out.push_str(&format!("{} ", lit.dimacs()));
        }
        out.push_str("0\n");
    }
    if formula.is_trivially_unsat() {
        out.push_str("0\n");
    }
    out
}

/// Renders a verdict in SAT-competition output format.
///
/// Satisfiable verdicts are followed by a `v` line listing every variable
/// as a signed integer, terminated by `0`.
pub fn emit_verdict(verdict: &Verdict) -> String {
    match verdict {
        Verdict::Sat(model) => {
            let mut out = String::from("s SATISFIABLE\nv");
            for (index, &value) in model.iter().enumerate() {
                let var = index as i64 + 1;
                out.push_str(&format!(" {}", if value { var } else { -var }));
            }
            out.push_str(" 0\n");
            out
        }
        Verdict::Unsat => "s UNSATISFIABLE\n".to_string(),
        Verdict::Unknown => "s UNKNOWN\n".to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lit::Var;

    fn parse(text: &str) -> ParseOutput {
        parse_dimacs(text.as_bytes()).expect("parse should succeed")
    }

    fn parse_err(text: &str) -> ParseDiagnostic {
        parse_dimacs(text.as_bytes()).expect_err("parse should fail")
    }

    #[test]
    fn basic_file() {
        let out = parse("p cnf 2 2\n1 2 0\n-1 0\n");
        assert_eq!(out.formula.num_vars(), 2);
        assert_eq!(out.formula.cnf_clauses().len(), 2);
        assert_eq!(
            out.formula.cnf_clauses()[0].literals,
            vec![Lit::from_dimacs(1), Lit::from_dimacs(2)]
        );
        assert_eq!(out.formula.cnf_clauses()[1].literals, vec![Lit::from_dimacs(-1)]);
        assert!(out.warnings.is_empty());
        assert_eq!(out.tautologies_dropped, 0);
    }

    #[test]
    fn empty_problem() {
        let out = parse("p cnf 0 0\n");
        assert_eq!(out.formula.num_vars(), 0);
        assert!(out.formula.cnf_clauses().is_empty());
    }

    #[test]
    fn tautology_dropped_and_counted() {
        let out = parse("p cnf 2 1\n1 -1 2 0\n");
        assert!(out.formula.cnf_clauses().is_empty());
        assert_eq!(out.tautologies_dropped, 1);
    }

    #[test]
    fn duplicate_literals_removed() {
        let out = parse("p cnf 2 1\n1 1 2 1 0\n");
        assert_eq!(
            out.formula.cnf_clauses()[0].literals,
            vec![Lit::from_dimacs(1), Lit::from_dimacs(2)]
        );
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let out = parse("c hello\nc world\n\np cnf 1 1\nc mid-file comment\n1 0\n");
        assert_eq!(out.formula.cnf_clauses().len(), 1);
    }

    #[test]
    fn clause_count_mismatch_is_warning() {
        let out = parse("p cnf 2 5\n1 0\n");
        assert_eq!(
            out.warnings,
            vec![ParseWarning::ClauseCountMismatch {
                declared: 5,
                actual: 1
            }]
        );
        assert_eq!(out.formula.cnf_clauses().len(), 1);
    }

    #[test]
    fn empty_clause_marks_trivially_unsat() {
        let out = parse("p cnf 2 2\n0\n1 2 0\n");
        assert!(out.formula.is_trivially_unsat());
        assert_eq!(out.formula.cnf_clauses().len(), 1);
    }

    #[test]
    fn missing_header_is_error() {
        let err = parse_err("1 2 0\n");
        assert_eq!(err.kind, DiagnosticKind::UnexpectedToken);
        assert_eq!((err.line, err.column), (1, 1));
    }

    #[test]
    fn empty_input_is_error() {
        let err = parse_err("");
        assert_eq!(err.kind, DiagnosticKind::EmptyFile);
        let err = parse_err("c only comments\nc here\n");
        assert_eq!(err.kind, DiagnosticKind::EmptyFile);
    }

    #[test]
    fn bad_header_is_error() {
        assert_eq!(parse_err("p wcnf 2 2\n").kind, DiagnosticKind::BadHeader);
        assert_eq!(parse_err("p cnf -3 2\n").kind, DiagnosticKind::BadHeader);
        assert_eq!(parse_err("p cnf two 2\n").kind, DiagnosticKind::BadHeader);
    }

    #[test]
    fn literal_out_of_range_is_error() {
        let err = parse_err("p cnf 2 1\n1 3 0\n");
        assert_eq!(err.kind, DiagnosticKind::LiteralOutOfRange);
        assert_eq!((err.line, err.column), (2, 3));
    }

    #[test]
    fn unterminated_clause_is_error() {
        let err = parse_err("p cnf 2 1\n1 2\n");
        assert_eq!(err.kind, DiagnosticKind::MissingTerminator);
        assert_eq!((err.line, err.column), (2, 1));
    }

    #[test]
    fn garbage_token_is_error() {
        let err = parse_err("p cnf 2 1\n1 x 0\n");
        assert_eq!(err.kind, DiagnosticKind::UnexpectedToken);
    }

    #[test]
    fn verdict_output_formats() {
        assert_eq!(
            emit_verdict(&Verdict::Sat(vec![true, false])),
            "s SATISFIABLE\nv 1 -2 0\n"
        );
        assert_eq!(emit_verdict(&Verdict::Unsat), "s UNSATISFIABLE\n");
        assert_eq!(emit_verdict(&Verdict::Unknown), "s UNKNOWN\n");
        assert_eq!(emit_verdict(&Verdict::Sat(vec![])), "s SATISFIABLE\nv 0\n");
    }

    #[test]
    fn round_trip_preserves_normalized_clauses() {
        let out = parse("p cnf 3 3\n1 2 0\n-1 3 0\n2 0\n");
        let text = write_dimacs(&out.formula);
        let again = parse(&text);
        assert_eq!(again.formula.num_vars(), out.formula.num_vars());
        let lits = |f: &Formula| -> Vec<Vec<Lit>> {
            f.raw_clauses().iter().map(|c| c.literals.clone()).collect()
        };
        assert_eq!(lits(&again.formula), lits(&out.formula));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Verdict::Sat(vec![]).exit_code(), 10);
        assert_eq!(Verdict::Unsat.exit_code(), 20);
        assert_eq!(Verdict::Unknown.exit_code(), 0);
    }

    #[test]
    fn var_numbering_is_one_based() {
        assert_eq!(Var(0).dimacs(), 1);
        let out = parse("p cnf 1 1\n-1 0\n");
        assert_eq!(out.formula.cnf_clauses()[0].literals[0].var(), Var(0));
    }
}
