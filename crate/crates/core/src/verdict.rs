//! Solver verdicts.

/// Outcome of a solve, with a total model when satisfiable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Satisfiable, with one truth value per variable.
    Sat(Vec<bool>),
    Unsat,
    /// Budget exhausted before a decision was reached.
    Unknown,
}

impl Verdict {
    pub fn is_sat(&self) -> bool {
        matches!(self, Verdict::Sat(_))
    }

    pub fn is_unsat(&self) -> bool {
        matches!(self, Verdict::Unsat)
    }

    /// SAT-competition process exit code: 10 for SAT, 20 for UNSAT, 0 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Sat(_) => 10,
            Verdict::Unsat => 20,
            Verdict::Unknown => 0,
        }
    }

    pub fn status_str(&self) -> &'static str {
        match self {
            Verdict::Sat(_) => "sat",
            Verdict::Unsat => "unsat",
            Verdict::Unknown => "unknown",
        }
    }
}
