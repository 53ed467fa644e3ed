//! Variables and literals.
//!
//! Variables are numbered from 0 internally; the DIMACS layer maps the
//! external 1-based numbering. A literal packs its variable and polarity
//! into a single word so it can index watch and occurrence lists directly.

use std::fmt;

/// A propositional variable, indexed from 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub u32);

impl Var {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// The 1-based number used by DIMACS input and output.
    #[inline]
    pub fn dimacs(self) -> i32 {
        self.0 as i32 + 1
    }

    #[inline]
    pub fn from_index(index: usize) -> Var {
        Var(index as u32)
    }
}

/// A literal: a variable together with a polarity.
///
/// Encoded as `2 * var + sign` where `sign` is 1 for the negative literal,
/// so `code()` can index per-literal tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(u32);

impl Lit {
    #[inline]
    pub fn new(var: Var, positive: bool) -> Lit {
        Lit(var.0 << 1 | u32::from(!positive))
    }

    #[inline]
    pub fn positive(var: Var) -> Lit {
        Lit::new(var, true)
    }

    #[inline]
    pub fn negative(var: Var) -> Lit {
        Lit::new(var, false)
    }

    #[inline]
    pub fn var(self) -> Var {
        Var(self.0 >> 1)
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    /// Index into per-literal tables (watch lists, occurrence lists).
    #[inline]
    pub fn code(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn from_code(code: usize) -> Lit {
        Lit(code as u32)
    }

    /// Signed 1-based integer as written in DIMACS files.
    #[inline]
    pub fn dimacs(self) -> i32 {
        let v = self.var().dimacs();
        if self.is_positive() {
            v
        } else {
            -v
        }
    }

    /// Builds a literal from a nonzero DIMACS integer.
    ///
    /// The caller is responsible for range-checking against the variable
    /// count; this only asserts nonzero.
    #[inline]
    pub fn from_dimacs(lit: i32) -> Lit {
        debug_assert!(lit != 0);
        let var = Var(lit.unsigned_abs() - 1);
        Lit::new(var, lit > 0)
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;
    #[inline]
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.dimacs())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.dimacs())
    }
}
