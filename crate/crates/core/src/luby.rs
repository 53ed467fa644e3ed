//! Luby restart sequence.

/// The i-th term (1-based) of the Luby sequence: 1 1 2 1 1 2 4 1 1 2 ...
pub fn luby(i: u64) -> u64 {
    debug_assert!(i >= 1);
    // Find k with 2^(k-1) <= i < 2^k; i == 2^k - 1 ends a block.
    let mut k = 1u32;
    while (1u64 << k) - 1 < i {
        k += 1;
    }
    if i == (1u64 << k) - 1 {
        1u64 << (k - 1)
    } else {
        luby(i - (1u64 << (k - 1)) + 1)
    }
}

/// Restart scheduling: the n-th interval lasts `scale * luby(n)` conflicts.
#[derive(Debug)]
pub struct LubyRestarts {
    scale: u64,
    index: u64,
}

impl LubyRestarts {
    pub fn new(scale: u64) -> LubyRestarts {
        LubyRestarts { scale, index: 1 }
    }

    /// Conflict bound for the current interval.
    pub fn current_bound(&self) -> u64 {
        self.scale * luby(self.index)
    }

    /// True when enough conflicts have accumulated to restart.
    pub fn should_restart(&self, conflicts_since_restart: u64) -> bool {
        conflicts_since_restart >= self.current_bound()
    }

    pub fn advance(&mut self) {
        self.index += 1;
    }
}
