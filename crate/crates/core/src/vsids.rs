//! VSIDS variable activities.
//!
//! Activities live in a binary max-heap indexed by variable so bumps can
//! sift in place. Bumping adds a growing increment instead of decaying
//! every score; both are rescaled when they threaten the float range.

use crate::lit::Var;

const RESCALE_LIMIT: f64 = 1e100;
const INVERSE_DECAY: f64 = 1.0 / 0.95;

#[derive(Debug)]
pub struct Vsids {
    activity: Vec<f64>,
    increment: f64,
    /// Heap of variable indices ordered by activity.
    heap: Vec<u32>,
    /// Position of each variable in `heap`, or `ABSENT`.
    position: Vec<u32>,
}

const ABSENT: u32 = u32::MAX;

impl Vsids {
    pub fn new(num_vars: usize) -> Vsids {
        let mut vsids = Vsids {
            activity: vec![0.0; num_vars],
            increment: 1.0,
            heap: Vec::with_capacity(num_vars),
            position: vec![ABSENT; num_vars],
        };
        for index in 0..num_vars {
            vsids.insert(Var::from_index(index));
        }
        vsids
    }

    #[cfg(test)]
    pub fn activity(&self, var: Var) -> f64 {
        self.activity[var.index()]
    }

    #[inline]
    pub fn contains(&self, var: Var) -> bool {
        self.position[var.index()] != ABSENT
    }

    pub fn bump(&mut self, var: Var) {
        self.activity[var.index()] += self.increment;
        if self.activity[var.index()] > RESCALE_LIMIT {
            self.rescale();
        }
        if self.contains(var) {
            self.sift_up(self.position[var.index()] as usize);
        }
    }

    pub fn decay(&mut self) {
        self.increment *= INVERSE_DECAY;
        if self.increment > RESCALE_LIMIT {
            self.rescale();
        }
    }

    fn rescale(&mut self) {
        for a in &mut self.activity {
            *a /= RESCALE_LIMIT;
        }
        self.increment /= RESCALE_LIMIT;
    }

    pub fn insert(&mut self, var: Var) {
        if self.contains(var) {
            return;
        }
        self.position[var.index()] = self.heap.len() as u32;
        self.heap.push(var.0);
        self.sift_up(self.heap.len() - 1);
    }

    pub fn pop_max(&mut self) -> Option<Var> {
        if self.heap.is_empty() {
            return None;
        }
        let top = Var(self.heap[0]);
        let last = self.heap.pop().expect("nonempty heap");
        self.position[top.index()] = ABSENT;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.position[last as usize] = 0;
            self.sift_down(0);
        }
        Some(top)
    }

    /// Heap entries in storage order; used by state fingerprinting.
    pub fn heap_entries(&self) -> &[u32] {
        &self.heap
    }

    pub fn raw_activity_bits(&self) -> impl Iterator<Item = u64> + '_ {
        self.activity
            .iter()
            .map(|a| a.to_bits())
            .chain(std::iter::once(self.increment.to_bits()))
    }

    /// Ordering: higher activity first, lower index breaking ties so runs
    /// are reproducible.
    #[inline]
    fn before(&self, a: u32, b: u32) -> bool {
        let (aa, ab) = (self.activity[a as usize], self.activity[b as usize]);
        aa > ab || (aa == ab && a < b)
    }

    fn sift_up(&mut self, mut pos: usize) {
        while pos > 0 {
            let parent = (pos - 1) / 2;
            if self.before(self.heap[pos], self.heap[parent]) {
                self.swap(pos, parent);
                pos = parent;
            } else {
                break;
            }
        }
    }

    fn sift_down(&mut self, mut pos: usize) {
        loop {
            let left = 2 * pos + 1;
            let right = left + 1;
            let mut best = pos;
            if left < self.heap.len() && self.before(self.heap[left], self.heap[best]) {
                best = left;
            }
            if right < self.heap.len() && self.before(self.heap[right], self.heap[best]) {
                best = right;
            }
            if best == pos {
                break;
            }
            self.swap(pos, best);
            pos = best;
        }
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.heap.swap(a, b);
        self.position[self.heap[a] as usize] = a as u32;
        self.position[self.heap[b] as usize] = b as u32;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pops_highest_activity_first() {
        let mut vsids = Vsids::new(4);
        vsids.bump(Var(2));
        vsids.bump(Var(2));
        vsids.bump(Var(1));
        assert_eq!(vsids.pop_max(), Some(Var(2)));
        assert_eq!(vsids.pop_max(), Some(Var(1)));
    }

    #[test]
    fn ties_break_toward_lower_index() {
        let mut vsids = Vsids::new(3);
        assert_eq!(vsids.pop_max(), Some(Var(0)));
        assert_eq!(vsids.pop_max(), Some(Var(1)));
        assert_eq!(vsids.pop_max(), Some(Var(2)));
        assert_eq!(vsids.pop_max(), None);
    }

    #[test]
    fn reinsert_after_pop() {
        let mut vsids = Vsids::new(2);
        let v = vsids.pop_max().unwrap();
        assert!(!vsids.contains(v));
        vsids.insert(v);
        assert!(vsids.contains(v));
    }

    #[test]
    fn decay_grows_later_bumps() {
        let mut vsids = Vsids::new(2);
        vsids.bump(Var(0));
        for _ in 0..10 {
            vsids.decay();
        }
        vsids.bump(Var(1));
        // One recent bump outweighs one old bump.
        assert_eq!(vsids.pop_max(), Some(Var(1)));
    }

    #[test]
    fn rescale_preserves_order() {
        let mut vsids = Vsids::new(3);
        vsids.bump(Var(1));
        // Enough decays to force one rescale of scores and increment.
        for _ in 0..5_000 {
            vsids.decay();
        }
        vsids.bump(Var(2));
        assert!(vsids.activity(Var(2)) < RESCALE_LIMIT);
        assert!(vsids.activity(Var(1)) > 0.0);
        assert_eq!(vsids.pop_max(), Some(Var(2)));
        assert_eq!(vsids.pop_max(), Some(Var(1)));
    }
}
