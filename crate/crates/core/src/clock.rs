//! Vector clocks over a fixed set of processes.

use std::fmt;
use std::ops::Index;

/// A length-`n` vector of per-process state counters.
///
/// Entry `k` is the 1-based index of the latest state of process `k` known
/// to the owner, or 0 when none is known. For a state of process `i`,
/// entry `i` is the state's own position in its trace.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VectorClock {
    entries: Vec<u32>,
}

impl VectorClock {
    pub fn new(entries: Vec<u32>) -> Self {
        Self { entries }
    }

    pub fn zero(n: usize) -> Self {
        Self {
            entries: vec![0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Componentwise `self <= other`. Both clocks must have the same length.
    pub fn leq(&self, other: &VectorClock) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.entries
            .iter()
            .zip(&other.entries)
            .all(|(a, b)| a <= b)
    }

    /// Strict causal order: `self <= other` componentwise and not equal.
    pub fn lt(&self, other: &VectorClock) -> bool {
        self.leq(other) && self.entries != other.entries
    }

    pub(crate) fn merge_max(&mut self, other: &[u32]) {
        for (a, b) in self.entries.iter_mut().zip(other) {
            *a = (*a).max(*b);
        }
    }
}

impl Index<usize> for VectorClock {
    type Output = u32;

    fn index(&self, k: usize) -> &u32 {
        &self.entries[k]
    }
}

impl fmt::Display for VectorClock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}
