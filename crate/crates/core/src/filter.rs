//! The predicate-true restriction of a computation, with re-indexed
//! clocks.

use crate::clock::VectorClock;
use crate::error::ModelError;
use crate::model::{Computation, Cut};

/// A predicate-true state inside a [`FilteredComputation`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredState {
    /// 1-based position in the original trace.
    pub orig_index: u32,
    /// The original vector clock, unchanged by filtering.
    pub clock: VectorClock,
    /// Re-indexed clock: entry `k` counts the filtered states of process
    /// `k` whose original index is at most `clock[k]`.
    pub fclock: Vec<u32>,
}

/// Per-process sequences of predicate-true states.
///
/// States are addressed by `(process, filtered index)` with 1-based
/// filtered indices. Processes without any predicate-true state are
/// flagged; no cut can exist for such a computation and the detectors
/// short-circuit on the flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredComputation {
    states: Vec<Vec<FilteredState>>,
    empty_processes: Vec<usize>,
}

impl Computation {
    /// Keeps only predicate-true states, in order, and computes their
    /// re-indexed clocks.
    pub fn filter(&self) -> FilteredComputation {
        let n = self.n();
        // counts[k][c] = number of predicate-true states of process k with
        // original index <= c.
        let counts: Vec<Vec<u32>> = self
            .traces()
            .iter()
            .map(|trace| {
                let mut acc = Vec::with_capacity(trace.len() + 1);
                acc.push(0u32);
                let mut c = 0;
                for s in trace {
                    if s.pred {
                        c += 1;
                    }
                    acc.push(c);
                }
                acc
            })
            .collect();

        let mut states = Vec::with_capacity(n);
        let mut empty_processes = Vec::new();
        for (i, trace) in self.traces().iter().enumerate() {
            let mut kept = Vec::new();
            for s in trace {
                if !s.pred {
                    continue;
                }
                let fclock = (0..n)
                    .map(|k| counts[k][s.clock[k] as usize])
                    .collect();
                kept.push(FilteredState {
                    orig_index: s.index,
                    clock: s.clock.clone(),
                    fclock,
                });
            }
            if kept.is_empty() {
                empty_processes.push(i);
            }
            states.push(kept);
        }
        FilteredComputation {
            states,
            empty_processes,
        }
    }
}

impl FilteredComputation {
    /// Number of processes.
    pub fn n(&self) -> usize {
        self.states.len()
    }

    /// Number of filtered states of `process`.
    pub fn m(&self, process: usize) -> u32 {
        self.states[process].len() as u32
    }

    pub fn total_states(&self) -> usize {
        self.states.iter().map(Vec::len).sum()
    }

    /// Looks up a filtered state by 1-based index.
    pub fn state(&self, process: usize, index: u32) -> &FilteredState {
        &self.states[process][index as usize - 1]
    }

    pub fn get(&self, process: usize, index: u32) -> Option<&FilteredState> {
        self.states
            .get(process)
            .and_then(|t| t.get(index as usize - 1))
    }

    pub fn process_states(&self, process: usize) -> &[FilteredState] {
        &self.states[process]
    }

    /// Processes with no predicate-true state.
    pub fn empty_processes(&self) -> &[usize] {
        &self.empty_processes
    }

    pub fn has_empty_process(&self) -> bool {
        !self.empty_processes.is_empty()
    }

    /// Constant-time happened-before between two distinct filtered states.
    pub(crate) fn hb_fast(&self, i: usize, ji: u32, k: usize, jk: u32) -> bool {
        let s = self.state(i, ji);
        let t = self.state(k, jk);
        s.clock[i] <= t.clock[i]
    }
}

/// All `n*(n-1)/2` pairs of states referenced by the cut are concurrent,
/// decided by full clock comparison.
pub fn is_consistent_cut(fc: &FilteredComputation, cut: &Cut) -> Result<bool, ModelError> {
    let n = fc.n();
    if cut.n() != n {
        return Err(ModelError::ClockLengthMismatch {
            left: cut.n(),
            right: n,
        });
    }
    for i in 0..n {
        let j = cut.index(i);
        if j < 1 || j > fc.m(i) {
            return Err(ModelError::IndexOutOfBounds {
                process: i,
                index: j,
                len: fc.m(i),
            });
        }
    }
    for i in 0..n {
        let a = &fc.state(i, cut.index(i)).clock;
        for k in i + 1..n {
            let b = &fc.state(k, cut.index(k)).clock;
            if a.lt(b) || b.lt(a) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
