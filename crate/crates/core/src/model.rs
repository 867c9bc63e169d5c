//! Causal model: local states, computations, the happened-before relation,
//! and cuts.

use std::fmt;

use crate::clock::VectorClock;
use crate::error::ModelError;

/// One observed state of a single process.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalState {
    /// Owning process, 0-based.
    pub process: usize,
    /// 1-based position within the owning process's trace.
    pub index: u32,
    /// Value of the local predicate at this state.
    pub pred: bool,
    /// Vector clock; entry `process` equals `index`.
    pub clock: VectorClock,
}

/// Per-process state sequences of a single run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Computation {
    traces: Vec<Vec<LocalState>>,
}

impl Computation {
    pub fn new(traces: Vec<Vec<LocalState>>) -> Self {
        Self { traces }
    }

    /// Number of processes.
    pub fn n(&self) -> usize {
        self.traces.len()
    }

    pub fn traces(&self) -> &[Vec<LocalState>] {
        &self.traces
    }

    pub fn trace(&self, process: usize) -> &[LocalState] {
        &self.traces[process]
    }

    /// Looks up a state by 1-based index.
    pub fn state(&self, process: usize, index: u32) -> Option<&LocalState> {
        self.traces
            .get(process)
            .and_then(|t| t.get(index as usize - 1))
    }

    pub fn total_states(&self) -> usize {
        self.traces.iter().map(Vec::len).sum()
    }
}

/// `s` happened before `t`, decided by the full componentwise clock
/// comparison: `s.clock <= t.clock` in every entry and the clocks differ.
pub fn happened_before_full(s: &LocalState, t: &LocalState) -> Result<bool, ModelError> {
    if s.clock.len() != t.clock.len() {
        return Err(ModelError::ClockLengthMismatch {
            left: s.clock.len(),
            right: t.clock.len(),
        });
    }
    Ok(s.clock.lt(&t.clock))
}

/// `s` happened before `t`, decided by the constant-time test
/// `s.clock[s.process] <= t.clock[s.process]`.
///
/// Exact on distinct states of a valid computation; agrees with
/// [`happened_before_full`] there.
pub fn happened_before_fast(s: &LocalState, t: &LocalState) -> Result<bool, ModelError> {
    if s.process == t.process && s.index == t.index {
        return Err(ModelError::SameState {
            process: s.process,
            index: s.index,
        });
    }
    if s.clock.len() != t.clock.len() {
        return Err(ModelError::ClockLengthMismatch {
            left: s.clock.len(),
            right: t.clock.len(),
        });
    }
    Ok(s.clock[s.process] <= t.clock[s.process])
}

/// Neither state happened before the other. A state is not concurrent
/// with itself.
pub fn concurrent(s: &LocalState, t: &LocalState) -> bool {
    debug_assert_eq!(s.clock.len(), t.clock.len());
    if s.process == t.process && s.index == t.index {
        return false;
    }
    !s.clock.lt(&t.clock) && !t.clock.lt(&s.clock)
}

/// One filtered-state index per process; the detectors' output.
///
/// Entry `i` is the 1-based index of the chosen state in process `i`'s
/// filtered sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cut {
    indices: Vec<u32>,
}

impl Cut {
    pub fn new(indices: Vec<u32>) -> Self {
        Self { indices }
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn index(&self, process: usize) -> u32 {
        self.indices[process]
    }

    pub fn n(&self) -> usize {
        self.indices.len()
    }
}

impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, j) in self.indices.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{j}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    fn state(process: usize, index: u32, clock: &[u32]) -> LocalState {
        samples::local_state(process, index, true, clock)
    }

    #[test]
    fn full_is_strict_componentwise_dominance() {
        let s = state(0, 1, &[1, 0]);
        let t = state(1, 2, &[1, 2]);
        assert!(happened_before_full(&s, &t).unwrap());

        let u = state(1, 1, &[1, 0]);
        assert!(!happened_before_full(&s, &u).unwrap());

        let v = state(1, 1, &[0, 1]);
        assert!(!happened_before_full(&s, &v).unwrap());
    }

    #[test]
    fn full_rejects_length_mismatch() {
        let s = state(0, 1, &[1, 0]);
        let t = state(1, 1, &[1]);
        assert_eq!(
            happened_before_full(&s, &t),
            Err(ModelError::ClockLengthMismatch { left: 2, right: 1 })
        );
    }

    #[test]
    fn fast_matches_definition_on_reference_trace() {
        let comp = samples::advance_once();
        let a1 = comp.state(0, 1).unwrap();
        let a2 = comp.state(0, 2).unwrap();
        let b1 = comp.state(1, 1).unwrap();
        assert!(happened_before_fast(a1, b1).unwrap());
        assert!(!happened_before_fast(a2, b1).unwrap());
    }

    #[test]
    fn fast_covers_program_order() {
        let s = state(0, 1, &[1, 0]);
        let t = state(0, 2, &[2, 0]);
        assert!(happened_before_fast(&s, &t).unwrap());
        assert!(!happened_before_fast(&t, &s).unwrap());
    }

    #[test]
    fn fast_rejects_identical_state() {
        let s = state(0, 1, &[1, 0]);
        assert_eq!(
            happened_before_fast(&s, &s.clone()),
            Err(ModelError::SameState {
                process: 0,
                index: 1
            })
        );
    }

    #[test]
    fn concurrency_examples() {
        let a = state(0, 1, &[1, 0]);
        let b = state(1, 1, &[0, 1]);
        let c = state(1, 2, &[1, 2]);
        assert!(concurrent(&a, &b));
        assert!(!concurrent(&a, &c));
        assert!(!concurrent(&a, &a.clone()));
    }
}
