//! Operation-count and timing instrumentation shared by the detectors.

use crate::model::Cut;

/// Work and progress counters for one detector run.
///
/// All counters are exact and deterministic: they depend only on the
/// input, never on scheduling or worker count. `wall_nanos` is the single
/// timing field.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Metrics {
    /// Synchronous rounds: cut advances for the advancing detectors,
    /// frontier levels for the reachability-based one.
    pub rounds: u64,
    /// Happened-before evaluations.
    pub comparisons: u64,
    /// States stepped past while searching for the cut.
    pub states_advanced: u64,
    /// Edge traversals performed by reachability.
    pub edges_relaxed: u64,
    pub wall_nanos: u64,
}

impl Metrics {
    /// Copy with the timing field cleared, for determinism comparisons.
    pub fn non_timing(&self) -> Metrics {
        Metrics {
            wall_nanos: 0,
            ..*self
        }
    }
}

/// What a detector concluded about the computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// The minimum consistent cut on which the predicate holds.
    Found(Cut),
    /// No consistent cut satisfies the predicate.
    NoCut,
}

impl Outcome {
    pub fn cut(&self) -> Option<&Cut> {
        match self {
            Outcome::Found(c) => Some(c),
            Outcome::NoCut => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Outcome::Found(_))
    }
}

/// Outcome plus instrumentation.
#[derive(Debug, Clone)]
pub struct DetectResult {
    pub outcome: Outcome,
    pub metrics: Metrics,
}
