//! Detection of weak conjunctive predicates in traces of distributed
//! computations.
//!
//! A computation is a set of per-process state sequences carrying vector
//! clocks. A conjunctive predicate holds iff one predicate-true state can
//! be chosen per process with all chosen states pairwise concurrent; when
//! any such cut exists, a unique componentwise-minimum one does. This
//! crate ships interchangeable detectors that return that minimum cut or
//! report that none exists:
//!
//! * [`seq_detect`] — sequential single-advance search;
//! * [`opt_detect`] — round-synchronous parallel advance;
//! * [`jls_detect`] — rejection-graph reachability pipeline;
//! * [`brute_min_cut`] — exhaustive enumeration, for small instances.
//!
//! All detectors agree on every input, and the test suites cross-check
//! them against each other and against the brute-force oracles.
//!
//! ```
//! use firstcut::{opt_detect, samples, Outcome};
//!
//! let fc = samples::advance_once().filter();
//! match opt_detect(&fc).outcome {
//!     Outcome::Found(cut) => assert_eq!(cut.indices(), &[2, 1]),
//!     Outcome::NoCut => unreachable!(),
//! }
//! ```

pub mod clock;
mod error;
pub mod filter;
pub mod gen;
pub mod io;
pub mod jls;
pub mod metrics;
pub mod model;
pub mod opt;
pub mod oracle;
pub mod reach;
pub mod reject;
pub mod samples;

pub use clock::VectorClock;
pub use error::{ModelError, OracleError, ParseError};
pub use filter::{is_consistent_cut, FilteredComputation, FilteredState};
pub use gen::{generate, GenParams, SplitMix64};
pub use io::{parse, parse_unvalidated, serialize, validate, Violation};
pub use jls::{extract_cut, flis, jls_detect, mark_valid, ValidMatrix};
pub use metrics::{DetectResult, Metrics, Outcome};
pub use model::{
    concurrent, happened_before_fast, happened_before_full, Computation, Cut, LocalState,
};
pub use opt::{advance_round, init_cut, opt_detect, recolor, seq_detect, Color, Frontier};
pub use oracle::{
    brute_min_cut, enumerate_consistent_cuts, rejection_closure, ClosureSet, ENUMERATION_GUARD,
};
pub use reach::{reach, reach_oracle, ReachSet};
pub use reject::{build_f, build_r, InitialRejects, StateMaxIncidence};
