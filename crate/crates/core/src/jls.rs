//! Rejection-graph detector: reachability, validity marking, the
//! largest-invalid-state reduction, and cut extraction.

use std::time::Instant;

use rayon::prelude::*;

use crate::error::ModelError;
use crate::filter::FilteredComputation;
use crate::metrics::{DetectResult, Metrics, Outcome};
use crate::model::Cut;
use crate::reach::{reach, ReachSet};
use crate::reject::{build_f, build_r};

/// Per-process validity rows: `true` for states that may still appear in
/// a cut, `false` for rejected ones. The invalid states of each process
/// always form a prefix of the row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidMatrix {
    rows: Vec<Vec<bool>>,
}

impl ValidMatrix {
    pub fn row(&self, process: usize) -> &[bool] {
        &self.rows[process]
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Do the invalid entries of every row form a (possibly empty)
    /// prefix? Equivalently: a valid state is never followed by an
    /// invalid one.
    pub fn invalid_bits_are_prefixes(&self) -> bool {
        self.rows
            .iter()
            .all(|row| row.windows(2).all(|w| !w[0] || w[1]))
    }

    pub fn invalid_count(&self) -> u64 {
        self.rows
            .iter()
            .map(|row| row.iter().filter(|&&v| !v).count() as u64)
            .sum()
    }
}

/// Marks rejected states invalid.
///
/// Reachability stores only the largest implied rejection per edge, so
/// the reachable set can skip over states below a reachable one on the
/// same process. Rejection itself is prefix-closed — a rejected state
/// drags every earlier state of its process with it — so each process is
/// invalidated up to its largest reachable index.
pub fn mark_valid(fc: &FilteredComputation, reached: &ReachSet) -> ValidMatrix {
    let bounds = reached.max_member_index();
    let rows = (0..fc.n())
        .into_par_iter()
        .map(|i| {
            (1..=fc.m(i))
                .map(|j| j > bounds[i])
                .collect::<Vec<bool>>()
        })
        .collect();
    ValidMatrix { rows }
}

const FLIS_LEAF: usize = 64;

fn flis_rec(row: &[bool], base: u32) -> u32 {
    if row.len() <= FLIS_LEAF {
        return row
            .iter()
            .rposition(|&valid| !valid)
            .map_or(0, |pos| base + pos as u32);
    }
    let mid = row.len() / 2;
    let (left, right) = row.split_at(mid);
    let (l, r) = rayon::join(
        || flis_rec(left, base),
        || flis_rec(right, base + mid as u32),
    );
    l.max(r)
}

/// Largest 1-based index of an invalid entry, 0 when the whole row is
/// valid. Divide-and-conquer max reduction; the right half wins ties by
/// construction.
pub fn flis(row: &[bool]) -> Result<u32, ModelError> {
    if row.is_empty() {
        return Err(ModelError::EmptyRow);
    }
    Ok(flis_rec(row, 1))
}

/// Reads the cut off the validity rows: one past the largest invalid
/// state of each process.
///
/// Returns `None` when some process is invalid through its last state.
/// Panics if the invalid bits of some row do not form a prefix; that
/// would be a detector bug, not bad data.
pub fn extract_cut(fc: &FilteredComputation, valid: &ValidMatrix) -> Option<Cut> {
    assert!(
        valid.invalid_bits_are_prefixes(),
        "internal invariant violated: invalid states of a process must form a prefix"
    );
    let mut indices = Vec::with_capacity(fc.n());
    for i in 0..fc.n() {
        let boundary = flis(valid.row(i)).expect("validity row cannot be empty here");
        if boundary == fc.m(i) {
            return None;
        }
        indices.push(boundary + 1);
    }
    Some(Cut::new(indices))
}

/// Rejection-graph detector: seed the initially rejected states, follow
/// the rejection edges, and read the cut off what is left.
pub fn jls_detect(fc: &FilteredComputation) -> DetectResult {
    let start = Instant::now();
    let mut metrics = Metrics::default();
    let outcome = (|| {
        let f = build_f(fc, &mut metrics)?;
        let r = build_r(fc);
        let reached = reach(&r, &f, &mut metrics);
        let valid = mark_valid(fc, &reached);
        metrics.states_advanced += valid.invalid_count();
        extract_cut(fc, &valid)
    })();
    metrics.wall_nanos = start.elapsed().as_nanos() as u64;
    DetectResult {
        outcome: outcome.map_or(Outcome::NoCut, Outcome::Found),
        metrics,
    }
}
