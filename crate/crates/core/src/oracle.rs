//! Brute-force references: exhaustive cut enumeration, the minimum
//! satisfying cut, and the full rejection closure.
//!
//! Everything here is sequential and written for obviousness, not speed;
//! these functions referee the detectors. All happened-before decisions
//! use the full componentwise clock comparison, never the constant-time
//! shortcut the detectors rely on.

use crate::error::OracleError;
use crate::filter::FilteredComputation;
use crate::metrics::Outcome;
use crate::model::Cut;
use crate::reject::InitialRejects;

/// Upper bound on the number of index tuples the oracle will enumerate.
pub const ENUMERATION_GUARD: u128 = 1 << 20;

fn concurrent_clocks(fc: &FilteredComputation, i: usize, ji: u32, k: usize, jk: u32) -> bool {
    let a = &fc.state(i, ji).clock;
    let b = &fc.state(k, jk).clock;
    !a.lt(b) && !b.lt(a)
}

/// Every consistent cut, in lexicographic index order.
pub fn enumerate_consistent_cuts(fc: &FilteredComputation) -> Result<Vec<Cut>, OracleError> {
    let n = fc.n();
    let tuples: u128 = (0..n).map(|i| fc.m(i) as u128).product();
    if tuples > ENUMERATION_GUARD {
        return Err(OracleError::TooLarge { tuples });
    }
    let mut out = Vec::new();
    if tuples == 0 {
        return Ok(out);
    }
    let mut indices = vec![1u32; n];
    'outer: loop {
        let consistent = (0..n).all(|i| {
            (i + 1..n).all(|k| concurrent_clocks(fc, i, indices[i], k, indices[k]))
        });
        if consistent {
            out.push(Cut::new(indices.clone()));
        }
        // Odometer increment, last process fastest.
        for i in (0..n).rev() {
            if indices[i] < fc.m(i) {
                indices[i] += 1;
                continue 'outer;
            }
            indices[i] = 1;
        }
        break;
    }
    Ok(out)
}

/// The componentwise minimum over all consistent cuts, or `NoCut` when
/// none exists.
///
/// Panics if the minimum is not itself a consistent cut; the set of
/// consistent cuts is closed under componentwise minima, so that would be
/// an enumeration bug.
pub fn brute_min_cut(fc: &FilteredComputation) -> Result<Outcome, OracleError> {
    let cuts = enumerate_consistent_cuts(fc)?;
    let Some(first) = cuts.first() else {
        return Ok(Outcome::NoCut);
    };
    let mut min = first.indices().to_vec();
    for cut in &cuts[1..] {
        for (m, &v) in min.iter_mut().zip(cut.indices()) {
            *m = (*m).min(v);
        }
    }
    let min = Cut::new(min);
    assert!(
        cuts.contains(&min),
        "componentwise minimum {min} is not a consistent cut"
    );
    Ok(Outcome::Found(min))
}

/// The full rejection closure and the processes it exhausts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureSet {
    rejected: Vec<Vec<bool>>,
    failed: Vec<bool>,
}

impl ClosureSet {
    pub fn is_rejected(&self, process: usize, index: u32) -> bool {
        self.rejected[process][index as usize - 1]
    }

    pub fn failed(&self, process: usize) -> bool {
        self.failed[process]
    }

    pub fn any_failed(&self) -> bool {
        self.failed.iter().any(|&f| f)
    }

    /// Largest rejected filtered index per process, 0 when none.
    pub fn max_rejected_index(&self) -> Vec<u32> {
        self.rejected
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .rev()
                    .find(|(_, &r)| r)
                    .map_or(0, |(j, _)| j as u32 + 1)
            })
            .collect()
    }

    pub fn rejected_count(&self) -> usize {
        self.rejected
            .iter()
            .map(|row| row.iter().filter(|&&r| r).count())
            .sum()
    }
}

/// Fixpoint of the rejection rules, by sequential worklist.
///
/// Seed rule: every cut contains one state per process at filtered index
/// 1 or later, so a state that happened before some other process's first
/// filtered state can never be in a cut. Successor rule: rejecting state
/// `(i,j)` forces the cut past it, so every state that happened before
/// `(i,j+1)` is rejected too. Rejecting the last state of a process marks
/// the process failed.
///
/// The seeds are derived here from full clock comparisons; `f` is only
/// cross-checked against them.
pub fn rejection_closure(fc: &FilteredComputation, f: &InitialRejects) -> ClosureSet {
    let n = fc.n();
    let mut rejected: Vec<Vec<bool>> = (0..n).map(|i| vec![false; fc.m(i) as usize]).collect();
    let mut failed = vec![false; n];
    let mut work: Vec<(usize, u32)> = Vec::new();
    for (k, row) in rejected.iter_mut().enumerate() {
        for l in 1..=fc.m(k) {
            let clock = &fc.state(k, l).clock;
            let doomed = (0..n).any(|i| i != k && clock.lt(&fc.state(i, 1).clock));
            if doomed {
                row[l as usize - 1] = true;
                work.push((k, l));
            }
        }
    }
    for (i, row) in rejected.iter().enumerate() {
        debug_assert_eq!(f.get(i), row.first().copied().unwrap_or(false));
    }
    while let Some((i, j)) = work.pop() {
        if j == fc.m(i) {
            failed[i] = true;
            continue;
        }
        let successor = fc.state(i, j + 1).clock.clone();
        for (k, row) in rejected.iter_mut().enumerate() {
            for l in 1..=fc.m(k) {
                if row[l as usize - 1] {
                    continue;
                }
                if fc.state(k, l).clock.lt(&successor) {
                    row[l as usize - 1] = true;
                    work.push((k, l));
                }
            }
        }
    }
    ClosureSet { rejected, failed }
}
