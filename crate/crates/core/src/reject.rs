//! Initially rejected states and the rejection graph in state-max
//! incidence form.
//!
//! Rejecting a state `(i,j)` means no consistent cut can use it, which
//! forces the cut on process `i` past `j` and therefore rejects every
//! state that happened before `(i,j+1)`. Per other process only the edge
//! to the largest such state is stored; smaller implied rejections are
//! recovered by the prefix closure when validity is marked. The whole
//! graph is one `(sum of m_i) x n` matrix of filtered indices.

use rayon::prelude::*;

use crate::filter::FilteredComputation;
use crate::metrics::Metrics;

/// The initial rejections, in state-max form.
///
/// `seed_index(k)` is the largest filtered index of process `k` that
/// happened before some other process's first filtered state — every
/// state up to it is rejected outright, because no cut can sit below a
/// first state. The boolean view `get(k)` (is the first state of `k`
/// itself rejected?) is `seed_index(k) >= 1`.
///
/// When predicates filter nothing, first states only cite other first
/// states and every seed index is 0 or 1; filtering can promote a deep
/// state to "first", which is what makes the per-process maximum
/// necessary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitialRejects {
    max_known: Vec<u32>,
}

impl InitialRejects {
    pub fn new(max_known: Vec<u32>) -> Self {
        Self { max_known }
    }

    /// Is the first filtered state of `process` rejected?
    pub fn get(&self, process: usize) -> bool {
        self.max_known[process] >= 1
    }

    /// Largest initially rejected filtered index of `process`, 0 when
    /// none.
    pub fn seed_index(&self, process: usize) -> u32 {
        self.max_known[process]
    }

    pub fn any(&self) -> bool {
        self.max_known.iter().any(|&m| m >= 1)
    }

    pub fn flags(&self) -> Vec<bool> {
        self.max_known.iter().map(|&m| m >= 1).collect()
    }
}

/// Computes the initial rejections. Returns `None` when some process has
/// no filtered state; the caller reports `NoCut`.
pub fn build_f(fc: &FilteredComputation, metrics: &mut Metrics) -> Option<InitialRejects> {
    if fc.has_empty_process() {
        return None;
    }
    let n = fc.n();
    metrics.comparisons += (n * n.saturating_sub(1)) as u64;
    let flags: Vec<bool> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rejected = false;
            for j in 0..n {
                if j != i {
                    rejected |= fc.hb_fast(i, 1, j, 1);
                }
            }
            rejected
        })
        .collect();

    // Per-process maximum over the first states' re-indexed clocks; the
    // same loads the rejection rows use, so they are not comparisons.
    let mut max_known = vec![0u32; n];
    for i in 0..n {
        let first = fc.state(i, 1);
        for (k, slot) in max_known.iter_mut().enumerate() {
            if k != i {
                *slot = (*slot).max(first.fclock[k]);
            }
        }
    }
    for i in 0..n {
        debug_assert_eq!(flags[i], max_known[i] >= 1);
    }
    Some(InitialRejects::new(max_known))
}

/// The rejection graph, stored as one row of `n` filtered indices per
/// state.
///
/// For state `(i,j)` with a successor, entry `k != i` is the re-indexed
/// clock of `(i,j+1)` at `k`: the largest filtered state of process `k`
/// that happened before the successor, 0 when there is none. The self
/// entry holds `j` as bookkeeping and never yields an edge; last states
/// have no successor and no edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateMaxIncidence {
    n: usize,
    m: Vec<u32>,
    offsets: Vec<usize>,
    data: Vec<u32>,
}

/// Builds the state-max incidence matrix of a filtered computation.
pub fn build_r(fc: &FilteredComputation) -> StateMaxIncidence {
    let n = fc.n();
    let m: Vec<u32> = (0..n).map(|i| fc.m(i)).collect();
    let mut offsets = Vec::with_capacity(n);
    let mut total = 0usize;
    for &mi in &m {
        offsets.push(total);
        total += mi as usize;
    }
    let mut data = vec![0u32; total * n];

    // One row per state, disjoint writes.
    data.par_chunks_mut(n).enumerate().for_each(|(id, row)| {
        let (i, j) = locate(&m, &offsets, id);
        row[i] = j;
        if j < m[i] {
            let successor = fc.state(i, j + 1);
            for (k, slot) in row.iter_mut().enumerate() {
                if k != i {
                    *slot = successor.fclock[k];
                }
            }
        }
    });

    StateMaxIncidence {
        n,
        m,
        offsets,
        data,
    }
}

fn locate(m: &[u32], offsets: &[usize], id: usize) -> (usize, u32) {
    // offsets is ascending; find the owning process.
    let i = match offsets.binary_search(&id) {
        Ok(mut i) => {
            // Skip empty processes sharing the offset.
            while m[i] == 0 {
                i += 1;
            }
            i
        }
        Err(i) => i - 1,
    };
    (i, (id - offsets[i]) as u32 + 1)
}

impl StateMaxIncidence {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self, process: usize) -> u32 {
        self.m[process]
    }

    pub fn total_states(&self) -> usize {
        self.data.len() / self.n.max(1)
    }

    /// Number of stored matrix entries.
    pub fn entry_count(&self) -> usize {
        self.data.len()
    }

    /// Flat node id of filtered state `(process, index)`.
    pub fn node_id(&self, process: usize, index: u32) -> usize {
        self.offsets[process] + index as usize - 1
    }

    /// Inverse of [`node_id`](Self::node_id).
    pub fn node(&self, id: usize) -> (usize, u32) {
        locate(&self.m, &self.offsets, id)
    }

    pub fn row(&self, process: usize, index: u32) -> &[u32] {
        let id = self.node_id(process, index);
        &self.data[id * self.n..(id + 1) * self.n]
    }

    /// Outgoing edges of a state: per other process, the largest implied
    /// rejection, when any.
    pub fn neighbors(
        &self,
        process: usize,
        index: u32,
    ) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.row(process, index)
            .iter()
            .enumerate()
            .filter(move |&(k, &j)| k != process && j >= 1)
            .map(|(k, &j)| (k, j))
    }

    pub fn out_degree(&self, id: usize) -> usize {
        let (i, j) = self.node(id);
        self.neighbors(i, j).count()
    }

    /// Total directed edge count.
    pub fn total_edges(&self) -> u64 {
        (0..self.total_states())
            .map(|id| self.out_degree(id) as u64)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::happened_before_full;
    use crate::samples;

    #[test]
    fn initial_rejects_of_reference_traces() {
        let mut m = Metrics::default();
        let t1 = samples::immediate_cut().filter();
        assert_eq!(build_f(&t1, &mut m).unwrap().flags(), vec![false, false]);

        let t2 = samples::advance_once().filter();
        let f = build_f(&t2, &mut m).unwrap();
        assert_eq!(f.flags(), vec![true, false]);
        assert_eq!(f.seed_index(0), 1);
        assert_eq!(f.seed_index(1), 0);
    }

    #[test]
    fn filtering_can_seed_past_the_first_state() {
        // Process 2's first predicate-true state already knows process
        // 1's second state, so both early states of process 1 are
        // rejected before any edge is followed.
        let comp = crate::model::Computation::new(vec![
            vec![
                samples::local_state(0, 1, true, &[1, 0]),
                samples::local_state(0, 2, true, &[2, 0]),
                samples::local_state(0, 3, true, &[3, 2]),
            ],
            vec![
                samples::local_state(1, 1, false, &[1, 1]),
                samples::local_state(1, 2, true, &[2, 2]),
                samples::local_state(1, 3, true, &[2, 3]),
            ],
        ]);
        let fc = comp.filter();
        let mut m = Metrics::default();
        let f = build_f(&fc, &mut m).unwrap();
        assert_eq!(f.seed_index(0), 2);
        assert_eq!(f.seed_index(1), 0);
        assert_eq!(f.flags(), vec![true, false]);
    }

    #[test]
    fn empty_process_short_circuits() {
        let mut comp = samples::immediate_cut();
        let mut traces = comp.traces().to_vec();
        for s in &mut traces[1] {
            s.pred = false;
        }
        comp = crate::model::Computation::new(traces);
        let mut m = Metrics::default();
        assert!(build_f(&comp.filter(), &mut m).is_none());
    }

    #[test]
    fn rows_of_the_reference_trace() {
        let t2 = samples::advance_once().filter();
        let r = build_r(&t2);
        // Successor of (2,1) is b2 with re-indexed clock [1,2].
        assert_eq!(r.row(1, 1), &[1, 1]);
        // Successor of (1,1) is a2 with clock [2,0]: no edge to process 2.
        assert_eq!(r.row(0, 1), &[1, 0]);
        // Last states have only the bookkeeping self entry.
        assert_eq!(r.row(0, 2), &[2, 0]);
        assert_eq!(r.row(1, 2), &[0, 2]);
    }

    #[test]
    fn neighbors_follow_rows() {
        let t2 = samples::advance_once().filter();
        let r = build_r(&t2);
        let n21: Vec<_> = r.neighbors(1, 1).collect();
        assert_eq!(n21, vec![(0, 1)]);
        assert_eq!(r.neighbors(0, 1).count(), 0);
        for id in 0..r.total_states() {
            assert!(r.out_degree(id) < r.n());
        }
    }

    #[test]
    fn storage_and_edge_budget() {
        use crate::gen::{generate, GenParams};
        for seed in 0u64..30 {
            let comp = generate(&GenParams {
                processes: 2 + (seed as usize % 4),
                states: 1 + (seed % 8) as u32,
                send_prob: 0.7,
                recv_prob: 0.5,
                pred_density: 0.8,
                seed,
            });
            let fc = comp.filter();
            let r = build_r(&fc);
            let total: u64 = (0..fc.n()).map(|i| fc.m(i) as u64).sum();
            assert_eq!(r.entry_count() as u64, total * fc.n() as u64);
            assert!(r.total_edges() <= total * (fc.n() as u64 - 1));
        }
    }

    #[test]
    fn every_edge_is_a_sound_rejection() {
        use crate::gen::{generate, GenParams};
        for seed in 0u64..30 {
            let comp = generate(&GenParams {
                processes: 2 + (seed as usize % 4),
                states: 2 + (seed % 6) as u32,
                send_prob: 0.8,
                recv_prob: 0.6,
                pred_density: 1.0,
                seed: seed + 500,
            });
            let fc = comp.filter();
            let r = build_r(&fc);
            for i in 0..fc.n() {
                for j in 1..=fc.m(i) {
                    if j == fc.m(i) {
                        continue;
                    }
                    let successor = fc.state(i, j + 1);
                    let succ_state =
                        samples::local_state(i, successor.orig_index, true, successor.clock.entries());
                    for (k, jk) in r.neighbors(i, j) {
                        let target = fc.state(k, jk);
                        let target_state =
                            samples::local_state(k, target.orig_index, true, target.clock.entries());
                        assert!(
                            happened_before_full(&target_state, &succ_state).unwrap(),
                            "seed {seed}: edge ({i},{j}) -> ({k},{jk})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn relay_graph_is_a_path() {
        let fc = samples::relay(5).filter();
        let r = build_r(&fc);
        assert_eq!(r.neighbors(0, 1).collect::<Vec<_>>(), vec![(1, 1)]);
        for i in 1..4 {
            let targets: Vec<_> = r.neighbors(i, 1).collect();
            assert!(targets.contains(&(i + 1, 1)), "process {i}");
        }
        assert_eq!(r.neighbors(4, 1).count(), 0);
    }
}
