//! Multi-source reachability over the rejection graph.
//!
//! Sources are the initially rejected first states, linked from a virtual
//! source node that is never stored in the matrix. [`reach`] is the
//! frontier-synchronous parallel engine; [`reach_oracle`] is the
//! sequential worklist reference that validates it. Both return the exact
//! reachable set, the same breadth-first depths, and the same operation
//! counts; any backend honoring this contract can replace [`reach`].

use std::sync::atomic::{AtomicU32, Ordering};

use rayon::prelude::*;

use crate::metrics::Metrics;
use crate::reject::{InitialRejects, StateMaxIncidence};

const UNREACHED: u32 = u32::MAX;

/// The set of states reachable from the virtual source, with their
/// breadth-first depths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachSet {
    depth: Vec<u32>,
    m: Vec<u32>,
    offsets: Vec<usize>,
    /// Frontier levels processed; equals max depth + 1 when any state is
    /// reachable.
    pub levels: u64,
    /// Edge traversals out of expanded states. Seeding from the virtual
    /// source is not counted.
    pub edges_relaxed: u64,
}

impl ReachSet {
    pub fn member_id(&self, id: usize) -> bool {
        self.depth[id] != UNREACHED
    }

    pub fn member(&self, process: usize, index: u32) -> bool {
        self.member_id(self.offsets[process] + index as usize - 1)
    }

    /// Breadth-first depth of a member; sources sit at depth 0.
    pub fn depth(&self, process: usize, index: u32) -> Option<u32> {
        let d = self.depth[self.offsets[process] + index as usize - 1];
        (d != UNREACHED).then_some(d)
    }

    pub fn member_count(&self) -> usize {
        self.depth.iter().filter(|&&d| d != UNREACHED).count()
    }

    /// Largest reachable filtered index per process, 0 when none.
    pub fn max_member_index(&self) -> Vec<u32> {
        self.m
            .iter()
            .enumerate()
            .map(|(i, &mi)| {
                (1..=mi)
                    .rev()
                    .find(|&j| self.member(i, j))
                    .unwrap_or(0)
            })
            .collect()
    }

    /// Depths only, for set-equality comparisons between backends.
    pub fn depths(&self) -> &[u32] {
        &self.depth
    }
}

fn layout(r: &StateMaxIncidence) -> (Vec<u32>, Vec<usize>) {
    let m: Vec<u32> = (0..r.n()).map(|i| r.m(i)).collect();
    let mut offsets = Vec::with_capacity(r.n());
    let mut total = 0usize;
    for &mi in &m {
        offsets.push(total);
        total += mi as usize;
    }
    (m, offsets)
}

// The virtual source points at the largest initially rejected state of
// each process; everything below it is recovered by the prefix closure
// when validity is marked.
fn sources(r: &StateMaxIncidence, f: &InitialRejects) -> Vec<usize> {
    (0..r.n())
        .filter(|&i| f.seed_index(i) >= 1)
        .map(|i| r.node_id(i, f.seed_index(i)))
        .collect()
}

/// Frontier-synchronous parallel breadth-first search from the virtual
/// source.
///
/// Within a level, discoveries race only on equal depth values; a
/// compare-and-swap keeps each state in exactly one frontier, so the
/// resulting set, depths, and counters are identical for any worker
/// count.
pub fn reach(r: &StateMaxIncidence, f: &InitialRejects, metrics: &mut Metrics) -> ReachSet {
    let (m, offsets) = layout(r);
    let depth: Vec<AtomicU32> = (0..r.total_states())
        .map(|_| AtomicU32::new(UNREACHED))
        .collect();

    let mut frontier = sources(r, f);
    for &id in &frontier {
        depth[id].store(0, Ordering::Relaxed);
    }

    let mut levels = 0u64;
    let mut edges_relaxed = 0u64;
    let mut level = 0u32;
    while !frontier.is_empty() {
        levels += 1;
        edges_relaxed += frontier
            .par_iter()
            .map(|&id| r.out_degree(id) as u64)
            .sum::<u64>();
        let next: Vec<usize> = frontier
            .par_iter()
            .flat_map_iter(|&id| {
                let (i, j) = r.node(id);
                r.neighbors(i, j).filter_map(|(k, jk)| {
                    let target = r.node_id(k, jk);
                    depth[target]
                        .compare_exchange(UNREACHED, level + 1, Ordering::Relaxed, Ordering::Relaxed)
                        .is_ok()
                        .then_some(target)
                })
            })
            .collect();
        frontier = next;
        level += 1;
    }

    metrics.rounds += levels;
    metrics.edges_relaxed += edges_relaxed;
    ReachSet {
        depth: depth.into_iter().map(AtomicU32::into_inner).collect(),
        m,
        offsets,
        levels,
        edges_relaxed,
    }
}

/// Sequential worklist reference with the identical set contract.
pub fn reach_oracle(r: &StateMaxIncidence, f: &InitialRejects) -> ReachSet {
    let (m, offsets) = layout(r);
    let mut depth = vec![UNREACHED; r.total_states()];
    let mut queue = std::collections::VecDeque::new();
    for id in sources(r, f) {
        depth[id] = 0;
        queue.push_back(id);
    }
    let mut edges_relaxed = 0u64;
    let mut max_depth: Option<u32> = None;
    while let Some(id) = queue.pop_front() {
        let d = depth[id];
        max_depth = Some(max_depth.map_or(d, |m| m.max(d)));
        let (i, j) = r.node(id);
        for (k, jk) in r.neighbors(i, j) {
            edges_relaxed += 1;
            let target = r.node_id(k, jk);
            if depth[target] == UNREACHED {
                depth[target] = d + 1;
                queue.push_back(target);
            }
        }
    }
    ReachSet {
        depth,
        m,
        offsets,
        levels: max_depth.map_or(0, |d| d as u64 + 1),
        edges_relaxed,
    }
}
