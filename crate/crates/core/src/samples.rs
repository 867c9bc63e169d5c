//! Small reference computations shared by the test suites and the docs.

use crate::clock::VectorClock;
use crate::model::{Computation, LocalState};

/// Builds a state literal.
pub fn local_state(process: usize, index: u32, pred: bool, clock: &[u32]) -> LocalState {
    LocalState {
        process,
        index,
        pred,
        clock: VectorClock::new(clock.to_vec()),
    }
}

/// Two processes, two states each, no messages between the first states:
/// the initial cut is already consistent.
pub fn immediate_cut() -> Computation {
    Computation::new(vec![
        vec![
            local_state(0, 1, true, &[1, 0]),
            local_state(0, 2, true, &[2, 0]),
        ],
        vec![
            local_state(1, 1, true, &[0, 1]),
            local_state(1, 2, true, &[1, 2]),
        ],
    ])
}

/// Two processes where the first state of process 1 happened before the
/// first state of process 2; the minimum cut is `(2, 1)`.
pub fn advance_once() -> Computation {
    Computation::new(vec![
        vec![
            local_state(0, 1, true, &[1, 0]),
            local_state(0, 2, true, &[2, 0]),
        ],
        vec![
            local_state(1, 1, true, &[1, 1]),
            local_state(1, 2, true, &[1, 2]),
        ],
    ])
}

/// Two single-state processes ordered by a message: no consistent cut
/// exists.
pub fn nocut_pair() -> Computation {
    Computation::new(vec![
        vec![local_state(0, 1, true, &[1, 0])],
        vec![local_state(1, 1, true, &[1, 1])],
    ])
}

/// A `k`-process relay, two states per process.
///
/// Process 2's first state receives from process 1's first state, and each
/// process `i`'s second state receives from process `i+1`'s first state.
/// Rejection of the first state of process 1 then cascades one process per
/// step through the whole chain, which makes the trace a worst case for
/// frontier depth: the reachable part of the rejection graph is a path of
/// length `k`.
pub fn relay(k: usize) -> Computation {
    assert!(k >= 2);
    let mut traces = Vec::with_capacity(k);
    for i in 0..k {
        let mut first = vec![0u32; k];
        first[i] = 1;
        if i == 1 {
            first[0] = 1; // message from process 1's first state
        }
        let mut second = first.clone();
        second[i] = 2;
        if i + 1 < k {
            // message from process i+1's first state
            second[i + 1] = second[i + 1].max(1);
            if i + 1 == 1 {
                second[0] = second[0].max(1);
            }
        }
        traces.push(vec![
            local_state(i, 1, true, &first),
            local_state(i, 2, true, &second),
        ]);
    }
    Computation::new(traces)
}
