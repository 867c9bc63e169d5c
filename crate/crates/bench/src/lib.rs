//! Shared workload builders for the detector benchmarks.

use firstcut::{generate, FilteredComputation, GenParams};

/// A reproducible message-heavy workload.
pub fn workload(processes: usize, states: u32, seed: u64) -> FilteredComputation {
    generate(&GenParams {
        processes,
        states,
        send_prob: 0.6,
        recv_prob: 0.5,
        pred_density: 0.9,
        seed,
    })
    .filter()
}
