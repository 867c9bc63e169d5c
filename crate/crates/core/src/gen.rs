//! Seeded random-computation generator.
//!
//! The generator is a deterministic function of its parameters: the same
//! seed yields byte-identical traces on every platform and in every
//! implementation that follows the same draw order. The PRNG is
//! splitmix64; uniform doubles take the top 53 bits of one draw.
//!
//! Draw order. Processes take their steps round by round: step 1 of
//! processes 1..n, then step 2 of processes 1..n, and so on. Each step
//! draws exactly four values, in this order:
//!
//! 1. receive roll (double): if a message is pending and the roll is
//!    below `recv_prob`, the oldest pending message is consumed and the
//!    clock becomes the componentwise max with the message clock;
//! 2. predicate roll (double): the state's predicate bit is set iff the
//!    roll is below `pred_density`;
//! 3. send roll (double): after the own-component increment, the state's
//!    clock is enqueued to another process iff the roll is below
//!    `send_prob` and there are at least two processes;
//! 4. target draw (integer): `draw mod (n-1)` picks the destination among
//!    the other processes in id order, skipping the sender. Drawn even
//!    when the step does not send.

use std::collections::VecDeque;

use crate::clock::VectorClock;
use crate::model::{Computation, LocalState};

/// splitmix64 as published by Steele, Lea, and Flood; the de-facto
/// reference constants.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform double in `[0, 1)` from the top 53 bits of one draw.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// Parameters of the generator.
#[derive(Debug, Clone, PartialEq)]
pub struct GenParams {
    /// Process count, at least 1.
    pub processes: usize,
    /// States per process, at least 1.
    pub states: u32,
    /// Probability that a state is followed by a send to a random other
    /// process.
    pub send_prob: f64,
    /// Probability that a pending message is consumed before the next
    /// state.
    pub recv_prob: f64,
    /// Probability that a state's predicate bit is set.
    pub pred_density: f64,
    pub seed: u64,
}

impl GenParams {
    /// Checks the parameter invariants; the CLI maps failures to usage
    /// errors.
    pub fn check(&self) -> Result<(), String> {
        if self.processes < 1 {
            return Err("process count must be at least 1".into());
        }
        if self.states < 1 {
            return Err("state count must be at least 1".into());
        }
        for (name, p) in [
            ("send-prob", self.send_prob),
            ("recv-prob", self.recv_prob),
            ("pred-density", self.pred_density),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(format!("{name} must be within [0, 1], got {p}"));
            }
        }
        Ok(())
    }
}

/// Generates a valid computation from the parameters.
pub fn generate(params: &GenParams) -> Computation {
    params.check().expect("invalid generator parameters");
    let n = params.processes;
    let mut rng = SplitMix64::new(params.seed);
    let mut clocks: Vec<VectorClock> = (0..n).map(|_| VectorClock::zero(n)).collect();
    let mut mailboxes: Vec<VecDeque<Vec<u32>>> = (0..n).map(|_| VecDeque::new()).collect();
    let mut traces: Vec<Vec<LocalState>> = (0..n)
        .map(|_| Vec::with_capacity(params.states as usize))
        .collect();

    for step in 1..=params.states {
        for i in 0..n {
            let recv_roll = rng.next_f64();
            let pred_roll = rng.next_f64();
            let send_roll = rng.next_f64();
            let target_draw = rng.next_u64();

            if recv_roll < params.recv_prob {
                if let Some(msg) = mailboxes[i].pop_front() {
                    clocks[i].merge_max(&msg);
                }
            }
            let mut entries = clocks[i].entries().to_vec();
            entries[i] = step;
            clocks[i] = VectorClock::new(entries);

            traces[i].push(LocalState {
                process: i,
                index: step,
                pred: pred_roll < params.pred_density,
                clock: clocks[i].clone(),
            });

            if n > 1 && send_roll < params.send_prob {
                let mut target = (target_draw % (n as u64 - 1)) as usize;
                if target >= i {
                    target += 1;
                }
                mailboxes[target].push_back(clocks[i].entries().to_vec());
            }
        }
    }
    Computation::new(traces)
}
