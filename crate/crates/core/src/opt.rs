//! Round-synchronous advancing-cut detector and its sequential
//! single-advance variant.
//!
//! Both maintain a working cut, color a process red while its current
//! state happened before some other current state, and advance red
//! processes until every pair is concurrent or a red process runs off the
//! end of its trace. Red processes stay red until they advance: once a
//! state happened before another cut member, advancing that member only
//! moves it causally forward. Recoloring after an advance therefore only
//! has to compare advanced states against everyone and formerly green
//! states against the advanced ones; the result equals a full recolor of
//! the new cut, and the tests check that equivalence.

use std::time::Instant;

use rayon::prelude::*;

use crate::filter::FilteredComputation;
use crate::metrics::{DetectResult, Metrics, Outcome};
use crate::model::Cut;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Color {
    Green,
    Red,
}

/// The working cut of the advancing detectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frontier {
    /// 1-based filtered index per process.
    current: Vec<u32>,
    /// Red iff the process's current state happened before some other
    /// current state.
    color: Vec<Color>,
}

impl Frontier {
    pub fn current(&self) -> &[u32] {
        &self.current
    }

    pub fn colors(&self) -> &[Color] {
        &self.color
    }

    pub fn all_green(&self) -> bool {
        self.color.iter().all(|&c| c == Color::Green)
    }

    fn reds(&self) -> Vec<usize> {
        self.color
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == Color::Red)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Does the current state of `i` happen before any other current state?
/// Evaluates all `n-1` tests without short-circuiting so the comparison
/// count stays schedule-independent.
fn red_against_all(fc: &FilteredComputation, current: &[u32], i: usize) -> Color {
    let mut red = false;
    for j in 0..current.len() {
        if j != i {
            red |= fc.hb_fast(i, current[i], j, current[j]);
        }
    }
    if red {
        Color::Red
    } else {
        Color::Green
    }
}

/// The initial frontier: every process at its first filtered state.
///
/// Returns `None` when some process has no predicate-true state; the
/// caller reports `NoCut`.
pub fn init_cut(fc: &FilteredComputation, metrics: &mut Metrics) -> Option<Frontier> {
    if fc.has_empty_process() {
        return None;
    }
    let current = vec![1u32; fc.n()];
    let color = full_colors(fc, &current, metrics);
    Some(Frontier { current, color })
}

fn full_colors(fc: &FilteredComputation, current: &[u32], metrics: &mut Metrics) -> Vec<Color> {
    let n = fc.n();
    metrics.comparisons += (n * n.saturating_sub(1)) as u64;
    (0..n)
        .into_par_iter()
        .map(|i| red_against_all(fc, current, i))
        .collect()
}

/// Recomputes every color of the frontier from scratch.
pub fn recolor(fc: &FilteredComputation, frontier: &Frontier, metrics: &mut Metrics) -> Frontier {
    Frontier {
        current: frontier.current.clone(),
        color: full_colors(fc, &frontier.current, metrics),
    }
}

/// Advances every red process by one state simultaneously, then
/// recolors. Returns `None` when a red process has no next state.
pub fn advance_round(
    fc: &FilteredComputation,
    frontier: &Frontier,
    metrics: &mut Metrics,
) -> Option<Frontier> {
    let n = fc.n();
    let advanced = frontier.reds();
    debug_assert!(!advanced.is_empty(), "advance_round needs a red process");
    if advanced.iter().any(|&i| frontier.current[i] == fc.m(i)) {
        return None;
    }

    let mut current = frontier.current.clone();
    for &i in &advanced {
        current[i] += 1;
    }

    // Advanced states are compared in both directions against every other
    // process; formerly green states only changed relative to the
    // advanced ones.
    let a = advanced.len() as u64;
    metrics.comparisons += a * (n as u64 - 1) + (n as u64 - a) * a;

    let mut moved = vec![false; n];
    for &i in &advanced {
        moved[i] = true;
    }
    let color: Vec<Color> = (0..n)
        .into_par_iter()
        .map(|i| {
            if moved[i] {
                red_against_all(fc, &current, i)
            } else {
                // Was green; relations to other unmoved states are
                // unchanged.
                let mut red = false;
                for &r in &advanced {
                    red |= fc.hb_fast(i, current[i], r, current[r]);
                }
                if red {
                    Color::Red
                } else {
                    Color::Green
                }
            }
        })
        .collect();

    metrics.rounds += 1;
    metrics.states_advanced += a;
    Some(Frontier { current, color })
}

/// Round-synchronous detector: all red processes advance together.
pub fn opt_detect(fc: &FilteredComputation) -> DetectResult {
    let start = Instant::now();
    let mut metrics = Metrics::default();
    let outcome = (|| {
        let mut frontier = init_cut(fc, &mut metrics)?;
        loop {
            if frontier.all_green() {
                return Some(Cut::new(frontier.current.clone()));
            }
            frontier = advance_round(fc, &frontier, &mut metrics)?;
        }
    })();
    metrics.wall_nanos = start.elapsed().as_nanos() as u64;
    DetectResult {
        outcome: outcome.map_or(Outcome::NoCut, Outcome::Found),
        metrics,
    }
}

/// Sequential variant: one advance per iteration, lowest red process id
/// first. Yields the same outcome and cut as [`opt_detect`].
pub fn seq_detect(fc: &FilteredComputation) -> DetectResult {
    let start = Instant::now();
    let mut metrics = Metrics::default();
    let n = fc.n();
    let outcome = (|| {
        let mut frontier = init_cut(fc, &mut metrics)?;
        loop {
            let Some(i) = frontier.color.iter().position(|&c| c == Color::Red) else {
                return Some(Cut::new(frontier.current.clone()));
            };
            if frontier.current[i] == fc.m(i) {
                return None;
            }
            frontier.current[i] += 1;
            metrics.rounds += 1;
            metrics.states_advanced += 1;
            metrics.comparisons += 2 * (n as u64 - 1);
            frontier.color[i] = red_against_all(fc, &frontier.current, i);
            for j in 0..n {
                if j != i
                    && frontier.color[j] == Color::Green
                    && fc.hb_fast(j, frontier.current[j], i, frontier.current[i])
                {
                    frontier.color[j] = Color::Red;
                }
            }
        }
    })();
    metrics.wall_nanos = start.elapsed().as_nanos() as u64;
    DetectResult {
        outcome: outcome.map_or(Outcome::NoCut, Outcome::Found),
        metrics,
    }
}
