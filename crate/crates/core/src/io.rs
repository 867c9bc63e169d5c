//! Trace file format, validation, and deterministic serialization.
//!
//! A trace file is UTF-8 text with LF line endings:
//!
//! ```text
//! trace <n>
//! state <process> <index> <pred:0|1> <v1> <v2> ... <vn>
//! ```
//!
//! State lines are ordered by process, then index. Lines starting with `#`
//! are comments; blank lines are ignored. Processes and indices are
//! 1-based on the wire.

use std::fmt;

use crate::clock::VectorClock;
use crate::error::ParseError;
use crate::model::{Computation, LocalState};

/// A broken computation invariant. Violations are data, not faults: the
/// validator reports all of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `clock[process] != index`.
    OwnComponent {
        process: usize,
        index: u32,
        got: u32,
    },
    /// A clock entry decreased along the process.
    NonDecreasing {
        process: usize,
        index: u32,
        component: usize,
    },
    /// A clock entry cites a state that does not exist.
    MissingCitedState {
        process: usize,
        index: u32,
        cited_process: usize,
        cited_index: u32,
    },
    /// The cited state's clock is not componentwise dominated by the
    /// citing state's clock.
    CitedClockExceeds {
        process: usize,
        index: u32,
        cited_process: usize,
        cited_index: u32,
        component: usize,
    },
    /// The cited state already knows this state or a later one on the
    /// citing process, which would close a causal cycle.
    CyclicCitation {
        process: usize,
        index: u32,
        cited_process: usize,
        cited_index: u32,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::OwnComponent {
                process,
                index,
                got,
            } => write!(
                f,
                "state ({},{}) own clock entry is {}, expected {}",
                process + 1,
                index,
                got,
                index
            ),
            Violation::NonDecreasing {
                process,
                index,
                component,
            } => write!(
                f,
                "state ({},{}) clock entry {} decreases along the process",
                process + 1,
                index,
                component + 1
            ),
            Violation::MissingCitedState {
                process,
                index,
                cited_process,
                cited_index,
            } => write!(
                f,
                "state ({},{}) cites state ({},{}) which does not exist",
                process + 1,
                index,
                cited_process + 1,
                cited_index
            ),
            Violation::CitedClockExceeds {
                process,
                index,
                cited_process,
                cited_index,
                component,
            } => write!(
                f,
                "state ({},{}) cites state ({},{}) whose clock entry {} exceeds the citing clock",
                process + 1,
                index,
                cited_process + 1,
                cited_index,
                component + 1
            ),
            Violation::CyclicCitation {
                process,
                index,
                cited_process,
                cited_index,
            } => write!(
                f,
                "state ({},{}) cites state ({},{}) which already knows it: causal cycle",
                process + 1,
                index,
                cited_process + 1,
                cited_index
            ),
        }
    }
}

impl Violation {
    fn location(&self) -> (usize, u32) {
        match *self {
            Violation::OwnComponent { process, index, .. }
            | Violation::NonDecreasing { process, index, .. }
            | Violation::MissingCitedState { process, index, .. }
            | Violation::CitedClockExceeds { process, index, .. }
            | Violation::CyclicCitation { process, index, .. } => (process, index),
        }
    }
}

/// Checks every computation invariant and returns the violations found.
///
/// The checks, per state `s` of process `i`:
/// * `s.clock[i] == s.index`;
/// * clocks are componentwise non-decreasing along each process;
/// * for every other process `k` with `c = s.clock[k] >= 1`, state `(k,c)`
///   exists, its clock is componentwise `<=` `s.clock`, and its own view
///   of process `i` predates `s` (anything else would need a message
///   cycle).
pub fn validate(comp: &Computation) -> Vec<Violation> {
    let n = comp.n();
    let mut out = Vec::new();
    for (i, trace) in comp.traces().iter().enumerate() {
        for (pos, s) in trace.iter().enumerate() {
            let index = pos as u32 + 1;
            if s.clock[i] != index {
                out.push(Violation::OwnComponent {
                    process: i,
                    index,
                    got: s.clock[i],
                });
            }
            if pos > 0 {
                let prev = &trace[pos - 1];
                for k in 0..n {
                    if s.clock[k] < prev.clock[k] {
                        out.push(Violation::NonDecreasing {
                            process: i,
                            index,
                            component: k,
                        });
                    }
                }
            }
            for k in 0..n {
                if k == i {
                    continue;
                }
                let c = s.clock[k];
                if c == 0 {
                    continue;
                }
                let Some(cited) = comp.state(k, c) else {
                    out.push(Violation::MissingCitedState {
                        process: i,
                        index,
                        cited_process: k,
                        cited_index: c,
                    });
                    continue;
                };
                let mut dominated = true;
                for comp_idx in 0..n {
                    if cited.clock[comp_idx] > s.clock[comp_idx] {
                        out.push(Violation::CitedClockExceeds {
                            process: i,
                            index,
                            cited_process: k,
                            cited_index: c,
                            component: comp_idx,
                        });
                        dominated = false;
                        break;
                    }
                }
                if dominated && cited.clock[i] >= index {
                    out.push(Violation::CyclicCitation {
                        process: i,
                        index,
                        cited_process: k,
                        cited_index: c,
                    });
                }
            }
        }
    }
    out
}

/// Parses without the semantic clock checks. Structural problems
/// (malformed lines, duplicates, gaps, arity) still fail.
pub fn parse_unvalidated(text: &str) -> Result<Computation, ParseError> {
    parse_with_lines(text).map(|(comp, _)| comp)
}

fn parse_with_lines(text: &str) -> Result<(Computation, Vec<Vec<usize>>), ParseError> {
    let mut n: Option<usize> = None;
    let mut traces: Vec<Vec<LocalState>> = Vec::new();
    let mut lines_of: Vec<Vec<usize>> = Vec::new();
    let mut cur_process: usize = 0;

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match n {
            None => {
                if tokens.len() != 2 || tokens[0] != "trace" {
                    return Err(ParseError::new(lineno, "expected header `trace <n>`"));
                }
                let count: usize = tokens[1]
                    .parse()
                    .map_err(|_| ParseError::new(lineno, "invalid process count"))?;
                if count == 0 {
                    return Err(ParseError::new(lineno, "process count must be at least 1"));
                }
                n = Some(count);
                traces = vec![Vec::new(); count];
                lines_of = vec![Vec::new(); count];
            }
            Some(count) => {
                if tokens[0] != "state" {
                    return Err(ParseError::new(
                        lineno,
                        format!("expected a `state` line, found `{}`", tokens[0]),
                    ));
                }
                if tokens.len() != 4 + count {
                    return Err(ParseError::new(
                        lineno,
                        format!("clock length mismatch: expected {count} entries"),
                    ));
                }
                let process: usize = tokens[1]
                    .parse()
                    .map_err(|_| ParseError::new(lineno, "invalid process id"))?;
                if process < 1 || process > count {
                    return Err(ParseError::new(
                        lineno,
                        format!("process id {process} not in 1..={count}"),
                    ));
                }
                let process = process - 1;
                let index: u32 = tokens[2]
                    .parse()
                    .map_err(|_| ParseError::new(lineno, "invalid state index"))?;
                if index == 0 {
                    return Err(ParseError::new(lineno, "state index must be at least 1"));
                }
                let pred = match tokens[3] {
                    "0" => false,
                    "1" => true,
                    other => {
                        return Err(ParseError::new(
                            lineno,
                            format!("predicate bit must be 0 or 1, found `{other}`"),
                        ))
                    }
                };
                let mut entries = Vec::with_capacity(count);
                for tok in &tokens[4..] {
                    let v: u32 = tok
                        .parse()
                        .map_err(|_| ParseError::new(lineno, "invalid clock entry"))?;
                    entries.push(v);
                }

                if process < cur_process {
                    return Err(ParseError::new(
                        lineno,
                        format!(
                            "state lines out of order: process {} after process {}",
                            process + 1,
                            cur_process + 1
                        ),
                    ));
                }
                cur_process = process;
                let have = traces[process].len() as u32;
                if index <= have {
                    return Err(ParseError::new(
                        lineno,
                        format!("duplicate state ({},{})", process + 1, index),
                    ));
                }
                if index > have + 1 {
                    return Err(ParseError::new(
                        lineno,
                        format!(
                            "index gap on process {}: expected {}, found {}",
                            process + 1,
                            have + 1,
                            index
                        ),
                    ));
                }
                traces[process].push(LocalState {
                    process,
                    index,
                    pred,
                    clock: VectorClock::new(entries),
                });
                lines_of[process].push(lineno);
            }
        }
    }
    match n {
        None => Err(ParseError::new(1, "missing header `trace <n>`")),
        Some(_) => Ok((Computation::new(traces), lines_of)),
    }
}

/// Parses and validates a trace file.
///
/// The first invariant violation aborts the parse with a diagnostic
/// pointing at the offending state's line.
pub fn parse(text: &str) -> Result<Computation, ParseError> {
    let (comp, lines_of) = parse_with_lines(text)?;
    if let Some(v) = validate(&comp).into_iter().next() {
        let (process, index) = v.location();
        let line = lines_of[process][index as usize - 1];
        return Err(ParseError::new(line, v.to_string()));
    }
    Ok(comp)
}

/// Canonical text for a computation: processes ascending, indices
/// ascending, single-space separation, LF endings.
pub fn serialize(comp: &Computation) -> String {
    let mut out = String::new();
    out.push_str(&format!("trace {}\n", comp.n()));
    for (i, trace) in comp.traces().iter().enumerate() {
        for s in trace {
            out.push_str(&format!(
                "state {} {} {}",
                i + 1,
                s.index,
                if s.pred { 1 } else { 0 }
            ));
            for k in 0..s.clock.len() {
                out.push_str(&format!(" {}", s.clock[k]));
            }
            out.push('\n');
        }
    }
    out
}
