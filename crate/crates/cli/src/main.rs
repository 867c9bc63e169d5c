//! Command-line front end: detect, generate, validate, bench.
//!
//! Exit codes: 0 = success (detect: cut found), 1 = no satisfying cut
//! (detect) or invariant violations (validate), 2 = input or usage
//! error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use firstcut::{
    brute_min_cut, generate, jls_detect, opt_detect, parse, parse_unvalidated, seq_detect,
    serialize, validate, Computation, DetectResult, FilteredComputation, GenParams, Metrics,
    Outcome,
};

#[derive(Parser)]
#[command(
    name = "firstcut",
    about = "Detect weak conjunctive predicates in distributed computation traces",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a detector on a trace file and print the first satisfying cut.
    Detect(DetectArgs),
    /// Generate a random trace file from a seed.
    Generate(GenerateArgs),
    /// Check the model invariants of a trace file.
    Validate(ValidateArgs),
    /// Run detectors repeatedly and emit CSV measurements.
    Bench(BenchArgs),
}

#[derive(Args)]
struct DetectArgs {
    /// Trace file to analyze.
    #[arg(long)]
    input: PathBuf,
    /// Detector to run.
    #[arg(long, value_enum)]
    algo: Algo,
    /// Worker threads for the parallel detectors (0 = all cores).
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Print run metrics to stderr.
    #[arg(long)]
    metrics: bool,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    processes: usize,
    #[arg(long)]
    states: u32,
    #[arg(long, default_value_t = 0.3)]
    send_prob: f64,
    #[arg(long, default_value_t = 0.5)]
    recv_prob: f64,
    #[arg(long, default_value_t = 1.0)]
    pred_density: f64,
    #[arg(long)]
    seed: u64,
    /// Output trace file.
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    /// Trace files to measure; alternative to --gen.
    #[arg(long, conflicts_with = "gen", num_args = 1..)]
    input: Vec<PathBuf>,
    /// Generate the input instead of reading it.
    #[arg(long, requires = "processes", requires = "states")]
    gen: bool,
    #[arg(long)]
    processes: Option<usize>,
    #[arg(long)]
    states: Option<u32>,
    #[arg(long, default_value_t = 0.3)]
    send_prob: f64,
    #[arg(long, default_value_t = 0.5)]
    recv_prob: f64,
    #[arg(long, default_value_t = 1.0)]
    pred_density: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated detector list.
    #[arg(long, value_enum, value_delimiter = ',', required = true)]
    algo: Vec<Algo>,
    /// Repetitions per (input, detector) pair.
    #[arg(long, default_value_t = 1)]
    repeat: u32,
    /// Worker threads for the parallel detectors (0 = all cores).
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Seq,
    Opt,
    Jls,
    Brute,
}

impl Algo {
    fn name(self) -> &'static str {
        match self {
            Algo::Seq => "seq",
            Algo::Opt => "opt",
            Algo::Jls => "jls",
            Algo::Brute => "brute",
        }
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Detect(args) => cmd_detect(&args),
        Command::Generate(args) => cmd_generate(&args),
        Command::Validate(args) => cmd_validate(&args),
        Command::Bench(args) => cmd_bench(&args),
    }
    .unwrap_or_else(|message| {
        eprintln!("error: {message}");
        ExitCode::from(2)
    })
}

fn read_trace(path: &Path) -> Result<Computation, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn run_detector(algo: Algo, fc: &FilteredComputation, threads: usize) -> Result<DetectResult, String> {
    if algo == Algo::Brute {
        let start = Instant::now();
        let outcome = brute_min_cut(fc).map_err(|e| e.to_string())?;
        return Ok(DetectResult {
            outcome,
            metrics: Metrics {
                wall_nanos: start.elapsed().as_nanos() as u64,
                ..Metrics::default()
            },
        });
    }
    let detector = match algo {
        Algo::Seq => seq_detect,
        Algo::Opt => opt_detect,
        Algo::Jls => jls_detect,
        Algo::Brute => unreachable!(),
    };
    if threads == 0 {
        return Ok(detector(fc));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| e.to_string())?;
    Ok(pool.install(|| detector(fc)))
}

fn cmd_detect(args: &DetectArgs) -> Result<ExitCode, String> {
    let comp = read_trace(&args.input)?;
    let fc = comp.filter();
    let result = run_detector(args.algo, &fc, args.threads)?;
    if args.metrics {
        let m = result.metrics;
        eprintln!("rounds {}", m.rounds);
        eprintln!("comparisons {}", m.comparisons);
        eprintln!("states_advanced {}", m.states_advanced);
        eprintln!("edges_relaxed {}", m.edges_relaxed);
        eprintln!("wall_nanos {}", m.wall_nanos);
    }
    match result.outcome {
        Outcome::Found(cut) => {
            println!("cut {cut}");
            for i in 0..fc.n() {
                let state = fc.state(i, cut.index(i));
                let clock: Vec<String> = state
                    .clock
                    .entries()
                    .iter()
                    .map(u32::to_string)
                    .collect();
                println!("state {} {} {}", i + 1, state.orig_index, clock.join(" "));
            }
            Ok(ExitCode::SUCCESS)
        }
        Outcome::NoCut => {
            println!("no-cut");
            Ok(ExitCode::from(1))
        }
    }
}

fn gen_params(
    processes: usize,
    states: u32,
    send_prob: f64,
    recv_prob: f64,
    pred_density: f64,
    seed: u64,
) -> Result<GenParams, String> {
    let params = GenParams {
        processes,
        states,
        send_prob,
        recv_prob,
        pred_density,
        seed,
    };
    params.check()?;
    Ok(params)
}

fn cmd_generate(args: &GenerateArgs) -> Result<ExitCode, String> {
    let params = gen_params(
        args.processes,
        args.states,
        args.send_prob,
        args.recv_prob,
        args.pred_density,
        args.seed,
    )?;
    let comp = generate(&params);
    fs::write(&args.output, serialize(&comp))
        .map_err(|e| format!("cannot write {}: {e}", args.output.display()))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_validate(args: &ValidateArgs) -> Result<ExitCode, String> {
    let text = fs::read_to_string(&args.input)
        .map_err(|e| format!("cannot read {}: {e}", args.input.display()))?;
    let comp = parse_unvalidated(&text).map_err(|e| format!("{}: {e}", args.input.display()))?;
    let violations = validate(&comp);
    if violations.is_empty() {
        return Ok(ExitCode::SUCCESS);
    }
    for v in &violations {
        eprintln!("{v}");
    }
    Ok(ExitCode::from(1))
}

fn cmd_bench(args: &BenchArgs) -> Result<ExitCode, String> {
    let mut inputs: Vec<(String, Computation)> = Vec::new();
    if args.gen {
        let params = gen_params(
            args.processes.expect("required by clap"),
            args.states.expect("required by clap"),
            args.send_prob,
            args.recv_prob,
            args.pred_density,
            args.seed,
        )?;
        inputs.push((format!("gen-seed{}", args.seed), generate(&params)));
    } else {
        if args.input.is_empty() {
            return Err("bench needs --input files or --gen".into());
        }
        for path in &args.input {
            inputs.push((path.display().to_string(), read_trace(path)?));
        }
    }

    println!("algo,n,m_total,outcome,rounds,comparisons,edges_relaxed,states_advanced,wall_nanos,repeat");
    for (_, comp) in &inputs {
        let fc = comp.filter();
        let m_total = comp.total_states();
        for &algo in &args.algo {
            for repeat in 0..args.repeat {
                let result = run_detector(algo, &fc, args.threads)?;
                let outcome = match result.outcome {
                    Outcome::Found(_) => "found",
                    Outcome::NoCut => "no-cut",
                };
                let m = result.metrics;
                println!(
                    "{},{},{},{},{},{},{},{},{},{}",
                    algo.name(),
                    comp.n(),
                    m_total,
                    outcome,
                    m.rounds,
                    m.comparisons,
                    m.edges_relaxed,
                    m.states_advanced,
                    m.wall_nanos,
                    repeat
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
