//! gcount — run, check, build, and transform counter machines.
//!
//! Exit codes are a stable contract: 0 for accept (or a clean differential
//! check), 1 for any non-accepting verdict or a check with disagreements,
//! 2 for usage, parse, or validation errors. Output carries no timestamps;
//! identical invocations print identical bytes.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gcount_core::automaton::{CompiledMachine, MachineSpec, RunOptions, RunResult, Verdict};
use gcount_core::machine_file;
use gcount_core::machines::{build_lgen, build_lpal, build_lpat, real_to_matrix, LGenParams};
use gcount_core::oracle::{differential_test, oracle_lgen, oracle_lpal, oracle_lpat, Corpus, DiffReport};

#[derive(Parser)]
#[command(name = "gcount", version, about = "Finite automata with group-valued counters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a machine on one input and report the verdict and statistics.
    Run {
        /// Machine description file.
        machine: PathBuf,
        /// Input string (symbols from the machine's alphabet).
        input: String,
        /// Print one line per executed step.
        #[arg(long)]
        trace: bool,
        #[arg(long, default_value_t = gcount_core::automaton::DEFAULT_MAX_STEPS)]
        max_steps: u64,
    },
    /// Diff a machine against a reference predicate over an exhaustive
    /// corpus.
    Check {
        /// Machine description file.
        machine: PathBuf,
        #[arg(long, value_enum)]
        oracle: OracleKind,
        /// Corpus bound: every string over the machine's alphabet up to
        /// this length.
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        /// Multipliers l1,l2,... (lgen oracle only).
        #[arg(long, value_delimiter = ',')]
        l: Vec<u64>,
        #[arg(long, default_value_t = gcount_core::automaton::DEFAULT_MAX_STEPS)]
        max_steps: u64,
    },
    /// Write one of the stock machines to a file.
    Build {
        #[arg(long, value_enum)]
        family: Family,
        #[command(flatten)]
        lgen: LGenArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rebuild a real-counter machine over a 1x1 matrix counter.
    Transform {
        /// Machine description file (real-sqrt counter).
        machine: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    Lgen,
    Lpat,
    Lpal,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Lgen,
    Lpat,
    Lpal,
}

#[derive(Args)]
struct LGenArgs {
    /// Multipliers l1,l2,... — one per class after the first (lgen only).
    #[arg(long, value_delimiter = ',')]
    l: Vec<u64>,
    /// Counter basis primes p1,p2,... — one per multiplier (lgen only).
    #[arg(long, value_delimiter = ',')]
    primes: Vec<u64>,
}

/// Errors that map to exit code 2.
struct UsageError(String);

macro_rules! usage_from {
    ($($ty:ty),*) => {$(
        impl From<$ty> for UsageError {
            fn from(e: $ty) -> Self {
                UsageError(e.to_string())
            }
        }
    )*};
}

usage_from!(
    gcount_core::automaton::EngineError,
    gcount_core::machines::BuildError,
    gcount_core::machine_file::EmitError
);

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run { machine, input, trace, max_steps } => cmd_run(machine, &input, trace, max_steps),
        Command::Check { machine, oracle, max_len, l, max_steps } => {
            cmd_check(machine, oracle, max_len, &l, max_steps)
        }
        Command::Build { family, lgen, out } => cmd_build(family, lgen, out),
        Command::Transform { machine, out } => cmd_transform(machine, out),
    };
    match outcome {
        Ok(code) => code,
        Err(UsageError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn load_machine(path: &PathBuf) -> Result<MachineSpec, UsageError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    let spec = machine_file::parse(&text)
        .map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    let report = spec.validate();
    if !report.is_ok() {
        return Err(UsageError(format!("{}: invalid machine\n{report}", path.display())));
    }
    Ok(spec)
}

fn render_run_report(spec: &MachineSpec, input: &str, result: &RunResult) -> String {
    let mut out = String::new();
    if let Some(steps) = &result.trace {
        let _ = writeln!(out, "trace:");
        for (index, step) in steps.iter().enumerate() {
            let _ = writeln!(
                out,
                "  {index} {} {} {} {} {}",
                step.config.state,
                step.config.head,
                step.symbol,
                step.action.op,
                machine_file::render_value(&spec.counter, &step.config.counter),
            );
        }
    }
    let _ = writeln!(out, "machine: {}", spec.name);
    let _ = writeln!(out, "input: {input}");
    let _ = writeln!(out, "verdict: {}", result.verdict);
    let _ = writeln!(out, "steps: {}", result.steps);
    let _ = writeln!(out, "head_reversals: {}", result.head_reversals);
    let _ = writeln!(out, "counter_reversals: {}", result.counter_reversals);
    let _ = writeln!(
        out,
        "counter: {}",
        machine_file::render_value(&spec.counter, &result.final_configuration.counter)
    );
    out
}

fn cmd_run(path: PathBuf, input: &str, trace: bool, max_steps: u64) -> Result<ExitCode, UsageError> {
    let spec = load_machine(&path)?;
    let machine = CompiledMachine::new(&spec)?;
    let options = RunOptions { max_steps, record_trace: trace };
    let result = machine.run(input, options)?;
    print!("{}", render_run_report(&spec, input, &result));
    Ok(if result.verdict == Verdict::Accept { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn render_check_report(spec: &MachineSpec, oracle_name: &str, corpus: &Corpus, report: &DiffReport) -> String {
    let mut out = String::new();
    for disagreement in &report.disagreements {
        let _ = writeln!(out, "{}", disagreement.json_line());
    }
    let _ = writeln!(out, "machine: {}", spec.name);
    let _ = writeln!(out, "oracle: {oracle_name}");
    let alphabet: Vec<String> = spec.alphabet.iter().map(|c| c.to_string()).collect();
    let _ = writeln!(out, "corpus: alphabet={} count={}", alphabet.join(","), corpus.len());
    let _ = writeln!(out, "total: {}", report.total);
    let _ = writeln!(out, "machine_accepts: {}", report.machine_accepts);
    let _ = writeln!(out, "oracle_accepts: {}", report.oracle_accepts);
    let _ = writeln!(out, "crashes: {}", report.crashes);
    let _ = writeln!(out, "step_limit_hits: {}", report.step_limit_hits);
    let _ = writeln!(out, "max_counter_reversals: {}", report.max_counter_reversals);
    let _ = writeln!(out, "max_head_reversals: {}", report.max_head_reversals);
    let by_len: Vec<String> = report
        .max_counter_reversals_by_len
        .iter()
        .map(|(len, reversals)| format!("{len}:{reversals}"))
        .collect();
    let _ = writeln!(out, "max_counter_reversals_by_len: {}", by_len.join(" "));
    let _ = writeln!(out, "disagreements: {}", report.disagreements.len());
    out
}

fn cmd_check(
    path: PathBuf,
    oracle: OracleKind,
    max_len: usize,
    multipliers: &[u64],
    max_steps: u64,
) -> Result<ExitCode, UsageError> {
    let spec = load_machine(&path)?;
    let alphabet: Vec<char> = spec.alphabet.iter().copied().collect();
    let corpus = Corpus::exhaustive(&alphabet, max_len);
    let options = RunOptions { max_steps, record_trace: false };
    let (name, report) = match oracle {
        OracleKind::Lgen => {
            if multipliers.is_empty() {
                return Err(UsageError("--oracle lgen needs --l l1,l2,...".into()));
            }
            // The predicate ignores the prime basis, so any valid distinct
            // primes satisfy the parameter check.
            let primes: Vec<u64> = first_primes(multipliers.len());
            let params = LGenParams::new(multipliers.to_vec(), primes)?;
            let report =
                differential_test(&spec, |x| oracle_lgen(&params, x), &corpus, options)?;
            (format!("lgen l={}", join(multipliers)), report)
        }
        OracleKind::Lpat => ("lpat".to_string(), differential_test(&spec, oracle_lpat, &corpus, options)?),
        OracleKind::Lpal => ("lpal".to_string(), differential_test(&spec, oracle_lpal, &corpus, options)?),
    };
    print!("{}", render_check_report(&spec, &name, &corpus, &report));
    Ok(if report.agreed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn first_primes(count: usize) -> Vec<u64> {
    let mut primes = Vec::with_capacity(count);
    let mut candidate = 2u64;
    while primes.len() < count {
        if gcount_core::counters::is_prime(candidate) {
            primes.push(candidate);
        }
        candidate += 1;
    }
    primes
}

fn join(values: &[u64]) -> String {
    values.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn cmd_build(family: Family, args: LGenArgs, out: PathBuf) -> Result<ExitCode, UsageError> {
    let spec = match family {
        Family::Lgen => {
            let params = LGenParams::new(args.l, args.primes)?;
            build_lgen(&params)
        }
        Family::Lpat => build_lpat(),
        Family::Lpal => build_lpal(),
    };
    write_machine(&spec, &out)
}

fn cmd_transform(path: PathBuf, out: PathBuf) -> Result<ExitCode, UsageError> {
    let spec = load_machine(&path)?;
    let transformed = real_to_matrix(&spec)?;
    write_machine(&transformed, &out)
}

fn write_machine(spec: &MachineSpec, out: &PathBuf) -> Result<ExitCode, UsageError> {
    let text = machine_file::emit(spec)?;
    std::fs::write(out, text).map_err(|e| UsageError(format!("{}: {e}", out.display())))?;
    println!("wrote {}", out.display());
    Ok(ExitCode::SUCCESS)
}
