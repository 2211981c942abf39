//! `hodgeci`: checks triples `(n, a, b)` and runs the exhaustive searches.
//!
//! Exit codes: 0 success or verified, 1 usage or parse error, 2 structural or
//! numeric failure, 3 inconclusive.

mod commands;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use hodgeci::fp::Prime;
use hodgeci::MultiDegree;

use commands::{DimSource, Outcome, Settings, EXIT_USAGE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Debug, Parser)]
#[command(
    name = "hodgeci",
    version,
    about = "Cylinder-homomorphism hypothesis checks for Fano complete intersections"
)]
struct Cli {
    /// Prime for the finite-field test (below 2^16).
    #[arg(long, global = true, default_value = "101", value_parser = parse_prime)]
    p: Prime,

    /// Random witnesses to try per triple.
    #[arg(long, global = true, default_value_t = 10)]
    trials: u32,

    /// Base seed; trial seeds are derived from it and the triple.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Add `wall_ms` to machine records.
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// δ(n, a, ℓ) and δ₋(n, a, ℓ).
    Delta {
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = parse_md)]
        a: MultiDegree,
        #[arg(long)]
        ell: u32,
    },
    /// The two numeric hypotheses for a triple.
    CheckConditions {
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = parse_md)]
        a: MultiDegree,
        #[arg(long, value_parser = parse_md)]
        b: MultiDegree,
    },
    /// The linear-subspace construction for a sub-sequence a' of a.
    Numlin {
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = parse_md)]
        a: MultiDegree,
        #[arg(long = "a-prime", value_parser = parse_md)]
        a_prime: MultiDegree,
        #[arg(long)]
        lambda: u32,
    },
    /// Quotient dimension for one random witness, or for a dumped one.
    #[command(group(ArgGroup::new("source").args(["n", "witness"]).required(true)))]
    Dim {
        #[arg(long, requires_all = ["a", "b"])]
        n: Option<u32>,
        #[arg(long, value_parser = parse_md)]
        a: Option<MultiDegree>,
        #[arg(long, value_parser = parse_md)]
        b: Option<MultiDegree>,
        /// Recompute from a witness file written by `--dump`.
        #[arg(long, conflicts_with_all = ["n", "a", "b"])]
        witness: Option<PathBuf>,
        /// Write the witness to this file.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Numeric hypotheses plus the randomized test.
    CheckTriple {
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = parse_md)]
        a: MultiDegree,
        #[arg(long, value_parser = parse_md)]
        b: MultiDegree,
    },
    /// Verified b with n - |b| = k for a pair (n, a).
    SearchB {
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = parse_md)]
        a: MultiDegree,
        /// Stop at the first verified b (default).
        #[arg(long, conflicts_with = "all")]
        first: bool,
        /// Verify every candidate.
        #[arg(long)]
        all: bool,
    },
    /// Pairs settled by the linear-subspace construction, grouped by n.
    SearchPairs {
        #[arg(long = "n-max", default_value_t = 40)]
        n_max: u32,
        /// Also write the machine records to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// All a with entries >= 2 and sum <= n.
    EnumerateA {
        #[arg(long)]
        n: u32,
    },
}

fn parse_md(s: &str) -> Result<MultiDegree, String> {
    s.parse::<MultiDegree>().map_err(|e| e.to_string())
}

fn parse_prime(s: &str) -> Result<Prime, String> {
    let p: u32 = s.parse().map_err(|e| format!("{e}"))?;
    Prime::new(p).map_err(|e| e.to_string())
}

fn run(cli: &Cli) -> Result<Outcome, commands::CliError> {
    let settings = Settings {
        p: cli.p,
        trials: cli.trials,
        seed: cli.seed,
    };
    match &cli.command {
        Command::Delta { n, a, ell } => commands::delta_cmd(*n, a, *ell),
        Command::CheckConditions { n, a, b } => commands::check_conditions_cmd(*n, a, b),
        Command::Numlin {
            n,
            a,
            a_prime,
            lambda,
        } => commands::numlin_cmd(*n, a, a_prime, *lambda),
        Command::Dim {
            n,
            a,
            b,
            witness,
            dump,
        } => {
            let source = match (witness, n, a, b) {
                (Some(path), ..) => DimSource::Dump(path),
                (None, Some(n), Some(a), Some(b)) => DimSource::Sample { n: *n, a, b },
                _ => unreachable!("clap enforces --witness or --n/--a/--b"),
            };
            commands::dim_cmd(source, &settings, dump.as_deref())
        }
        Command::CheckTriple { n, a, b } => commands::check_triple_cmd(*n, a, b, &settings),
        Command::SearchB { n, a, all, .. } => commands::search_b_cmd(*n, a, *all, &settings),
        Command::SearchPairs { n_max, out } => commands::search_pairs_cmd(*n_max, out.as_deref()),
        Command::EnumerateA { n } => commands::enumerate_a_cmd(*n),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let start = Instant::now();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let wall_ms = cli.timing.then(|| start.elapsed().as_millis() as u64);

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.format {
        Format::Human => {
            let _ = out.write_all(outcome.human.as_bytes());
        }
        Format::Machine => {
            for mut rec in outcome.records {
                rec.wall_ms = wall_ms;
                let _ = writeln!(out, "{}", rec.to_line());
            }
        }
    }
    ExitCode::from(outcome.code)
}
