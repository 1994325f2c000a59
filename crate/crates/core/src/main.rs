use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use semigalois::cli::{run, Command, RunConfig};
use semigalois::instance::parse_instance_file;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    JsonLines,
}

/// Galois theory checks for finite inverse semigroups acting on finite commutative rings.
#[derive(Parser, Debug)]
#[command(name = "semigalois", version)]
struct Cli {
    /// Report format.
    #[arg(long, env = "SEMIGALOIS_FORMAT", value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for randomised corpora.
    #[arg(long, env = "SEMIGALOIS_SEED", global = true)]
    seed: Option<u64>,
    /// Refuse tensor products of larger order.
    #[arg(long, env = "SEMIGALOIS_GUARD_MAX_ORDER", global = true)]
    guard_max_order: Option<BigUint>,
    /// Cross-check correspondences against every intermediate subalgebra.
    #[arg(
        long,
        env = "SEMIGALOIS_BRUTE_FORCE_SUBALGEBRAS",
        num_args = 0..=1,
        default_missing_value = "true",
        global = true
    )]
    brute_force_subalgebras: Option<bool>,
    /// Append wall-clock time to the report (breaks byte stability).
    #[arg(long, env = "SEMIGALOIS_TIMING", global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Parse and validate an instance.
    Validate { file: PathBuf },
    /// Idempotents, natural order, sigma or tau classes, flags.
    Analyze { file: PathBuf },
    /// Evaluate and compare the Galois criteria.
    Galois { file: PathBuf },
    /// Check the subsemigroup/subalgebra correspondence.
    Correspond { file: PathBuf },
    /// Zero-case pipeline: tau, groupoid, conversions, correspondence.
    Zero { file: PathBuf },
    /// Run fixtures and a seeded random corpus.
    Selftest {
        /// Corpus size.
        #[arg(long, env = "SEMIGALOIS_SELFTEST_COUNT")]
        count: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (cmd, file, count) = match &cli.command {
        Cmd::Validate { file } => (Command::Validate, Some(file), None),
        Cmd::Analyze { file } => (Command::Analyze, Some(file), None),
        Cmd::Galois { file } => (Command::Galois, Some(file), None),
        Cmd::Correspond { file } => (Command::Correspond, Some(file), None),
        Cmd::Zero { file } => (Command::Zero, Some(file), None),
        Cmd::Selftest { count } => (Command::Selftest, None, *count),
    };
    let outcome = file.map(|f| parse_instance_file(f)).transpose().and_then(|inst| {
        let cfg = RunConfig::merge(
            cli.guard_max_order,
            cli.brute_force_subalgebras,
            cli.seed,
            count,
            inst.as_ref(),
        );
        run(cmd, inst.as_ref(), &cfg)
    });
    match outcome {
        Ok(mut report) => {
            if cli.timing {
                report.timing_ms = Some(start.elapsed().as_millis() as u64);
            }
            let out = match cli.format {
                Format::Text => report.to_text(),
                Format::JsonLines => report.to_json_lines(),
            };
            print!("{out}");
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
