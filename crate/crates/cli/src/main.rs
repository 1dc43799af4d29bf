//! `tropkp` — subset sum and knapsack over tropical matrix semigroups.
//!
//! Exit codes: 0 Yes/valid, 1 No/invalid, 2 Unknown, 64 usage error,
//! 65 unreadable or malformed input data.

mod commands;
mod format;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use commands::{EngineArg, FormatArg, ModeArg, SuiteArg, TagArg};
use format::CliError;

#[derive(Parser)]
#[command(
    name = "tropkp",
    version,
    about = "Subset sum and knapsack decision problems over max-plus and max-times matrices"
)]
struct RunConfig {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the target is a product of the witnesses.
    Solve {
        /// Decision problem to solve.
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Solver backend.
        #[arg(long, value_enum, default_value_t = EngineArg::Dp)]
        engine: EngineArg,
        /// Memo cap exponent for the generic engine (cap = size₂(I)^e).
        #[arg(long, value_name = "E")]
        cap_exponent: Option<u32>,
        /// Report style.
        #[arg(long, value_enum, default_value_t = FormatArg::Human)]
        format: FormatArg,
        /// Instance file (JSON).
        instance: PathBuf,
    },
    /// Check a certificate file against an instance.
    Verify {
        /// Decision problem the certificate claims to solve.
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Certificate file (JSON array of decimal exponent strings).
        #[arg(long, value_name = "FILE")]
        certificate: PathBuf,
        /// Instance file (JSON).
        instance: PathBuf,
    },
    /// Translate scalar or exact-cover inputs into solver inputs.
    Reduce {
        /// Scalar problem file; embeds into constant k×k matrices.
        #[arg(
            long,
            value_name = "FILE",
            requires = "k",
            requires = "tag",
            conflicts_with = "x3c",
            required_unless_present = "x3c"
        )]
        scalar: Option<PathBuf>,
        /// Matrix dimension for the scalar embedding.
        #[arg(long, requires = "scalar")]
        k: Option<usize>,
        /// Semiring for the scalar embedding.
        #[arg(long, value_enum, requires = "scalar")]
        tag: Option<TagArg>,
        /// Exact-cover-by-3-sets file; emits a scalar knapsack problem.
        #[arg(long, value_name = "FILE")]
        x3c: Option<PathBuf>,
        /// Output file (stdout if omitted).
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Draw a uniform max-times instance of binary size m (deterministic per seed).
    Sample {
        /// Instance size stratum.
        #[arg(long)]
        m: u64,
        /// Matrix dimension.
        #[arg(long)]
        k: usize,
        /// RNG seed.
        #[arg(long)]
        seed: u64,
        /// Output file (stdout if omitted).
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Count max-times matrices of size l, or instances of size m.
    Count {
        /// Matrix dimension.
        #[arg(long)]
        k: usize,
        /// Matrix size: count k×k matrices with entry bit lengths summing to l.
        #[arg(long, conflicts_with = "m", required_unless_present = "m")]
        l: Option<u64>,
        /// Instance size: count instances (witnesses plus target) of size m.
        #[arg(long)]
        m: Option<u64>,
    },
    /// Run a benchmark suite and print a machine-readable summary.
    Bench {
        /// Which suite to run.
        #[arg(long, value_enum, default_value_t = SuiteArg::Oracle)]
        suite: SuiteArg,
        /// Instances per semiring/mode cell (oracle suite).
        #[arg(long, default_value_t = 100)]
        instances: u64,
        /// Corpus seed (oracle suite).
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Worker threads for independent solves.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
        workers: u16,
        /// Report style.
        #[arg(long, value_enum, default_value_t = FormatArg::Machine)]
        format: FormatArg,
    },
}

fn dispatch(config: RunConfig) -> Result<i32, CliError> {
    match config.command {
        Command::Solve { mode, engine, cap_exponent, format, instance } => {
            commands::cmd_solve(mode, engine, cap_exponent, format, &instance)
        }
        Command::Verify { mode, certificate, instance } => {
            commands::cmd_verify(mode, &certificate, &instance)
        }
        Command::Reduce { scalar, k, tag, x3c, output } => {
            commands::cmd_reduce(scalar.as_deref(), k, tag, x3c.as_deref(), output.as_deref())
        }
        Command::Sample { m, k, seed, output } => {
            commands::cmd_sample(m, k, seed, output.as_deref())
        }
        Command::Count { k, l, m } => commands::cmd_count(k, l, m),
        Command::Bench { suite, instances, seed, workers, format } => {
            commands::cmd_bench(suite, instances, seed, workers as usize, format)
        }
    }
}

/// Dying silently on a closed pipe (`tropkp … | head`) beats the default
/// panic Rust installs by ignoring SIGPIPE.
fn reset_sigpipe() {
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

fn main() -> ExitCode {
    reset_sigpipe();
    let config = match RunConfig::try_parse() {
        Ok(config) => config,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(config) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
