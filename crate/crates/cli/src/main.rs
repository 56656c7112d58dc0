//! `gptlab`: exact analysis of polytopic GPT state spaces from the command line.
//!
//! Exit codes: 0 success (and, for `postulate`, every transformation exists),
//! 1 an obstruction was found, 2 input or internal error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gptlab_core::PolyhedralNorm;

#[derive(Debug, Parser)]
#[command(name = "gptlab", version, about = "Exact analysis of polytopic GPT state spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print Classical or DiscreteNonClassical.
    Classify(ModelArgs),
    /// List the pure effects in canonical order.
    Effects(ModelArgs),
    /// Search for undisturbing measurement transformations.
    Postulate {
        #[command(flatten)]
        model: ModelArgs,
        /// Check every nonzero pure effect, not only minus-face effects.
        #[arg(long)]
        all_pure: bool,
    },
    /// Exact minimal disturbance of the certain face.
    Disturbance {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        norm: NormArg,
        /// Index into the `effects` table.
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        effect_index: Option<usize>,
        /// Every effect whose certain face is a minus-face.
        #[arg(long)]
        all: bool,
        /// Include the minimizing transformation.
        #[arg(long)]
        witness: bool,
        /// Run even when dim_A exceeds the default limit.
        #[arg(long)]
        force: bool,
        /// Cross-check each value against this many seeded samples of T_f
        /// (seed from GPTLAB_SEED).
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Full analysis as a JSON report.
    Report {
        /// Model file path or `zoo:<name>[:<param>]`.
        model: String,
        #[command(flatten)]
        norm: NormArg,
        /// Output path; stdout when omitted.
        #[arg(long = "json", value_name = "OUT")]
        out: Option<PathBuf>,
        #[arg(long)]
        all_pure: bool,
        #[arg(long)]
        force: bool,
        /// Record wall-clock time per stage (makes output non-deterministic).
        #[arg(long)]
        timings: bool,
    },
    /// Re-validate every witness and certificate of a report without an LP.
    VerifyReport {
        report: PathBuf,
    },
    /// List the built-in models.
    Zoo,
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// Model file path or `zoo:<name>[:<param>]`.
    model: String,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct NormArg {
    #[arg(long, value_enum, default_value_t = NormChoice::Linf)]
    norm: NormChoice,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum NormChoice {
    Linf,
    L1,
}

impl From<NormChoice> for PolyhedralNorm {
    fn from(n: NormChoice) -> Self {
        match n {
            NormChoice::Linf => PolyhedralNorm::MaxAbs,
            NormChoice::L1 => PolyhedralNorm::SumAbs,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    use commands::*;
    match cli.command {
        Command::Classify(m) => classify(&load(&m.model)?, m.json),
        Command::Effects(m) => effects(&load(&m.model)?, m.json),
        Command::Postulate { model, all_pure } => {
            postulate(&load(&model.model)?, all_pure, model.json)
        }
        Command::Disturbance {
            model,
            norm,
            effect_index,
            all,
            witness,
            force,
            samples,
        } => disturbance(
            &load(&model.model)?,
            &DisturbanceOptions {
                norm: norm.norm.into(),
                selection: match effect_index {
                    Some(k) if !all => Selection::Index(k),
                    _ => Selection::MinusFaces,
                },
                witness,
                force,
                samples,
                seed: seed()?,
                json: model.json,
            },
        ),
        Command::Report {
            model,
            norm,
            out,
            all_pure,
            force,
            timings,
        } => report(
            &load(&model)?,
            norm.norm.into(),
            out.as_deref(),
            all_pure,
            force,
            timings,
        ),
        Command::VerifyReport { report } => verify_report(&report),
        Command::Zoo => zoo(),
    }
}

fn seed() -> anyhow::Result<u64> {
    match std::env::var("GPTLAB_SEED") {
        Ok(s) => s
            .parse()
            .map_err(|_| anyhow::anyhow!("GPTLAB_SEED must be an unsigned integer, got {s:?}")),
        Err(_) => Ok(0),
    }
}

#[cfg(test)]
mod tests {
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        super::Cli::command().debug_assert();
    }
}
