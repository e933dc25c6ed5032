//! Command-line front end for the semi-infinite Ext engine.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use semiinf::resolution::Strategy;
use semiinf::Error;

#[derive(Parser, Debug)]
#[command(name = "semiinf", version, about = "Semi-infinite Ext of graded algebras with triangular decomposition")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Ground field: `q` or `fp:<p>`. Defaults to the field named in the algebra document.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Maximal number of resolution steps.
    #[arg(long, global = true, default_value_t = semiinf::resolution::DEFAULT_DEPTH_CAP)]
    pub depth_cap: usize,
    /// Also write the result as JSON to this file.
    #[arg(long, global = true)]
    pub json_out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the three structural conditions of a triangular decomposition.
    Verify { algebra: String },
    /// Build A^# and S, verify their identities, optionally emit A^# as a document.
    Sharp {
        algebra: String,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Print the terms of a relative resolution.
    Resolve {
        algebra: String,
        /// `k`, `regular`, or a module document (over A or A#).
        #[arg(long)]
        module: String,
        /// For keywords: which algebra, `a` or `a-sharp`.
        #[arg(long, default_value = "a")]
        side: String,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value = "induction-step")]
        strategy: Strategy,
    },
    /// Compute the semi-infinite Ext table.
    Semiinf {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value = "induction-step")]
        strategy: Strategy,
        /// `auto`, `none`, or one oracle name.
        #[arg(long, default_value = "auto")]
        oracle: String,
    },
    /// Compute the table by one comparison route only.
    Oracle {
        #[command(flatten)]
        pair: PairArgs,
        /// One of finite-projdim, induced, tate, hom-through.
        #[arg(long)]
        name: String,
        #[arg(long, default_value = "induction-step")]
        strategy: Strategy,
    },
    /// Stable Hom between two A-modules, with the exact-sequence check when it applies.
    Stablehom {
        algebra: String,
        #[arg(long, default_value = "k")]
        x: String,
        #[arg(long, default_value = "k")]
        y: String,
        #[arg(long, default_value = "-4:4", allow_hyphen_values = true)]
        n: String,
    },
}

#[derive(Args, Debug, Clone)]
pub struct PairArgs {
    pub algebra: String,
    /// `k`, `regular`, or a module document (over A# or, with a Frobenius algebra, over A).
    #[arg(long, default_value = "k")]
    pub x: String,
    /// `k`, `regular`, or a module document over A.
    #[arg(long, default_value = "k")]
    pub y: String,
    #[arg(long, default_value = "-4:4", allow_hyphen_values = true)]
    pub i: String,
    #[arg(long, default_value = "-4:4", allow_hyphen_values = true)]
    pub n: String,
}

/// Exit codes.
pub const OK: u8 = 0;
pub const PARSE: u8 = 1;
pub const VERIFY: u8 = 2;
pub const DISAGREE: u8 = 3;
pub const DEPTH: u8 = 4;

fn code_of(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::SetupNotVerified(_)) => VERIFY,
        Some(Error::OracleDisagreement(_)) => DISAGREE,
        Some(Error::DepthCapExceeded(_) | Error::DepthUnavailable(_) | Error::StabilizationFailure { .. }) => DEPTH,
        _ => PARSE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(report) => {
            print!("{}", report.text);
            if let Some(path) = &cli.json_out {
                if let Err(e) = commands::write_json(path, &report.json) {
                    eprintln!("error: {e:#}");
                    return ExitCode::from(PARSE);
                }
            }
            ExitCode::from(report.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(code_of(&e))
        }
    }
}
