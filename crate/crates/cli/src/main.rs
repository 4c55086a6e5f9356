//! `mobiprev`: one binary running the full phone-data prevalence pipeline
//! or any single stage of it against previously persisted artifacts.
//!
//! Exit codes: 0 on success, 1 on runtime failure, 2 on usage or
//! configuration errors.

use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod args;
mod dataset;
mod design;
mod error;
mod gen;
mod manifest;
mod paths;
mod stages;
mod util;
mod validate;

use args::{Ctx, RunArgs};
use error::Result;
use gen::GenArgs;

#[derive(Parser)]
#[command(
    name = "mobiprev",
    version,
    about = "Mobile-phone mobility features and survey-anchored HIV prevalence regression"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic dataset (hierarchy, population, CDR,
    /// trajectories, survey clusters) plus a ready-to-run manifest.
    Gen(GenArgs),
    /// Check a dataset against the hierarchy and observation window.
    Validate(RunArgs),
    /// Build communication and mobility flow matrices, stays, and homes.
    Flows(RunArgs),
    /// Score department pairs and extract the strong-tie set.
    Ties(RunArgs),
    /// Estimate the prevalence surface, department estimates with quality
    /// grades, the choropleth, and the labeled strong-tie graphs.
    Prev(RunArgs),
    /// Assemble the per-department feature matrix (raw and normalized).
    Features(RunArgs),
    /// Train the configured model on the normalized features.
    Fit(RunArgs),
    /// Leave-one-out evaluation, family reports, ensemble, permutations.
    Eval(RunArgs),
    /// Monte-Carlo contribution curves for the strongest features.
    Explain(RunArgs),
    /// Run every stage in order against one dataset.
    Pipeline(RunArgs),
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen(args) => gen::run(&args),
        Command::Validate(args) => validate::run(&args),
        Command::Flows(args) => stages::flows::run(&Ctx::new(&args)?),
        Command::Ties(args) => stages::ties::run(&Ctx::new(&args)?),
        Command::Prev(args) => stages::prev::run(&Ctx::new(&args)?),
        Command::Features(args) => stages::features::run(&Ctx::new(&args)?),
        Command::Fit(args) => stages::fit::run(&Ctx::new(&args)?),
        Command::Eval(args) => stages::eval::run(&Ctx::new(&args)?),
        Command::Explain(args) => stages::explain::run(&Ctx::new(&args)?),
        Command::Pipeline(args) => stages::pipeline(&Ctx::new(&args)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
