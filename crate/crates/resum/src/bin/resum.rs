//! Command-line front end: parses arguments into a [`RunConfig`], runs
//! the requested command, and renders the report to stdout or a file.
//!
//! Exit codes: 0 on success, 2 for configuration and input errors, 3
//! when a computation fails to converge.

use clap::{Args, Parser, Subcommand};
use resum::cli;
use resum::error::{Error, Result};
use resum::report::{render, Report, RunConfig};
use resum::series::Model;
use rug::Rational;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "resum", version, about = "High-precision resummation of divergent perturbation series")]
struct CliArgs {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reproduce one of the reference tables (1-4)
    Table {
        /// Table number: 1-2 integral model, 3-4 oscillator
        which: u8,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Emit the dataset behind one of the reference figures (1-5)
    Figure {
        /// Figure number: 1, 4 integral model; 2, 3, 5 oscillator
        which: u8,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Scan transform exponents and compare each plateau with the exact limit
    Betascan {
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Stationary-point census and edge derivatives up to order 249
    Largeorder {
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Averaging-kernel diagnostics at a given order
    Kernel {
        /// Kernel order (defaults to 71)
        n: Option<u32>,
        /// Kernel frequency squared (defaults to the order, placing the peak at 1)
        omega2: Option<String>,
        #[command(flatten)]
        opts: CommonOpts,
    },
}

#[derive(Args)]
struct CommonOpts {
    /// Model series: nongaussian (integral) or anharmonic (oscillator)
    #[arg(long)]
    model: Option<String>,
    /// Truncation order: the top index of the partial sum
    #[arg(long)]
    order: Option<u32>,
    /// Transform exponent as integer, decimal, or fraction (e.g. 19/10)
    #[arg(long)]
    beta: Option<String>,
    /// Working precision in decimal digits
    #[arg(long, default_value_t = 80)]
    precision: u32,
    /// Coupling value m²; repeat to override a command's default sweep
    #[arg(long = "m2", value_name = "M2")]
    m2: Vec<String>,
    /// Output format: csv or json
    #[arg(long, default_value = "csv")]
    format: String,
    /// Cache file for the oscillator coefficients
    #[arg(long, value_name = "PATH")]
    cache: Option<PathBuf>,
    /// Write the report here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Omit the generation timestamp comment
    #[arg(long)]
    no_timestamp: bool,
}

fn build_config(opts: &CommonOpts, default_model: Model) -> Result<RunConfig> {
    let model = match &opts.model {
        Some(s) => cli::parse_model(s)?,
        None => default_model,
    };
    let mut cfg = RunConfig::new(model, opts.order.unwrap_or(0));
    cfg.precision = opts.precision;
    if let Some(b) = &opts.beta {
        cfg.beta = cli::parse_beta(b)?;
    }
    cfg.output_format = opts.format.parse()?;
    cfg.cache_path = opts.cache.clone();
    cfg.validate()?;
    let ctx = cfg.ctx();
    for s in &opts.m2 {
        let v = cli::parse_real(&ctx, s)?;
        if !v.is_finite() {
            return Err(Error::Config { message: format!("m2 value '{s}' is not finite") });
        }
        cfg.m2_list.push(v);
    }
    Ok(cfg)
}

fn emit(opts: &CommonOpts, cfg: &RunConfig, report: Report) -> Result<()> {
    let text = render(&report, cfg.output_format, !opts.no_timestamp);
    match &opts.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Io { message: format!("writing {}: {e}", path.display()) })?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(args: CliArgs) -> Result<()> {
    match args.command {
        Command::Table { which, opts } => {
            let default_model = if which <= 2 { Model::NonGaussian } else { Model::Anharmonic };
            let cfg = build_config(&opts, default_model)?;
            let report = cli::cmd_table(which, &cfg)?;
            emit(&opts, &cfg, report)
        }
        Command::Figure { which, opts } => {
            let default_model = if which == 1 || which == 4 {
                Model::NonGaussian
            } else {
                Model::Anharmonic
            };
            let cfg = build_config(&opts, default_model)?;
            let report = cli::cmd_figure(which, &cfg)?;
            emit(&opts, &cfg, report)
        }
        Command::Betascan { opts } => {
            let cfg = build_config(&opts, Model::NonGaussian)?;
            let betas: Vec<Rational> = match &opts.beta {
                Some(b) => vec![cli::parse_beta(b)?],
                None => {
                    let defaults: &[&str] = match cfg.model {
                        Model::NonGaussian => &["3/2", "17/10", "19/10", "2", "21/10"],
                        _ => &["17/10", "9/5", "19/10", "2", "21/10"],
                    };
                    defaults.iter().map(|s| cli::parse_beta(s)).collect::<Result<_>>()?
                }
            };
            let report = cli::cmd_betascan(&cfg, &betas)?;
            emit(&opts, &cfg, report)
        }
        Command::Largeorder { opts } => {
            let cfg = build_config(&opts, Model::Anharmonic)?;
            let report = cli::cmd_largeorder(&cfg)?;
            emit(&opts, &cfg, report)
        }
        Command::Kernel { n, omega2, opts } => {
            let cfg = build_config(&opts, Model::Anharmonic)?;
            let report = cli::cmd_kernel(&cfg, n.unwrap_or(71), omega2.as_deref())?;
            emit(&opts, &cfg, report)
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config { .. }
        | Error::Domain { .. }
        | Error::CacheParse { .. }
        | Error::Io { .. }
        | Error::UntransformableExponent { .. } => 2,
        Error::NonConvergence { .. }
        | Error::RootRefinement { .. }
        | Error::NoStationaryPoint => 3,
    }
}

fn main() -> ExitCode {
    let args = CliArgs::parse();
    match run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
