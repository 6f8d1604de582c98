//! `thermoforms`: enumerate closed forms, simulate the ideal-gas experiment and
//! fit candidate theorems against its records.
//!
//! Exit codes: 0 when the run completes (whatever the verdicts), 2 for usage
//! and config errors, 3 when input data fails validation.

mod config;
mod report;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thermoforms::enumerate::{entropy_theorem_set, enumerate_closed_forms, singletons_from_candidates, theorem_candidates, SingletonTheorem};
use thermoforms::experiment::{read_records, run_experiment, split_segments, write_records_to, ExperimentError, ExperimentRecord};
use thermoforms::forms::parse_one_form;
use thermoforms::validate::{discover, fit_theorem, segment_integrals, Evidence, FitOptions, ValidateError, DEFAULT_MAX_CONDITION, DEFAULT_TOL_REL};
use thermoforms::{Rational, SymbolTable};

use config::{nonnegative, pick, positive_real, RunConfig};

const DEFAULT_BOUND: i64 = 1;
const DEFAULT_BUDGET: i64 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Data(_) => 3,
        }
    }
}

fn record_error(path: &Path, e: ExperimentError) -> CliError {
    match e {
        ExperimentError::Io(io) => CliError::Usage(format!("cannot read records {}: {io}", path.display())),
        other => CliError::Data(format!("{}: {other}", path.display())),
    }
}

fn validate_error(e: ValidateError) -> CliError {
    CliError::Data(e.to_string())
}

#[derive(Parser)]
#[command(name = "thermoforms", version, about = "Rediscover state functions of an ideal gas from closed 1-forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// JSON run config
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FitArgs {
    /// Relative residual tolerance for a Valid verdict
    #[arg(long)]
    tol: Option<f64>,
    /// Largest acceptable condition number
    #[arg(long)]
    max_condition: Option<f64>,
    /// Records CSV (`t,p,V,S`); integrated with the trapezoid rule
    #[arg(long)]
    records: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// List closed, unit-consistent monomial 1-forms with their potentials
    Enumerate {
        #[command(flatten)]
        common: Common,
        /// Exponent bound E: exponents range over [-E, E]
        #[arg(long, allow_negative_numbers = true)]
        bound: Option<i64>,
    },
    /// Run the virtual experiment and write its records as CSV
    Simulate {
        #[command(flatten)]
        common: Common,
    },
    /// Fit ΔS = Σ cᵢ ∫ fᵢ for the given forms
    Validate {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        fit: FitArgs,
        /// Candidate form, e.g. `p^-1 dp` (repeatable)
        #[arg(long = "form", required = true)]
        forms: Vec<String>,
    },
    /// Fit every theorem candidate within the budget and rank the results
    Discover {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        fit: FitArgs,
        /// Complexity budget N
        #[arg(long, allow_negative_numbers = true)]
        budget: Option<i64>,
        /// Use enumerated forms up to this exponent bound instead of {1/p dp, 1/V dV}
        #[arg(long, allow_negative_numbers = true)]
        bound: Option<i64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Enumerate { common, bound } => {
            let cfg = RunConfig::load(common.config.as_deref())?;
            let bound = nonnegative("bound", pick(bound, cfg.bound, DEFAULT_BOUND))?;
            let candidates = enumerate_closed_forms::<Rational>(bound, &SymbolTable::ideal_gas());
            emit_json(&report::enumeration(bound, &candidates), out_path(&common, &cfg))
        }
        Command::Simulate { common } => {
            let cfg = RunConfig::load(common.config.as_deref())?;
            let records = simulate(&cfg)?;
            let mut buf = Vec::new();
            write_records_to(&mut buf, &records).map_err(|e| CliError::Usage(e.to_string()))?;
            emit(&buf, out_path(&common, &cfg))
        }
        Command::Validate { common, fit, forms } => {
            let cfg = RunConfig::load(common.config.as_deref())?;
            let opts = fit_options(&fit, &cfg)?;
            let forms = forms
                .iter()
                .map(|s| parse_one_form::<Rational>(s).map_err(|e| CliError::Usage(format!("bad form `{s}`: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let gas = cfg.gas()?;
            let data = load_data(&fit, &cfg)?;
            let segments = split_segments(&data.records);
            let path = data.analytic.then(|| cfg.path().and_then(build_path)).transpose()?;
            let table = segment_integrals(&forms, &segments, &gas, path.as_ref()).map_err(validate_error)?;
            let fit_report = fit_theorem(&table, &opts);
            emit_json(&report::validation(&forms, data.method(), &table, &fit_report), out_path(&common, &cfg))
        }
        Command::Discover { common, fit, budget, bound } => {
            let cfg = RunConfig::load(common.config.as_deref())?;
            let opts = fit_options(&fit, &cfg)?;
            let budget = nonnegative("budget", pick(budget, cfg.budget, DEFAULT_BUDGET))?;
            let set: Vec<SingletonTheorem<Rational>> = match bound {
                Some(b) => singletons_from_candidates(&enumerate_closed_forms(nonnegative("bound", b)?, &SymbolTable::ideal_gas())),
                None => entropy_theorem_set(),
            };
            let gas = cfg.gas()?;
            let data = load_data(&fit, &cfg)?;
            let segments = split_segments(&data.records);
            let path = data.analytic.then(|| cfg.path().and_then(build_path)).transpose()?;
            let candidates = theorem_candidates(&set, budget);
            let evidence = Evidence {
                segments: &segments,
                gas: &gas,
                path: path.as_ref(),
            };
            let ranked = discover(&evidence, &set, &candidates, &opts).map_err(validate_error)?;
            let doc = report::discovery(budget, data.method(), &set, &gas, &ranked)?;
            emit_json(&doc, out_path(&common, &cfg))
        }
    }
}

fn out_path<'a>(common: &'a Common, cfg: &'a RunConfig) -> Option<&'a Path> {
    common.out.as_deref().or(cfg.out.as_deref())
}

fn fit_options(fit: &FitArgs, cfg: &RunConfig) -> Result<FitOptions<f64>, CliError> {
    Ok(FitOptions {
        tol_rel: positive_real("tol", pick(fit.tol, cfg.tol, DEFAULT_TOL_REL))?,
        max_condition: positive_real("max-condition", pick(fit.max_condition, cfg.max_condition, DEFAULT_MAX_CONDITION))?,
    })
}

fn build_path(spec: &thermoforms::experiment::PathSpec<f64>) -> Result<thermoforms::experiment::Trajectory<f64>, CliError> {
    spec.build().map_err(|e| CliError::Usage(e.to_string()))
}

fn simulate(cfg: &RunConfig) -> Result<Vec<ExperimentRecord<f64>>, CliError> {
    let gas = cfg.gas()?;
    let traj = build_path(cfg.path()?)?;
    run_experiment(&gas, &traj).map_err(|e| CliError::Usage(e.to_string()))
}

struct Data {
    records: Vec<ExperimentRecord<f64>>,
    /// Simulated from the config path, so the analytic parameterization applies.
    analytic: bool,
}

impl Data {
    fn method(&self) -> &'static str {
        if self.analytic {
            "analytic"
        } else {
            "trapezoid"
        }
    }
}

fn load_data(fit: &FitArgs, cfg: &RunConfig) -> Result<Data, CliError> {
    match fit.records.as_deref().or(cfg.records.as_deref()) {
        Some(path) => Ok(Data {
            records: read_records(path).map_err(|e| record_error(path, e))?,
            analytic: false,
        }),
        None => Ok(Data {
            records: simulate(cfg)?,
            analytic: true,
        }),
    }
}

fn emit_json(value: &serde_json::Value, out: Option<&Path>) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Usage(e.to_string()))?;
    text.push('\n');
    emit(text.as_bytes(), out)
}

fn emit(bytes: &[u8], out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, bytes).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => io::stdout().write_all(bytes).map_err(|e| CliError::Usage(e.to_string())),
    }
}
