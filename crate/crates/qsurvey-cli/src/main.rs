//! `qsurvey`: coherent-state surveying toolkit.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qsurvey_cli::config::{
    self, ConfigError, EprConfig, SuiteKind, SurveyConfig, VerifyConfig,
};
use qsurvey_cli::{EXIT_CONFIG, epr_envelope, envelope_exit_code, verify_envelope};
use qsurvey_core::metric::Manifold;

#[derive(Debug, Parser)]
#[command(name = "qsurvey")]
#[command(about = "coherent-state manifolds, Bell pairs, and hidden-variable surveys")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Identity,
    Metric,
    Bell,
    Dispersion,
    Dynamics,
    HvEpr,
    HvCdf,
    All,
}

impl From<SuiteArg> for SuiteKind {
    fn from(arg: SuiteArg) -> Self {
        match arg {
            SuiteArg::Identity => SuiteKind::Identity,
            SuiteArg::Metric => SuiteKind::Metric,
            SuiteArg::Bell => SuiteKind::Bell,
            SuiteArg::Dispersion => SuiteKind::Dispersion,
            SuiteArg::Dynamics => SuiteKind::Dynamics,
            SuiteArg::HvEpr => SuiteKind::HvEpr,
            SuiteArg::HvCdf => SuiteKind::HvCdf,
            SuiteArg::All => SuiteKind::All,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ManifoldArg {
    Su2,
    Wh,
}

impl From<ManifoldArg> for Manifold {
    fn from(arg: ManifoldArg) -> Self {
        match arg {
            ManifoldArg::Su2 => Manifold::Su2,
            ManifoldArg::Wh => Manifold::WeylHeisenberg,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a verification suite and emit a JSON report.
    Verify {
        #[arg(long)]
        suite: SuiteArg,
        #[arg(long)]
        manifold: ManifoldArg,
        #[arg(long, default_value_t = config::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = config::DEFAULT_TRIALS)]
        trials: u64,
        #[arg(long, default_value_t = config::DEFAULT_CUTOFF)]
        cutoff: usize,
        #[arg(long, default_value_t = config::DEFAULT_R)]
        r: f64,
        /// Report file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// Run coincidence experiments over a grid of relation coordinates.
    Epr {
        #[arg(long)]
        manifold: ManifoldArg,
        /// Comma list `0,0.5,1` or linspace `start:stop:count`; default
        /// is the five-point grid of the manifold.
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, default_value_t = config::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = config::DEFAULT_TRIALS)]
        trials: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// `json` emits the report envelope, `csv` the per-trial table.
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// Tabulate the metric and coincidence probability over a grid.
    Survey {
        #[arg(long)]
        manifold: ManifoldArg,
        #[arg(long)]
        grid: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("qsurvey: {err}");
            EXIT_CONFIG
        }
    };
    ExitCode::from(code as u8)
}

fn run(cli: Cli) -> Result<i32, ConfigError> {
    match cli.command {
        Command::Verify { suite, manifold, seed, trials, cutoff, r, out, format } => {
            if format != FormatArg::Json {
                return Err(ConfigError("verify emits json reports only".into()));
            }
            let config =
                VerifyConfig::new(suite.into(), manifold.into(), seed, trials, cutoff, r)?;
            let workers = config::resolve_threads()?;
            let envelope = verify_envelope(&config, workers);
            emit(out.as_deref(), envelope.to_json())?;
            Ok(envelope_exit_code(&envelope))
        }
        Command::Epr { manifold, grid, seed, trials, out, format } => {
            let config = EprConfig::new(manifold.into(), seed, trials, grid.as_deref())?;
            let workers = config::resolve_threads()?;
            let envelope = epr_envelope(&config, workers);
            match format {
                FormatArg::Json => emit(out.as_deref(), envelope.to_json())?,
                FormatArg::Csv => emit(out.as_deref(), qsurvey_cli::epr::per_trial_csv(&config))?,
            }
            Ok(envelope_exit_code(&envelope))
        }
        Command::Survey { manifold, grid, out, format } => {
            if format != FormatArg::Csv {
                return Err(ConfigError("survey emits csv tables only".into()));
            }
            let config = SurveyConfig::new(manifold.into(), grid.as_deref())?;
            emit(out.as_deref(), qsurvey_cli::survey::survey_csv(&config))?;
            Ok(qsurvey_cli::EXIT_PASS)
        }
    }
}

fn emit(out: Option<&std::path::Path>, payload: String) -> Result<(), ConfigError> {
    match out {
        None => {
            print!("{payload}");
            Ok(())
        }
        Some(path) => std::fs::write(path, payload)
            .map_err(|e| ConfigError(format!("cannot write {}: {e}", path.display()))),
    }
}
