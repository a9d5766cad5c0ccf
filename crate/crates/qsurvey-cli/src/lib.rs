//! Command layer for the surveying toolkit: verification suites, EPR
//! Monte Carlo runs, and metric survey tables with deterministic,
//! byte-stable reports.
//!
//! Exit code contract: 0 when every case passes, 1 when any case fails
//! (including module errors surfaced as cases), 2 for configuration or
//! IO errors rejected before computation.

pub mod config;
pub mod epr;
pub mod report;
pub mod suites;
pub mod survey;

use config::{EprConfig, VerifyConfig};
use report::{ConfigEcho, Report, ReportEnvelope};

/// Exit code for a report whose cases all passed.
pub const EXIT_PASS: i32 = 0;
/// Exit code for a report containing at least one failed case.
pub const EXIT_FAIL: i32 = 1;
/// Exit code for configuration and IO errors.
pub const EXIT_CONFIG: i32 = 2;

/// Runs the `verify` suites and seals the envelope.
pub fn verify_envelope(config: &VerifyConfig, workers: usize) -> ReportEnvelope {
    let started_at = report::now_unix_ms();
    let clock = std::time::Instant::now();
    let cases = suites::run_suites(config, workers);
    let report = Report::new(
        "verify",
        config.suite.name(),
        config.manifold.name(),
        ConfigEcho {
            seed: config.seed,
            n_trials: config.n_trials,
            cutoff: config.cutoff,
            r: config.r,
            grid: None,
        },
        cases,
        None,
    );
    ReportEnvelope::seal(report, workers, started_at, clock.elapsed().as_millis() as u64)
}

/// Runs the `epr` grid and seals the envelope.
pub fn epr_envelope(config: &EprConfig, workers: usize) -> ReportEnvelope {
    let started_at = report::now_unix_ms();
    let clock = std::time::Instant::now();
    let (cases, experiments) = epr::run_epr(config, workers);
    let report = Report::new(
        "epr",
        "epr",
        config.manifold.name(),
        ConfigEcho {
            seed: config.seed,
            n_trials: config.n_trials,
            cutoff: config::DEFAULT_CUTOFF,
            r: config::DEFAULT_R,
            grid: Some(config.grid.clone()),
        },
        cases,
        Some(experiments),
    );
    ReportEnvelope::seal(report, workers, started_at, clock.elapsed().as_millis() as u64)
}

/// Exit code implied by a sealed envelope.
pub fn envelope_exit_code(envelope: &ReportEnvelope) -> i32 {
    if envelope.report.overall_pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}
