//! Report envelope: a byte-stable region plus timing fields kept outside
//! of it.
//!
//! The stable region is the serialized [`Report`]; its SHA-256 digest is
//! stored beside it, so two runs with the same config and seed can be
//! compared by digest or by the region bytes themselves. Struct fields
//! serialize in declaration order and `serde_json` emits shortest
//! round-trip decimals, which makes the region reproducible across
//! platforms.

use serde::Serialize;
use sha2::{Digest, Sha256};

/// Schema tag carried by every report.
pub const SCHEMA_VERSION: &str = "1.0";

/// One checked quantity.
///
/// `pass` means `|observed - expected| <= tolerance` when an expected
/// value exists, and `observed <= tolerance` for pure bounds.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct CaseResult {
    pub name: String,
    pub expected: Option<f64>,
    pub observed: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub provenance: String,
}

impl CaseResult {
    pub fn check(
        name: impl Into<String>,
        expected: Option<f64>,
        observed: f64,
        tolerance: f64,
        provenance: impl Into<String>,
    ) -> Self {
        let pass = observed.is_finite()
            && match expected {
                Some(e) => (observed - e).abs() <= tolerance,
                None => observed <= tolerance,
            };
        // JSON has no non-finite numbers; clamp and keep the failure.
        let stored = if observed.is_finite() {
            observed
        } else {
            f64::MAX.copysign(observed)
        };
        CaseResult {
            name: name.into(),
            expected,
            observed: stored,
            tolerance,
            pass,
            provenance: provenance.into(),
        }
    }

    /// A module error surfaced as a failed case.
    pub fn module_error(name: impl Into<String>, message: impl std::fmt::Display) -> Self {
        CaseResult {
            name: name.into(),
            expected: None,
            observed: 0.0,
            tolerance: 0.0,
            pass: false,
            provenance: format!("error: {message}"),
        }
    }
}

/// Config values echoed into the stable region, defaults included.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ConfigEcho {
    pub seed: u64,
    pub n_trials: u64,
    pub cutoff: usize,
    pub r: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<Vec<f64>>,
}

/// One embedded Monte Carlo experiment (the `epr` command).
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ExperimentEcho {
    pub coordinate: f64,
    pub law: String,
    pub n_trials: u64,
    pub relation_diameter: f64,
    pub predicted_rate: f64,
    pub coincidences: u64,
    pub observed_rate: f64,
    pub z_score: f64,
}

/// The stable region: everything that must be byte-identical across
/// reruns with the same config and seed.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Report {
    pub schema_version: &'static str,
    pub command: String,
    pub suite: String,
    pub manifold: String,
    pub config: ConfigEcho,
    pub cases: Vec<CaseResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub experiments: Option<Vec<ExperimentEcho>>,
    pub overall_pass: bool,
}

impl Report {
    pub fn new(
        command: &str,
        suite: &str,
        manifold: &str,
        config: ConfigEcho,
        mut cases: Vec<CaseResult>,
        experiments: Option<Vec<ExperimentEcho>>,
    ) -> Self {
        // Assembly is ordered by case name so the bytes do not depend on
        // how the suites were scheduled.
        cases.sort_by(|a, b| a.name.cmp(&b.name));
        let overall_pass = cases.iter().all(|c| c.pass);
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            suite: suite.into(),
            manifold: manifold.into(),
            config,
            cases,
            experiments,
            overall_pass,
        }
    }
}

/// The full artifact: stable region, its digest, and volatile timing.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ReportEnvelope {
    pub report: Report,
    /// SHA-256 of the serialized `report` field, hex.
    pub stable_sha256: String,
    pub worker_threads: usize,
    pub started_at_unix_ms: u64,
    pub duration_ms: u64,
}

impl ReportEnvelope {
    pub fn seal(report: Report, worker_threads: usize, started_at_unix_ms: u64, duration_ms: u64) -> Self {
        let stable_sha256 = stable_digest(&report);
        ReportEnvelope {
            report,
            stable_sha256,
            worker_threads,
            started_at_unix_ms,
            duration_ms,
        }
    }

    /// Serialized envelope with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string(self).expect("report types serialize");
        out.push('\n');
        out
    }
}

/// Hex SHA-256 of the serialized stable region.
pub fn stable_digest(report: &Report) -> String {
    let bytes = serde_json::to_string(report).expect("report types serialize");
    let mut hasher = Sha256::new();
    hasher.update(bytes.as_bytes());
    let digest = hasher.finalize();
    let mut hex = String::with_capacity(64);
    for byte in digest {
        use std::fmt::Write;
        write!(hex, "{byte:02x}").expect("writing to a string");
    }
    hex
}

/// Milliseconds since the Unix epoch.
pub fn now_unix_ms() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0)
}
