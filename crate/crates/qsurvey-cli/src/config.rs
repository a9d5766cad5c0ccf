//! Flag domain types and upfront validation.
//!
//! Every numeric parameter is checked against its domain before any
//! computation starts; violations map to exit code 2.

use std::fmt;

use qsurvey_core::hv::MIN_TRIALS;
use qsurvey_core::metric::Manifold;

/// Default Fock cutoff, echoed into every report.
pub const DEFAULT_CUTOFF: usize = 64;
/// Default RNG seed, echoed into every report.
pub const DEFAULT_SEED: u64 = 0;
/// Default trial count for Monte Carlo suites.
pub const DEFAULT_TRIALS: u64 = 100_000;
/// Default squeeze parameter for the displacement Bell suite.
pub const DEFAULT_R: f64 = 0.5;

/// A parameter rejected before computation; maps to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ConfigError {}

/// Verification suites; `All` expands to the other seven in name order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteKind {
    Identity,
    Metric,
    Bell,
    Dispersion,
    Dynamics,
    HvEpr,
    HvCdf,
    All,
}

impl SuiteKind {
    pub const ALL_MEMBERS: [SuiteKind; 7] = [
        SuiteKind::Identity,
        SuiteKind::Metric,
        SuiteKind::Bell,
        SuiteKind::Dispersion,
        SuiteKind::Dynamics,
        SuiteKind::HvEpr,
        SuiteKind::HvCdf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteKind::Identity => "identity",
            SuiteKind::Metric => "metric",
            SuiteKind::Bell => "bell",
            SuiteKind::Dispersion => "dispersion",
            SuiteKind::Dynamics => "dynamics",
            SuiteKind::HvEpr => "hv-epr",
            SuiteKind::HvCdf => "hv-cdf",
            SuiteKind::All => "all",
        }
    }

    /// The concrete suites this selection runs.
    pub fn members(self) -> &'static [SuiteKind] {
        match self {
            SuiteKind::All => &Self::ALL_MEMBERS,
            SuiteKind::Identity => &[SuiteKind::Identity],
            SuiteKind::Metric => &[SuiteKind::Metric],
            SuiteKind::Bell => &[SuiteKind::Bell],
            SuiteKind::Dispersion => &[SuiteKind::Dispersion],
            SuiteKind::Dynamics => &[SuiteKind::Dynamics],
            SuiteKind::HvEpr => &[SuiteKind::HvEpr],
            SuiteKind::HvCdf => &[SuiteKind::HvCdf],
        }
    }
}

/// Validated parameters for `verify`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub suite: SuiteKind,
    pub manifold: Manifold,
    pub seed: u64,
    pub n_trials: u64,
    pub cutoff: usize,
    pub r: f64,
}

impl VerifyConfig {
    pub fn new(
        suite: SuiteKind,
        manifold: Manifold,
        seed: u64,
        n_trials: u64,
        cutoff: usize,
        r: f64,
    ) -> Result<Self, ConfigError> {
        check_trials(n_trials)?;
        check_cutoff(cutoff)?;
        check_r(r)?;
        Ok(VerifyConfig { suite, manifold, seed, n_trials, cutoff, r })
    }
}

/// Validated parameters for `epr`.
#[derive(Debug, Clone, PartialEq)]
pub struct EprConfig {
    pub manifold: Manifold,
    pub seed: u64,
    pub n_trials: u64,
    /// Relation coordinates: Bloch angles on the sphere, displacement
    /// moduli on the plane.
    pub grid: Vec<f64>,
}

impl EprConfig {
    pub fn new(
        manifold: Manifold,
        seed: u64,
        n_trials: u64,
        grid_spec: Option<&str>,
    ) -> Result<Self, ConfigError> {
        check_trials(n_trials)?;
        let grid = resolve_grid(manifold, grid_spec)?;
        Ok(EprConfig { manifold, seed, n_trials, grid })
    }
}

/// Validated parameters for `survey`.
#[derive(Debug, Clone, PartialEq)]
pub struct SurveyConfig {
    pub manifold: Manifold,
    pub grid: Vec<f64>,
}

impl SurveyConfig {
    pub fn new(manifold: Manifold, grid_spec: Option<&str>) -> Result<Self, ConfigError> {
        let grid = resolve_grid(manifold, grid_spec)?;
        Ok(SurveyConfig { manifold, grid })
    }
}

fn check_trials(n_trials: u64) -> Result<(), ConfigError> {
    if n_trials < MIN_TRIALS {
        return Err(ConfigError(format!("n_trials below minimum {MIN_TRIALS}")));
    }
    Ok(())
}

fn check_cutoff(cutoff: usize) -> Result<(), ConfigError> {
    if cutoff == 0 {
        return Err(ConfigError("cutoff must be at least 1".into()));
    }
    Ok(())
}

fn check_r(r: f64) -> Result<(), ConfigError> {
    if !(r.is_finite() && (0.0..1.0).contains(&r)) {
        return Err(ConfigError("r must be in [0,1)".into()));
    }
    Ok(())
}

/// Parses `--grid`: either a comma list `0,0.5,1` or a linspace
/// `start:stop:count` with `count >= 2`, endpoints included.
///
/// Coordinates are Bloch angles in `[0, pi]` on the sphere and
/// nonnegative displacement moduli on the plane; `None` selects the
/// default five-point grid of the manifold.
pub fn resolve_grid(
    manifold: Manifold,
    grid_spec: Option<&str>,
) -> Result<Vec<f64>, ConfigError> {
    let grid = match grid_spec {
        None => default_grid(manifold),
        Some(spec) => parse_grid(spec)?,
    };
    let upper = match manifold {
        Manifold::Su2 => std::f64::consts::PI,
        Manifold::WeylHeisenberg => f64::INFINITY,
    };
    for &v in &grid {
        if !(v.is_finite() && v >= 0.0 && v <= upper) {
            return Err(ConfigError(match manifold {
                Manifold::Su2 => {
                    format!("grid value {v} is not a Bloch angle in [0, pi]")
                }
                Manifold::WeylHeisenberg => {
                    format!("grid value {v} is not a nonnegative separation")
                }
            }));
        }
    }
    Ok(grid)
}

fn default_grid(manifold: Manifold) -> Vec<f64> {
    match manifold {
        Manifold::Su2 => (0..5).map(|k| k as f64 * std::f64::consts::PI / 4.0).collect(),
        Manifold::WeylHeisenberg => (0..5).map(|k| k as f64 * 0.5).collect(),
    }
}

fn parse_grid(spec: &str) -> Result<Vec<f64>, ConfigError> {
    let bad = |what: &str| ConfigError(format!("grid spec '{spec}': {what}"));
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(bad("linspace form is start:stop:count"));
        }
        let start: f64 = parts[0].trim().parse().map_err(|_| bad("bad start"))?;
        let stop: f64 = parts[1].trim().parse().map_err(|_| bad("bad stop"))?;
        let count: usize = parts[2].trim().parse().map_err(|_| bad("bad count"))?;
        if count < 2 {
            return Err(bad("linspace count must be at least 2"));
        }
        let step = (stop - start) / (count - 1) as f64;
        return Ok((0..count).map(|k| start + step * k as f64).collect());
    }
    let values: Result<Vec<f64>, _> = spec
        .split(',')
        .map(|tok| tok.trim().parse::<f64>().map_err(|_| bad("bad value")))
        .collect();
    let values = values?;
    if values.is_empty() {
        return Err(bad("empty grid"));
    }
    Ok(values)
}

/// Resolves the worker count from `QSURVEY_THREADS` (0 or unset = one
/// worker per available core).
pub fn resolve_threads() -> Result<usize, ConfigError> {
    let auto = || {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    };
    match std::env::var("QSURVEY_THREADS") {
        Err(std::env::VarError::NotPresent) => Ok(auto()),
        Err(std::env::VarError::NotUnicode(_)) => {
            Err(ConfigError("QSURVEY_THREADS must be a nonnegative integer".into()))
        }
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(0) => Ok(auto()),
            Ok(n) => Ok(n),
            Err(_) => {
                Err(ConfigError("QSURVEY_THREADS must be a nonnegative integer".into()))
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r_domain_is_enforced() {
        let err = VerifyConfig::new(SuiteKind::Bell, Manifold::WeylHeisenberg, 0, 10_000, 64, 1.5)
            .unwrap_err();
        assert_eq!(err.0, "r must be in [0,1)");
        assert!(VerifyConfig::new(SuiteKind::Bell, Manifold::WeylHeisenberg, 0, 10_000, 64, 0.0)
            .is_ok());
    }

    #[test]
    fn trial_floor_is_enforced() {
        let err = EprConfig::new(Manifold::Su2, 0, 10, None).unwrap_err();
        assert_eq!(err.0, "n_trials below minimum 1000");
    }

    #[test]
    fn linspace_grid_hits_both_endpoints() {
        let grid = parse_grid("0:2:5").unwrap();
        assert_eq!(grid, vec![0.0, 0.5, 1.0, 1.5, 2.0]);
    }

    #[test]
    fn comma_grid_parses_in_order() {
        let grid = parse_grid("1.5, 0, 0.25").unwrap();
        assert_eq!(grid, vec![1.5, 0.0, 0.25]);
    }

    #[test]
    fn sphere_grid_rejects_angles_beyond_pi() {
        let err = resolve_grid(Manifold::Su2, Some("0,4.0")).unwrap_err();
        assert!(err.0.contains("Bloch angle"), "{err}");
    }

    #[test]
    fn default_grids_have_five_points() {
        assert_eq!(resolve_grid(Manifold::Su2, None).unwrap().len(), 5);
        let wh = resolve_grid(Manifold::WeylHeisenberg, None).unwrap();
        assert_eq!(wh, vec![0.0, 0.5, 1.0, 1.5, 2.0]);
    }

    #[test]
    fn malformed_grids_are_rejected() {
        assert!(parse_grid("0:2").is_err());
        assert!(parse_grid("0:2:1").is_err());
        assert!(parse_grid("a,b").is_err());
        assert!(parse_grid("").is_err());
    }
}
