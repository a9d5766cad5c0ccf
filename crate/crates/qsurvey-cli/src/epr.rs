//! The `epr` command: Monte Carlo coincidence experiments over a grid of
//! relation coordinates, with deterministic multi-threaded counting.

use qsurvey_core::hv::{self, HiddenVariableLaw};
use qsurvey_core::metric::{self, Manifold, ManifoldPoint};
use qsurvey_core::su2::SpherePoint;
use qsurvey_core::wh::WHPoint;
use qsurvey_core::C64;

use crate::config::EprConfig;
use crate::report::{CaseResult, ExperimentEcho};
use crate::suites::Z_BOUND;

/// The settings pair probing one grid coordinate: a fixed reference and
/// a point at the given Bloch angle (sphere) or displacement modulus
/// (plane).
pub fn grid_settings(manifold: Manifold, coordinate: f64) -> (ManifoldPoint, ManifoldPoint) {
    match manifold {
        Manifold::Su2 => (
            ManifoldPoint::Sphere(SpherePoint::new(0.0, 0.0).expect("pole is valid")),
            ManifoldPoint::Sphere(SpherePoint::new(coordinate, 0.0).expect("validated angle")),
        ),
        Manifold::WeylHeisenberg => (
            ManifoldPoint::Wh(WHPoint::single(C64::new(0.0, 0.0))),
            ManifoldPoint::Wh(WHPoint::single(C64::new(coordinate, 0.0))),
        ),
    }
}

/// Relation diameter of the settings pair at one grid coordinate.
pub fn grid_relation_diameter(manifold: Manifold, coordinate: f64) -> f64 {
    let (g1, g2) = grid_settings(manifold, coordinate);
    let relation = metric::relation_between(&g1, &g2).expect("settings share the manifold");
    metric::relation_diameter(&relation)
}

/// Counts coincidences over `0..n_trials`, split across `workers`
/// threads.
///
/// Each trial is keyed by its index alone, so any partition of the range
/// sums to the same count and the worker count never changes the result.
pub fn threaded_coincidence_count(
    law: HiddenVariableLaw,
    relation_diameter: f64,
    seed: u64,
    n_trials: u64,
    workers: usize,
) -> u64 {
    let workers = workers.clamp(1, 64) as u64;
    if workers <= 1 || n_trials < 2 * workers {
        return hv::coincidence_count(law, relation_diameter, seed, 0..n_trials);
    }
    let chunk = n_trials / workers;
    std::thread::scope(|scope| {
        let mut handles = Vec::with_capacity(workers as usize);
        for k in 0..workers {
            let start = k * chunk;
            let end = if k + 1 == workers { n_trials } else { start + chunk };
            handles.push(scope.spawn(move || {
                hv::coincidence_count(law, relation_diameter, seed, start..end)
            }));
        }
        handles
            .into_iter()
            .map(|h| h.join().expect("counting worker never panics"))
            .sum()
    })
}

/// Runs the grid and returns the pass/fail cases plus one embedded
/// experiment per grid point.
pub fn run_epr(config: &EprConfig, workers: usize) -> (Vec<CaseResult>, Vec<ExperimentEcho>) {
    let law = HiddenVariableLaw::for_manifold(config.manifold);
    let m = config.manifold.name();
    let mut cases = Vec::with_capacity(config.grid.len());
    let mut experiments = Vec::with_capacity(config.grid.len());
    for (k, &coordinate) in config.grid.iter().enumerate() {
        let d = grid_relation_diameter(config.manifold, coordinate);
        let count = threaded_coincidence_count(
            law,
            d,
            config.seed.wrapping_add(k as u64),
            config.n_trials,
            workers,
        );
        let report = hv::summarize(law, config.n_trials, d, count);
        experiments.push(ExperimentEcho {
            coordinate,
            law: m.to_string(),
            n_trials: report.n_trials,
            relation_diameter: report.relation_diameter,
            predicted_rate: report.predicted_rate,
            coincidences: report.coincidences,
            observed_rate: report.observed_rate,
            z_score: report.z_score,
        });
        cases.push(CaseResult::check(
            format!("epr.{m}.point-{k}"),
            Some(0.0),
            report.z_score,
            Z_BOUND,
            format!(
                "monte-carlo (coordinate {coordinate}, observed rate {})",
                report.observed_rate
            ),
        ));
    }
    (cases, experiments)
}

/// Per-trial table for the whole grid, one block per grid point in grid
/// order with the trial index restarting at zero.
pub fn per_trial_csv(config: &EprConfig) -> String {
    let law = HiddenVariableLaw::for_manifold(config.manifold);
    let mut out = String::from("trial_index,hidden_diameter,relation_diameter,coincidence\n");
    for (k, &coordinate) in config.grid.iter().enumerate() {
        let d = grid_relation_diameter(config.manifold, coordinate);
        let seed = config.seed.wrapping_add(k as u64);
        for trial_index in 0..config.n_trials {
            let record = hv::trial_record(law, d, seed, trial_index);
            out.push_str(&format!(
                "{},{},{},{}\n",
                record.trial_index,
                record.hidden_diameter,
                record.relation_diameter,
                record.coincidence
            ));
        }
    }
    out
}
