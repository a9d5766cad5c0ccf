//! The `survey` command: tabulates the metric and the coincidence
//! probability over a grid of relation coordinates.

use crate::config::SurveyConfig;
use crate::epr::grid_relation_diameter;

/// One tabulated coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurveyRow {
    /// Bloch angle (sphere) or displacement modulus (plane).
    pub relation_coordinate: f64,
    /// Metric diameter of the relation.
    pub d: f64,
    /// Coincidence probability `1 - d^2`.
    pub p: f64,
}

/// Evaluates the closed forms over the grid, in grid order.
pub fn survey_rows(config: &SurveyConfig) -> Vec<SurveyRow> {
    config
        .grid
        .iter()
        .map(|&coordinate| {
            let d = grid_relation_diameter(config.manifold, coordinate);
            SurveyRow { relation_coordinate: coordinate, d, p: 1.0 - d * d }
        })
        .collect()
}

/// Renders the table: '.' decimals, '\n' endings, header mandatory,
/// shortest round-trip values.
pub fn survey_csv(config: &SurveyConfig) -> String {
    let mut out = String::from("relation_coordinate,d,p\n");
    for row in survey_rows(config) {
        out.push_str(&format!("{},{},{}\n", row.relation_coordinate, row.d, row.p));
    }
    out
}
