//! Monte-Carlo evaluation: RMS metric, scenarios and the two suites.

pub mod report;
pub mod scenario;
pub mod suites;

pub use scenario::{
    prepare, run_prepared, run_scenario, KalmanSetting, NnSource, PathSpec, Phase, ScenarioConfig, ScenarioResult,
    TrackerStats, WindowSetting,
};
pub use suites::{
    default_ou_grid, known_eom_suite, reproduce_table1, KnownEom, KnownEomRow, ModelBank, PaperRow, SuiteOptions, Table1,
    Table1Row, PAPER_MEAN_OU_RATIO, PAPER_TABLE1,
};

use crate::trajectories::Trajectory;
use crate::{Error, Result, TrackResult};

/// Root of the mean squared Euclidean position error over the track.
pub fn rms_error(track: &TrackResult, truth: &Trajectory) -> Result<f64> {
    if track.len() != truth.len() {
        return Err(Error::LengthMismatch { expected: truth.len(), found: track.len() });
    }
    if truth.is_empty() {
        return Err(Error::InvalidConfig("empty track".into()));
    }
    let mut sum = 0.0;
    for (k, (e, p)) in track.estimates.iter().zip(&truth.points).enumerate() {
        if (e.t - p.t).abs() > 1e-9 * p.t.abs().max(1.0) {
            return Err(Error::TimestampMismatch(k));
        }
        sum += (e.x - p.x).powi(2) + (e.y - p.y).powi(2);
    }
    Ok((sum / truth.len() as f64).sqrt())
}
