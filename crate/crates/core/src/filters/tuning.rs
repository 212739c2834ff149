//! Grid-search tuning of the baseline trackers on dedicated tuning runs.
//!
//! Tuning runs draw their seeds with the `Tune*` purposes, so they never
//! share a realization with evaluation runs.

use std::ops::RangeInclusive;

use serde::Serialize;

use crate::benchmark::{rms_error, ScenarioConfig};
use crate::filters::{kalman_track, window_track, LinearGaussianModel};
use crate::{Error, Result};

pub const DEFAULT_W_GRID: RangeInclusive<usize> = 1..=20;

/// `10^-3 .. 10^3` with four points per decade.
pub fn default_q_grid() -> Vec<f64> {
    (0..=24).map(|i| 10f64.powf(-3.0 + i as f64 / 4.0)).collect()
}

/// Outcome of one grid search: the chosen value and the mean tuning RMS for
/// every candidate, `(candidate, rms)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TuningRecord {
    pub scenario: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chosen_w: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chosen_q: Option<f64>,
    pub tuning_rms_curve: Vec<(f64, f64)>,
}

/// First candidate with the smallest mean RMS (ties go to the earlier one).
fn grid_search<T: Copy>(
    scenario: &ScenarioConfig,
    candidates: &[T],
    eval: impl Fn(T, &crate::MeasurementSeries) -> Result<crate::TrackResult>,
) -> Result<(usize, Vec<f64>)> {
    if candidates.is_empty() {
        return Err(Error::InvalidConfig("empty tuning grid".into()));
    }
    let set = scenario.tuning_set()?;
    let mut curve = vec![0.0; candidates.len()];
    for (truth, meas) in &set {
        for (acc, &c) in curve.iter_mut().zip(candidates) {
            *acc += rms_error(&eval(c, meas)?, truth)?;
        }
    }
    curve.iter_mut().for_each(|v| *v /= set.len() as f64);
    let best = curve
        .iter()
        .enumerate()
        .fold(0, |best, (i, &v)| if v < curve[best] { i } else { best });
    Ok((best, curve))
}

/// Window length minimizing mean RMS over the scenario's tuning runs.
pub fn tune_window(scenario: &ScenarioConfig, w_grid: RangeInclusive<usize>) -> Result<TuningRecord> {
    let grid: Vec<usize> = w_grid.collect();
    if grid.contains(&0) {
        return Err(Error::InvalidWindow(0));
    }
    let (best, curve) = grid_search(scenario, &grid, |w, m| window_track(m, w))?;
    Ok(TuningRecord {
        scenario: scenario.label(),
        chosen_w: Some(grid[best]),
        chosen_q: None,
        tuning_rms_curve: grid.iter().map(|&w| w as f64).zip(curve).collect(),
    })
}

/// Process-noise intensity of the constant-velocity Kalman model minimizing
/// mean RMS over the scenario's tuning runs. `q_grid` must be ascending.
pub fn tune_cv_process_noise(scenario: &ScenarioConfig, q_grid: &[f64]) -> Result<TuningRecord> {
    if q_grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidConfig("q grid must be strictly ascending".into()));
    }
    let (dt, sigma) = (scenario.dt, scenario.sigma);
    let models = q_grid
        .iter()
        .map(|&q| LinearGaussianModel::constant_velocity(dt, q, sigma))
        .collect::<Result<Vec<_>>>()?;
    let idx: Vec<usize> = (0..models.len()).collect();
    let (best, curve) = grid_search(scenario, &idx, |i, m| kalman_track(&models[i], m))?;
    Ok(TuningRecord {
        scenario: scenario.label(),
        chosen_w: None,
        chosen_q: Some(q_grid[best]),
        tuning_rms_curve: q_grid.iter().copied().zip(curve).collect(),
    })
}
