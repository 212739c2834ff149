use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::benchmark::rms_error;
use crate::filters::tuning::{default_q_grid, DEFAULT_W_GRID};
use crate::filters::{kalman_track, tune_cv_process_noise, tune_window, window_track, LinearGaussianModel, TuningRecord};
use crate::neural::{nn_track, train, FeedbackMode, MlpParams, TrainConfig};
use crate::seed::{derive_seed, SeedPurpose};
use crate::sensing::{add_measurement_noise, sigma_from, MeasurementSeries};
use crate::trajectories::{gen_car_path, gen_ou_trajectory, gen_training_walk, CarPath, OuConfig, Trajectory, VEHICLE_SPEED};
use crate::{Error, Result, TrackResult, TrackerKind};

/// Minimum number of tuning runs.
pub const MIN_TUNING_RUNS: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PathSpec {
    Car { path: CarPath, laps: usize },
    TrainingWalk { n_steps: usize },
    Ou(OuConfig),
    /// A given trajectory, identical in every run.
    Fixed {
        label: String,
        #[serde(skip)]
        trajectory: Arc<Trajectory>,
    },
}

impl PathSpec {
    /// Short label used in the `path` column of result files.
    pub fn label(&self) -> String {
        match self {
            PathSpec::Car { path, .. } => path.id().to_string(),
            PathSpec::TrainingWalk { .. } => "walk".into(),
            PathSpec::Ou(c) => format!("ou:a={}:b={}", c.a, c.b),
            PathSpec::Fixed { label, .. } => label.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub enum NnSource {
    Model(Arc<MlpParams>),
    Train(TrainConfig),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum WindowSetting {
    Tuned,
    Fixed(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum KalmanSetting {
    /// Exact model for OU paths, tuned constant-velocity otherwise.
    Auto,
    TunedCv,
    Cv { q: f64 },
    ExactOu,
}

/// One benchmark row: a path, a noise level and the trackers to compare.
#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub path: PathSpec,
    pub dt: f64,
    pub sigma: f64,
    pub trackers: Vec<TrackerKind>,
    pub runs: usize,
    pub base_seed: u64,
    pub nn: Option<NnSource>,
    pub feedback: FeedbackMode,
    pub window: WindowSetting,
    pub kalman: KalmanSetting,
    pub tuning_runs: usize,
}

/// Which seed family a realization is drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Evaluation,
    Tuning,
}

impl ScenarioConfig {
    fn base(path: PathSpec, dt: f64, sigma: f64, runs: usize, base_seed: u64) -> Self {
        ScenarioConfig {
            path,
            dt,
            sigma,
            trackers: vec![TrackerKind::Kalman, TrackerKind::Window],
            runs,
            base_seed,
            nn: None,
            feedback: FeedbackMode::Estimates,
            window: WindowSetting::Tuned,
            kalman: KalmanSetting::Auto,
            tuning_runs: MIN_TUNING_RUNS,
        }
    }

    pub fn car(path: CarPath, laps: usize, dt: f64, sigma: f64, runs: usize, base_seed: u64) -> Self {
        ScenarioConfig::base(PathSpec::Car { path, laps }, dt, sigma, runs, base_seed)
    }

    pub fn training_walk(n_steps: usize, dt: f64, sigma: f64, runs: usize, base_seed: u64) -> Self {
        ScenarioConfig::base(PathSpec::TrainingWalk { n_steps }, dt, sigma, runs, base_seed)
    }

    /// Scenario on a caller-supplied trajectory (kept fixed across runs).
    pub fn fixed(label: &str, trajectory: Trajectory, sigma: f64, runs: usize, base_seed: u64) -> Self {
        let dt = trajectory.dt;
        let path = PathSpec::Fixed { label: label.into(), trajectory: Arc::new(trajectory) };
        ScenarioConfig::base(path, dt, sigma, runs, base_seed)
    }

    /// OU scenario; sigma is `sqrt(rc / dt)`.
    pub fn ou(cfg: OuConfig, runs: usize, base_seed: u64) -> Result<Self> {
        let sigma = sigma_from(cfg.rc, cfg.dt)?;
        Ok(ScenarioConfig::base(PathSpec::Ou(cfg), cfg.dt, sigma, runs, base_seed))
    }

    pub fn with_trackers(mut self, trackers: &[TrackerKind]) -> Self {
        let mut t = trackers.to_vec();
        t.sort();
        t.dedup();
        self.trackers = t;
        self
    }

    pub fn with_nn(mut self, nn: NnSource) -> Self {
        if !self.trackers.contains(&TrackerKind::Nn) {
            self.trackers.push(TrackerKind::Nn);
            self.trackers.sort();
        }
        self.nn = Some(nn);
        self
    }

    pub fn label(&self) -> String {
        format!("path={} dt={} sigma={}", self.path.label(), self.dt, self.sigma)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::InvalidDt(self.dt));
        }
        if !(self.sigma >= 0.0) || !self.sigma.is_finite() {
            return Err(Error::InvalidSigma(self.sigma));
        }
        if self.runs < 1 {
            return Err(Error::InvalidConfig("monte_carlo_runs must be >= 1".into()));
        }
        if self.tuning_runs < MIN_TUNING_RUNS {
            return Err(Error::InvalidConfig(format!("tuning needs >= {MIN_TUNING_RUNS} runs")));
        }
        if self.trackers.is_empty() {
            return Err(Error::InvalidConfig("no trackers selected".into()));
        }
        if self.trackers.contains(&TrackerKind::Nn) && self.nn.is_none() {
            return Err(Error::InvalidConfig("nn tracker needs a model or a training config".into()));
        }
        if let WindowSetting::Fixed(0) = self.window {
            return Err(Error::InvalidWindow(0));
        }
        match &self.path {
            PathSpec::Car { laps, .. } if *laps < 1 => return Err(Error::InvalidConfig("laps must be >= 1".into())),
            PathSpec::TrainingWalk { n_steps } if *n_steps < 3 => {
                return Err(Error::InvalidConfig("walk n_steps must be >= 3".into()))
            }
            PathSpec::Ou(c) => {
                c.validate()?;
                if c.dt != self.dt {
                    return Err(Error::InvalidConfig("OU dt differs from scenario dt".into()));
                }
                let s = sigma_from(c.rc, c.dt)?;
                if (s - self.sigma).abs() > 1e-12 * s.max(1.0) {
                    return Err(Error::InvalidConfig("sigma differs from sqrt(rc/dt)".into()));
                }
            }
            PathSpec::Fixed { trajectory, .. } => {
                if trajectory.is_empty() || trajectory.dt != self.dt {
                    return Err(Error::InvalidConfig("fixed trajectory must be non-empty with the scenario dt".into()));
                }
            }
            _ => {}
        }
        if matches!(self.kalman, KalmanSetting::ExactOu) && !matches!(self.path, PathSpec::Ou(_)) {
            return Err(Error::InvalidConfig("exact Kalman model exists only for OU paths".into()));
        }
        Ok(())
    }

    /// Ground truth for run `index`. Car courses and fixed paths repeat in
    /// every run; walks and OU paths are redrawn.
    pub fn truth(&self, phase: Phase, index: u64) -> Result<Trajectory> {
        let purpose = match phase {
            Phase::Evaluation => SeedPurpose::EvalPath,
            Phase::Tuning => SeedPurpose::TunePath,
        };
        let seed = derive_seed(self.base_seed, purpose, index);
        match &self.path {
            PathSpec::Car { path, laps } => gen_car_path(*path, self.dt, *laps),
            PathSpec::TrainingWalk { n_steps } => gen_training_walk(*n_steps, self.dt, VEHICLE_SPEED, seed),
            PathSpec::Ou(cfg) => gen_ou_trajectory(cfg, seed),
            PathSpec::Fixed { trajectory, .. } => Ok((**trajectory).clone()),
        }
    }

    /// Measurement noise drawn for run `index` on `truth`.
    pub fn measure(&self, truth: &Trajectory, phase: Phase, index: u64) -> Result<MeasurementSeries> {
        let purpose = match phase {
            Phase::Evaluation => SeedPurpose::EvalNoise,
            Phase::Tuning => SeedPurpose::TuneNoise,
        };
        add_measurement_noise(truth, self.sigma, derive_seed(self.base_seed, purpose, index))
    }

    pub fn realize(&self, phase: Phase, index: u64) -> Result<(Trajectory, MeasurementSeries)> {
        let truth = self.truth(phase, index)?;
        let meas = self.measure(&truth, phase, index)?;
        Ok((truth, meas))
    }

    pub fn tuning_set(&self) -> Result<Vec<(Trajectory, MeasurementSeries)>> {
        (0..self.tuning_runs as u64)
            .into_par_iter()
            .map(|i| self.realize(Phase::Tuning, i))
            .collect()
    }
}

/// Mean and spread of per-run RMS for one tracker.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrackerStats {
    pub mean_rms: f64,
    /// Sample standard deviation across runs (0 for a single run).
    pub std_rms: f64,
    #[serde(skip)]
    pub per_run: Vec<f64>,
}

impl TrackerStats {
    pub fn from_runs(per_run: Vec<f64>) -> Self {
        let n = per_run.len() as f64;
        let mean_rms = per_run.iter().sum::<f64>() / n;
        let std_rms = if per_run.len() > 1 {
            (per_run.iter().map(|r| (r - mean_rms).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        TrackerStats { mean_rms, std_rms, per_run }
    }
}

/// Below this Kalman RMS the NN/Kalman ratio is reported as not applicable.
pub const RATIO_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioResult {
    pub label: String,
    pub path: String,
    pub dt: f64,
    pub sigma: f64,
    pub runs: usize,
    pub stats: BTreeMap<TrackerKind, TrackerStats>,
    /// `mean nn RMS / mean kalman RMS`.
    pub ratio_nn_over_kalman: Option<f64>,
    pub window_w: Option<usize>,
    pub kalman_q: Option<f64>,
    pub tuning: Vec<TuningRecord>,
}

impl ScenarioResult {
    pub fn mean(&self, tracker: TrackerKind) -> Option<f64> {
        self.stats.get(&tracker).map(|s| s.mean_rms)
    }
}

/// Trackers with every tunable resolved.
pub struct PreparedScenario {
    pub window_w: Option<usize>,
    pub kalman: Option<(LinearGaussianModel, Option<f64>)>,
    pub nn: Option<Arc<MlpParams>>,
    pub tuning: Vec<TuningRecord>,
}

impl PreparedScenario {
    pub fn track(&self, cfg: &ScenarioConfig, tracker: TrackerKind, meas: &MeasurementSeries) -> Result<TrackResult> {
        let missing = || Error::InvalidConfig(format!("tracker {tracker} not prepared"));
        match tracker {
            TrackerKind::Kalman => kalman_track(&self.kalman.as_ref().ok_or_else(missing)?.0, meas),
            TrackerKind::Window => window_track(meas, self.window_w.ok_or_else(missing)?),
            TrackerKind::Nn => Ok(nn_track(self.nn.as_ref().ok_or_else(missing)?, meas, cfg.feedback)),
        }
    }
}

/// Runs tuning and training needed by the selected trackers.
pub fn prepare(cfg: &ScenarioConfig) -> Result<PreparedScenario> {
    cfg.validate()?;
    let mut tuning = Vec::new();
    let window_w = if cfg.trackers.contains(&TrackerKind::Window) {
        Some(match cfg.window {
            WindowSetting::Fixed(w) => w,
            WindowSetting::Tuned => {
                let rec = tune_window(cfg, DEFAULT_W_GRID)?;
                let w = rec.chosen_w.expect("window tuning picks a width");
                tuning.push(rec);
                w
            }
        })
    } else {
        None
    };
    let kalman = if cfg.trackers.contains(&TrackerKind::Kalman) {
        let setting = match (cfg.kalman, &cfg.path) {
            (KalmanSetting::Auto, PathSpec::Ou(_)) => KalmanSetting::ExactOu,
            (KalmanSetting::Auto, _) => KalmanSetting::TunedCv,
            (s, _) => s,
        };
        Some(match (setting, &cfg.path) {
            (KalmanSetting::ExactOu, PathSpec::Ou(ou)) => (LinearGaussianModel::ou(ou, cfg.sigma)?, None),
            (KalmanSetting::Cv { q }, _) => (LinearGaussianModel::constant_velocity(cfg.dt, q, cfg.sigma)?, Some(q)),
            _ => {
                let rec = tune_cv_process_noise(cfg, &default_q_grid())?;
                let q = rec.chosen_q.expect("cv tuning picks a q");
                tuning.push(rec);
                (LinearGaussianModel::constant_velocity(cfg.dt, q, cfg.sigma)?, Some(q))
            }
        })
    } else {
        None
    };
    let nn = if cfg.trackers.contains(&TrackerKind::Nn) {
        match cfg.nn.as_ref() {
            Some(NnSource::Model(m)) => Some(m.clone()),
            Some(NnSource::Train(tc)) => Some(Arc::new(train(tc)?)),
            None => None,
        }
    } else {
        None
    };
    Ok(PreparedScenario { window_w, kalman, nn, tuning })
}

/// Paired Monte-Carlo evaluation: every tracker consumes the same
/// measurement series in each run.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<ScenarioResult> {
    let prepared = prepare(cfg)?;
    run_prepared(cfg, &prepared)
}

pub fn run_prepared(cfg: &ScenarioConfig, prepared: &PreparedScenario) -> Result<ScenarioResult> {
    let fixed_truth = match cfg.path {
        PathSpec::Car { .. } | PathSpec::Fixed { .. } => Some(cfg.truth(Phase::Evaluation, 0)?),
        _ => None,
    };
    let per_run: Vec<Vec<f64>> = (0..cfg.runs as u64)
        .into_par_iter()
        .map(|i| {
            let truth = match &fixed_truth {
                Some(t) => t.clone(),
                None => cfg.truth(Phase::Evaluation, i)?,
            };
            let meas = cfg.measure(&truth, Phase::Evaluation, i)?;
            cfg.trackers
                .iter()
                .map(|&t| rms_error(&prepared.track(cfg, t, &meas)?, &truth))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;
    let stats: BTreeMap<TrackerKind, TrackerStats> = cfg
        .trackers
        .iter()
        .enumerate()
        .map(|(j, &t)| (t, TrackerStats::from_runs(per_run.iter().map(|r| r[j]).collect())))
        .collect();
    let ratio = match (stats.get(&TrackerKind::Nn), stats.get(&TrackerKind::Kalman)) {
        (Some(nn), Some(k)) if k.mean_rms >= RATIO_FLOOR => Some(nn.mean_rms / k.mean_rms),
        _ => None,
    };
    Ok(ScenarioResult {
        label: cfg.label(),
        path: cfg.path.label(),
        dt: cfg.dt,
        sigma: cfg.sigma,
        runs: cfg.runs,
        stats,
        ratio_nn_over_kalman: ratio,
        window_w: prepared.window_w,
        kalman_q: prepared.kalman.as_ref().and_then(|k| k.1),
        tuning: prepared.tuning.clone(),
    })
}
