//! The Table 1 car-model suite and the known-equations-of-motion OU suite.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::benchmark::scenario::{run_scenario, NnSource, ScenarioConfig, ScenarioResult, MIN_TUNING_RUNS};
use crate::neural::{train, FeedbackMode, MlpParams, TrainConfig};
use crate::seed::{derive_seed, mix64, SeedPurpose, MAX_DERIVED_INDEX};
use crate::sensing::sigma_from;
use crate::trajectories::{CarPath, OuConfig};
use crate::{Result, TrackerKind};

/// Relative slack for the ordering flags of the OU suite.
pub const ORDERING_SLACK: f64 = 0.01;

/// Mean NN/Kalman ratio over the OU grid reported in the original study.
pub const PAPER_MEAN_OU_RATIO: f64 = 1.3;

/// Published Table 1 row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PaperRow {
    pub dt: f64,
    pub path: u32,
    pub sigma: f64,
    pub nn_rms: f64,
    pub kalman_rms: f64,
    pub window_rms: f64,
    pub ratio: f64,
}

const fn row(dt: f64, path: u32, sigma: f64, nn: f64, kalman: f64, window: f64, ratio: f64) -> PaperRow {
    PaperRow { dt, path, sigma, nn_rms: nn, kalman_rms: kalman, window_rms: window, ratio }
}

/// Published values, in table order.
pub const PAPER_TABLE1: [PaperRow; 8] = [
    row(0.1, 1, 1.0, 0.43, 0.51, 0.63, 0.87),
    row(0.1, 2, 1.0, 0.43, 0.49, 0.61, 0.88),
    row(0.1, 1, 2.0, 0.70, 0.83, 0.91, 0.85),
    row(0.1, 2, 2.0, 0.61, 0.77, 0.88, 0.78),
    row(1.0, 1, 1.0, 0.65, 1.53, 0.89, 0.43),
    row(1.0, 2, 1.0, 0.46, 1.57, 0.93, 0.31),
    row(1.0, 1, 2.0, 0.73, 2.44, 1.2, 0.30),
    row(1.0, 2, 2.0, 0.66, 2.31, 1.17, 0.29),
];

/// Knobs shared by both suites.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOptions {
    pub runs: usize,
    pub tuning_runs: usize,
    /// Laps of each car course.
    pub laps: usize,
    /// Steps of each OU realization.
    pub ou_steps: usize,
    pub feedback: FeedbackMode,
    /// Training iterations per network (the standard config uses 15,000).
    pub iterations: usize,
    pub hidden: usize,
}

impl SuiteOptions {
    pub fn table1() -> Self {
        SuiteOptions {
            runs: 100,
            tuning_runs: MIN_TUNING_RUNS,
            laps: 4,
            ou_steps: 1000,
            feedback: FeedbackMode::Estimates,
            iterations: 15_000,
            hidden: crate::neural::mlp::HIDDEN,
        }
    }

    pub fn known_eom() -> Self {
        SuiteOptions { runs: 200, ..SuiteOptions::table1() }
    }
}

/// One trained network per `(dt, sigma)`, trained on first use and shared
/// by every scenario with that pair.
pub struct ModelBank {
    suite_seed: u64,
    iterations: usize,
    hidden: usize,
    models: Mutex<BTreeMap<(u64, u64), Arc<MlpParams>>>,
}

impl ModelBank {
    pub fn new(suite_seed: u64, opts: &SuiteOptions) -> Self {
        ModelBank { suite_seed, iterations: opts.iterations, hidden: opts.hidden, models: Mutex::new(BTreeMap::new()) }
    }

    /// Training config used for `(dt, sigma)`.
    pub fn train_config(&self, dt: f64, sigma: f64) -> TrainConfig {
        let key = mix64(dt.to_bits() ^ mix64(sigma.to_bits())) % MAX_DERIVED_INDEX;
        let seed = derive_seed(self.suite_seed, SeedPurpose::Training, key);
        TrainConfig { iterations: self.iterations, hidden: self.hidden, ..TrainConfig::standard(dt, sigma, seed) }
    }

    /// Uses `model` for `(dt, sigma)` instead of training one.
    pub fn insert(&self, dt: f64, sigma: f64, model: MlpParams) {
        self.models.lock().unwrap().insert((dt.to_bits(), sigma.to_bits()), Arc::new(model));
    }

    pub fn get(&self, dt: f64, sigma: f64) -> Result<Arc<MlpParams>> {
        let key = (dt.to_bits(), sigma.to_bits());
        if let Some(m) = self.models.lock().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let model = Arc::new(train(&self.train_config(dt, sigma))?);
        Ok(self.models.lock().unwrap().entry(key).or_insert(model).clone())
    }

    /// Trained models keyed by `(dt, sigma)`.
    pub fn models(&self) -> Vec<((f64, f64), Arc<MlpParams>)> {
        let models = self.models.lock().unwrap();
        models.iter().map(|(&(d, s), m)| ((f64::from_bits(d), f64::from_bits(s)), m.clone())).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table1Row {
    pub paper: PaperRow,
    pub result: ScenarioResult,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table1 {
    pub suite_seed: u64,
    pub rows: Vec<Table1Row>,
}

/// The eight car-model rows: `dt` in {0.1, 1}, path in {1, 2}, sigma in
/// {1, 2}, with a tuned constant-velocity Kalman filter, a tuned window and
/// one network per `(dt, sigma)`.
pub fn reproduce_table1(suite_seed: u64, opts: &SuiteOptions, bank: &ModelBank) -> Result<Table1> {
    let mut rows = Vec::with_capacity(PAPER_TABLE1.len());
    for (i, paper) in PAPER_TABLE1.iter().enumerate() {
        let nn = bank.get(paper.dt, paper.sigma)?;
        let path = CarPath::from_id(paper.path)?;
        let base_seed = derive_seed(suite_seed, SeedPurpose::Suite, i as u64);
        let mut cfg = ScenarioConfig::car(path, opts.laps, paper.dt, paper.sigma, opts.runs, base_seed)
            .with_trackers(&[TrackerKind::Kalman, TrackerKind::Window])
            .with_nn(NnSource::Model(nn));
        cfg.feedback = opts.feedback;
        cfg.tuning_runs = opts.tuning_runs;
        rows.push(Table1Row { paper: *paper, result: run_scenario(&cfg)? });
    }
    Ok(Table1 { suite_seed, rows })
}

/// `a` in {0.2, 0.5, 1}, `b` in {0.5, 1}, `dt` in {0.1, 1}, sigma in {1, 2},
/// keeping `a * dt < 1`; `rc = sigma^2 * dt`, started at 0.
pub fn default_ou_grid(n_steps: usize) -> Vec<OuConfig> {
    let mut grid = Vec::new();
    for dt in [0.1, 1.0] {
        for sigma in [1.0f64, 2.0] {
            for a in [0.2, 0.5, 1.0] {
                for b in [0.5, 1.0] {
                    if a * dt < 1.0 {
                        grid.push(OuConfig { a, b, dt, n_steps, x0: 0.0, rc: sigma * sigma * dt });
                    }
                }
            }
        }
    }
    grid
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KnownEomRow {
    pub config: OuConfig,
    pub sigma: f64,
    pub result: ScenarioResult,
    pub kalman_le_nn: bool,
    pub kalman_le_window: bool,
    pub nn_le_window: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KnownEom {
    pub suite_seed: u64,
    pub rows: Vec<KnownEomRow>,
    /// Mean over rows that report a ratio.
    pub mean_ratio: Option<f64>,
    pub paper_mean_ratio: f64,
}

impl KnownEom {
    /// Kalman at or below both other trackers in every row.
    pub fn kalman_best_everywhere(&self) -> bool {
        self.rows.iter().all(|r| r.kalman_le_nn && r.kalman_le_window)
    }
}

fn le_with_slack(a: Option<f64>, b: Option<f64>) -> bool {
    match (a, b) {
        (Some(a), Some(b)) => a <= b * (1.0 + ORDERING_SLACK),
        _ => false,
    }
}

/// OU scenarios with the exact-model Kalman filter, a tuned window and the
/// same walk-trained networks as the car suite.
pub fn known_eom_suite(suite_seed: u64, configs: &[OuConfig], opts: &SuiteOptions, bank: &ModelBank) -> Result<KnownEom> {
    if configs.is_empty() {
        return Err(crate::Error::InvalidConfig("known-eom suite needs at least one OU config".into()));
    }
    let mut rows = Vec::with_capacity(configs.len());
    for (i, ou) in configs.iter().enumerate() {
        let sigma = sigma_from(ou.rc, ou.dt)?;
        let base_seed = derive_seed(suite_seed, SeedPurpose::Suite, (1 << 32) + i as u64);
        let mut cfg = ScenarioConfig::ou(*ou, opts.runs, base_seed)?
            .with_trackers(&[TrackerKind::Kalman, TrackerKind::Window])
            .with_nn(NnSource::Model(bank.get(ou.dt, sigma)?));
        cfg.feedback = opts.feedback;
        cfg.tuning_runs = opts.tuning_runs;
        let result = run_scenario(&cfg)?;
        let (k, n, w) = (result.mean(TrackerKind::Kalman), result.mean(TrackerKind::Nn), result.mean(TrackerKind::Window));
        rows.push(KnownEomRow {
            config: *ou,
            sigma,
            kalman_le_nn: le_with_slack(k, n),
            kalman_le_window: le_with_slack(k, w),
            nn_le_window: le_with_slack(n, w),
            result,
        });
    }
    let ratios: Vec<f64> = rows.iter().filter_map(|r| r.result.ratio_nn_over_kalman).collect();
    let mean_ratio = (!ratios.is_empty()).then(|| ratios.iter().sum::<f64>() / ratios.len() as f64);
    Ok(KnownEom { suite_seed, rows, mean_ratio, paper_mean_ratio: PAPER_MEAN_OU_RATIO })
}
