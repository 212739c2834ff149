//! Command-line interface.
//!
//! Every command is deterministic given its flags; seeds are always explicit
//! flags with documented defaults. Output files are written to a temporary
//! file in the target directory and renamed into place.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::benchmark::report::{
    known_eom_summary, table1_summary, to_json, write_known_eom_csv, write_plot_data, write_results_csv,
    write_table_csv,
};
use crate::benchmark::{
    default_ou_grid, known_eom_suite, reproduce_table1, run_scenario, KalmanSetting, ModelBank, NnSource,
    ScenarioConfig, SuiteOptions, WindowSetting,
};
use crate::filters::{kalman_track, window_track, LinearGaussianModel};
use crate::neural::{nn_track, train, FeedbackMode, MlpParams, TrainConfig};
use crate::sensing::{add_measurement_noise, sigma_from};
use crate::trajectories::{gen_car_path, gen_ou_trajectory, gen_training_walk, CarPath, OuConfig, VEHICLE_SPEED};
use crate::{Error, MeasurementSeries, Result, TrackerKind, Trajectory};

/// Environment variable capping the worker-thread count.
pub const THREADS_ENV: &str = "TRACKBENCH_THREADS";

#[derive(Debug, Parser)]
#[command(name = "trackbench", version, about = "Trajectory tracking benchmark: Kalman, sliding-window and neural trackers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a ground-truth trajectory CSV (t,x,y)
    GenPath(GenPathArgs),
    /// Add white Gaussian measurement noise to a trajectory CSV (t,zx,zy)
    AddNoise(AddNoiseArgs),
    /// Train a network on the random walk and save it as JSON
    Train(TrainArgs),
    /// Run one tracker over a measurement CSV (t,xhat,yhat)
    Track(TrackArgs),
    /// Monte-Carlo benchmark of one scenario
    Bench(BenchArgs),
    /// Reproduce the eight-row car-model table
    Table1(Table1Args),
    /// Known-equations-of-motion suite over a grid of OU processes
    KnownEom(KnownEomArgs),
    /// Per-step truth, measurements and estimates of one run
    PlotData(PlotDataArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PathArg {
    Car1,
    Car2,
    Walk,
    Ou,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TrackerArg {
    Kalman,
    Window,
    Nn,
}

impl From<TrackerArg> for TrackerKind {
    fn from(t: TrackerArg) -> Self {
        match t {
            TrackerArg::Kalman => TrackerKind::Kalman,
            TrackerArg::Window => TrackerKind::Window,
            TrackerArg::Nn => TrackerKind::Nn,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FeedbackArg {
    Estimates,
    Measurements,
}

impl From<FeedbackArg> for FeedbackMode {
    fn from(f: FeedbackArg) -> Self {
        match f {
            FeedbackArg::Estimates => FeedbackMode::Estimates,
            FeedbackArg::Measurements => FeedbackMode::Measurements,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

fn positive_usize(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be >= 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn positive_f64(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        Ok(_) => Err("must be a finite number > 0".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn non_negative_f64(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v >= 0.0 && v.is_finite() => Ok(v),
        Ok(_) => Err("must be a finite number >= 0".into()),
        Err(e) => Err(e.to_string()),
    }
}

/// Path geometry shared by `gen-path`, `bench` and `plot-data`.
#[derive(Debug, Clone, Args)]
pub struct PathArgs {
    /// Time step, seconds
    #[arg(long, default_value_t = 1.0, value_parser = positive_f64)]
    pub dt: f64,
    /// Laps of a car course
    #[arg(long, default_value_t = 1, value_parser = positive_usize)]
    pub laps: usize,
    /// Samples of a walk or OU path
    #[arg(long, default_value_t = 1000, value_parser = positive_usize)]
    pub steps: usize,
    /// OU mean-reversion rate a, 1/s
    #[arg(long, default_value_t = 0.5, value_parser = non_negative_f64)]
    pub a: f64,
    /// OU process-noise gain b, m/s^1.5
    #[arg(long, default_value_t = 1.0, value_parser = non_negative_f64)]
    pub b: f64,
    /// OU initial position per axis, meters
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub x0: f64,
}

impl PathArgs {
    fn ou(&self, sigma: f64) -> OuConfig {
        OuConfig { a: self.a, b: self.b, dt: self.dt, n_steps: self.steps, x0: self.x0, rc: sigma * sigma * self.dt }
    }

    fn scenario(&self, path: PathArg, sigma: f64, runs: usize, seed: u64) -> Result<ScenarioConfig> {
        Ok(match path {
            PathArg::Car1 => ScenarioConfig::car(CarPath::One, self.laps, self.dt, sigma, runs, seed),
            PathArg::Car2 => ScenarioConfig::car(CarPath::Two, self.laps, self.dt, sigma, runs, seed),
            PathArg::Walk => ScenarioConfig::training_walk(self.steps, self.dt, sigma, runs, seed),
            PathArg::Ou => ScenarioConfig::ou(self.ou(sigma), runs, seed)?,
        })
    }
}

/// Network source for commands that can train on the fly.
#[derive(Debug, Clone, Args)]
pub struct NnArgs {
    /// Trained network JSON; trained on the fly when absent
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// Training iterations when training on the fly
    #[arg(long, default_value_t = 15_000, value_parser = positive_usize)]
    pub iterations: usize,
    /// What the network receives as its previous positions
    #[arg(long, value_enum, default_value_t = FeedbackArg::Estimates)]
    pub feedback: FeedbackArg,
}

#[derive(Debug, Clone, Args)]
pub struct GenPathArgs {
    #[arg(long, value_enum)]
    pub path: PathArg,
    #[command(flatten)]
    pub geometry: PathArgs,
    /// Walk speed, m/s
    #[arg(long, default_value_t = VEHICLE_SPEED, value_parser = positive_f64)]
    pub speed: f64,
    /// Seed of the walk or OU draw
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct AddNoiseArgs {
    /// Trajectory CSV (t,x,y)
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Per-axis noise standard deviation, meters
    #[arg(long, default_value_t = 1.0, value_parser = non_negative_f64, conflicts_with = "rc")]
    pub sigma: f64,
    /// Continuous noise intensity Rc, m^2 s; sigma = sqrt(Rc / dt)
    #[arg(long, value_parser = non_negative_f64)]
    pub rc: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct TrainArgs {
    #[arg(long, default_value_t = 1.0, value_parser = positive_f64)]
    pub dt: f64,
    /// Measurement noise of the training data, meters
    #[arg(long, default_value_t = 1.0, value_parser = non_negative_f64)]
    pub sigma: f64,
    #[arg(long, default_value_t = 15_000, value_parser = positive_usize)]
    pub iterations: usize,
    #[arg(long, default_value_t = 64, value_parser = positive_usize)]
    pub batch_size: usize,
    #[arg(long, default_value_t = 1e-3, value_parser = positive_f64)]
    pub learning_rate: f64,
    /// Learning rate at the last iteration (cosine decay)
    #[arg(long, default_value_t = 1e-5, value_parser = non_negative_f64)]
    pub final_learning_rate: f64,
    /// Jitter on teacher-forced previous positions, meters [default: 0.5 * sigma]
    #[arg(long, value_parser = non_negative_f64)]
    pub feedback_noise: Option<f64>,
    #[arg(long, default_value_t = crate::neural::mlp::HIDDEN, value_parser = positive_usize)]
    pub hidden: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct TrackArgs {
    #[arg(long, value_enum)]
    pub tracker: TrackerArg,
    /// Measurement CSV (t,zx,zy)
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Measurement noise, meters (Kalman measurement model)
    #[arg(long, default_value_t = 1.0, value_parser = non_negative_f64)]
    pub sigma: f64,
    /// Time step, seconds [default: inferred from the t column]
    #[arg(long, value_parser = positive_f64)]
    pub dt: Option<f64>,
    /// Network JSON (nn tracker)
    #[arg(long, required_if_eq("tracker", "nn"))]
    pub model: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FeedbackArg::Estimates)]
    pub feedback: FeedbackArg,
    /// Window length (window tracker)
    #[arg(long, default_value_t = 5, value_parser = positive_usize)]
    pub window: usize,
    /// Constant-velocity process-noise intensity (Kalman tracker)
    #[arg(long, default_value_t = 1.0, value_parser = non_negative_f64)]
    pub q: f64,
    /// Use the exact OU model with this a instead of constant velocity
    #[arg(long, value_parser = non_negative_f64, requires = "ou_b")]
    pub ou_a: Option<f64>,
    /// OU process-noise gain b for the exact model
    #[arg(long, value_parser = non_negative_f64, requires = "ou_a")]
    pub ou_b: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub scenario: PathArg,
    #[command(flatten)]
    pub geometry: PathArgs,
    /// Per-axis noise, meters (OU: Rc = sigma^2 * dt)
    #[arg(long, default_value_t = 1.0, value_parser = non_negative_f64)]
    pub sigma: f64,
    /// Monte-Carlo runs
    #[arg(long, default_value_t = 100, value_parser = positive_usize)]
    pub runs: usize,
    /// Comma-separated trackers
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [TrackerArg::Kalman, TrackerArg::Window, TrackerArg::Nn])]
    pub trackers: Vec<TrackerArg>,
    /// Fixed window length [default: tuned]
    #[arg(long, value_parser = positive_usize)]
    pub window: Option<usize>,
    /// Fixed constant-velocity q [default: tuned; exact model for OU]
    #[arg(long, value_parser = non_negative_f64)]
    pub q: Option<f64>,
    #[command(flatten)]
    pub nn: NnArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct SuiteArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Tuning runs per scenario
    #[arg(long, default_value_t = crate::benchmark::scenario::MIN_TUNING_RUNS, value_parser = positive_usize)]
    pub tuning_runs: usize,
    /// Training iterations per network
    #[arg(long, default_value_t = 15_000, value_parser = positive_usize)]
    pub iterations: usize,
    #[arg(long, value_enum, default_value_t = FeedbackArg::Estimates)]
    pub feedback: FeedbackArg,
    /// Directory receiving the trained networks as JSON
    #[arg(long)]
    pub save_models: Option<PathBuf>,
    /// csv: long results to --out plus <out>.table.csv and <out>.summary.json; json: summary only
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

impl SuiteArgs {
    fn options(&self, base: SuiteOptions, runs: usize) -> SuiteOptions {
        SuiteOptions {
            runs,
            tuning_runs: self.tuning_runs,
            iterations: self.iterations,
            feedback: self.feedback.into(),
            ..base
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Table1Args {
    #[command(flatten)]
    pub suite: SuiteArgs,
    #[arg(long, default_value_t = 100, value_parser = positive_usize)]
    pub runs: usize,
    /// Laps of each car course
    #[arg(long, default_value_t = 4, value_parser = positive_usize)]
    pub laps: usize,
    #[arg(long, default_value = "table1.csv")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct KnownEomArgs {
    #[command(flatten)]
    pub suite: SuiteArgs,
    #[arg(long, default_value_t = 200, value_parser = positive_usize)]
    pub runs: usize,
    /// Samples of each OU realization
    #[arg(long, default_value_t = 1000, value_parser = positive_usize)]
    pub steps: usize,
    #[arg(long, default_value = "known_eom.csv")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct PlotDataArgs {
    #[arg(long, value_enum)]
    pub path: PathArg,
    #[command(flatten)]
    pub geometry: PathArgs,
    #[arg(long, default_value_t = 1.0, value_parser = non_negative_f64)]
    pub sigma: f64,
    /// Evaluation run index to export
    #[arg(long, default_value_t = 0)]
    pub run: u64,
    /// Comma-separated trackers
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [TrackerArg::Kalman, TrackerArg::Window, TrackerArg::Nn])]
    pub trackers: Vec<TrackerArg>,
    #[command(flatten)]
    pub nn: NnArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

/// Parses `argv` (program name first).
pub fn parse_and_validate<I, T>(argv: I) -> std::result::Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    Cli::try_parse_from(argv)
}

/// Parses and executes; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match parse_and_validate(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match configure_threads().and_then(|()| execute(&cli)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.to_string().replace('\n', " "));
            1
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::InvalidConfig(format!("{THREADS_ENV} must be a positive integer, got `{v}`")))?;
    // A pool may already exist when called twice in one process.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

pub fn execute(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::GenPath(a) => gen_path(a),
        Command::AddNoise(a) => add_noise(a),
        Command::Train(a) => train_cmd(a),
        Command::Track(a) => track(a),
        Command::Bench(a) => bench(a),
        Command::Table1(a) => table1(a),
        Command::KnownEom(a) => known_eom(a),
        Command::PlotData(a) => plot_data(a),
    }
}

/// Writes through a temporary sibling file renamed over `path` on success.
pub fn write_atomic(path: &Path, f: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    {
        let mut w = BufWriter::new(tmp.as_file_mut());
        f(&mut w)?;
        w.flush()?;
    }
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    write_atomic(path, |w| Ok(w.write_all(text.as_bytes())?))
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn load_model(path: &Path) -> Result<MlpParams> {
    MlpParams::from_json(&std::io::read_to_string(open(path)?)?)
}

/// `<out>.<suffix>`, replacing the extension of `out`.
fn sidecar(out: &Path, suffix: &str) -> PathBuf {
    out.with_extension(suffix)
}

fn gen_path(a: &GenPathArgs) -> Result<()> {
    let g = &a.geometry;
    let traj = match a.path {
        PathArg::Car1 => gen_car_path(CarPath::One, g.dt, g.laps)?,
        PathArg::Car2 => gen_car_path(CarPath::Two, g.dt, g.laps)?,
        PathArg::Walk => gen_training_walk(g.steps, g.dt, a.speed, a.seed)?,
        PathArg::Ou => gen_ou_trajectory(&g.ou(0.0), a.seed)?,
    };
    write_atomic(&a.out, |w| traj.write_csv(w))
}

fn add_noise(a: &AddNoiseArgs) -> Result<()> {
    let traj = Trajectory::read_csv(open(&a.input)?, None)?;
    let sigma = match a.rc {
        Some(rc) => sigma_from(rc, traj.dt)?,
        None => a.sigma,
    };
    let meas = add_measurement_noise(&traj, sigma, a.seed)?;
    write_atomic(&a.out, |w| meas.write_csv(w))
}

fn train_cmd(a: &TrainArgs) -> Result<()> {
    let cfg = TrainConfig {
        iterations: a.iterations,
        batch_size: a.batch_size,
        learning_rate: a.learning_rate,
        final_learning_rate: a.final_learning_rate,
        feedback_noise_std: a.feedback_noise.unwrap_or(0.5 * a.sigma),
        hidden: a.hidden,
        ..TrainConfig::standard(a.dt, a.sigma, a.seed)
    };
    let model = train(&cfg)?;
    write_text(&a.out, &(model.to_json()? + "\n"))
}

fn track(a: &TrackArgs) -> Result<()> {
    let meas = MeasurementSeries::read_csv(open(&a.input)?, a.sigma, a.dt)?;
    let result = match a.tracker {
        TrackerArg::Window => window_track(&meas, a.window)?,
        TrackerArg::Kalman => {
            let model = match (a.ou_a, a.ou_b) {
                (Some(oa), Some(ob)) => {
                    let ou = OuConfig { a: oa, b: ob, dt: meas.dt, n_steps: meas.len(), x0: 0.0, rc: a.sigma * a.sigma * meas.dt };
                    LinearGaussianModel::ou(&ou, a.sigma)?
                }
                _ => LinearGaussianModel::constant_velocity(meas.dt, a.q, a.sigma)?,
            };
            kalman_track(&model, &meas)?
        }
        TrackerArg::Nn => {
            let path = a.model.as_deref().ok_or_else(|| Error::InvalidConfig("--model is required for nn".into()))?;
            nn_track(&load_model(path)?, &meas, a.feedback.into())
        }
    };
    match a.format {
        Format::Csv => write_atomic(&a.out, |w| result.write_csv(w)),
        Format::Json => {
            let rows: Vec<[f64; 3]> = result.estimates.iter().map(|e| [e.t, e.x, e.y]).collect();
            let doc = serde_json::json!({ "tracker": result.tracker, "columns": ["t", "xhat", "yhat"], "estimates": rows });
            write_text(&a.out, &crate::benchmark::report::to_json(&doc)?)
        }
    }
}

fn nn_source(nn: &NnArgs, dt: f64, sigma: f64, seed: u64) -> Result<NnSource> {
    Ok(match &nn.model {
        Some(path) => NnSource::Model(Arc::new(load_model(path)?)),
        None => NnSource::Train(TrainConfig { iterations: nn.iterations, ..TrainConfig::standard(dt, sigma, seed) }),
    })
}

fn scenario_for(
    path: PathArg,
    geometry: &PathArgs,
    sigma: f64,
    runs: usize,
    seed: u64,
    trackers: &[TrackerArg],
    nn: &NnArgs,
) -> Result<ScenarioConfig> {
    let kinds: Vec<TrackerKind> = trackers.iter().map(|&t| t.into()).collect();
    let mut cfg = geometry.scenario(path, sigma, runs, seed)?.with_trackers(&kinds);
    if kinds.contains(&TrackerKind::Nn) {
        cfg = cfg.with_nn(nn_source(nn, geometry.dt, sigma, seed)?);
    }
    cfg.feedback = nn.feedback.into();
    Ok(cfg)
}

fn bench(a: &BenchArgs) -> Result<()> {
    let mut cfg = scenario_for(a.scenario, &a.geometry, a.sigma, a.runs, a.seed, &a.trackers, &a.nn)?;
    if let Some(w) = a.window {
        cfg.window = WindowSetting::Fixed(w);
    }
    if let Some(q) = a.q {
        cfg.kalman = KalmanSetting::Cv { q };
    }
    let result = run_scenario(&cfg)?;
    match a.format {
        Format::Csv => write_atomic(&a.out, |w| write_results_csv(w, [&result])),
        Format::Json => write_text(&a.out, &to_json(&result)?),
    }
}

fn save_models(bank: &ModelBank, dir: Option<&Path>) -> Result<()> {
    let Some(dir) = dir else {
        return Ok(());
    };
    std::fs::create_dir_all(dir)?;
    for ((dt, sigma), model) in bank.models() {
        write_text(&dir.join(format!("nn_dt{dt}_sigma{sigma}.json")), &(model.to_json()? + "\n"))?;
    }
    Ok(())
}

fn table1(a: &Table1Args) -> Result<()> {
    let opts = SuiteOptions { laps: a.laps, ..a.suite.options(SuiteOptions::table1(), a.runs) };
    let bank = ModelBank::new(a.suite.seed, &opts);
    let table = reproduce_table1(a.suite.seed, &opts, &bank)?;
    save_models(&bank, a.suite.save_models.as_deref())?;
    let summary = to_json(&table1_summary(&table))?;
    let results: Vec<_> = table.rows.iter().map(|r| &r.result).collect();
    match a.suite.format {
        Format::Json => write_text(&a.out, &summary),
        Format::Csv => {
            write_atomic(&a.out, |w| write_results_csv(w, results.iter().copied()))?;
            write_atomic(&sidecar(&a.out, "table.csv"), |w| write_table_csv(w, results.iter().copied()))?;
            write_text(&sidecar(&a.out, "summary.json"), &summary)
        }
    }
}

fn known_eom(a: &KnownEomArgs) -> Result<()> {
    let opts = SuiteOptions { ou_steps: a.steps, ..a.suite.options(SuiteOptions::known_eom(), a.runs) };
    let bank = ModelBank::new(a.suite.seed, &opts);
    let suite = known_eom_suite(a.suite.seed, &default_ou_grid(opts.ou_steps), &opts, &bank)?;
    save_models(&bank, a.suite.save_models.as_deref())?;
    let summary = to_json(&known_eom_summary(&suite))?;
    match a.suite.format {
        Format::Json => write_text(&a.out, &summary),
        Format::Csv => {
            write_atomic(&a.out, |w| write_results_csv(w, suite.rows.iter().map(|r| &r.result)))?;
            write_atomic(&sidecar(&a.out, "table.csv"), |w| write_known_eom_csv(w, &suite))?;
            write_text(&sidecar(&a.out, "summary.json"), &summary)
        }
    }
}

fn plot_data(a: &PlotDataArgs) -> Result<()> {
    let cfg = scenario_for(a.path, &a.geometry, a.sigma, 1, a.seed, &a.trackers, &a.nn)?;
    write_atomic(&a.out, |w| write_plot_data(w, &cfg, a.run))
}
