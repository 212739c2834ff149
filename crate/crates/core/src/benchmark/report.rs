//! Result files: long results CSV, wide table CSVs, summary JSON and
//! per-step plot data.

use std::io::Write;

use serde::Serialize;

use crate::benchmark::scenario::{prepare, Phase, ScenarioConfig, ScenarioResult};
use crate::benchmark::suites::{KnownEom, PaperRow, Table1};
use crate::filters::TuningRecord;
use crate::io::fmt_f64;
use crate::{Result, TrackerKind};

fn opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

/// Long format, one line per (scenario, tracker):
/// `dt,path,sigma,tracker,mean_rms,std_rms,runs`.
pub fn write_results_csv<'a, W: Write>(out: W, results: impl IntoIterator<Item = &'a ScenarioResult>) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["dt", "path", "sigma", "tracker", "mean_rms", "std_rms", "runs"])?;
    for r in results {
        for t in TrackerKind::ALL {
            if let Some(s) = r.stats.get(&t) {
                w.write_record([
                    r.dt.to_string(),
                    r.path.clone(),
                    r.sigma.to_string(),
                    t.to_string(),
                    fmt_f64(s.mean_rms),
                    fmt_f64(s.std_rms),
                    r.runs.to_string(),
                ])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

/// `dt,path,sigma,nn_rms,kalman_rms,window_rms,ratio`; empty cells for
/// missing trackers or a not-applicable ratio.
pub fn write_table_csv<'a, W: Write>(out: W, results: impl IntoIterator<Item = &'a ScenarioResult>) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["dt", "path", "sigma", "nn_rms", "kalman_rms", "window_rms", "ratio"])?;
    for r in results {
        w.write_record([
            r.dt.to_string(),
            r.path.clone(),
            r.sigma.to_string(),
            opt(r.mean(TrackerKind::Nn)),
            opt(r.mean(TrackerKind::Kalman)),
            opt(r.mean(TrackerKind::Window)),
            opt(r.ratio_nn_over_kalman),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Wide OU table with the ordering flags.
pub fn write_known_eom_csv<W: Write>(out: W, suite: &KnownEom) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "a", "b", "dt", "sigma", "nn_rms", "kalman_rms", "window_rms", "ratio", "kalman_le_nn", "kalman_le_window",
        "nn_le_window",
    ])?;
    for row in &suite.rows {
        let r = &row.result;
        w.write_record([
            row.config.a.to_string(),
            row.config.b.to_string(),
            r.dt.to_string(),
            r.sigma.to_string(),
            opt(r.mean(TrackerKind::Nn)),
            opt(r.mean(TrackerKind::Kalman)),
            opt(r.mean(TrackerKind::Window)),
            opt(r.ratio_nn_over_kalman),
            row.kalman_le_nn.to_string(),
            row.kalman_le_window.to_string(),
            row.nn_le_window.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Rms {
    pub nn_rms: Option<f64>,
    pub kalman_rms: Option<f64>,
    pub window_rms: Option<f64>,
    pub ratio: Option<f64>,
}

impl Rms {
    fn of(r: &ScenarioResult) -> Self {
        Rms {
            nn_rms: r.mean(TrackerKind::Nn),
            kalman_rms: r.mean(TrackerKind::Kalman),
            window_rms: r.mean(TrackerKind::Window),
            ratio: r.ratio_nn_over_kalman,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table1SummaryRow {
    pub dt: f64,
    pub path: u32,
    pub sigma: f64,
    pub runs: usize,
    pub paper: Rms,
    pub ours: Rms,
    /// `ours - paper`.
    pub delta: Rms,
    pub window_w: Option<usize>,
    pub kalman_q: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table1Summary {
    pub suite_seed: u64,
    pub kalman_baseline: &'static str,
    pub rows: Vec<Table1SummaryRow>,
    pub tuning: Vec<TuningRecord>,
}

fn paper_rms(p: &PaperRow) -> Rms {
    Rms { nn_rms: Some(p.nn_rms), kalman_rms: Some(p.kalman_rms), window_rms: Some(p.window_rms), ratio: Some(p.ratio) }
}

fn delta(a: &Rms, b: &Rms) -> Rms {
    let d = |x: Option<f64>, y: Option<f64>| Some(x? - y?);
    Rms {
        nn_rms: d(a.nn_rms, b.nn_rms),
        kalman_rms: d(a.kalman_rms, b.kalman_rms),
        window_rms: d(a.window_rms, b.window_rms),
        ratio: d(a.ratio, b.ratio),
    }
}

pub fn table1_summary(table: &Table1) -> Table1Summary {
    let rows = table
        .rows
        .iter()
        .map(|row| {
            let (paper, ours) = (paper_rms(&row.paper), Rms::of(&row.result));
            Table1SummaryRow {
                dt: row.paper.dt,
                path: row.paper.path,
                sigma: row.paper.sigma,
                runs: row.result.runs,
                delta: delta(&ours, &paper),
                paper,
                ours,
                window_w: row.result.window_w,
                kalman_q: row.result.kalman_q,
            }
        })
        .collect();
    Table1Summary {
        suite_seed: table.suite_seed,
        kalman_baseline: "per-axis constant-velocity Kalman filter, process noise tuned by grid search on separate runs",
        rows,
        tuning: table.rows.iter().flat_map(|r| r.result.tuning.iter().cloned()).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KnownEomSummaryRow {
    pub a: f64,
    pub b: f64,
    pub dt: f64,
    pub sigma: f64,
    pub runs: usize,
    pub ours: Rms,
    pub kalman_le_nn: bool,
    pub kalman_le_window: bool,
    pub nn_le_window: bool,
    pub window_w: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KnownEomSummary {
    pub suite_seed: u64,
    pub paper_mean_ratio: f64,
    pub mean_ratio: Option<f64>,
    pub delta_mean_ratio: Option<f64>,
    pub kalman_best_everywhere: bool,
    pub rows: Vec<KnownEomSummaryRow>,
}

pub fn known_eom_summary(suite: &KnownEom) -> KnownEomSummary {
    KnownEomSummary {
        suite_seed: suite.suite_seed,
        paper_mean_ratio: suite.paper_mean_ratio,
        mean_ratio: suite.mean_ratio,
        delta_mean_ratio: suite.mean_ratio.map(|m| m - suite.paper_mean_ratio),
        kalman_best_everywhere: suite.kalman_best_everywhere(),
        rows: suite
            .rows
            .iter()
            .map(|r| KnownEomSummaryRow {
                a: r.config.a,
                b: r.config.b,
                dt: r.result.dt,
                sigma: r.sigma,
                runs: r.result.runs,
                ours: Rms::of(&r.result),
                kalman_le_nn: r.kalman_le_nn,
                kalman_le_window: r.kalman_le_window,
                nn_le_window: r.nn_le_window,
                window_w: r.result.window_w,
            })
            .collect(),
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub const PLOT_HEADER: [&str; 11] = [
    "t", "x_true", "y_true", "zx", "zy", "xhat_kalman", "yhat_kalman", "xhat_nn", "yhat_nn", "xhat_window", "yhat_window",
];

/// Truth, measurements and every selected tracker's estimates for
/// evaluation run `run` of `cfg`; columns of unselected trackers are empty.
pub fn write_plot_data<W: Write>(out: W, cfg: &ScenarioConfig, run: u64) -> Result<()> {
    let prepared = prepare(cfg)?;
    let (truth, meas) = cfg.realize(Phase::Evaluation, run)?;
    let tracks = [TrackerKind::Kalman, TrackerKind::Nn, TrackerKind::Window]
        .map(|t| cfg.trackers.contains(&t).then(|| prepared.track(cfg, t, &meas)).transpose());
    let [kalman, nn, window] = tracks;
    let (kalman, nn, window) = (kalman?, nn?, window?);
    let mut w = csv::Writer::from_writer(out);
    w.write_record(PLOT_HEADER)?;
    for (k, (p, z)) in truth.points.iter().zip(&meas.samples).enumerate() {
        let mut rec = vec![fmt_f64(p.t), fmt_f64(p.x), fmt_f64(p.y), fmt_f64(z.zx), fmt_f64(z.zy)];
        for track in [&kalman, &nn, &window] {
            match track {
                Some(tr) => rec.extend([fmt_f64(tr.estimates[k].x), fmt_f64(tr.estimates[k].y)]),
                None => rec.extend([String::new(), String::new()]),
            }
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}
