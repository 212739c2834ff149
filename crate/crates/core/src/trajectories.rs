//! Ground-truth path generation.
//!
//! Car-model courses are sampled at constant chord length `speed * dt`, so
//! consecutive samples are exactly one step apart. The training walk moves
//! in short constant-heading segments inside the 100 m x 100 m range. The
//! Ornstein-Uhlenbeck generator applies the discrete recursion
//! `x[k+1] = (1 - a dt) x[k] + sqrt(dt) b n[k]` independently per axis.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::io::{Read, Write};
use std::ops::RangeInclusive;
use std::str::FromStr;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::io::{read_rows, uniform_dt, write_rows};
use crate::seed::stream_rng;
use crate::{Error, Result};

/// Side length of the square operating range, meters.
pub const RANGE_SIZE: f64 = 100.0;
/// Vehicle speed for car courses and the training walk, m/s.
pub const VEHICLE_SPEED: f64 = 10.0;

const CAR_RADIUS: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrajectoryKind {
    Car1,
    Car2,
    TrainingWalk,
    Ou,
    /// Imported from a file; no generator contract applies.
    Custom,
}

impl fmt::Display for TrajectoryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TrajectoryKind::Car1 => "car1",
            TrajectoryKind::Car2 => "car2",
            TrajectoryKind::TrainingWalk => "training_walk",
            TrajectoryKind::Ou => "ou",
            TrajectoryKind::Custom => "custom",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Bounds {
    pub const RANGE: Bounds = Bounds { x_min: 0.0, x_max: RANGE_SIZE, y_min: 0.0, y_max: RANGE_SIZE };

    pub fn observed(points: &[TrajectoryPoint]) -> Bounds {
        points.iter().fold(
            Bounds {
                x_min: f64::INFINITY,
                x_max: f64::NEG_INFINITY,
                y_min: f64::INFINITY,
                y_max: f64::NEG_INFINITY,
            },
            |b, p| Bounds {
                x_min: b.x_min.min(p.x),
                x_max: b.x_max.max(p.x),
                y_min: b.y_min.min(p.y),
                y_max: b.y_max.max(p.y),
            },
        )
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        (self.x_min..=self.x_max).contains(&x) && (self.y_min..=self.y_max).contains(&y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub x: f64,
    pub y: f64,
}

/// Uniformly sampled ground-truth 2-D path; `t[k] = k * dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub dt: f64,
    pub points: Vec<TrajectoryPoint>,
    pub kind: TrajectoryKind,
    pub bounds: Bounds,
}

impl Trajectory {
    /// Builds a trajectory from positions, stamping `t = k * dt`.
    pub fn from_positions(dt: f64, kind: TrajectoryKind, bounds: Option<Bounds>, positions: &[(f64, f64)]) -> Result<Self> {
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::InvalidDt(dt));
        }
        if positions.is_empty() {
            return Err(Error::InvalidConfig("trajectory must have at least one point".into()));
        }
        let points: Vec<_> = positions
            .iter()
            .enumerate()
            .map(|(k, &(x, y))| TrajectoryPoint { t: k as f64 * dt, x, y })
            .collect();
        let bounds = bounds.unwrap_or_else(|| Bounds::observed(&points));
        Ok(Trajectory { dt, points, kind, bounds })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn positions(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.points.iter().map(|p| (p.x, p.y))
    }

    /// CSV with header `t,x,y`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        write_rows(out, &["t", "x", "y"], self.points.iter().map(|p| vec![p.t, p.x, p.y]))
    }

    /// Reads a `t,x,y` CSV as a [`TrajectoryKind::Custom`] path.
    pub fn read_csv<R: Read>(input: R, dt: Option<f64>) -> Result<Self> {
        let rows = read_rows(input, &["t", "x", "y"])?;
        let ts: Vec<f64> = rows.iter().map(|r| r[0]).collect();
        let dt = uniform_dt(&ts, dt)?;
        let pos: Vec<_> = rows.iter().map(|r| (r[1], r[2])).collect();
        Trajectory::from_positions(dt, TrajectoryKind::Custom, None, &pos)
    }
}

// ---------------------------------------------------------------------------
// Ornstein-Uhlenbeck

/// Discretized Gauss-Markov process parameters (per axis).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OuConfig {
    /// Mean-reversion rate, 1/s.
    pub a: f64,
    /// Process-noise gain, m/s^(3/2).
    pub b: f64,
    pub dt: f64,
    /// Number of samples produced.
    pub n_steps: usize,
    pub x0: f64,
    /// Continuous measurement-noise intensity, m^2 s.
    pub rc: f64,
}

impl OuConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::InvalidDt(self.dt));
        }
        if self.n_steps < 1 {
            return Err(Error::InvalidConfig("OU n_steps must be >= 1".into()));
        }
        let ad = self.a * self.dt;
        // Coefficient 1 - a dt must stay in [0, 1]; a dt = 1 is the memoryless case.
        if !(self.a >= 0.0) || !(ad <= 1.0) {
            return Err(Error::InvalidConfig(format!("OU requires 0 <= a*dt <= 1, got {ad}")));
        }
        if !(self.b >= 0.0) || !self.b.is_finite() {
            return Err(Error::InvalidConfig(format!("OU b must be >= 0, got {}", self.b)));
        }
        if !(self.rc >= 0.0) || !self.rc.is_finite() {
            return Err(Error::InvalidConfig(format!("OU rc must be >= 0, got {}", self.rc)));
        }
        if !self.x0.is_finite() {
            return Err(Error::InvalidConfig("OU x0 must be finite".into()));
        }
        Ok(())
    }

    /// Transition coefficient `1 - a dt`.
    pub fn decay(&self) -> f64 {
        1.0 - self.a * self.dt
    }

    /// Discrete process-noise variance `dt b^2`.
    pub fn process_variance(&self) -> f64 {
        self.dt * self.b * self.b
    }
}

/// An OU trajectory together with the unit-Gaussian drive that produced it.
#[derive(Debug, Clone)]
pub struct OuRealization {
    pub trajectory: Trajectory,
    /// `drive[axis][k]` is `n[k]` used to step from sample k to k+1.
    pub drive: [Vec<f64>; 2],
}

pub fn gen_ou_trajectory(cfg: &OuConfig, seed: u64) -> Result<Trajectory> {
    gen_ou_realization(cfg, seed).map(|r| r.trajectory)
}

/// Runs the per-axis OU recursion; axis `i` draws from ChaCha stream `i`.
pub fn gen_ou_realization(cfg: &OuConfig, seed: u64) -> Result<OuRealization> {
    cfg.validate()?;
    let decay = cfg.decay();
    let gain = cfg.dt.sqrt() * cfg.b;
    let mut axes: [Vec<f64>; 2] = Default::default();
    let mut drive: [Vec<f64>; 2] = Default::default();
    for (axis, (xs, ns)) in axes.iter_mut().zip(drive.iter_mut()).enumerate() {
        let mut rng = stream_rng(seed, axis as u64);
        xs.reserve(cfg.n_steps);
        ns.reserve(cfg.n_steps.saturating_sub(1));
        let mut x = cfg.x0;
        xs.push(x);
        for _ in 1..cfg.n_steps {
            let n: f64 = rng.sample(StandardNormal);
            x = decay * x + gain * n;
            xs.push(x);
            ns.push(n);
        }
    }
    let pos: Vec<_> = axes[0].iter().copied().zip(axes[1].iter().copied()).collect();
    let trajectory = Trajectory::from_positions(cfg.dt, TrajectoryKind::Ou, None, &pos)?;
    Ok(OuRealization { trajectory, drive })
}

// ---------------------------------------------------------------------------
// Car courses

/// The two car-model test courses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CarPath {
    /// Figure-eight of two radius-20 m circles centred (30,50) and (70,50).
    One,
    /// Diagonal (10,10)->(50,50), a full circle about (70,50), diagonal to (90,90).
    Two,
}

impl CarPath {
    pub fn from_id(id: u32) -> Result<Self> {
        match id {
            1 => Ok(CarPath::One),
            2 => Ok(CarPath::Two),
            other => Err(Error::InvalidPathId(other)),
        }
    }

    pub fn id(self) -> u32 {
        match self {
            CarPath::One => 1,
            CarPath::Two => 2,
        }
    }

    pub fn kind(self) -> TrajectoryKind {
        match self {
            CarPath::One => TrajectoryKind::Car1,
            CarPath::Two => TrajectoryKind::Car2,
        }
    }
}

impl FromStr for CarPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" | "car1" => Ok(CarPath::One),
            "2" | "car2" => Ok(CarPath::Two),
            _ => Err(Error::Parse(format!("unknown car path `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Piece {
    Line { from: (f64, f64), to: (f64, f64) },
    /// Signed `sweep`: positive is counter-clockwise.
    Arc { center: (f64, f64), radius: f64, start: f64, sweep: f64 },
}

impl Piece {
    fn length(&self) -> f64 {
        match *self {
            Piece::Line { from, to } => (to.0 - from.0).hypot(to.1 - from.1),
            Piece::Arc { radius, sweep, .. } => radius * sweep.abs(),
        }
    }

    fn point(&self, s: f64) -> (f64, f64) {
        match *self {
            Piece::Line { from, to } => {
                let u = s / self.length();
                (from.0 + u * (to.0 - from.0), from.1 + u * (to.1 - from.1))
            }
            Piece::Arc { center, radius, start, sweep } => {
                let ang = start + sweep.signum() * s / radius;
                (center.0 + radius * ang.cos(), center.1 + radius * ang.sin())
            }
        }
    }
}

struct Course {
    pieces: Vec<Piece>,
    ends: Vec<f64>,
}

impl Course {
    fn new(pieces: Vec<Piece>) -> Self {
        let ends = pieces
            .iter()
            .scan(0.0, |acc, p| {
                *acc += p.length();
                Some(*acc)
            })
            .collect();
        Course { pieces, ends }
    }

    fn length(&self) -> f64 {
        *self.ends.last().unwrap_or(&0.0)
    }

    fn point(&self, s: f64) -> (f64, f64) {
        let s = s.clamp(0.0, self.length());
        let i = self.ends.partition_point(|&e| e < s).min(self.pieces.len() - 1);
        let start = if i == 0 { 0.0 } else { self.ends[i - 1] };
        self.pieces[i].point(s - start)
    }

    /// Samples points so each is exactly `step` (Euclidean) from the previous,
    /// advancing along the course, until the course end is reached.
    fn chord_walk(&self, step: f64) -> Vec<(f64, f64)> {
        let total = self.length();
        let probe = step / 8.0;
        let mut s = 0.0;
        let mut p = self.point(0.0);
        let mut out = vec![p];
        let dist = |q: (f64, f64), p: (f64, f64)| (q.0 - p.0).hypot(q.1 - p.1);
        loop {
            // A chord never exceeds its arc, so the crossing lies beyond s + step.
            let mut lo = s;
            let mut hi = s + step;
            while hi < total && dist(self.point(hi), p) < step {
                lo = hi;
                hi += probe;
            }
            if hi >= total {
                hi = total;
                if dist(self.point(hi), p) < step {
                    break;
                }
            }
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if dist(self.point(mid), p) < step {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            s = hi;
            p = self.point(s);
            out.push(p);
        }
        out
    }
}

fn course_pieces(path: CarPath, reversed: bool) -> Vec<Piece> {
    let r = CAR_RADIUS;
    match path {
        CarPath::One => vec![
            Piece::Arc { center: (30.0, 50.0), radius: r, start: 0.0, sweep: TAU },
            Piece::Arc { center: (70.0, 50.0), radius: r, start: PI, sweep: -TAU },
        ],
        CarPath::Two if !reversed => vec![
            Piece::Line { from: (10.0, 10.0), to: (50.0, 50.0) },
            Piece::Arc { center: (70.0, 50.0), radius: r, start: PI, sweep: -TAU },
            Piece::Line { from: (50.0, 50.0), to: (90.0, 90.0) },
        ],
        CarPath::Two => vec![
            Piece::Line { from: (90.0, 90.0), to: (50.0, 50.0) },
            Piece::Arc { center: (70.0, 50.0), radius: r, start: PI, sweep: TAU },
            Piece::Line { from: (50.0, 50.0), to: (10.0, 10.0) },
        ],
    }
}

/// Total arc length of one lap of a car course, meters.
pub fn car_course_length(path: CarPath) -> f64 {
    Course::new(course_pieces(path, false)).length()
}

/// Samples a car course at 10 m/s. Path 1 repeats its closed loop; path 2 is
/// open, so even laps drive it in reverse.
pub fn gen_car_path(path: CarPath, dt: f64, laps: usize) -> Result<Trajectory> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::InvalidDt(dt));
    }
    if laps < 1 {
        return Err(Error::InvalidConfig("laps must be >= 1".into()));
    }
    let pieces = (0..laps)
        .flat_map(|lap| course_pieces(path, path == CarPath::Two && lap % 2 == 1))
        .collect();
    let pos = Course::new(pieces).chord_walk(VEHICLE_SPEED * dt);
    Trajectory::from_positions(dt, path.kind(), Some(Bounds::RANGE), &pos)
}

// ---------------------------------------------------------------------------
// Training walk

/// A training walk plus the heading drawn at each segment start.
#[derive(Debug, Clone)]
pub struct TrainingWalk {
    pub trajectory: Trajectory,
    pub segment_headings: Vec<f64>,
}

pub fn gen_training_walk(n_steps: usize, dt: f64, speed: f64, seed: u64) -> Result<Trajectory> {
    gen_training_walk_detailed(n_steps, dt, speed, seed).map(|w| w.trajectory)
}

/// Piecewise-constant-heading walk with specular reflection at the range walls.
///
/// Headings are uniform on [0, 2pi), segments last 2..=10 steps and the start
/// is uniform in the inner 80 m square. A step that would leave the range has
/// the offending velocity component mirrored first, so step length is exact.
pub fn gen_training_walk_detailed(n_steps: usize, dt: f64, speed: f64, seed: u64) -> Result<TrainingWalk> {
    gen_training_walk_segments(n_steps, dt, speed, DEFAULT_SEGMENT_STEPS, seed)
}

pub const DEFAULT_SEGMENT_STEPS: RangeInclusive<usize> = 2..=10;

/// [`gen_training_walk_detailed`] with segment lengths (in steps) drawn
/// uniformly from `segment_steps`.
pub fn gen_training_walk_segments(
    n_steps: usize,
    dt: f64,
    speed: f64,
    segment_steps: RangeInclusive<usize>,
    seed: u64,
) -> Result<TrainingWalk> {
    if segment_steps.is_empty() || *segment_steps.start() == 0 {
        return Err(Error::InvalidConfig(format!("segment lengths must be a non-empty range of positive counts, got {segment_steps:?}")));
    }
    if n_steps < 3 {
        return Err(Error::InvalidConfig(format!("training walk needs n_steps >= 3, got {n_steps}")));
    }
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::InvalidDt(dt));
    }
    let step = speed * dt;
    if !(speed > 0.0) || !(step < RANGE_SIZE / 2.0) {
        return Err(Error::InvalidConfig(format!("invalid walk speed {speed} for dt {dt}")));
    }
    let mut rng = stream_rng(seed, 0);
    let margin = 0.1 * RANGE_SIZE;
    let mut x = rng.random_range(margin..RANGE_SIZE - margin);
    let mut y = rng.random_range(margin..RANGE_SIZE - margin);
    let mut pos = Vec::with_capacity(n_steps);
    let mut headings = Vec::new();
    pos.push((x, y));
    while pos.len() < n_steps {
        let theta: f64 = rng.random_range(0.0..TAU);
        headings.push(theta);
        let seg_len: usize = rng.random_range(segment_steps.clone());
        let (mut dx, mut dy) = (step * theta.cos(), step * theta.sin());
        for _ in 0..seg_len {
            if pos.len() == n_steps {
                break;
            }
            if !(0.0..=RANGE_SIZE).contains(&(x + dx)) {
                dx = -dx;
            }
            if !(0.0..=RANGE_SIZE).contains(&(y + dy)) {
                dy = -dy;
            }
            x += dx;
            y += dy;
            pos.push((x, y));
        }
    }
    let trajectory = Trajectory::from_positions(dt, TrajectoryKind::TrainingWalk, Some(Bounds::RANGE), &pos)?;
    Ok(TrainingWalk { trajectory, segment_headings: headings })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn step_lengths(t: &Trajectory) -> Vec<f64> {
        t.points.windows(2).map(|w| (w[1].x - w[0].x).hypot(w[1].y - w[0].y)).collect()
    }

    #[test]
    fn ou_zero_drive_is_constant() {
        let cfg = OuConfig { a: 0.0, b: 0.0, dt: 0.1, n_steps: 4, x0: 5.0, rc: 0.0 };
        let t = gen_ou_trajectory(&cfg, 1).unwrap();
        assert_eq!(t.len(), 4);
        assert!(t.points.iter().all(|p| p.x == 5.0 && p.y == 5.0));
    }

    #[test]
    fn ou_memoryless_when_a_dt_is_one() {
        let cfg = OuConfig { a: 2.0, b: 1.0, dt: 0.5, n_steps: 1_000_000, x0: 7.0, rc: 0.0 };
        let r = gen_ou_realization(&cfg, 9).unwrap();
        let xs = &r.trajectory.points;
        assert_eq!(xs[0].x, 7.0);
        for k in 1..xs.len() {
            assert_eq!(xs[k].x, cfg.dt.sqrt() * r.drive[0][k - 1]);
        }
        let n = (xs.len() - 1) as f64;
        let mean = xs[1..].iter().map(|p| p.x).sum::<f64>() / n;
        let sd = cfg.dt.sqrt();
        assert!(mean.abs() < 4.0 * sd / n.sqrt(), "mean {mean}");
    }

    #[test]
    fn ou_stationary_variance() {
        // AR(1) stationary variance dt b^2 / (1 - (1 - a dt)^2) = 0.1 / 0.0975.
        let expected = 0.1 / (1.0 - 0.95f64.powi(2));
        let cfg = OuConfig { a: 0.5, b: 1.0, dt: 0.1, n_steps: 1_000_000, x0: 0.0, rc: 0.0 };
        let t = gen_ou_trajectory(&cfg, 2024).unwrap();
        // drop a burn-in of 1000 samples
        let xs: Vec<f64> = t.points[1000..].iter().map(|p| p.x).collect();
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
        assert!((var / expected - 1.0).abs() < 0.03, "var {var} vs {expected}");
    }

    #[test]
    fn ou_rejects_bad_config() {
        let good = OuConfig { a: 0.5, b: 1.0, dt: 0.1, n_steps: 10, x0: 0.0, rc: 0.1 };
        assert!(good.validate().is_ok());
        for bad in [
            OuConfig { dt: 0.0, ..good },
            OuConfig { n_steps: 0, ..good },
            OuConfig { a: 11.0, ..good },
            OuConfig { a: -0.1, ..good },
            OuConfig { b: -1.0, ..good },
            OuConfig { rc: -1.0, ..good },
        ] {
            assert!(gen_ou_trajectory(&bad, 0).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn car1_starts_at_junction_with_unit_steps() {
        let t = gen_car_path(CarPath::One, 0.1, 1).unwrap();
        assert_eq!((t.points[0].x, t.points[0].y), (50.0, 50.0));
        for d in step_lengths(&t) {
            assert!((d - 1.0).abs() < 1e-9, "step {d}");
        }
        let last = t.points.last().unwrap();
        assert!((last.x - 50.0).hypot(last.y - 50.0) <= 1.0);
        assert!(t.points.iter().all(|p| Bounds::RANGE.contains(p.x, p.y)));
    }

    #[test]
    fn car2_lap_has_23_steps_at_dt_one() {
        let len = car_course_length(CarPath::Two);
        let oracle = 2.0 * 40.0 * 2f64.sqrt() + TAU * 20.0;
        assert!((len - oracle).abs() < 1e-9);
        assert!((len - 238.80).abs() < 0.01);
        let t = gen_car_path(CarPath::Two, 1.0, 1).unwrap();
        assert_eq!(t.len() - 1, (oracle / 10.0).floor() as usize);
        assert_eq!((t.points[0].x, t.points[0].y), (10.0, 10.0));
    }

    #[test]
    fn multi_lap_courses_keep_speed_and_range() {
        for path in [CarPath::One, CarPath::Two] {
            for dt in [0.1, 1.0] {
                let t = gen_car_path(path, dt, 3).unwrap();
                let one = gen_car_path(path, dt, 1).unwrap();
                assert!(t.len() > 2 * one.len());
                for d in step_lengths(&t) {
                    assert!((d / (10.0 * dt) - 1.0).abs() < 1e-9);
                }
                assert!(t.points.iter().all(|p| Bounds::RANGE.contains(p.x, p.y)));
            }
        }
    }

    #[test]
    fn car_path_errors() {
        assert!(matches!(gen_car_path(CarPath::One, 0.0, 1), Err(Error::InvalidDt(_))));
        assert!(matches!(gen_car_path(CarPath::One, 1.0, 0), Err(Error::InvalidConfig(_))));
        assert!(matches!(CarPath::from_id(3), Err(Error::InvalidPathId(3))));
    }

    #[test]
    fn walk_steps_and_range() {
        for seed in 0..20 {
            let t = gen_training_walk(2000, 0.1, 10.0, seed).unwrap();
            assert_eq!(t.len(), 2000);
            for d in step_lengths(&t) {
                assert!((d - 1.0).abs() < 1e-9);
            }
            let t = gen_training_walk(2000, 1.0, 10.0, seed).unwrap();
            assert!(t.points.iter().all(|p| Bounds::RANGE.contains(p.x, p.y)));
        }
    }

    #[test]
    fn walk_is_deterministic() {
        let a = gen_training_walk(500, 1.0, 10.0, 42).unwrap();
        let b = gen_training_walk(500, 1.0, 10.0, 42).unwrap();
        assert_eq!(a, b);
        assert!(gen_training_walk(2, 1.0, 10.0, 42).is_err());
        assert!(gen_training_walk(10, 1.0, 0.0, 42).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let t = gen_car_path(CarPath::Two, 1.0, 1).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        assert!(buf.starts_with(b"t,x,y\n"));
        let back = Trajectory::read_csv(buf.as_slice(), None).unwrap();
        assert_eq!(back.points, t.points);
    }
}
