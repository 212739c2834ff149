//! Noisy position measurements.

use std::io::{Read, Write};

use rand::Rng;
use rand_distr::StandardNormal;

use crate::io::{read_rows, uniform_dt, write_rows};
use crate::seed::stream_rng;
use crate::trajectories::{Trajectory, TrajectoryKind};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measurement {
    pub t: f64,
    pub zx: f64,
    pub zy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementSeries {
    pub dt: f64,
    /// Per-axis noise standard deviation, meters.
    pub sigma: f64,
    pub samples: Vec<Measurement>,
    pub source_kind: TrajectoryKind,
}

impl MeasurementSeries {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// First `n` samples.
    pub fn prefix(&self, n: usize) -> MeasurementSeries {
        MeasurementSeries { samples: self.samples[..n.min(self.len())].to_vec(), ..self.clone() }
    }

    pub fn xs(&self) -> Vec<f64> {
        self.samples.iter().map(|m| m.zx).collect()
    }

    pub fn ys(&self) -> Vec<f64> {
        self.samples.iter().map(|m| m.zy).collect()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        write_rows(out, &["t", "zx", "zy"], self.samples.iter().map(|m| vec![m.t, m.zx, m.zy]))
    }

    /// Reads a `t,zx,zy` CSV. The file does not carry sigma; pass it in.
    pub fn read_csv<R: Read>(input: R, sigma: f64, dt: Option<f64>) -> Result<Self> {
        check_sigma(sigma)?;
        let rows = read_rows(input, &["t", "zx", "zy"])?;
        let ts: Vec<f64> = rows.iter().map(|r| r[0]).collect();
        let dt = uniform_dt(&ts, dt)?;
        let samples = rows
            .iter()
            .enumerate()
            .map(|(k, r)| Measurement { t: k as f64 * dt, zx: r[1], zy: r[2] })
            .collect();
        Ok(MeasurementSeries { dt, sigma, samples, source_kind: TrajectoryKind::Custom })
    }
}

/// Discrete measurement-noise standard deviation `sqrt(rc / dt)`.
pub fn sigma_from(rc: f64, dt: f64) -> Result<f64> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::InvalidDt(dt));
    }
    if !(rc >= 0.0) || !rc.is_finite() {
        return Err(Error::InvalidConfig(format!("rc must be >= 0, got {rc}")));
    }
    Ok((rc / dt).sqrt())
}

fn check_sigma(sigma: f64) -> Result<()> {
    if sigma >= 0.0 && sigma.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidSigma(sigma))
    }
}

/// Adds i.i.d. `N(0, sigma^2)` noise per axis; x uses stream 0, y stream 1.
pub fn add_measurement_noise(traj: &Trajectory, sigma: f64, seed: u64) -> Result<MeasurementSeries> {
    check_sigma(sigma)?;
    let mut rx = stream_rng(seed, 0);
    let mut ry = stream_rng(seed, 1);
    let samples = traj
        .points
        .iter()
        .map(|p| {
            let vx: f64 = rx.sample(StandardNormal);
            let vy: f64 = ry.sample(StandardNormal);
            Measurement { t: p.t, zx: p.x + sigma * vx, zy: p.y + sigma * vy }
        })
        .collect();
    Ok(MeasurementSeries { dt: traj.dt, sigma, samples, source_kind: traj.kind })
}
