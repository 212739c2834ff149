//! Classical baseline trackers and their tuning.

pub mod kalman;
pub mod tuning;
pub mod window;

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::io::write_rows;
use crate::{Error, Result};

pub use kalman::{kalman_step, kalman_track, steady_state_gain, KalmanState, LinearGaussianModel, SteadyState};
pub use tuning::{tune_cv_process_noise, tune_window, TuningRecord};
pub use window::window_track;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrackerKind {
    Kalman,
    Window,
    Nn,
}

impl TrackerKind {
    pub const ALL: [TrackerKind; 3] = [TrackerKind::Nn, TrackerKind::Kalman, TrackerKind::Window];

    pub fn name(self) -> &'static str {
        match self {
            TrackerKind::Kalman => "kalman",
            TrackerKind::Window => "window",
            TrackerKind::Nn => "nn",
        }
    }
}

impl fmt::Display for TrackerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TrackerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kalman" => Ok(TrackerKind::Kalman),
            "window" => Ok(TrackerKind::Window),
            "nn" => Ok(TrackerKind::Nn),
            _ => Err(Error::Parse(format!("unknown tracker `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub t: f64,
    pub x: f64,
    pub y: f64,
}

/// Causal per-step position estimates from one tracker, aligned 1:1 with
/// the measurement series it consumed.
#[derive(Debug, Clone, PartialEq)]
pub struct TrackResult {
    pub estimates: Vec<Estimate>,
    pub tracker: TrackerKind,
    pub config_digest: String,
}

impl TrackResult {
    pub fn len(&self) -> usize {
        self.estimates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.estimates.is_empty()
    }

    /// CSV with header `t,xhat,yhat`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        write_rows(out, &["t", "xhat", "yhat"], self.estimates.iter().map(|e| vec![e.t, e.x, e.y]))
    }
}
