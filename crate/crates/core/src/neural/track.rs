use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::filters::{Estimate, TrackResult, TrackerKind};
use crate::neural::mlp::{ForwardScratch, MlpParams};
use crate::sensing::MeasurementSeries;
use crate::Error;

/// What the network receives as its two "previous position" inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FeedbackMode {
    /// Its own two previous outputs.
    #[default]
    Estimates,
    /// The two previous raw measurements.
    Measurements,
}

impl fmt::Display for FeedbackMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FeedbackMode::Estimates => "estimates",
            FeedbackMode::Measurements => "measurements",
        })
    }
}

impl FromStr for FeedbackMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "estimates" => Ok(FeedbackMode::Estimates),
            "measurements" => Ok(FeedbackMode::Measurements),
            _ => Err(Error::Parse(format!("unknown feedback mode `{s}`"))),
        }
    }
}

/// Causal network tracking. The first two estimates are the raw
/// measurements; afterwards the input is `(z[k], prev[k-1], prev[k-2])`.
pub fn nn_track(params: &MlpParams, meas: &MeasurementSeries, mode: FeedbackMode) -> TrackResult {
    let mut scratch = ForwardScratch::new(params);
    let mut est: Vec<(f64, f64)> = Vec::with_capacity(meas.len());
    for (k, m) in meas.samples.iter().enumerate() {
        if k < 2 {
            est.push((m.zx, m.zy));
            continue;
        }
        let (p1, p2) = match mode {
            FeedbackMode::Estimates => (est[k - 1], est[k - 2]),
            FeedbackMode::Measurements => {
                let (a, b) = (&meas.samples[k - 1], &meas.samples[k - 2]);
                ((a.zx, a.zy), (b.zx, b.zy))
            }
        };
        let out = scratch.forward(params, &params.encode((m.zx, m.zy), p1, p2));
        est.push(params.decode(out, p1));
    }
    let estimates = meas.samples.iter().zip(est).map(|(m, (x, y))| Estimate { t: m.t, x, y }).collect();
    TrackResult {
        estimates,
        tracker: TrackerKind::Nn,
        config_digest: format!("nn hidden={} feedback={mode}", params.hidden()),
    }
}
