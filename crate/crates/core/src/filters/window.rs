//! Causal sliding-window average.

use crate::filters::{Estimate, TrackResult, TrackerKind};
use crate::sensing::MeasurementSeries;
use crate::{Error, Result};

/// Mean of the last `w` samples ending at each index (shorter at the start).
pub fn causal_mean(zs: &[f64], w: usize) -> Vec<f64> {
    (0..zs.len())
        .map(|k| {
            let win = &zs[(k + 1).saturating_sub(w)..=k];
            win.iter().sum::<f64>() / win.len() as f64
        })
        .collect()
}

/// Estimate `k` is the per-axis mean of measurements `max(0, k-w+1)..=k`.
pub fn window_track(meas: &MeasurementSeries, w: usize) -> Result<TrackResult> {
    if w < 1 {
        return Err(Error::InvalidWindow(w));
    }
    let xs = causal_mean(&meas.xs(), w);
    let ys = causal_mean(&meas.ys(), w);
    let estimates = meas
        .samples
        .iter()
        .zip(xs.into_iter().zip(ys))
        .map(|(m, (x, y))| Estimate { t: m.t, x, y })
        .collect();
    Ok(TrackResult { estimates, tracker: TrackerKind::Window, config_digest: format!("window w={w}") })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sensing::Measurement;
    use crate::trajectories::TrajectoryKind;

    fn series(xs: &[f64]) -> MeasurementSeries {
        MeasurementSeries {
            dt: 1.0,
            sigma: 1.0,
            samples: xs.iter().enumerate().map(|(k, &x)| Measurement { t: k as f64, zx: x, zy: -x }).collect(),
            source_kind: TrajectoryKind::Custom,
        }
    }

    #[test]
    fn width_one_is_identity() {
        let m = series(&[0.3, -1.7, 5.0, 2.2]);
        let t = window_track(&m, 1).unwrap();
        for (e, z) in t.estimates.iter().zip(&m.samples) {
            assert_eq!((e.x, e.y), (z.zx, z.zy));
        }
    }

    #[test]
    fn constant_series() {
        let t = window_track(&series(&[7.5; 30]), 6).unwrap();
        assert!(t.estimates.iter().all(|e| (e.x - 7.5).abs() < 1e-12));
    }

    #[test]
    fn prefix_windows() {
        let t = window_track(&series(&[1.0, 2.0, 3.0, 4.0]), 2).unwrap();
        let xs: Vec<f64> = t.estimates.iter().map(|e| e.x).collect();
        assert_eq!(xs, vec![1.0, 1.5, 2.5, 3.5]);
        let ys: Vec<f64> = t.estimates.iter().map(|e| e.y).collect();
        assert_eq!(ys, vec![-1.0, -1.5, -2.5, -3.5]);
    }

    #[test]
    fn zero_width_rejected() {
        assert!(matches!(window_track(&series(&[1.0]), 0), Err(Error::InvalidWindow(0))));
    }
}
