//! Linear Kalman filter over a generic [`LinearGaussianModel`].
//!
//! Tracking runs one filter per axis. The car scenarios use a
//! constant-velocity (white-noise-acceleration) model, the OU scenarios the
//! exact scalar model of the generating process.

use nalgebra::{DMatrix, DVector};

use crate::filters::{Estimate, TrackResult, TrackerKind};
use crate::sensing::MeasurementSeries;
use crate::trajectories::OuConfig;
use crate::{Error, Result};

/// Smallest measurement variance used when sigma is zero.
pub const R_FLOOR: f64 = 1e-12;

const SYMMETRY_TOL: f64 = 1e-9;
const PSD_TOL: f64 = 1e-10;

/// State-space model `x[k+1] = F x[k] + w`, `z[k] = H x[k] + v`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearGaussianModel {
    pub f: DMatrix<f64>,
    pub h: DMatrix<f64>,
    pub q: DMatrix<f64>,
    pub r: DMatrix<f64>,
    pub p0: DMatrix<f64>,
    pub x0: DVector<f64>,
}

fn check_symmetric(name: &str, m: &DMatrix<f64>) -> Result<()> {
    let scale = m.amax().max(1.0);
    if (m - m.transpose()).amax() > SYMMETRY_TOL * scale {
        return Err(Error::InvalidModel(format!("{name} is not symmetric")));
    }
    Ok(())
}

fn min_eigenvalue(m: &DMatrix<f64>) -> f64 {
    m.clone().symmetric_eigenvalues().min()
}

impl LinearGaussianModel {
    pub fn new(
        f: DMatrix<f64>,
        h: DMatrix<f64>,
        q: DMatrix<f64>,
        r: DMatrix<f64>,
        p0: DMatrix<f64>,
        x0: DVector<f64>,
    ) -> Result<Self> {
        let model = LinearGaussianModel { f, h, q, r, p0, x0 };
        model.validate()?;
        Ok(model)
    }

    /// One-dimensional model; all arguments are scalars.
    pub fn scalar(f: f64, h: f64, q: f64, r: f64, p0: f64, x0: f64) -> Result<Self> {
        let m = |v| DMatrix::from_element(1, 1, v);
        LinearGaussianModel::new(m(f), m(h), m(q), m(r), m(p0), DVector::from_element(1, x0))
    }

    /// Exact per-axis model of the discretized OU process measured with
    /// noise `sigma`: `f = 1 - a dt`, `q = dt b^2`, `r = sigma^2`, `p0 = sigma^2`.
    pub fn ou(cfg: &OuConfig, sigma: f64) -> Result<Self> {
        cfg.validate()?;
        let var = sigma * sigma;
        LinearGaussianModel::scalar(cfg.decay(), 1.0, cfg.process_variance(), var.max(R_FLOOR), var, 0.0)
    }

    /// Per-axis constant-velocity model with state (position, velocity):
    /// `q = q_scalar [[dt^3/3, dt^2/2], [dt^2/2, dt]]`, `r = sigma^2`,
    /// `p0 = diag(sigma^2, (10 m/s)^2)`.
    pub fn constant_velocity(dt: f64, q_scalar: f64, sigma: f64) -> Result<Self> {
        if !(dt > 0.0) {
            return Err(Error::InvalidDt(dt));
        }
        let var = sigma * sigma;
        let (dt2, dt3) = (dt * dt, dt * dt * dt);
        LinearGaussianModel::new(
            DMatrix::from_row_slice(2, 2, &[1.0, dt, 0.0, 1.0]),
            DMatrix::from_row_slice(1, 2, &[1.0, 0.0]),
            DMatrix::from_row_slice(2, 2, &[dt3 / 3.0, dt2 / 2.0, dt2 / 2.0, dt]) * q_scalar,
            DMatrix::from_element(1, 1, var.max(R_FLOOR)),
            DMatrix::from_row_slice(2, 2, &[var, 0.0, 0.0, 100.0]),
            DVector::zeros(2),
        )
    }

    pub fn state_dim(&self) -> usize {
        self.f.nrows()
    }

    pub fn meas_dim(&self) -> usize {
        self.h.nrows()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.f.nrows();
        let m = self.h.nrows();
        let dims_ok = self.f.ncols() == n
            && self.h.ncols() == n
            && self.q.shape() == (n, n)
            && self.p0.shape() == (n, n)
            && self.r.shape() == (m, m)
            && self.x0.len() == n
            && n > 0
            && m > 0;
        if !dims_ok {
            return Err(Error::InvalidModel("inconsistent dimensions".into()));
        }
        let all = [&self.f, &self.h, &self.q, &self.r, &self.p0];
        if all.iter().any(|a| a.iter().any(|v| !v.is_finite())) || self.x0.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidModel("non-finite entry".into()));
        }
        for (name, mat) in [("q", &self.q), ("p0", &self.p0), ("r", &self.r)] {
            check_symmetric(name, mat)?;
        }
        for (name, mat) in [("q", &self.q), ("p0", &self.p0)] {
            if min_eigenvalue(mat) < -PSD_TOL * mat.amax().max(1.0) {
                return Err(Error::InvalidModel(format!("{name} is not positive semidefinite")));
            }
        }
        if min_eigenvalue(&self.r) <= 0.0 {
            return Err(Error::InvalidModel("r is not positive definite".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KalmanState {
    pub x: DVector<f64>,
    pub p: DMatrix<f64>,
}

impl KalmanState {
    pub fn initial(model: &LinearGaussianModel) -> Self {
        KalmanState { x: model.x0.clone(), p: model.p0.clone() }
    }
}

/// Result of one predict/update cycle.
#[derive(Debug, Clone)]
pub struct StepOutput {
    /// `H x+`.
    pub estimate: DVector<f64>,
    pub state: KalmanState,
    pub gain: DMatrix<f64>,
    /// `z - H x-`.
    pub innovation: DVector<f64>,
}

/// Prior covariance after prediction and the resulting gain / posterior.
fn covariance_update(model: &LinearGaussianModel, p: &DMatrix<f64>) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let prior = &model.f * p * model.f.transpose() + &model.q;
    let ht = model.h.transpose();
    let s = &model.h * &prior * &ht + &model.r;
    let s_inv = s.try_inverse().ok_or(Error::SingularInnovation)?;
    if s_inv.iter().any(|v| !v.is_finite()) {
        return Err(Error::SingularInnovation);
    }
    let gain = &prior * ht * s_inv;
    let n = model.state_dim();
    let post = (DMatrix::identity(n, n) - &gain * &model.h) * prior;
    let post = (&post + post.transpose()) * 0.5;
    Ok((gain, post))
}

pub fn kalman_step(model: &LinearGaussianModel, state: &KalmanState, z: &DVector<f64>) -> Result<StepOutput> {
    if z.len() != model.meas_dim() {
        return Err(Error::LengthMismatch { expected: model.meas_dim(), found: z.len() });
    }
    let (gain, p) = covariance_update(model, &state.p)?;
    let x_prior = &model.f * &state.x;
    let innovation = z - &model.h * &x_prior;
    let x = x_prior + &gain * &innovation;
    let estimate = &model.h * &x;
    Ok(StepOutput { estimate, state: KalmanState { x, p }, gain, innovation })
}

/// Filters one coordinate series with a model whose first state component
/// is the observed position. The first estimate is the first measurement.
///
/// Equivalent to chaining [`kalman_step`]; the covariance path does not
/// depend on the data, so gains are computed once and reused after the
/// posterior covariance stops changing.
pub fn kalman_filter_axis(model: &LinearGaussianModel, zs: &[f64]) -> Result<Vec<f64>> {
    if model.meas_dim() != 1 {
        return Err(Error::InvalidModel("per-axis tracking needs a scalar measurement".into()));
    }
    let Some(&z0) = zs.first() else {
        return Ok(Vec::new());
    };
    let n = model.state_dim();
    let f: Vec<f64> = model.f.transpose().as_slice().to_vec();
    let h: Vec<f64> = model.h.as_slice().to_vec();
    let mut x: Vec<f64> = model.x0.as_slice().to_vec();
    x[0] = z0;
    let mut prior = vec![0.0; n];
    let mut p = model.p0.clone();
    let mut gain = vec![0.0; n];
    let mut settled = false;
    let mut out = Vec::with_capacity(zs.len());
    out.push(z0);
    for &z in &zs[1..] {
        if !settled {
            let (g, next) = covariance_update(model, &p)?;
            settled = (&next - &p).amax() <= 1e-15 * next.amax();
            gain.copy_from_slice(g.as_slice());
            p = next;
        }
        for (i, row) in f.chunks_exact(n).enumerate() {
            prior[i] = row.iter().zip(&x).map(|(a, b)| a * b).sum();
        }
        let innovation = z - h.iter().zip(&prior).map(|(a, b)| a * b).sum::<f64>();
        for i in 0..n {
            x[i] = prior[i] + gain[i] * innovation;
        }
        out.push(h.iter().zip(&x).map(|(a, b)| a * b).sum());
    }
    Ok(out)
}

/// Runs the same scalar-measurement model independently on both axes.
pub fn kalman_track(model: &LinearGaussianModel, meas: &MeasurementSeries) -> Result<TrackResult> {
    model.validate()?;
    let xs = kalman_filter_axis(model, &meas.xs())?;
    let ys = kalman_filter_axis(model, &meas.ys())?;
    let estimates = meas
        .samples
        .iter()
        .zip(xs.into_iter().zip(ys))
        .map(|(m, (x, y))| Estimate { t: m.t, x, y })
        .collect();
    Ok(TrackResult {
        estimates,
        tracker: TrackerKind::Kalman,
        config_digest: format!(
            "kalman n={} f={:?} q={:?} r={:?}",
            model.state_dim(),
            model.f.as_slice(),
            model.q.as_slice(),
            model.r.as_slice()
        ),
    })
}

/// Fixed point of the Riccati recursion.
#[derive(Debug, Clone)]
pub struct SteadyState {
    pub gain: DMatrix<f64>,
    /// Posterior covariance.
    pub p: DMatrix<f64>,
    pub iterations: usize,
}

pub const DEFAULT_RICCATI_TOL: f64 = 1e-12;
pub const DEFAULT_RICCATI_MAX_ITER: usize = 1_000_000;

/// Iterates the covariance recursion from `p0` until successive posteriors
/// differ by less than `tol` (max-abs).
pub fn steady_state_gain(model: &LinearGaussianModel, tol: f64, max_iter: usize) -> Result<SteadyState> {
    model.validate()?;
    let mut p = model.p0.clone();
    for it in 1..=max_iter {
        let (gain, next) = covariance_update(model, &p)?;
        if next.iter().any(|v| !v.is_finite()) {
            return Err(Error::NoConvergence(it));
        }
        let delta = (&next - &p).amax();
        p = next;
        if delta < tol {
            return Ok(SteadyState { gain, p, iterations: it });
        }
    }
    Err(Error::NoConvergence(max_iter))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar_state(x: f64, p: f64) -> KalmanState {
        KalmanState { x: DVector::from_element(1, x), p: DMatrix::from_element(1, 1, p) }
    }

    #[test]
    fn recursive_average_gain() {
        let (p0, r, c) = (1e9, 1.0, 3.25);
        let model = LinearGaussianModel::scalar(1.0, 1.0, 0.0, r, p0, 0.0).unwrap();
        let mut state = KalmanState::initial(&model);
        let z = DVector::from_element(1, c);
        // oracle: posterior variance after n updates is 1 / (1/p0 + n/r)
        let mut p_oracle: f64 = p0;
        for n in 1..=4 {
            let out = kalman_step(&model, &state, &z).unwrap();
            let k_oracle = p_oracle / (p_oracle + r);
            assert!((out.gain[0] - k_oracle).abs() < 1e-7);
            assert!((out.gain[0] - 1.0 / (n as f64 + r / p0)).abs() < 1e-7);
            p_oracle = 1.0 / (1.0 / p0 + n as f64 / r);
            state = out.state;
            assert!((state.x[0] - c).abs() < 1e-8);
            if n == 4 {
                assert!((out.gain[0] - 0.25).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn golden_ratio_steady_state() {
        let model = LinearGaussianModel::scalar(1.0, 1.0, 1.0, 1.0, 1.0, 0.0).unwrap();
        let ss = steady_state_gain(&model, DEFAULT_RICCATI_TOL, DEFAULT_RICCATI_MAX_ITER).unwrap();
        let k = (5f64.sqrt() - 1.0) / 2.0;
        assert!((ss.gain[0] - k).abs() < 1e-9);
        assert!((ss.p[0] - k).abs() < 1e-9);
    }

    #[test]
    fn contraction_without_process_noise() {
        let model = LinearGaussianModel::scalar(0.9, 1.0, 0.0, 1.0, 4.0, 0.0).unwrap();
        let ss = steady_state_gain(&model, DEFAULT_RICCATI_TOL, DEFAULT_RICCATI_MAX_ITER).unwrap();
        assert!(ss.p[0].abs() < 1e-10);
        assert!(ss.gain[0].abs() < 1e-10);
    }

    #[test]
    fn ou_steady_state_matches_quadratic() {
        let (f, q, r): (f64, f64, f64) = (0.95, 0.1, 1.0);
        // prior m solves m^2 + m (r (1 - f^2) - q) - q r = 0
        let bq = r * (1.0 - f * f) - q;
        let m = 0.5 * (-bq + (bq * bq + 4.0 * q * r).sqrt());
        let p_oracle = m * r / (m + r);
        let model = LinearGaussianModel::scalar(f, 1.0, q, r, 1.0, 0.0).unwrap();
        let ss = steady_state_gain(&model, DEFAULT_RICCATI_TOL, DEFAULT_RICCATI_MAX_ITER).unwrap();
        assert!((ss.p[0] - p_oracle).abs() < 1e-10, "{} vs {}", ss.p[0], p_oracle);
        assert!((ss.gain[0] - m / (m + r)).abs() < 1e-10);
    }

    #[test]
    fn steady_state_independent_of_p0() {
        for p0 in [0.0, 1e-3, 50.0] {
            let a = LinearGaussianModel::constant_velocity(1.0, 3.0, 1.0).unwrap();
            let b = LinearGaussianModel { p0: DMatrix::identity(2, 2) * p0, ..a.clone() };
            let sa = steady_state_gain(&a, DEFAULT_RICCATI_TOL, DEFAULT_RICCATI_MAX_ITER).unwrap();
            let sb = steady_state_gain(&b, DEFAULT_RICCATI_TOL, DEFAULT_RICCATI_MAX_ITER).unwrap();
            assert!((sa.p - sb.p).amax() < 1e-9);
        }
    }

    #[test]
    fn no_convergence_is_reported() {
        let model = LinearGaussianModel::scalar(1.0, 1.0, 1.0, 1.0, 1.0, 0.0).unwrap();
        assert!(matches!(steady_state_gain(&model, 1e-12, 3), Err(Error::NoConvergence(3))));
    }

    #[test]
    fn huge_r_means_pure_prediction() {
        let model = LinearGaussianModel::scalar(0.8, 1.0, 0.01, 1e12, 1.0, 0.0).unwrap();
        let out = kalman_step(&model, &scalar_state(2.0, 1.0), &DVector::from_element(1, 500.0)).unwrap();
        assert!(out.gain[0] < 1e-9);
        assert!((out.estimate[0] - 1.6).abs() < 1e-6);
    }

    #[test]
    fn singular_innovation_detected() {
        let mut model = LinearGaussianModel::scalar(1.0, 1.0, 0.0, 1.0, 0.0, 0.0).unwrap();
        model.r[0] = 0.0;
        let err = kalman_step(&model, &scalar_state(0.0, 0.0), &DVector::from_element(1, 1.0)).unwrap_err();
        assert!(matches!(err, Error::SingularInnovation));
    }

    #[test]
    fn model_validation() {
        assert!(LinearGaussianModel::scalar(1.0, 1.0, -1.0, 1.0, 1.0, 0.0).is_err());
        assert!(LinearGaussianModel::scalar(1.0, 1.0, 1.0, 0.0, 1.0, 0.0).is_err());
        assert!(LinearGaussianModel::scalar(f64::NAN, 1.0, 1.0, 1.0, 1.0, 0.0).is_err());
        let cv = LinearGaussianModel::constant_velocity(0.1, 1.0, 1.0).unwrap();
        let bad = LinearGaussianModel { h: DMatrix::from_element(1, 3, 1.0), ..cv.clone() };
        assert!(bad.validate().is_err());
        let asym = LinearGaussianModel { q: DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.0, 1.0]), ..cv };
        assert!(asym.validate().is_err());
    }

    #[test]
    fn perfect_observation_follows_measurements() {
        let model = LinearGaussianModel::constant_velocity(0.1, 1.0, 0.0).unwrap();
        let zs: Vec<f64> = (0..200).map(|k| (k as f64 * 0.3).sin() * 20.0 + 50.0).collect();
        let est = kalman_filter_axis(&model, &zs).unwrap();
        for (e, z) in est.iter().zip(&zs) {
            assert!((e - z).abs() < 1e-6);
        }
    }

    #[test]
    fn fast_axis_filter_matches_stepwise() {
        for model in [
            LinearGaussianModel::constant_velocity(1.0, 2.5, 1.0).unwrap(),
            LinearGaussianModel::scalar(0.95, 1.0, 0.1, 1.0, 1.0, 0.0).unwrap(),
            LinearGaussianModel::scalar(1.0, 1.0, 0.0, 1.0, 1.0, 0.0).unwrap(),
        ] {
            let zs: Vec<f64> = (0..400).map(|k| (k as f64 * 0.17).cos() * 30.0 + 0.01 * k as f64).collect();
            let fast = kalman_filter_axis(&model, &zs).unwrap();
            let mut state = KalmanState::initial(&model);
            state.x[0] = zs[0];
            assert_eq!(fast[0], zs[0]);
            for k in 1..zs.len() {
                let out = kalman_step(&model, &state, &DVector::from_element(1, zs[k])).unwrap();
                assert!((out.estimate[0] - fast[k]).abs() < 1e-9, "k={k}");
                state = out.state;
            }
        }
    }

    #[test]
    fn covariance_stays_symmetric_psd() {
        let model = LinearGaussianModel::constant_velocity(1.0, 1e3, 2.0).unwrap();
        let mut state = KalmanState::initial(&model);
        let z = DVector::from_element(1, 1.0);
        for _ in 0..500 {
            state = kalman_step(&model, &state, &z).unwrap().state;
            assert_eq!(state.p, state.p.transpose());
            assert!(min_eigenvalue(&state.p) >= -1e-10);
        }
    }
}
