use nalgebra::DVector;
use trackbench::benchmark::{rms_error, run_scenario, ScenarioConfig, WindowSetting};
use trackbench::filters::kalman::{DEFAULT_RICCATI_MAX_ITER, DEFAULT_RICCATI_TOL};
use trackbench::filters::tuning::{default_q_grid, DEFAULT_W_GRID};
use trackbench::filters::{
    kalman_step, kalman_track, steady_state_gain, tune_cv_process_noise, tune_window, window_track, KalmanState,
    LinearGaussianModel,
};
use trackbench::sensing::add_measurement_noise;
use trackbench::trajectories::{gen_car_path, gen_ou_trajectory, CarPath, OuConfig};
use trackbench::{TrackerKind, Trajectory, TrajectoryKind};

fn ou(n_steps: usize) -> OuConfig {
    OuConfig { a: 0.5, b: 1.0, dt: 0.1, n_steps, x0: 0.0, rc: 0.1 }
}

/// Scalar Riccati fixed point, solved independently of the library:
/// prior m satisfies m = f^2 m r / (m + r) + q.
fn scalar_posterior(f: f64, q: f64, r: f64) -> f64 {
    let (b, c) = (r - f * f * r - q, -q * r);
    let m = (-b + (b * b - 4.0 * c).sqrt()) / 2.0;
    m * r / (m + r)
}

#[test]
fn exact_ou_error_matches_riccati() {
    let cfg = ou(1000);
    let model = LinearGaussianModel::ou(&cfg, 1.0).unwrap();
    let p = steady_state_gain(&model, DEFAULT_RICCATI_TOL, DEFAULT_RICCATI_MAX_ITER).unwrap().p[(0, 0)];
    assert!((p - scalar_posterior(0.95, 0.1, 1.0)).abs() < 1e-10);
    let (mut sum, mut n) = (0.0, 0usize);
    for run in 0..60 {
        let truth = gen_ou_trajectory(&cfg, 100 + run).unwrap();
        let meas = add_measurement_noise(&truth, 1.0, 900 + run).unwrap();
        let est = kalman_track(&model, &meas).unwrap();
        for (e, t) in est.estimates.iter().zip(&truth.points) {
            sum += (e.x - t.x).powi(2) + (e.y - t.y).powi(2);
            n += 2;
        }
    }
    let std = (sum / n as f64).sqrt();
    assert!((std / p.sqrt() - 1.0).abs() < 0.03, "std {std} vs {}", p.sqrt());
}

#[test]
fn exact_ou_innovations_are_white() {
    let cfg = ou(100_000);
    let model = LinearGaussianModel::ou(&cfg, 1.0).unwrap();
    let truth = gen_ou_trajectory(&cfg, 31).unwrap();
    let meas = add_measurement_noise(&truth, 1.0, 32).unwrap();
    let mut state = KalmanState::initial(&model);
    let mut innovations = Vec::with_capacity(meas.len());
    for m in &meas.samples {
        let out = kalman_step(&model, &state, &DVector::from_element(1, m.zx)).unwrap();
        innovations.push(out.innovation[0]);
        state = out.state;
    }
    let v = &innovations[100..];
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>();
    let lag1 = v.windows(2).map(|w| (w[0] - mean) * (w[1] - mean)).sum::<f64>() / var;
    assert!(lag1.abs() < 0.02, "lag-1 autocorrelation {lag1}");
}

#[test]
fn exact_ou_beats_every_window() {
    let cfg = ScenarioConfig::ou(ou(500), 200, 4).unwrap().with_trackers(&[TrackerKind::Kalman]);
    let kalman = run_scenario(&cfg).unwrap().mean(TrackerKind::Kalman).unwrap();
    for w in DEFAULT_W_GRID {
        let mut wc = ScenarioConfig::ou(ou(500), 200, 4).unwrap().with_trackers(&[TrackerKind::Window]);
        wc.window = WindowSetting::Fixed(w);
        let window = run_scenario(&wc).unwrap().mean(TrackerKind::Window).unwrap();
        assert!(kalman <= window, "w={w}: kalman {kalman} > window {window}");
    }
}

#[test]
fn static_target_averages_down() {
    let truth = Trajectory::from_positions(1.0, TrajectoryKind::Custom, None, &vec![(3.0, -2.0); 10_000]).unwrap();
    let meas = add_measurement_noise(&truth, 1.0, 8).unwrap();
    let model = LinearGaussianModel::scalar(1.0, 1.0, 0.0, 1.0, 1e9, 0.0).unwrap();
    let est = kalman_track(&model, &meas).unwrap();
    let tail = est.estimates.last().unwrap();
    assert!(((tail.x - 3.0).powi(2) + (tail.y + 2.0).powi(2)).sqrt() <= 0.05);
}

fn line(n: usize, dt: f64) -> Trajectory {
    let pts: Vec<(f64, f64)> = (0..n).map(|k| (10.0 + 6.0 * k as f64 * dt, 20.0 + 8.0 * k as f64 * dt)).collect();
    Trajectory::from_positions(dt, TrajectoryKind::Custom, None, &pts).unwrap()
}

#[test]
fn window_tuning_limits() {
    let car = gen_car_path(CarPath::One, 1.0, 2).unwrap();
    let noiseless = ScenarioConfig::fixed("car1", car, 0.0, 1, 3);
    assert_eq!(tune_window(&noiseless, DEFAULT_W_GRID).unwrap().chosen_w, Some(1));

    let still = Trajectory::from_positions(1.0, TrajectoryKind::Custom, None, &vec![(50.0, 50.0); 200]).unwrap();
    let constant = ScenarioConfig::fixed("still", still, 1.0, 1, 3);
    assert_eq!(tune_window(&constant, DEFAULT_W_GRID).unwrap().chosen_w, Some(20));
}

#[test]
fn window_tuning_is_grid_argmin() {
    let cfg = ScenarioConfig::car(CarPath::One, 4, 1.0, 1.0, 1, 12);
    let rec = tune_window(&cfg, DEFAULT_W_GRID).unwrap();
    let set = cfg.tuning_set().unwrap();
    let mut best = (f64::INFINITY, 0);
    for w in DEFAULT_W_GRID {
        let mean: f64 =
            set.iter().map(|(t, m)| rms_error(&window_track(m, w).unwrap(), t).unwrap()).sum::<f64>() / set.len() as f64;
        if mean < best.0 {
            best = (mean, w);
        }
    }
    assert_eq!(rec.chosen_w, Some(best.1));
}

#[test]
fn cv_tuning_limits() {
    let straight = ScenarioConfig::fixed("line", line(300, 1.0), 1.0, 1, 5);
    let rec = tune_cv_process_noise(&straight, &default_q_grid()).unwrap();
    assert_eq!(rec.chosen_q, Some(default_q_grid()[0]));

    let car = ScenarioConfig::car(CarPath::One, 4, 1.0, 1.0, 100, 6).with_trackers(&[TrackerKind::Kalman]);
    let kalman = run_scenario(&car).unwrap().mean(TrackerKind::Kalman).unwrap();
    assert!(kalman <= 2f64.sqrt() * 1.02, "tuned kalman {kalman}");
}

#[test]
fn huge_q_reproduces_measurements() {
    let truth = gen_car_path(CarPath::Two, 1.0, 3).unwrap();
    let meas = add_measurement_noise(&truth, 1.0, 77).unwrap();
    let model = LinearGaussianModel::constant_velocity(1.0, 1e9, 1.0).unwrap();
    let est = kalman_track(&model, &meas).unwrap();
    let sq: f64 = est.estimates.iter().zip(&meas.samples).map(|(e, m)| (e.x - m.zx).powi(2) + (e.y - m.zy).powi(2)).sum();
    let raw: f64 = truth.points.iter().zip(&meas.samples).map(|(p, m)| (p.x - m.zx).powi(2) + (p.y - m.zy).powi(2)).sum();
    assert!((sq / raw).sqrt() < 0.01);
}
