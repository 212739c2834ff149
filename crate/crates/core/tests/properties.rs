use std::f64::consts::TAU;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trackbench::filters::{kalman_track, window_track, LinearGaussianModel};
use trackbench::neural::mlp::{mlp_forward, InputEncoding, INPUTS};
use trackbench::neural::{nn_track, FeedbackMode, MlpParams};
use trackbench::sensing::add_measurement_noise;
use trackbench::trajectories::{gen_ou_realization, gen_training_walk, gen_training_walk_detailed, OuConfig};
use trackbench::{MeasurementSeries, TrackResult};

fn series(n: usize, dt: f64, sigma: f64, seed: u64) -> MeasurementSeries {
    let walk = gen_training_walk(n, dt, 10.0, seed).unwrap();
    add_measurement_noise(&walk, sigma, seed ^ 0xabc).unwrap()
}

fn small_net(seed: u64, dt: f64) -> MlpParams {
    let mut p = MlpParams::glorot(12, &mut ChaCha8Rng::seed_from_u64(seed));
    p.input_encoding = InputEncoding::Relative { step_scale: 10.0 * dt };
    p
}

fn assert_prefix(full: &TrackResult, prefix: &TrackResult) {
    assert_eq!(prefix.len(), prefix.estimates.len());
    for (a, b) in full.estimates.iter().zip(&prefix.estimates) {
        assert_eq!((a.t, a.x, a.y), (b.t, b.x, b.y));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn trackers_are_causal(
        n in 3usize..120,
        cut in 1usize..120,
        fast in any::<bool>(),
        sigma in 0.0f64..3.0,
        seed in any::<u64>(),
        w in 1usize..12,
        q in 0.001f64..100.0,
    ) {
        let dt = if fast { 0.1 } else { 1.0 };
        let cut = cut.min(n);
        let meas = series(n, dt, sigma, seed);
        let head = meas.prefix(cut);

        let cv = LinearGaussianModel::constant_velocity(dt, q, sigma).unwrap();
        assert_prefix(&kalman_track(&cv, &meas).unwrap(), &kalman_track(&cv, &head).unwrap());

        let ou = OuConfig { a: 0.5, b: 1.0, dt, n_steps: n, x0: 0.0, rc: sigma * sigma * dt };
        let exact = LinearGaussianModel::ou(&ou, sigma).unwrap();
        assert_prefix(&kalman_track(&exact, &meas).unwrap(), &kalman_track(&exact, &head).unwrap());

        assert_prefix(&window_track(&meas, w).unwrap(), &window_track(&head, w).unwrap());

        let net = small_net(seed, dt);
        for mode in [FeedbackMode::Estimates, FeedbackMode::Measurements] {
            assert_prefix(&nn_track(&net, &meas, mode), &nn_track(&net, &head, mode));
        }
    }

    #[test]
    fn ou_drive_is_recoverable(
        a in 0.0f64..2.0,
        b in 0.01f64..3.0,
        fast in any::<bool>(),
        x0 in -50.0f64..50.0,
        seed in any::<u64>(),
    ) {
        let dt = if fast { 0.1 } else { 0.4 };
        let cfg = OuConfig { a, b, dt, n_steps: 200, x0, rc: 0.0 };
        let real = gen_ou_realization(&cfg, seed).unwrap();
        let pts = &real.trajectory.points;
        for k in 0..pts.len() - 1 {
            for (axis, (now, next)) in [(pts[k].x, pts[k + 1].x), (pts[k].y, pts[k + 1].y)].into_iter().enumerate() {
                let n = (next - (1.0 - a * dt) * now) / (dt.sqrt() * b);
                let scale = 1.0 + now.abs() / (dt.sqrt() * b);
                prop_assert!((n - real.drive[axis][k]).abs() <= 1e-9 * scale);
            }
        }
    }
}

#[test]
fn walk_headings_uniform() {
    const BINS: usize = 16;
    // Upper 0.001 quantile of chi-square with 15 degrees of freedom.
    const CRITICAL: f64 = 37.697;
    let walk = gen_training_walk_detailed(650_000, 1.0, 10.0, 2024).unwrap();
    let headings = &walk.segment_headings;
    assert!(headings.len() >= 100_000, "only {} segments", headings.len());
    let mut counts = [0usize; BINS];
    for &h in headings {
        assert!((0.0..TAU).contains(&h));
        counts[((h / TAU) * BINS as f64) as usize] += 1;
    }
    let expected = headings.len() as f64 / BINS as f64;
    let chi2: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    assert!(chi2 < CRITICAL, "chi-square {chi2}");
}

fn operator_norm(rows: usize, cols: usize, m: &[f64]) -> f64 {
    // Power iteration on M^T M.
    let mut v = vec![1.0 / (cols as f64).sqrt(); cols];
    let mut sigma = 0.0;
    for _ in 0..500 {
        let mv: Vec<f64> = (0..rows).map(|i| (0..cols).map(|j| m[i * cols + j] * v[j]).sum()).collect();
        let mut mtmv: Vec<f64> = (0..cols).map(|j| (0..rows).map(|i| m[i * cols + j] * mv[i]).sum()).collect();
        let norm = mtmv.iter().map(|x| x * x).sum::<f64>().sqrt();
        mtmv.iter_mut().for_each(|x| *x /= norm);
        v = mtmv;
        sigma = norm.sqrt();
    }
    sigma
}

#[test]
fn forward_is_lipschitz() {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for seed in 0..5 {
        let net = MlpParams::glorot(30, &mut ChaCha8Rng::seed_from_u64(seed));
        let l = operator_norm(2, 30, &net.w2) * operator_norm(30, INPUTS, &net.w1) * (1.0 + 1e-9);
        for _ in 0..200 {
            let a: [f64; INPUTS] = std::array::from_fn(|_| rng.random_range(-5.0..5.0));
            let b: [f64; INPUTS] = std::array::from_fn(|i| a[i] + rng.random_range(-0.5..0.5));
            let (ya, yb) = (mlp_forward(&net, &a), mlp_forward(&net, &b));
            assert!(ya.iter().chain(&yb).all(|v| v.is_finite()));
            let dy = ((ya[0] - yb[0]).powi(2) + (ya[1] - yb[1]).powi(2)).sqrt();
            let dx = a.iter().zip(&b).map(|(p, q)| (p - q).powi(2)).sum::<f64>().sqrt();
            assert!(dy <= l * dx, "{dy} > {l} * {dx}");
        }
    }
}

#[test]
fn noise_and_tracks_are_reproducible() {
    let a = series(300, 1.0, 1.5, 9);
    let b = series(300, 1.0, 1.5, 9);
    assert_eq!(a, b);
    let net = small_net(3, 1.0);
    assert_eq!(nn_track(&net, &a, FeedbackMode::Estimates), nn_track(&net, &b, FeedbackMode::Estimates));
}
