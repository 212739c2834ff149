use std::ops::RangeInclusive;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::neural::track::{nn_track, FeedbackMode};
use crate::neural::mlp::{InputEncoding, MlpParams, Sample, Trainer, TrainingMeta, DEFAULT_INPUT_SCALE, HIDDEN};
use crate::seed::{derive_seed, stream_rng, SeedPurpose};
use crate::sensing::{add_measurement_noise, MeasurementSeries};
use crate::trajectories::{gen_training_walk_segments, Trajectory, VEHICLE_SPEED};
use crate::{Error, Result};

/// Iterations averaged for the initial / final loss figures.
pub const LOSS_WINDOW: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    /// Mini-batch updates.
    pub iterations: usize,
    pub batch_size: usize,
    pub learning_rate: f64,
    /// Learning rate reached at the last iteration (cosine decay); equal to
    /// `learning_rate` for a constant rate.
    pub final_learning_rate: f64,
    /// Jitter on the teacher-forced previous positions, meters.
    pub feedback_noise_std: f64,
    /// Measurement noise of the training data, meters.
    pub sigma: f64,
    pub dt: f64,
    pub walk_speed: f64,
    /// Heading-segment lengths of the training walk, in steps.
    pub segment_steps: RangeInclusive<usize>,
    /// Samples per training walk.
    pub walk_steps: usize,
    /// Iterations between fresh walks.
    pub walk_refresh: usize,
    pub hidden: usize,
    pub input_scale: f64,
    pub input_encoding: InputEncoding,
    /// Iteration from which the fed-back positions are the network's own
    /// recurrent estimates on the current walk rather than jittered truth.
    pub closed_loop_from: Option<usize>,
    pub seed: u64,
}

/// Segments lasting 2 to 10 seconds of travel, at least 2 steps.
pub fn segment_steps_for(dt: f64) -> RangeInclusive<usize> {
    let steps = |secs: f64| ((secs / dt).round() as usize).max(2);
    steps(2.0)..=steps(10.0)
}

impl TrainConfig {
    /// Defaults: 15,000 iterations of batch 64, Adam at 1e-3 decaying to
    /// 1e-5, feedback jitter 0.5 sigma, 10 m/s walks, closed-loop feedback
    /// after 3,000 iterations.
    pub fn standard(dt: f64, sigma: f64, seed: u64) -> Self {
        TrainConfig {
            iterations: 15_000,
            batch_size: 64,
            learning_rate: 1e-3,
            final_learning_rate: 1e-5,
            feedback_noise_std: 0.5 * sigma,
            sigma,
            dt,
            walk_speed: VEHICLE_SPEED,
            segment_steps: segment_steps_for(dt),
            walk_steps: 1000,
            walk_refresh: 100,
            hidden: HIDDEN,
            input_scale: DEFAULT_INPUT_SCALE,
            input_encoding: InputEncoding::Relative { step_scale: VEHICLE_SPEED * dt },
            closed_loop_from: Some(3_000),
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.into()));
        if self.iterations < 1 {
            return bad("iterations must be >= 1");
        }
        if self.batch_size < 1 {
            return bad("batch_size must be >= 1");
        }
        if !(self.learning_rate > 0.0) || !(self.final_learning_rate >= 0.0) {
            return bad("learning rate must be > 0");
        }
        if !(self.feedback_noise_std >= 0.0) || !(self.sigma >= 0.0) {
            return bad("noise levels must be >= 0");
        }
        if !(self.dt > 0.0) {
            return Err(Error::InvalidDt(self.dt));
        }
        if self.walk_steps < 3 || self.walk_refresh < 1 || self.hidden < 1 {
            return bad("walk_steps >= 3, walk_refresh >= 1 and hidden >= 1 required");
        }
        if !(self.input_scale > 0.0) {
            return bad("input_scale must be > 0");
        }
        Ok(())
    }

    /// Learning rate for 0-based iteration `i`.
    pub fn learning_rate_at(&self, i: usize) -> f64 {
        if self.iterations <= 1 {
            return self.learning_rate;
        }
        let progress = i as f64 / (self.iterations - 1) as f64;
        let cos = 0.5 * (1.0 + (std::f64::consts::PI * progress).cos());
        self.final_learning_rate + (self.learning_rate - self.final_learning_rate) * cos
    }
}

/// Teacher-forced sample source over a periodically refreshed walk.
struct SampleSource<'a> {
    cfg: &'a TrainConfig,
    codec: MlpParams,
    walk: Trajectory,
    meas: MeasurementSeries,
    feedback: Option<Vec<(f64, f64)>>,
    refreshes: u64,
    rng: ChaCha8Rng,
    jitter: Normal<f64>,
}

impl<'a> SampleSource<'a> {
    fn new(cfg: &'a TrainConfig, codec: MlpParams) -> Result<Self> {
        let jitter = Normal::new(0.0, cfg.feedback_noise_std).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        let (walk, meas) = Self::walk(cfg, 0)?;
        Ok(SampleSource { cfg, codec, walk, meas, feedback: None, refreshes: 0, rng: stream_rng(derive_seed(cfg.seed, SeedPurpose::Training, 1), 0), jitter })
    }

    fn walk(cfg: &TrainConfig, j: u64) -> Result<(Trajectory, MeasurementSeries)> {
        let walk_seed = derive_seed(cfg.seed, SeedPurpose::Training, 2 + 2 * j);
        let noise_seed = derive_seed(cfg.seed, SeedPurpose::Training, 3 + 2 * j);
        let walk = gen_training_walk_segments(cfg.walk_steps, cfg.dt, cfg.walk_speed, cfg.segment_steps.clone(), walk_seed)?.trajectory;
        let meas = add_measurement_noise(&walk, cfg.sigma, noise_seed)?;
        Ok((walk, meas))
    }

    fn refresh(&mut self, closed_loop: Option<&MlpParams>) -> Result<()> {
        self.refreshes += 1;
        (self.walk, self.meas) = Self::walk(self.cfg, self.refreshes)?;
        self.feedback = match closed_loop {
            Some(params) => Some(nn_track(params, &self.meas, FeedbackMode::Estimates).estimates.iter().map(|e| (e.x, e.y)).collect()),
            None => None,
        };
        Ok(())
    }

    fn fill(&mut self, batch: &mut Vec<Sample>) {
        batch.clear();
        for _ in 0..self.cfg.batch_size {
            let k = self.rng.random_range(2..self.walk.len());
            let p = &self.walk.points;
            let z = &self.meas.samples[k];
            let (p1, p2) = match &self.feedback {
                Some(e) => (e[k - 1], e[k - 2]),
                None => {
                    let mut jit = || self.jitter.sample(&mut self.rng);
                    ((p[k - 1].x + jit(), p[k - 1].y + jit()), (p[k - 2].x + jit(), p[k - 2].y + jit()))
                }
            };
            batch.push(Sample {
                input: self.codec.encode((z.zx, z.zy), p1, p2),
                target: self.codec.encode_target((p[k].x, p[k].y), p1),
            });
        }
    }
}

/// Trains a network from scratch; deterministic for a given config.
pub fn train(cfg: &TrainConfig) -> Result<MlpParams> {
    cfg.validate()?;
    let mut init_rng = stream_rng(derive_seed(cfg.seed, SeedPurpose::Training, 0), 0);
    let mut params = MlpParams::glorot(cfg.hidden, &mut init_rng);
    params.input_scale = cfg.input_scale;
    params.input_encoding = cfg.input_encoding;
    params.validate()?;
    let mut trainer = Trainer::new(params.clone(), cfg.learning_rate);
    let mut source = SampleSource::new(cfg, params)?;
    let mut batch = Vec::with_capacity(cfg.batch_size);
    let mut losses = Vec::with_capacity(cfg.iterations);
    for i in 0..cfg.iterations {
        if i > 0 && i % cfg.walk_refresh == 0 {
            let closed = cfg.closed_loop_from.is_some_and(|from| i >= from);
            source.refresh(closed.then_some(&trainer.params))?;
        }
        source.fill(&mut batch);
        trainer.learning_rate = cfg.learning_rate_at(i);
        let loss = trainer.train_step(&batch).map_err(|e| match e {
            Error::Divergence { loss, .. } => Error::Divergence { iteration: i, loss },
            other => other,
        })?;
        losses.push(loss);
    }
    let window = LOSS_WINDOW.min(losses.len());
    let mean = |xs: &[f64]| xs.iter().sum::<f64>() / xs.len() as f64;
    let mut params = trainer.params;
    params.training_meta = Some(TrainingMeta {
        iterations: cfg.iterations,
        batch_size: cfg.batch_size,
        learning_rate: cfg.learning_rate,
        final_learning_rate: cfg.final_learning_rate,
        seed: cfg.seed,
        sigma: cfg.sigma,
        dt: cfg.dt,
        feedback_noise_std: cfg.feedback_noise_std,
        walk_speed: cfg.walk_speed,
        walk_steps: cfg.walk_steps,
        walk_refresh: cfg.walk_refresh,
        segment_steps: [*cfg.segment_steps.start(), *cfg.segment_steps.end()],
        closed_loop_from: cfg.closed_loop_from,
        initialization: "glorot_uniform".into(),
        optimizer: "adam(beta1=0.9, beta2=0.999, eps=1e-8), mse loss".into(),
        initial_loss: mean(&losses[..window]),
        final_loss: mean(&losses[losses.len() - window..]),
    });
    Ok(params)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(seed: u64) -> TrainConfig {
        TrainConfig { iterations: 200, hidden: 16, walk_steps: 200, walk_refresh: 50, ..TrainConfig::standard(1.0, 1.0, seed) }
    }

    #[test]
    fn zero_iterations_rejected() {
        let cfg = TrainConfig { iterations: 0, ..small(1) };
        assert!(matches!(train(&cfg), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn deterministic_and_recorded() {
        let a = train(&small(3)).unwrap();
        let b = train(&small(3)).unwrap();
        assert_eq!(a, b);
        let meta = a.training_meta.unwrap();
        assert_eq!(meta.iterations, 200);
        assert!(meta.final_loss < meta.initial_loss);
        assert_ne!(train(&small(4)).unwrap().w1, b.w1);
    }

    #[test]
    fn closed_loop_changes_training() {
        let open = train(&TrainConfig { closed_loop_from: None, ..small(5) }).unwrap();
        let closed = train(&TrainConfig { closed_loop_from: Some(100), ..small(5) }).unwrap();
        assert_ne!(open.w1, closed.w1);
        assert!(closed.training_meta.unwrap().final_loss.is_finite());
    }

    #[test]
    fn segment_lengths_follow_duration() {
        assert_eq!(segment_steps_for(1.0), 2..=10);
        assert_eq!(segment_steps_for(0.1), 20..=100);
        assert_eq!(segment_steps_for(10.0), 2..=2);
    }

    #[test]
    fn cosine_schedule_endpoints() {
        let cfg = TrainConfig { final_learning_rate: 1e-5, ..small(0) };
        assert_eq!(cfg.learning_rate_at(0), 1e-3);
        assert!((cfg.learning_rate_at(cfg.iterations - 1) - 1e-5).abs() < 1e-18);
        let flat = TrainConfig { final_learning_rate: 1e-3, ..small(0) };
        assert!((flat.learning_rate_at(77) - 1e-3).abs() < 1e-18);
    }
}
