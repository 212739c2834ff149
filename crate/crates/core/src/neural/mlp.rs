//! Single-hidden-layer tanh perceptron with a linear output layer, its
//! backpropagation, and an Adam optimizer.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const INPUTS: usize = 6;
pub const OUTPUTS: usize = 2;
pub const HIDDEN: usize = 400;

/// Normalization divisor for coordinates (the side of the operating range).
pub const DEFAULT_INPUT_SCALE: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Activation {
    Tanh,
}

/// How `(measurement, previous estimate, estimate before that)` map to the
/// six network inputs and how the two outputs map back to a position.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InputEncoding {
    /// All coordinates divided by `input_scale`; the output is the position.
    #[default]
    Absolute,
    /// `(z - p1) / step_scale`, `(p1 - p2) / step_scale`, `p1 / input_scale`;
    /// the output is `(position - p1) / step_scale`.
    Relative { step_scale: f64 },
}

/// Provenance of a trained network.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingMeta {
    pub iterations: usize,
    pub batch_size: usize,
    pub learning_rate: f64,
    pub final_learning_rate: f64,
    pub seed: u64,
    pub sigma: f64,
    pub dt: f64,
    pub feedback_noise_std: f64,
    pub walk_speed: f64,
    pub walk_steps: usize,
    pub walk_refresh: usize,
    /// Inclusive bounds of the walk's heading-segment lengths, in steps.
    pub segment_steps: [usize; 2],
    pub closed_loop_from: Option<usize>,
    pub initialization: String,
    pub optimizer: String,
    /// Mean batch loss over the first loss window.
    pub initial_loss: f64,
    /// Mean batch loss over the last loss window.
    pub final_loss: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MlpParams {
    pub layer_sizes: [usize; 3],
    /// hidden x 6, row-major.
    pub w1: Vec<f64>,
    pub b1: Vec<f64>,
    /// 2 x hidden, row-major.
    pub w2: Vec<f64>,
    pub b2: Vec<f64>,
    pub hidden_activation: Activation,
    pub input_scale: f64,
    #[serde(default)]
    pub input_encoding: InputEncoding,
    pub training_meta: Option<TrainingMeta>,
}

/// Parameter gradients, laid out like [`MlpParams`].
#[derive(Debug, Clone, PartialEq)]
pub struct Gradients {
    pub w1: Vec<f64>,
    pub b1: Vec<f64>,
    pub w2: Vec<f64>,
    pub b2: Vec<f64>,
}

/// One supervised pair in normalized coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub input: [f64; INPUTS],
    pub target: [f64; OUTPUTS],
}

impl MlpParams {
    pub fn zeros(hidden: usize) -> Self {
        MlpParams {
            layer_sizes: [INPUTS, hidden, OUTPUTS],
            w1: vec![0.0; hidden * INPUTS],
            b1: vec![0.0; hidden],
            w2: vec![0.0; OUTPUTS * hidden],
            b2: vec![0.0; OUTPUTS],
            hidden_activation: Activation::Tanh,
            input_scale: DEFAULT_INPUT_SCALE,
            input_encoding: InputEncoding::Absolute,
            training_meta: None,
        }
    }

    /// Glorot-uniform weights, zero biases.
    pub fn glorot<R: Rng>(hidden: usize, rng: &mut R) -> Self {
        let mut p = MlpParams::zeros(hidden);
        let l1 = (6.0 / (INPUTS + hidden) as f64).sqrt();
        let l2 = (6.0 / (hidden + OUTPUTS) as f64).sqrt();
        p.w1.iter_mut().for_each(|w| *w = rng.random_range(-l1..l1));
        p.w2.iter_mut().for_each(|w| *w = rng.random_range(-l2..l2));
        p
    }

    pub fn hidden(&self) -> usize {
        self.layer_sizes[1]
    }

    pub fn parameter_count(&self) -> usize {
        self.w1.len() + self.b1.len() + self.w2.len() + self.b2.len()
    }

    pub fn slices(&self) -> [&[f64]; 4] {
        [&self.w1, &self.b1, &self.w2, &self.b2]
    }

    pub fn slices_mut(&mut self) -> [&mut [f64]; 4] {
        [&mut self.w1, &mut self.b1, &mut self.w2, &mut self.b2]
    }

    /// Checks shapes, finiteness and the input scale.
    pub fn validate(&self) -> Result<()> {
        let [i, h, o] = self.layer_sizes;
        if i != INPUTS || o != OUTPUTS || h == 0 {
            return Err(Error::InvalidModel(format!("layer sizes must be (6, h, 2), got {:?}", self.layer_sizes)));
        }
        let shapes = [(self.w1.len(), h * INPUTS, "w1"), (self.b1.len(), h, "b1"), (self.w2.len(), OUTPUTS * h, "w2"), (self.b2.len(), OUTPUTS, "b2")];
        for (found, expected, name) in shapes {
            if found != expected {
                return Err(Error::InvalidModel(format!("{name} has {found} entries, expected {expected}")));
            }
        }
        if self.slices().iter().any(|s| s.iter().any(|v| !v.is_finite())) {
            return Err(Error::InvalidModel("non-finite weight".into()));
        }
        if !(self.input_scale > 0.0) || !self.input_scale.is_finite() {
            return Err(Error::InvalidModel(format!("input_scale must be > 0, got {}", self.input_scale)));
        }
        if let InputEncoding::Relative { step_scale } = self.input_encoding {
            if !(step_scale > 0.0) || !step_scale.is_finite() {
                return Err(Error::InvalidModel(format!("step_scale must be > 0, got {step_scale}")));
            }
        }
        Ok(())
    }

    /// Network input for measurement `z` and previous positions `p1`, `p2`.
    pub fn encode(&self, z: (f64, f64), p1: (f64, f64), p2: (f64, f64)) -> [f64; INPUTS] {
        let s = self.input_scale;
        match self.input_encoding {
            InputEncoding::Absolute => [z.0 / s, z.1 / s, p1.0 / s, p1.1 / s, p2.0 / s, p2.1 / s],
            InputEncoding::Relative { step_scale: d } => {
                [(z.0 - p1.0) / d, (z.1 - p1.1) / d, (p1.0 - p2.0) / d, (p1.1 - p2.1) / d, p1.0 / s, p1.1 / s]
            }
        }
    }

    /// Training target for true position `p` given the previous input `p1`.
    pub fn encode_target(&self, p: (f64, f64), p1: (f64, f64)) -> [f64; OUTPUTS] {
        match self.input_encoding {
            InputEncoding::Absolute => [p.0 / self.input_scale, p.1 / self.input_scale],
            InputEncoding::Relative { step_scale: d } => [(p.0 - p1.0) / d, (p.1 - p1.1) / d],
        }
    }

    /// Position in meters from a network output.
    pub fn decode(&self, out: [f64; OUTPUTS], p1: (f64, f64)) -> (f64, f64) {
        match self.input_encoding {
            InputEncoding::Absolute => (out[0] * self.input_scale, out[1] * self.input_scale),
            InputEncoding::Relative { step_scale: d } => (p1.0 + out[0] * d, p1.1 + out[1] * d),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let p: MlpParams = serde_json::from_str(text)?;
        p.validate()?;
        Ok(p)
    }

    fn hidden_layer(&self, input: &[f64; INPUTS], out: &mut [f64]) {
        for (j, (row, b)) in self.w1.chunks_exact(INPUTS).zip(&self.b1).enumerate() {
            let pre = row.iter().zip(input).fold(*b, |acc, (w, x)| acc + w * x);
            out[j] = pre.tanh();
        }
    }

    fn output_layer(&self, hidden: &[f64]) -> [f64; OUTPUTS] {
        let mut out = [0.0; OUTPUTS];
        for (o, (row, b)) in out.iter_mut().zip(self.w2.chunks_exact(self.hidden()).zip(&self.b2)) {
            *o = row.iter().zip(hidden).fold(*b, |acc, (w, h)| acc + w * h);
        }
        out
    }

    pub fn zero_gradients(&self) -> Gradients {
        Gradients {
            w1: vec![0.0; self.w1.len()],
            b1: vec![0.0; self.b1.len()],
            w2: vec![0.0; self.w2.len()],
            b2: vec![0.0; self.b2.len()],
        }
    }
}

impl Gradients {
    pub fn slices(&self) -> [&[f64]; 4] {
        [&self.w1, &self.b1, &self.w2, &self.b2]
    }

    fn clear(&mut self) {
        for s in [&mut self.w1, &mut self.b1, &mut self.w2, &mut self.b2] {
            s.iter_mut().for_each(|v| *v = 0.0);
        }
    }
}

/// `w2 tanh(w1 x + b1) + b2`.
pub fn mlp_forward(params: &MlpParams, input: &[f64; INPUTS]) -> [f64; OUTPUTS] {
    let mut hidden = vec![0.0; params.hidden()];
    params.hidden_layer(input, &mut hidden);
    params.output_layer(&hidden)
}

/// Reusable forward buffer for repeated inference.
#[derive(Debug, Clone)]
pub struct ForwardScratch {
    hidden: Vec<f64>,
}

impl ForwardScratch {
    pub fn new(params: &MlpParams) -> Self {
        ForwardScratch { hidden: vec![0.0; params.hidden()] }
    }

    pub fn forward(&mut self, params: &MlpParams, input: &[f64; INPUTS]) -> [f64; OUTPUTS] {
        self.hidden.resize(params.hidden(), 0.0);
        params.hidden_layer(input, &mut self.hidden);
        params.output_layer(&self.hidden)
    }
}

/// Batch loss `mean over samples and outputs of (y - t)^2`.
pub fn batch_loss(params: &MlpParams, batch: &[Sample]) -> f64 {
    let mut scratch = ForwardScratch::new(params);
    let sum: f64 = batch
        .iter()
        .map(|s| {
            let y = scratch.forward(params, &s.input);
            y.iter().zip(&s.target).map(|(a, b)| (a - b).powi(2)).sum::<f64>()
        })
        .sum();
    sum / (batch.len() * OUTPUTS) as f64
}

/// Backpropagates [`batch_loss`] into `grads` (overwritten); returns the loss.
pub fn backprop(params: &MlpParams, batch: &[Sample], grads: &mut Gradients) -> f64 {
    let h = params.hidden();
    let norm = 1.0 / (batch.len() * OUTPUTS) as f64;
    let mut hidden = vec![0.0; h];
    let mut d_hidden = vec![0.0; h];
    grads.clear();
    let mut loss = 0.0;
    for s in batch {
        params.hidden_layer(&s.input, &mut hidden);
        let y = params.output_layer(&hidden);
        let mut d_out = [0.0; OUTPUTS];
        for o in 0..OUTPUTS {
            let e = y[o] - s.target[o];
            loss += e * e;
            d_out[o] = 2.0 * e * norm;
        }
        d_hidden.iter_mut().for_each(|v| *v = 0.0);
        for o in 0..OUTPUTS {
            grads.b2[o] += d_out[o];
            let w_row = &params.w2[o * h..(o + 1) * h];
            let g_row = &mut grads.w2[o * h..(o + 1) * h];
            for j in 0..h {
                g_row[j] += d_out[o] * hidden[j];
                d_hidden[j] += d_out[o] * w_row[j];
            }
        }
        for j in 0..h {
            let d_pre = d_hidden[j] * (1.0 - hidden[j] * hidden[j]);
            grads.b1[j] += d_pre;
            let g_row = &mut grads.w1[j * INPUTS..(j + 1) * INPUTS];
            for (g, x) in g_row.iter_mut().zip(&s.input) {
                *g += d_pre * x;
            }
        }
    }
    loss * norm
}

/// Adaptive moment estimation state.
#[derive(Debug, Clone)]
pub struct Adam {
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
    m: Vec<f64>,
    v: Vec<f64>,
    t: u64,
}

impl Adam {
    pub fn new(params: &MlpParams) -> Self {
        let n = params.parameter_count();
        Adam { beta1: 0.9, beta2: 0.999, eps: 1e-8, m: vec![0.0; n], v: vec![0.0; n], t: 0 }
    }

    pub fn step(&mut self, params: &mut MlpParams, grads: &Gradients, lr: f64) {
        self.t += 1;
        let t = self.t as i32;
        let c1 = 1.0 - self.beta1.powi(t);
        let c2 = 1.0 - self.beta2.powi(t);
        let (b1, b2, eps) = (self.beta1, self.beta2, self.eps);
        let ps = params.slices_mut().into_iter().flat_map(|s| s.iter_mut());
        let gs = grads.slices().into_iter().flat_map(|s| s.iter());
        for (((p, g), m), v) in ps.zip(gs).zip(self.m.iter_mut()).zip(self.v.iter_mut()) {
            *m = b1 * *m + (1.0 - b1) * g;
            *v = b2 * *v + (1.0 - b2) * g * g;
            *p -= lr * (*m / c1) / ((*v / c2).sqrt() + eps);
        }
    }
}

/// Parameters plus optimizer state.
#[derive(Debug, Clone)]
pub struct Trainer {
    pub params: MlpParams,
    pub adam: Adam,
    pub learning_rate: f64,
    grads: Gradients,
}

impl Trainer {
    pub fn new(params: MlpParams, learning_rate: f64) -> Self {
        let adam = Adam::new(&params);
        let grads = params.zero_gradients();
        Trainer { params, adam, learning_rate, grads }
    }

    /// One Adam update on `batch`; returns the batch MSE before the update.
    pub fn train_step(&mut self, batch: &[Sample]) -> Result<f64> {
        if batch.is_empty() {
            return Err(Error::InvalidConfig("empty training batch".into()));
        }
        let loss = backprop(&self.params, batch, &mut self.grads);
        if !loss.is_finite() {
            return Err(Error::Divergence { iteration: self.adam.t as usize, loss });
        }
        self.adam.step(&mut self.params, &self.grads, self.learning_rate);
        Ok(loss)
    }
}
