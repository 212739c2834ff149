//! Recurrent-input MLP tracker.
//!
//! The network sees the current measurement and the two previous position
//! estimates, all divided by the range size, and outputs the current
//! position. It is trained on noisy measurements of the random training
//! walk with teacher forcing: the "previous estimate" inputs are the true
//! previous positions plus Gaussian jitter.

pub mod mlp;
pub mod track;
pub mod train;

pub use mlp::{backprop, batch_loss, mlp_forward, Adam, Gradients, MlpParams, Sample, Trainer, TrainingMeta};
pub use track::{nn_track, FeedbackMode};
pub use train::{train, TrainConfig};
