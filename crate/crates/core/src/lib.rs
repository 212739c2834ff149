//! Trajectory tracking benchmark.
//!
//! Generates ground-truth 2-D paths (car-model courses, a random diagonal
//! training walk, and a discretized Ornstein-Uhlenbeck process), corrupts
//! them with white Gaussian measurement noise, and compares three causal
//! trackers under paired Monte-Carlo evaluation:
//!
//! - a per-axis linear Kalman filter ([`filters::kalman`]),
//! - a causal sliding-window average ([`filters::window`]),
//! - a 6-400-2 tanh MLP fed its own two previous estimates ([`neural`]).
//!
//! The [`benchmark`] module runs scenarios and suites; [`cli`] wires them to
//! files.

pub mod benchmark;
pub mod cli;
mod error;
pub mod filters;
pub(crate) mod io;
pub mod neural;
pub mod seed;
pub mod sensing;
pub mod trajectories;

pub use error::{Error, Result};
pub use filters::{TrackResult, TrackerKind};
pub use sensing::MeasurementSeries;
pub use trajectories::{Trajectory, TrajectoryKind};
