//! Means, divergences and a verified catalogue of the inequalities between
//! them.
//!
//! * [`kernels`] evaluates Gini, power and Lehmer means, the named means
//!   `P1 <= ... <= P6` and the divergence kernels.
//! * [`distributions`] lifts kernels to discrete probability distributions.
//! * [`algebra`] does exact polynomial and radical arithmetic in `t = sqrt(x)`.
//! * [`certify`] replays exact positivity certificates.
//! * [`registry`] lists every inequality with a stable id.
//! * [`numverify`] checks registry statements numerically.
//! * [`cli`] implements the `gini-refine` command line tool.

pub mod algebra;
pub mod certify;
pub mod cli;
pub mod distributions;
pub mod kernels;
pub mod numverify;
pub mod registry;
