//! Input-degradedness and input-equivalence of finite discrete memoryless
//! channels.
//!
//! A channel is a row-stochastic matrix. `W` is input-degraded from `W'`
//! when `W = W' ∘ V` for some channel `V`, which holds exactly when every
//! row of `W` lies in the convex hull of the rows of `W'`. The crate decides
//! this with a small dense simplex solver, returning either the intertwiner
//! `V` or a separating payoff, and builds on it:
//!
//! - [`ordering`]: characteristics, input rank, equivalence and the
//!   similarity distance between equivalence classes.
//! - [`coding`]: exhaustive error probabilities and Blahut-Arimoto capacity.
//! - [`games`]: randomized games and their achievable payoff regions.
//! - [`verify`]: seeded invariant suites, also reachable from the CLI.
//!
//! ```
//! use chanorder::channel::Channel;
//! use chanorder::geometry::ToleranceConfig;
//! use chanorder::ordering::is_input_degraded;
//!
//! let tol = ToleranceConfig::default();
//! let res = is_input_degraded(&Channel::bsc(0.1)?, &Channel::identity(2), &tol)?;
//! assert!(res.degraded);
//! # Ok::<(), chanorder::Error>(())
//! ```

pub mod channel;
pub mod cli;
pub mod coding;
pub mod error;
pub mod games;
pub mod geometry;
pub mod json;
pub mod ordering;
pub mod random;
pub mod verify;

pub use error::{Error, Result};
