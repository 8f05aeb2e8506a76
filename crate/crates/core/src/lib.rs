//! Steady periodic water waves with constant vorticity on finite depth:
//! strip operators, the surface formulation, branch continuation, explicit
//! amplitude bounds and numerical audits of the inequalities behind them.

// `!(x > 0.0)` is used on purpose so NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cli;
pub mod config;
pub mod error;
pub mod formulation;
pub mod io;
pub mod solver;
pub mod spectral;
pub mod verify;

pub use error::{Result, WaveError};

/// Crate version, echoed into every output file.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
