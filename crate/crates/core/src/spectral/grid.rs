use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Result, WaveError};

/// Smallest admissible node count.
pub const MIN_POINTS: usize = 16;

/// Default node count for solving.
pub const SOLVE_POINTS: usize = 256;

/// Default node count for verification sweeps.
pub const VERIFY_POINTS: usize = 1024;

/// Uniform collocation grid `x_j = 2πj/n` on `[0, 2π)`.
///
/// Node 0 is the crest abscissa and node `n/2` the trough abscissa.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    n_points: usize,
}

impl Grid {
    pub fn new(n_points: usize) -> Result<Self> {
        if n_points < MIN_POINTS || !n_points.is_multiple_of(2) {
            return Err(WaveError::Input(format!(
                "grid needs an even node count >= {MIN_POINTS}, got {n_points}"
            )));
        }
        Ok(Self { n_points })
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    /// Highest representable mode, `n/2`.
    pub fn n_modes(&self) -> usize {
        self.n_points / 2
    }

    pub fn spacing(&self) -> f64 {
        2.0 * PI / self.n_points as f64
    }

    pub fn node(&self, j: usize) -> f64 {
        self.spacing() * j as f64
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(move |j| self.node(j))
    }

    pub fn crest_index(&self) -> usize {
        0
    }

    pub fn trough_index(&self) -> usize {
        self.n_points / 2
    }

    /// The grid refined by an integer factor.
    pub fn refined(&self, factor: usize) -> Grid {
        Grid {
            n_points: self.n_points * factor.max(1),
        }
    }
}
