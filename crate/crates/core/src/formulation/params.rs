use serde::{Deserialize, Serialize};

use crate::error::{Result, WaveError};

/// Constants of one wave problem.
///
/// Sign conventions: the mass flux `m` is negative, `gamma > 0` is adverse
/// vorticity and `gamma <= 0` favorable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    pub g: f64,
    pub d: f64,
    pub gamma: f64,
    pub m: f64,
    #[serde(rename = "Q")]
    pub q: f64,
}

impl PhysicalParams {
    pub fn new(g: f64, d: f64, gamma: f64, m: f64, q: f64) -> Result<Self> {
        let p = Self { g, d, gamma, m, q };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |c: bool, what: &str| {
            if c {
                Ok(())
            } else {
                Err(WaveError::Parameter(format!("{what} (params {self:?})")))
            }
        };
        ok(self.g > 0.0 && self.g.is_finite(), "gravity must be positive")?;
        ok(self.d > 0.0 && self.d.is_finite(), "depth must be positive")?;
        ok(
            self.q > 0.0 && self.q.is_finite(),
            "Bernoulli constant must be positive",
        )?;
        ok(self.m < 0.0 && self.m.is_finite(), "mass flux must be negative")?;
        ok(self.gamma.is_finite(), "vorticity must be finite")
    }

    pub fn is_favorable(&self) -> bool {
        self.gamma <= 0.0
    }

    /// Surface level `Q/(2g)` at which `f` vanishes.
    pub fn head(&self) -> f64 {
        self.q / (2.0 * self.g)
    }

    /// `σ = −mγ/(dg) + γ²Q²/(8dg³) − γ²[f²]/(2dg)`.
    pub fn sigma(&self, f2_mean: f64) -> f64 {
        let Self { g, d, gamma, m, q } = *self;
        -m * gamma / (d * g) + gamma * gamma * q * q / (8.0 * d * g.powi(3)) - gamma * gamma * f2_mean / (2.0 * d * g)
    }
}
