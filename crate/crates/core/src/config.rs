//! Run configuration: a flat `key = value` file with `[section]` headers.
//!
//! ```text
//! # comment
//! [physics]
//! gravity = 9.81
//! depth = 1
//! gamma = -1
//!
//! [continuation]
//! step = 0.02
//! ```
//!
//! Keys are addressed as `section.key`. Unknown keys are rejected so typos
//! surface instead of silently falling back to defaults.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bounds::DEFAULT_EPS;
use crate::error::{Result, WaveError};
use crate::solver::ContinuationConfig;

/// Parse the text into `section.key → value`, preserving the last
/// assignment of a repeated key.
pub fn parse_key_values(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    let mut section = String::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| WaveError::Config(format!("line {}: unterminated section header", i + 1)))?;
            section = name.trim().to_string();
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| WaveError::Config(format!("line {}: expected key = value", i + 1)))?;
        let k = k.trim();
        if k.is_empty() {
            return Err(WaveError::Config(format!("line {}: empty key", i + 1)));
        }
        let key = if section.is_empty() {
            k.to_string()
        } else {
            format!("{section}.{k}")
        };
        out.insert(key, v.trim().to_string());
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Apriori,
    Aposteriori,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhysicsConfig {
    pub gravity: f64,
    pub depth: f64,
    pub gamma: f64,
    /// Mass flux for a-priori bounds and sweeps.
    pub flux: Option<f64>,
    /// Bernoulli constant; the laminar value for `flux` when absent.
    #[serde(rename = "Q")]
    pub q: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelConfig {
    pub from: f64,
    pub to: f64,
    pub samples: usize,
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsConfig {
    pub eps: f64,
    pub mode: Mode,
    /// Slope cap `N` for a-priori evaluation.
    pub slope: f64,
    /// Convexity cap `M` for a-priori evaluation.
    pub convexity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub gamma_from: f64,
    pub gamma_to: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub synthetic: usize,
    pub kernel_samples: usize,
    pub synthetic_grid: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub physics: PhysicsConfig,
    pub continuation: ContinuationConfig,
    pub kernel: KernelConfig,
    pub bounds: BoundsConfig,
    pub sweep: SweepConfig,
    pub verify: VerifyConfig,
    /// Target amplitude of `solve`.
    pub amplitude: f64,
    pub out: PathBuf,
    pub seed: u64,
    pub workers: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            physics: PhysicsConfig {
                gravity: 9.81,
                depth: 1.0,
                gamma: 0.0,
                flux: None,
                q: None,
            },
            continuation: ContinuationConfig::default(),
            // a sampling range end short of π, not an approximation of it
            #[allow(clippy::approx_constant)]
            kernel: KernelConfig {
                from: 0.01,
                to: 3.14,
                samples: 500,
                tol: crate::spectral::kernel::DEFAULT_TOL,
            },
            bounds: BoundsConfig {
                eps: DEFAULT_EPS,
                mode: Mode::Apriori,
                slope: 0.1,
                convexity: 0.1,
            },
            sweep: SweepConfig {
                gamma_from: -2.0,
                gamma_to: 2.0,
                count: 41,
            },
            verify: VerifyConfig {
                synthetic: 0,
                kernel_samples: 1000,
                synthetic_grid: 64,
            },
            amplitude: 0.05,
            out: PathBuf::from("out"),
            seed: 7,
            workers: 1,
        }
    }
}

fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    v.parse().map_err(|e| WaveError::Config(format!("{key} = {v}: {e}")))
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| WaveError::Config(format!("{}: {e}", path.display())))?;
        Self::from_text(&text)
    }

    /// Defaults overridden by every assignment in `text`.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (k, v) in parse_key_values(text)? {
            cfg.set(&k, &v)?;
        }
        Ok(cfg)
    }

    /// Set one `section.key`.
    pub fn set(&mut self, key: &str, v: &str) -> Result<()> {
        let c = &mut self.continuation;
        match key {
            "physics.gravity" => self.physics.gravity = num(key, v)?,
            "physics.depth" => self.physics.depth = num(key, v)?,
            "physics.gamma" => self.physics.gamma = num(key, v)?,
            "physics.flux" => self.physics.flux = Some(num(key, v)?),
            "physics.Q" => self.physics.q = Some(num(key, v)?),
            "continuation.n_points" | "grid.n_points" => c.n_points = num(key, v)?,
            "continuation.step" => c.step = num(key, v)?,
            "continuation.step_min" => c.step_min = num(key, v)?,
            "continuation.step_max" => c.step_max = num(key, v)?,
            "continuation.step_growth" => c.step_growth = num(key, v)?,
            "continuation.newton_tol" => c.newton_tol = num(key, v)?,
            "continuation.newton_max_iters" => c.newton_max_iters = num(key, v)?,
            "continuation.max_points" => c.max_points = num(key, v)?,
            "continuation.start_coefficient" => c.start_coefficient = num(key, v)?,
            "continuation.norm_max" => c.norm_max = num(key, v)?,
            "continuation.flux_energy_max" => c.flux_energy_max = num(key, v)?,
            "continuation.stagnation_frac" => c.stagnation_frac = num(key, v)?,
            "kernel.from" => self.kernel.from = num(key, v)?,
            "kernel.to" => self.kernel.to = num(key, v)?,
            "kernel.samples" => self.kernel.samples = num(key, v)?,
            "kernel.tol" => self.kernel.tol = num(key, v)?,
            "bounds.eps" => self.bounds.eps = num(key, v)?,
            "bounds.slope" => self.bounds.slope = num(key, v)?,
            "bounds.convexity" => self.bounds.convexity = num(key, v)?,
            "bounds.mode" => {
                self.bounds.mode = match v {
                    "apriori" => Mode::Apriori,
                    "aposteriori" => Mode::Aposteriori,
                    _ => {
                        return Err(WaveError::Config(format!(
                            "{key} must be apriori or aposteriori, got {v}"
                        )))
                    }
                }
            }
            "sweep.gamma_from" => self.sweep.gamma_from = num(key, v)?,
            "sweep.gamma_to" => self.sweep.gamma_to = num(key, v)?,
            "sweep.count" => self.sweep.count = num(key, v)?,
            "verify.synthetic" => self.verify.synthetic = num(key, v)?,
            "verify.kernel_samples" => self.verify.kernel_samples = num(key, v)?,
            "verify.synthetic_grid" => self.verify.synthetic_grid = num(key, v)?,
            "solve.amplitude" => self.amplitude = num(key, v)?,
            "run.out" => self.out = PathBuf::from(v),
            "run.seed" => self.seed = num(key, v)?,
            "run.workers" => self.workers = num(key, v)?,
            _ => return Err(WaveError::Config(format!("unknown key {key}"))),
        }
        Ok(())
    }

    /// The resolved configuration as one flat JSON object keyed like the
    /// config file, for echoing into outputs. Unset options are omitted.
    pub fn echo(&self) -> serde_json::Value {
        let mut flat = serde_json::Map::new();
        flatten("", &serde_json::to_value(self).expect("config serializes"), &mut flat);
        let flat = flat
            .into_iter()
            .filter(|(_, v)| !v.is_null())
            .map(|(k, v)| {
                let k = match k.as_str() {
                    "amplitude" => "solve.amplitude".to_string(),
                    "out" | "seed" | "workers" => format!("run.{k}"),
                    _ => k,
                };
                (k, v)
            })
            .collect();
        serde_json::Value::Object(flat)
    }
}

fn flatten(prefix: &str, v: &serde_json::Value, out: &mut serde_json::Map<String, serde_json::Value>) {
    match v {
        serde_json::Value::Object(map) => {
            for (k, inner) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, inner, out);
            }
        }
        other => {
            out.insert(prefix.to_string(), other.clone());
        }
    }
}
