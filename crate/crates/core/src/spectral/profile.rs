use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::fourier;
use super::grid::Grid;
use crate::error::{Result, WaveError};

/// Relative size below which sine content is treated as absent.
const EVEN_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    General,
}

/// A real 2π-periodic function held both as node values and as the
/// coefficients of its trigonometric interpolant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "ProfileRepr", try_from = "ProfileRepr")]
pub struct SurfaceProfile {
    grid: Grid,
    values: Vec<f64>,
    cos: Vec<f64>,
    sin: Vec<f64>,
    parity: Parity,
    dropped_mean: Option<f64>,
}

#[derive(Serialize, Deserialize)]
struct ProfileRepr {
    n_points: usize,
    cos_coeffs: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sin_coeffs: Option<Vec<f64>>,
}

impl From<SurfaceProfile> for ProfileRepr {
    fn from(p: SurfaceProfile) -> Self {
        let sin_coeffs = match p.parity {
            Parity::Even => None,
            Parity::General => Some(p.sin),
        };
        ProfileRepr {
            n_points: p.grid.n_points(),
            cos_coeffs: p.cos,
            sin_coeffs,
        }
    }
}

impl TryFrom<ProfileRepr> for SurfaceProfile {
    type Error = WaveError;

    fn try_from(r: ProfileRepr) -> Result<Self> {
        let grid = Grid::new(r.n_points)?;
        if r.cos_coeffs.len() != grid.n_modes() + 1 {
            return Err(WaveError::Input(format!(
                "expected {} cosine coefficients, got {}",
                grid.n_modes() + 1,
                r.cos_coeffs.len()
            )));
        }
        match r.sin_coeffs {
            Some(s) => Ok(SurfaceProfile::from_coeffs(grid, r.cos_coeffs, s)),
            None => Ok(SurfaceProfile::from_cosines(grid, r.cos_coeffs)),
        }
    }
}

impl SurfaceProfile {
    /// Analyze node values into a profile.
    pub fn analyze(values: &[f64], grid: Grid) -> Result<Self> {
        if values.len() != grid.n_points() {
            return Err(WaveError::Input(format!(
                "expected {} node values, got {}",
                grid.n_points(),
                values.len()
            )));
        }
        let (cos, sin) = fourier::analyze(values);
        let scale = cos.iter().chain(&sin).fold(0.0f64, |m, c| m.max(c.abs()));
        let sine_max = sin.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        if sine_max <= EVEN_TOL * scale.max(f64::MIN_POSITIVE) {
            Ok(Self::from_cosines(grid, cos))
        } else {
            Ok(Self {
                grid,
                values: values.to_vec(),
                cos,
                sin,
                parity: Parity::General,
                dropped_mean: None,
            })
        }
    }

    /// Sample `f` at the nodes of `grid`.
    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Self {
        let vals: Vec<f64> = grid.nodes().map(f).collect();
        Self::analyze(&vals, grid).expect("length matches grid by construction")
    }

    pub fn constant(grid: Grid, c: f64) -> Self {
        let mut cos = vec![0.0; grid.n_modes() + 1];
        cos[0] = c;
        Self::from_cosines(grid, cos)
    }

    pub fn zero(grid: Grid) -> Self {
        Self::constant(grid, 0.0)
    }

    /// Even profile from cosine coefficients (modes beyond `n/2` are dropped).
    pub fn from_cosines(grid: Grid, cos: Vec<f64>) -> Self {
        let half = grid.n_modes();
        let cos = fourier::resize_coeffs(&cos, half);
        let sin = vec![0.0; half + 1];
        let mut values = fourier::synthesize(&cos, &sin, grid.n_points());
        let n = grid.n_points();
        for j in 1..half {
            let v = 0.5 * (values[j] + values[n - j]);
            values[j] = v;
            values[n - j] = v;
        }
        Self {
            grid,
            values,
            cos,
            sin,
            parity: Parity::Even,
            dropped_mean: None,
        }
    }

    /// Profile from cosine and sine coefficients.
    pub fn from_coeffs(grid: Grid, cos: Vec<f64>, sin: Vec<f64>) -> Self {
        let half = grid.n_modes();
        let cos = fourier::resize_coeffs(&cos, half);
        let mut sin = fourier::resize_coeffs(&sin, half);
        sin[0] = 0.0;
        sin[half] = 0.0;
        if sin.iter().all(|&b| b == 0.0) {
            return Self::from_cosines(grid, cos);
        }
        let values = fourier::synthesize(&cos, &sin, grid.n_points());
        Self {
            grid,
            values,
            cos,
            sin,
            parity: Parity::General,
            dropped_mean: None,
        }
    }

    fn with_coeffs_like(&self, cos: Vec<f64>, sin: Vec<f64>) -> Self {
        match self.parity {
            Parity::Even if sin.iter().all(|&b| b == 0.0) => Self::from_cosines(self.grid, cos),
            _ => Self::from_coeffs(self.grid, cos, sin),
        }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn cos_coeffs(&self) -> &[f64] {
        &self.cos
    }

    pub fn sin_coeffs(&self) -> &[f64] {
        &self.sin
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn is_even(&self) -> bool {
        self.parity == Parity::Even
    }

    /// Mean that was discarded by a transform defined only on zero-mean input.
    pub fn dropped_mean(&self) -> Option<f64> {
        self.dropped_mean
    }

    pub(crate) fn with_dropped_mean(mut self, mean: Option<f64>) -> Self {
        self.dropped_mean = mean;
        self
    }

    /// Period average, identical to the mode-0 coefficient.
    pub fn mean(&self) -> f64 {
        self.cos[0]
    }

    pub fn crest(&self) -> f64 {
        self.values[self.grid.crest_index()]
    }

    pub fn trough(&self) -> f64 {
        self.values[self.grid.trough_index()]
    }

    /// Value at node `j`.
    pub fn at(&self, j: usize) -> f64 {
        self.values[j]
    }

    /// Evaluate the interpolant at an arbitrary abscissa.
    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = self.cos[0];
        for k in 1..self.cos.len() {
            let kx = k as f64 * x;
            acc += self.cos[k] * kx.cos();
            if self.sin[k] != 0.0 {
                acc += self.sin[k] * kx.sin();
            }
        }
        acc
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Same interpolant represented on `n_points` nodes; coefficients are
    /// zero-padded when refining and truncated when coarsening.
    pub fn resample(&self, n_points: usize) -> Result<Self> {
        let grid = Grid::new(n_points)?;
        let half = grid.n_modes();
        let cos = fourier::resize_coeffs(&self.cos, half);
        let sin = fourier::resize_coeffs(&self.sin, half);
        Ok(match self.parity {
            Parity::Even => Self::from_cosines(grid, cos),
            Parity::General => Self::from_coeffs(grid, cos, sin),
        })
    }

    /// Zero-padded synthesis on a grid refined by `factor`.
    pub fn padded(&self, factor: usize) -> Self {
        self.resample(self.grid.n_points() * factor.max(1))
            .expect("refined grid is valid")
    }

    /// The translate `x ↦ f(x + delta)`.
    pub fn translated(&self, delta: f64) -> Self {
        let half = self.grid.n_modes();
        let mut cos = vec![0.0; half + 1];
        let mut sin = vec![0.0; half + 1];
        cos[0] = self.cos[0];
        for k in 1..=half {
            let (s, c) = (k as f64 * delta).sin_cos();
            cos[k] = self.cos[k] * c + self.sin[k] * s;
            sin[k] = self.sin[k] * c - self.cos[k] * s;
        }
        Self::from_coeffs(self.grid, cos, sin)
    }

    /// Spectral derivative. The Nyquist mode is dropped.
    pub fn derivative(&self) -> Self {
        let half = self.grid.n_modes();
        let mut cos = vec![0.0; half + 1];
        let mut sin = vec![0.0; half + 1];
        for k in 1..half {
            let kf = k as f64;
            cos[k] = kf * self.sin[k];
            sin[k] = -kf * self.cos[k];
        }
        Self::from_coeffs(self.grid, cos, sin)
    }

    /// Apply a real even multiplier `m(k)` to every mode `k >= 1`; mode 0 gets
    /// `m0`. The Nyquist mode is kept.
    pub(crate) fn scale_modes(&self, m0: f64, m: impl Fn(usize) -> f64) -> Self {
        let half = self.grid.n_modes();
        let mut cos = self.cos.clone();
        let mut sin = self.sin.clone();
        cos[0] *= m0;
        for k in 1..=half {
            let f = m(k);
            cos[k] *= f;
            sin[k] *= f;
        }
        self.with_coeffs_like(cos, sin)
    }

    /// Quarter-turn rotation of each mode: `cos(kx) ↦ w(k) sin(kx)`,
    /// `sin(kx) ↦ −w(k) cos(kx)`; mode 0 and the Nyquist mode map to zero.
    pub(crate) fn rotate_modes(&self, w: impl Fn(usize) -> f64) -> Self {
        let half = self.grid.n_modes();
        let mut cos = vec![0.0; half + 1];
        let mut sin = vec![0.0; half + 1];
        for k in 1..half {
            let f = w(k);
            cos[k] = -f * self.sin[k];
            sin[k] = f * self.cos[k];
        }
        Self::from_coeffs(self.grid, cos, sin)
    }

    /// Pointwise map of node values followed by re-analysis.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        let vals: Vec<f64> = self.values.iter().map(|&v| f(v)).collect();
        self.reanalyzed(vals)
    }

    /// Pointwise combination with another profile on the same grid.
    ///
    /// Products are formed at the nodes without padding; pad both operands
    /// first when the result must be alias-free.
    pub fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        assert_eq!(self.grid, other.grid, "profiles live on different grids");
        let vals: Vec<f64> = self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect();
        let parity = if self.is_even() && other.is_even() {
            Parity::Even
        } else {
            Parity::General
        };
        let p = self.reanalyzed(vals);
        if parity == Parity::Even && !p.is_even() {
            // odd·odd products are even but may carry roundoff sine content
            return Self::from_cosines(p.grid, p.cos);
        }
        p
    }

    fn reanalyzed(&self, vals: Vec<f64>) -> Self {
        Self::analyze(&vals, self.grid).expect("length preserved")
    }

    pub fn add(&self, other: &Self) -> Self {
        self.linear_combination(1.0, other, 1.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.linear_combination(1.0, other, -1.0)
    }

    /// `a·self + b·other`, computed on coefficients.
    pub fn linear_combination(&self, a: f64, other: &Self, b: f64) -> Self {
        assert_eq!(self.grid, other.grid, "profiles live on different grids");
        let cos: Vec<f64> = self.cos.iter().zip(&other.cos).map(|(x, y)| a * x + b * y).collect();
        let sin: Vec<f64> = self.sin.iter().zip(&other.sin).map(|(x, y)| a * x + b * y).collect();
        if self.is_even() && other.is_even() {
            Self::from_cosines(self.grid, cos)
        } else {
            Self::from_coeffs(self.grid, cos, sin)
        }
    }

    pub fn scaled(&self, a: f64) -> Self {
        self.scale_modes(a, |_| a)
    }

    pub fn add_constant(&self, c: f64) -> Self {
        let mut cos = self.cos.clone();
        cos[0] += c;
        self.with_coeffs_like(cos, self.sin.clone())
    }

    /// Zero-mean part.
    pub fn fluctuation(&self) -> Self {
        self.add_constant(-self.mean())
    }

    /// Discrete `L²` pairing `(1/2π)∫ f g dx`, exact for trigonometric
    /// polynomials whose product is resolved by the grid.
    pub fn inner(&self, other: &Self) -> f64 {
        assert_eq!(self.grid, other.grid, "profiles live on different grids");
        let n = self.values.len() as f64;
        self.values.iter().zip(&other.values).map(|(a, b)| a * b).sum::<f64>() / n
    }

    /// Largest coefficient magnitude among modes `>= from`.
    pub fn tail_magnitude(&self, from: usize) -> f64 {
        (from..self.cos.len())
            .map(|k| self.cos[k].abs().max(self.sin[k].abs()))
            .fold(0.0, f64::max)
    }

    /// Abscissa `x` in `[0, 2π)` of node `j` on this profile's grid.
    pub fn node(&self, j: usize) -> f64 {
        self.grid.node(j)
    }

    /// True when the profile is strictly increasing on `(0, π)` when sampled
    /// on a grid refined by `factor`.
    pub fn strictly_increasing_on_half(&self, factor: usize) -> bool {
        let d = self.derivative().padded(factor);
        let n = d.grid.n_points();
        (1..n / 2).all(|j| d.values[j] > 0.0)
    }

    /// Values of the interpolant at the midpoints `x_j + h/2`.
    pub fn midpoint_values(&self) -> Vec<f64> {
        let h = self.grid.spacing();
        self.translated(0.5 * h).values
    }
}

/// Cosine series `Σ a_k cos(kx)` evaluated at a point; convenience for tests
/// and examples.
pub fn cosine_series(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().enumerate().map(|(k, a)| a * (k as f64 * x).cos()).sum()
}

/// `2π`-periodic reduction of `x` into `(−π, π]`.
pub fn wrap_to_pi(x: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut r = x.rem_euclid(two_pi);
    if r > PI {
        r -= two_pi;
    }
    r
}
