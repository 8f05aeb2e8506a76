//! Kernel-side quadrature of the strip Hilbert transform.
//!
//! Both integrals here are periodic in the integration variable. Pairing the
//! nodes `±u` cancels the `2/u` pole of `β` (and the `2/s²` pole of `−β′`
//! against the cubed difference), after which the integrand is smooth and
//! the midpoint rule converges geometrically. The midpoint nodes
//! `u_j = (j + ½)h` straddle the singularity and never land on it.

use std::f64::consts::PI;

use super::grid::Grid;
use super::kernel::{beta_eval, beta_prime_eval, DEFAULT_TOL};
use super::operators::check_depth;
use super::profile::SurfaceProfile;
use crate::error::Result;

/// Midpoint rule on `(0, π)` with `half` nodes, the quadrature grid being
/// `ratio` times finer than the evaluation grid.
struct MidpointRule {
    ratio: usize,
    fine: usize,
    step: f64,
}

impl MidpointRule {
    /// `degree` is the trigonometric degree of the smooth factor of the
    /// integrand. The non-polynomial part of the kernel decays like
    /// `exp(−2kd)`, hence the `1/d` term.
    fn new(n_points: usize, degree: usize, d: f64) -> Self {
        let needed = 2 * degree + (40.0 / d).ceil() as usize + 16;
        let ratio = needed.div_ceil(n_points).max(2);
        let fine = ratio * n_points;
        Self {
            ratio,
            fine,
            step: 2.0 * PI / fine as f64,
        }
    }

    fn half(&self) -> usize {
        self.fine / 2
    }

    fn node(&self, j: usize) -> f64 {
        (j as f64 + 0.5) * self.step
    }

    /// `F((m + ½)h)` for `m = 0..fine`.
    fn shifted_samples(&self, p: &SurfaceProfile) -> Vec<f64> {
        p.resample(self.fine).expect("refined grid is valid").midpoint_values()
    }

    /// Indices of `x_i − u_j` and `x_i + u_j` in the shifted samples.
    fn pair(&self, i: usize, j: usize) -> (usize, usize) {
        let base = i * self.ratio;
        let m = self.fine;
        ((base + m - j - 1) % m, (base + j) % m)
    }
}

fn degree(p: &SurfaceProfile) -> usize {
    let c = p.cos_coeffs();
    let s = p.sin_coeffs();
    let scale = c.iter().chain(s).fold(0.0f64, |m, v| m.max(v.abs()));
    (0..c.len())
        .rev()
        .find(|&k| c[k].abs().max(s[k].abs()) > 1e-15 * scale)
        .unwrap_or(0)
}

/// `(1/2π) p.v.∫_{−π}^{π} β(x − s) p(s) ds` at every node of `p`'s grid.
///
/// Agrees with [`super::hilbert`] up to quadrature error for smooth `p`.
pub fn pv_convolve(p: &SurfaceProfile, d: f64) -> Result<SurfaceProfile> {
    check_depth(d)?;
    let grid = p.grid();
    let rule = MidpointRule::new(grid.n_points(), degree(p), d);
    let samples = rule.shifted_samples(p);
    let kernel: Vec<f64> = (0..rule.half())
        .map(|j| beta_eval(rule.node(j), d, DEFAULT_TOL).map(|v| v.value))
        .collect::<Result<_>>()?;

    let w = rule.step / (2.0 * PI);
    let values: Vec<f64> = (0..grid.n_points())
        .map(|i| {
            kernel
                .iter()
                .enumerate()
                .map(|(j, b)| {
                    let (lo, hi) = rule.pair(i, j);
                    b * (samples[lo] - samples[hi])
                })
                .sum::<f64>()
                * w
        })
        .collect();
    SurfaceProfile::analyze(&values, grid)
}

/// `∫_{−π}^{π} (−β′(s)/6π) (f(x) − f(x − s))³ ds` at the nodes of `grid`,
/// which must be a refinement of (or equal to) `f`'s grid.
pub(crate) fn cubic_kernel_integral(f: &SurfaceProfile, d: f64, grid: Grid) -> Result<Vec<f64>> {
    check_depth(d)?;
    let f_fine = f.resample(grid.n_points())?;
    let rule = MidpointRule::new(grid.n_points(), 3 * degree(f), d);
    let samples = rule.shifted_samples(&f_fine);
    let kernel: Vec<f64> = (0..rule.half())
        .map(|j| beta_prime_eval(rule.node(j), d, DEFAULT_TOL).map(|v| -v.value))
        .collect::<Result<_>>()?;

    let w = rule.step / (6.0 * PI);
    let values = (0..grid.n_points())
        .map(|i| {
            let fx = f_fine.at(i);
            kernel
                .iter()
                .enumerate()
                .map(|(j, k)| {
                    let (lo, hi) = rule.pair(i, j);
                    let a = fx - samples[lo];
                    let b = fx - samples[hi];
                    k * (a * a * a + b * b * b)
                })
                .sum::<f64>()
                * w
        })
        .collect();
    Ok(values)
}
