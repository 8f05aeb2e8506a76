//! Laminar states and detection of the bifurcation point on the laminar
//! family.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::system::Layout;
use crate::error::{Result, WaveError};
use crate::formulation::PhysicalParams;
use crate::spectral::{Grid, SurfaceProfile};

/// Bernoulli constant that makes `η ≡ d` a solution at flux `m`.
pub fn laminar_state(g: f64, d: f64, gamma: f64, m: f64) -> Result<PhysicalParams> {
    let u = m / d - gamma * d / 2.0;
    PhysicalParams::new(g, d, gamma, m, u * u + 2.0 * g * d)
}

pub fn laminar_profile(params: &PhysicalParams, grid: Grid) -> SurfaceProfile {
    SurfaceProfile::constant(grid, params.d)
}

/// Surface value of `ψ_y` on the laminar state.
pub fn laminar_surface_velocity(params: &PhysicalParams) -> f64 {
    params.m / params.d - params.gamma * params.d / 2.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bifurcation {
    pub m: f64,
    #[serde(rename = "Q")]
    pub q: f64,
    pub mode: usize,
    /// Signed singular value of the tracked mode at each scanned `m`.
    pub scan: Vec<(f64, f64)>,
}

impl Bifurcation {
    pub fn params(&self, g: f64, d: f64, gamma: f64) -> Result<PhysicalParams> {
        PhysicalParams::new(g, d, gamma, self.m, self.q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanConfig {
    /// Node count of the coarse grid used for the linearization.
    pub n_points: usize,
    pub samples: usize,
    pub mode: usize,
    pub bisection_tol: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            n_points: 64,
            samples: 400,
            mode: 1,
            bisection_tol: 1e-13,
        }
    }
}

/// Linearization of the Babenko modes `1..K` with respect to `η` modes
/// `1..K` at the laminar state, by central differences.
fn laminar_jacobian(layout: &Layout, params: &PhysicalParams) -> Result<DMatrix<f64>> {
    let k = layout.n_free();
    let eta = laminar_profile(params, layout.grid);
    let x0 = layout.pack(params, &eta);
    let h = 1e-5;
    let mut jac = DMatrix::zeros(k, k);
    for j in 0..k {
        let mut xp = x0.clone();
        let mut xm = x0.clone();
        xp[j] += h;
        xm[j] -= h;
        let fp = layout.galerkin(&xp)?;
        let fm = layout.galerkin(&xm)?;
        for i in 0..k {
            jac[(i, j)] = (fp[i] - fm[i]) / (2.0 * h);
        }
    }
    Ok(jac)
}

/// Singular-value data of the laminar linearization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularProbe {
    /// Smallest singular value, signed by the determinant.
    pub signed_min: f64,
    pub max: f64,
    /// Dominant mode of the right singular vector of the smallest value.
    pub mode: usize,
    /// Signed singular value tracking the requested mode: `vᵀJv` for the
    /// right singular vector `v` with the largest component on that mode.
    pub tracked: f64,
}

pub fn probe(grid: Grid, params: &PhysicalParams, mode: usize) -> Result<SingularProbe> {
    let layout = Layout::new(grid, params.g, params.d, params.gamma);
    let jac = laminar_jacobian(&layout, params)?;
    if mode == 0 || mode > layout.n_free() {
        return Err(WaveError::Input(format!("mode must lie in 1..={}", layout.n_free())));
    }
    let sign = jac.clone().lu().determinant().signum();
    let svd = jac.clone().svd(false, true);
    let sv = &svd.singular_values;
    let vt = svd.v_t.expect("right singular vectors requested");
    let argmax = |it: &mut dyn Iterator<Item = (usize, f64)>| {
        it.fold(
            (0, f64::NEG_INFINITY),
            |acc, (i, v)| if v > acc.1 { (i, v) } else { acc },
        )
        .0
    };
    let imin = argmax(&mut sv.iter().map(|&s| -s).enumerate());
    let smax = sv.iter().copied().fold(0.0, f64::max);
    let kmin = argmax(&mut vt.row(imin).iter().map(|v| v.abs()).enumerate());
    let itrack = argmax(&mut (0..sv.len()).map(|i| (i, vt[(i, mode - 1)].abs())));
    let v = vt.row(itrack).transpose();
    let tracked = v.dot(&(&jac * &v));
    Ok(SingularProbe {
        signed_min: sign * sv[imin],
        max: smax,
        mode: kmin + 1,
        tracked,
    })
}

/// Scan window for the laminar surface velocity `u = m/d − γd/2 < 0`.
fn velocity_window(g: f64, d: f64, gamma: f64) -> f64 {
    let l = d.max(1.0);
    gamma.abs() * l + 2.0 * (g * l).sqrt() + 1.0
}

pub fn find_bifurcation(g: f64, d: f64, gamma: f64) -> Result<Bifurcation> {
    find_bifurcation_with(g, d, gamma, &ScanConfig::default())
}

/// Scan the laminar family in `m` from strong to weak flux and bisect the
/// first sign change of the singular value tracking the requested mode.
/// At the root that value is the smallest singular value.
pub fn find_bifurcation_with(g: f64, d: f64, gamma: f64, cfg: &ScanConfig) -> Result<Bifurcation> {
    let grid = Grid::new(cfg.n_points)?;
    laminar_state(g, d, gamma, -1.0)?;
    let umax = velocity_window(g, d, gamma);
    let m_of = |u: f64| d * (u + gamma * d / 2.0);
    let at = |m: f64| -> Result<SingularProbe> { probe(grid, &laminar_state(g, d, gamma, m)?, cfg.mode) };

    let mut scan = Vec::with_capacity(cfg.samples);
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..cfg.samples {
        let u = -umax * (1.0 - i as f64 / cfg.samples as f64);
        let m = m_of(u);
        if m >= 0.0 {
            break;
        }
        let p = at(m)?;
        scan.push((m, p.tracked));
        if let Some((m0, t0)) = prev {
            if t0.signum() != p.tracked.signum() {
                let (mut lo, mut hi) = (m0, m);
                while (hi - lo).abs() > cfg.bisection_tol * (1.0 + lo.abs()) {
                    let mid = 0.5 * (lo + hi);
                    if at(mid)?.tracked.signum() == t0.signum() {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                let (pa, pb) = (at(lo)?, at(hi)?);
                let (root, pr) = if pa.tracked.abs() <= pb.tracked.abs() {
                    (lo, pa)
                } else {
                    (hi, pb)
                };
                let params = laminar_state(g, d, gamma, root)?;
                return Ok(Bifurcation {
                    m: root,
                    q: params.q,
                    mode: pr.mode,
                    scan,
                });
            }
        }
        prev = Some((m, p.tracked));
    }
    Err(WaveError::BifurcationNotFound {
        reason: format!(
            "no sign change of the singular value for mode {} in u ∈ [{:.3}, 0)",
            cfg.mode, -umax
        ),
        scan,
    })
}
