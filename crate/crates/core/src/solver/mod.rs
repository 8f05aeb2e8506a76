//! Bifurcation from laminar flow and continuation of the branch of symmetric
//! periodic waves.

mod continuation;
pub mod geometry;
pub mod io;
mod laminar;
mod newton;
pub mod system;

use serde::{Deserialize, Serialize};

pub use continuation::{continue_branch, continue_from, first_point, Branch};
pub use laminar::{
    find_bifurcation, find_bifurcation_with, laminar_profile, laminar_state, laminar_surface_velocity, probe,
    Bifurcation, ScanConfig, SingularProbe,
};
pub use newton::{newton_solve, Constraint, FreeParams};

use crate::error::{Result, WaveError};
use crate::formulation::{
    amplitude_of_eta, eta_to_f, nodal_ok, residual_report, PhysicalParams, ResidualReport, DEALIAS,
};
use crate::spectral::SurfaceProfile;
use system::Layout;

/// One converged point of the branch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchPoint {
    pub params: PhysicalParams,
    pub eta: SurfaceProfile,
    pub arclength_s: f64,
    pub amplitude: f64,
    #[serde(rename = "slope_N")]
    pub slope_n: f64,
    #[serde(rename = "convexity_M")]
    pub convexity_m: f64,
    pub residuals: ResidualReport,
}

impl BranchPoint {
    /// Evaluate diagnostics of `eta` under `params`.
    pub fn new(params: PhysicalParams, eta: SurfaceProfile, arclength_s: f64) -> Result<Self> {
        let residuals = residual_report(&params, &eta)?;
        let d1 = eta.derivative().padded(DEALIAS);
        let d2 = eta.derivative().derivative().padded(DEALIAS);
        Ok(Self {
            params,
            amplitude: amplitude_of_eta(&eta),
            slope_n: d1.sup_norm(),
            convexity_m: d2.sup_norm(),
            eta,
            arclength_s,
            residuals,
        })
    }

    pub(crate) fn from_unknowns(layout: &Layout, x: &nalgebra::DVector<f64>, arclength_s: f64) -> Result<Self> {
        let params = layout.params(x);
        params.validate()?;
        Self::new(params, layout.eta(x), arclength_s)
    }

    pub fn f(&self) -> SurfaceProfile {
        eta_to_f(&self.eta, &self.params)
    }

    /// `min (Q − 2gη₀)` on the dealiased grid.
    pub fn min_stag_margin(&self) -> f64 {
        let PhysicalParams { g, q, .. } = self.params;
        q - 2.0 * g * self.eta.padded(DEALIAS).max_value()
    }

    /// `[f²]`, exact for the stored coefficients.
    pub fn f2_mean(&self) -> f64 {
        let f = self.f().padded(2);
        f.inner(&f)
    }

    pub fn residual(&self) -> f64 {
        self.residuals.babenko_res.max(self.residuals.averages_res)
    }

    /// `f > 0` everywhere and, for a nontrivial wave, `η₀′ < 0` on `(0, π)`.
    pub fn check_admissible(&self) -> Result<()> {
        if self.min_stag_margin() <= 0.0 {
            return Err(WaveError::Degeneracy(format!(
                "f = Q/2g − η is not positive (min {:e})",
                self.min_stag_margin() / (2.0 * self.params.g)
            )));
        }
        if self.amplitude > 0.0 && !nodal_ok(&self.eta) {
            return Err(WaveError::Degeneracy(
                "profile is not monotone between crest and trough".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContinuationConfig {
    pub n_points: usize,
    pub step: f64,
    pub step_min: f64,
    pub step_max: f64,
    /// Step multiplier after an easy solve; 1 disables growth.
    pub step_growth: f64,
    pub newton_tol: f64,
    pub newton_max_iters: usize,
    pub max_points: usize,
    /// Coefficient of `cos x` on the first point.
    pub start_coefficient: f64,
    pub norm_max: f64,
    pub flux_energy_max: f64,
    /// Stagnation threshold as a fraction of `Q`.
    pub stagnation_frac: f64,
}

impl Default for ContinuationConfig {
    fn default() -> Self {
        Self {
            n_points: crate::spectral::SOLVE_POINTS,
            step: 0.02,
            step_min: 1e-5,
            step_max: 0.1,
            step_growth: 1.5,
            newton_tol: 1e-10,
            newton_max_iters: 12,
            max_points: 400,
            start_coefficient: 4e-7,
            norm_max: 1e3,
            flux_energy_max: 1e4,
            stagnation_frac: 1e-3,
        }
    }
}

impl ContinuationConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(WaveError::Config(msg.to_string()));
        if !(self.step_min > 0.0 && self.step_min <= self.step && self.step <= self.step_max) {
            return bad("need 0 < step_min <= step <= step_max");
        }
        if !(self.newton_tol >= 1e-13) {
            return bad("newton_tol must be at least 1e-13");
        }
        if self.step_growth < 1.0 {
            return bad("step_growth must be at least 1");
        }
        if self.newton_max_iters == 0 || self.max_points == 0 {
            return bad("newton_max_iters and max_points must be positive");
        }
        if !(self.start_coefficient > 0.0) {
            return bad("start_coefficient must be positive");
        }
        crate::spectral::Grid::new(self.n_points)?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopKind {
    NormBlowup,
    FluxEnergyBlowup,
    StagnationApproach,
    SelfIntersection,
    MaxPoints,
    StepCollapse,
}

impl StopKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            StopKind::NormBlowup => "norm_blowup",
            StopKind::FluxEnergyBlowup => "flux_energy_blowup",
            StopKind::StagnationApproach => "stagnation_approach",
            StopKind::SelfIntersection => "self_intersection",
            StopKind::MaxPoints => "max_points",
            StopKind::StepCollapse => "step_collapse",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StoppingReason {
    pub kind: StopKind,
    pub evidence: f64,
}

/// `max (|η₀| + |η₀′| + |η₀″|)` on the dealiased grid.
pub fn c2_norm(eta: &SurfaceProfile) -> f64 {
    let e = eta.padded(DEALIAS);
    let d1 = eta.derivative().padded(DEALIAS);
    let d2 = eta.derivative().derivative().padded(DEALIAS);
    (0..e.grid().n_points())
        .map(|j| e.at(j).abs() + d1.at(j).abs() + d2.at(j).abs())
        .fold(0.0, f64::max)
}

/// First termination alternative triggered by `point`, if any. The
/// stagnation alternative fires only while the margin is shrinking relative
/// to the previous point of `history`.
pub fn detect_termination(
    point: &BranchPoint,
    history: &[BranchPoint],
    config: &ContinuationConfig,
) -> Result<Option<StoppingReason>> {
    let stop = |kind, evidence| Ok(Some(StoppingReason { kind, evidence }));
    let norm = c2_norm(&point.eta);
    if norm > config.norm_max {
        return stop(StopKind::NormBlowup, norm);
    }
    let fe = point.params.m.abs() + point.params.q;
    if fe > config.flux_energy_max {
        return stop(StopKind::FluxEnergyBlowup, fe);
    }
    let margin = point.min_stag_margin();
    let shrinking = history.last().is_none_or(|prev| margin < prev.min_stag_margin());
    if margin < config.stagnation_frac * point.params.q && shrinking {
        return stop(StopKind::StagnationApproach, margin);
    }
    if let Some(slope) = geometry::self_intersection(&point.eta, point.params.d)? {
        return stop(StopKind::SelfIntersection, slope);
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Grid;

    #[test]
    fn laminar_point_does_not_stop() {
        let p = laminar_state(9.81, 1.0, 0.0, -2.0).unwrap();
        let pt = BranchPoint::new(p, laminar_profile(&p, Grid::new(32).unwrap()), 0.0).unwrap();
        assert_eq!(pt.amplitude, 0.0);
        assert!(pt.residual() < 1e-12);
        let r = detect_termination(&pt, &[], &ContinuationConfig::default()).unwrap();
        assert_eq!(r, None);
    }

    #[test]
    fn stagnation_threshold() {
        let cfg = ContinuationConfig::default();
        let g = 9.81;
        let d = 1.0;
        let grid = Grid::new(32).unwrap();
        let eta = SurfaceProfile::from_cosines(grid, vec![d, 0.2]);
        let crest = eta.padded(DEALIAS).max_value();
        // Q − 2gη(0) = half the threshold
        let q = (2.0 * g * crest) / (1.0 - 0.5 * cfg.stagnation_frac);
        let p = PhysicalParams::new(g, d, 0.0, -1.0, q).unwrap();
        let pt = BranchPoint::new(p, eta, 0.0).unwrap();
        assert!((pt.min_stag_margin() - 0.5 * cfg.stagnation_frac * q).abs() < 1e-9);
        let r = detect_termination(&pt, &[], &cfg).unwrap().unwrap();
        assert_eq!(r.kind, StopKind::StagnationApproach);
    }

    #[test]
    fn config_validation() {
        assert!(ContinuationConfig::default().validate().is_ok());
        let c = ContinuationConfig {
            step: 1.0,
            ..Default::default()
        };
        assert!(c.validate().is_err());
        let c = ContinuationConfig {
            newton_tol: 1e-14,
            ..Default::default()
        };
        assert!(c.validate().is_err());
    }
}
