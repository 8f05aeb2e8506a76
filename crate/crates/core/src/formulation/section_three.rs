//! Split of the crest-to-trough identity into `L f = R f = V + W` and the
//! auxiliary profiles used to bound `V` and `W` from below.

use serde::{Deserialize, Serialize};

use super::{amplitude_of_f, k_spectral, PhysicalParams, QuadraticTerms, DEALIAS};
use crate::error::Result;
use crate::spectral::{dirichlet_g, hilbert_prime, SurfaceProfile};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SectionThreeReport {
    #[serde(rename = "L_val")]
    pub l_val: f64,
    #[serde(rename = "R_val")]
    pub r_val: f64,
    #[serde(rename = "V_val")]
    pub v_val: f64,
    #[serde(rename = "W_val")]
    pub w_val: f64,
    #[serde(rename = "Bpi")]
    pub b_pi: SurfaceProfile,
    #[serde(rename = "B0")]
    pub b_0: SurfaceProfile,
    #[serde(rename = "Spi")]
    pub s_pi: SurfaceProfile,
    #[serde(rename = "S0")]
    pub s_0: SurfaceProfile,
    pub amplitude: f64,
    /// `|V − H′B^π(π) − H′B⁰(0)|`.
    pub vbb_defect: f64,
    /// Defect of `(2g/γ²) W = H′S^π(π) + H′S⁰(0)`, checked in the form
    /// multiplied through by `γ²/2g` so that it is meaningful at `γ = 0`.
    pub whs_defect: f64,
    /// `G B^π(π)`, `G B⁰(0)`, `G S^π(π)`, `G S⁰(0)`.
    pub hopf: [f64; 4],
    /// `f` even and strictly increasing on `(0, π)`.
    pub monotone: bool,
}

impl SectionThreeReport {
    /// `L ≤ A`, valid for favorable vorticity on solutions.
    pub fn upper_ok(&self) -> bool {
        self.l_val <= self.amplitude
    }

    /// The lower bound `A²/(2d) + γ²A³/(12gd)` for `R`.
    pub fn lower_bound(params: &PhysicalParams, amplitude: f64) -> f64 {
        let PhysicalParams { g, d, gamma, .. } = *params;
        amplitude * amplitude / (2.0 * d) + gamma * gamma * amplitude.powi(3) / (12.0 * g * d)
    }

    pub fn hopf_ok(&self) -> bool {
        self.hopf.iter().all(|&v| v > 0.0)
    }
}

pub fn section_three_report(params: &PhysicalParams, f: &SurfaceProfile) -> Result<SectionThreeReport> {
    let PhysicalParams { g, d, gamma, .. } = *params;
    let quad = QuadraticTerms::new(f, d)?;
    let fp = &quad.f;
    let a = amplitude_of_f(fp);
    let (f0, fpi) = (fp.crest(), fp.trough());
    let c2 = gamma * gamma / (2.0 * g);

    let f2_mean = fp.zip_with(fp, |x, y| x * y).mean();
    let t = quad.difference_at_ends();
    let l_val = (1.0 + params.sigma(f2_mean)) * a - c2 * (fpi * fpi - f0 * f0) + c2 * a * t;

    let v_val = quad.crest_trough_sum();
    let k = k_spectral(f, d)?;
    let cubic = -(k.trough() - k.crest()) + a * t;
    let w_val = c2 * cubic;
    let r_val = v_val + w_val;

    let b_pi = fp.map(|x| -(fpi - x) * (1.5 * fpi + 0.5 * x));
    let b_0 = fp.map(|x| -(x - f0) * (1.5 * f0 + 0.5 * x));
    let s_pi = fp.map(|x| (fpi - x).powi(2) * (3.0 * f0 - 2.0 * x - fpi) / 6.0);
    let s_0 = fp.map(|x| (f0 - x).powi(2) * (2.0 * x + f0 - 3.0 * fpi) / 6.0);

    let hp = |p: &SurfaceProfile| hilbert_prime(p, d);
    let vbb_defect = (v_val - hp(&b_pi)?.trough() - hp(&b_0)?.crest()).abs();
    let whs_defect = (cubic - hp(&s_pi)?.trough() - hp(&s_0)?.crest()).abs();

    let gp = |p: &SurfaceProfile| dirichlet_g(p, d);
    let hopf = [
        gp(&b_pi)?.trough(),
        gp(&b_0)?.crest(),
        gp(&s_pi)?.trough(),
        gp(&s_0)?.crest(),
    ];

    Ok(SectionThreeReport {
        l_val,
        r_val,
        v_val,
        w_val,
        b_pi,
        b_0,
        s_pi,
        s_0,
        amplitude: a,
        vbb_defect,
        whs_defect,
        hopf,
        monotone: f.is_even() && f.strictly_increasing_on_half(DEALIAS),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Grid;

    fn profile() -> SurfaceProfile {
        SurfaceProfile::from_fn(Grid::new(64).unwrap(), |x| {
            1.0 + 0.3 * (1.0 - x.cos()) + 0.05 * (1.0 - (2.0 * x).cos())
        })
    }

    #[test]
    fn identities_hold_on_monotone_profile() {
        let p = PhysicalParams::new(9.81, 1.0, -2.0, -3.0, 30.0).unwrap();
        let r = section_three_report(&p, &profile()).unwrap();
        assert!(r.monotone);
        assert!(r.vbb_defect < 1e-11, "{}", r.vbb_defect);
        assert!(r.whs_defect < 1e-11, "{}", r.whs_defect);
        assert!(r.hopf_ok());
        let sum = r.s_pi.add(&r.s_0);
        let target = -r.amplitude.powi(3) / 6.0;
        assert!(sum.values().iter().all(|v| (v - target).abs() < 1e-12));
        assert!(r.r_val > SectionThreeReport::lower_bound(&p, r.amplitude));
    }

    #[test]
    fn b_pair_sum_formula() {
        let p = PhysicalParams::new(9.81, 1.0, 0.0, -3.0, 30.0).unwrap();
        let r = section_three_report(&p, &profile()).unwrap();
        let f = profile().padded(DEALIAS);
        let (f0, fpi) = (f.crest(), f.trough());
        for j in 0..f.grid().n_points() {
            let lhs = -(r.b_pi.at(j) + r.b_0.at(j));
            let rhs = r.amplitude * (-f.at(j) + 1.5 * fpi + 1.5 * f0);
            assert!((lhs - rhs).abs() < 1e-12);
            assert!(lhs > r.amplitude * r.amplitude / 2.0);
        }
        assert_eq!(r.w_val, 0.0);
    }

    #[test]
    fn flags_non_monotone_input() {
        let p = PhysicalParams::new(9.81, 1.0, -1.0, -3.0, 30.0).unwrap();
        let f = SurfaceProfile::from_fn(Grid::new(32).unwrap(), |x| 2.0 + 0.1 * (2.0 * x).cos());
        let r = section_three_report(&p, &f).unwrap();
        assert!(!r.monotone);
    }
}
