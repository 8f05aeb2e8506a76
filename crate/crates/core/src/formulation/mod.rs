//! Surface formulation in conformal variables.
//!
//! Everything here is a function of the surface elevation `η₀` (mean `d`)
//! or of `f = Q/(2g) − η₀`. Nonlinear terms are formed on a zero-padded grid
//! ([`DEALIAS`] times finer) so that products are exact for the trigonometric
//! polynomials handled by the solver. Outputs live on that padded grid.

mod params;
mod section_three;

use serde::{Deserialize, Serialize};

pub use params::PhysicalParams;
pub use section_three::{section_three_report, SectionThreeReport};

use crate::error::{Result, WaveError};
use crate::spectral::pv::cubic_kernel_integral;
use crate::spectral::{hilbert, SurfaceProfile};

/// Padding factor for nonlinear terms. Quartic expressions of a profile with
/// modes below `n/2` stay below the Nyquist mode of the `4n` grid.
pub const DEALIAS: usize = 4;

fn mul(a: &SurfaceProfile, b: &SurfaceProfile) -> SurfaceProfile {
    a.zip_with(b, |x, y| x * y)
}

pub fn eta_to_f(eta: &SurfaceProfile, params: &PhysicalParams) -> SurfaceProfile {
    eta.scaled(-1.0).add_constant(params.head())
}

pub fn f_to_eta(f: &SurfaceProfile, params: &PhysicalParams) -> SurfaceProfile {
    f.scaled(-1.0).add_constant(params.head())
}

/// Crest-to-trough elevation drop `η₀(0) − η₀(π)`.
pub fn amplitude_of_eta(eta: &SurfaceProfile) -> f64 {
    eta.crest() - eta.trough()
}

/// `f(π) − f(0)`, the same amplitude expressed through `f`.
pub fn amplitude_of_f(f: &SurfaceProfile) -> f64 {
    f.trough() - f.crest()
}

/// The quadratic building blocks `f·H(f′)` and `H(f f′)` on the padded grid.
#[derive(Debug, Clone)]
pub struct QuadraticTerms {
    pub f: SurfaceProfile,
    pub f_hf: SurfaceProfile,
    pub h_ff: SurfaceProfile,
}

impl QuadraticTerms {
    pub fn new(f: &SurfaceProfile, d: f64) -> Result<Self> {
        let fp = f.padded(DEALIAS);
        let df = fp.derivative();
        let f_hf = mul(&fp, &hilbert(&df, d)?);
        let h_ff = hilbert(&mul(&fp, &df), d)?;
        Ok(Self { f: fp, f_hf, h_ff })
    }

    /// `{f H(f′) + H(f f′)}` evaluated from the crest to the trough.
    pub fn crest_trough_sum(&self) -> f64 {
        (self.f_hf.trough() + self.h_ff.trough()) - (self.f_hf.crest() + self.h_ff.crest())
    }

    /// `(f H f′ − H(f f′))(π) + (f H f′ − H(f f′))(0)`.
    pub fn difference_at_ends(&self) -> f64 {
        (self.f_hf.trough() - self.h_ff.trough()) + (self.f_hf.crest() - self.h_ff.crest())
    }
}

/// `Kf = f² H f′ + H(f² f′) − 2 f H(f f′)` by Fourier multipliers.
pub fn k_spectral(f: &SurfaceProfile, d: f64) -> Result<SurfaceProfile> {
    let fp = f.padded(DEALIAS);
    let df = fp.derivative();
    let f2 = mul(&fp, &fp);
    let t1 = mul(&f2, &hilbert(&df, d)?);
    let t2 = hilbert(&mul(&f2, &df), d)?;
    let t3 = mul(&fp, &hilbert(&mul(&fp, &df), d)?);
    Ok(t1.add(&t2).linear_combination(1.0, &t3, -2.0))
}

/// `Kf(x) = ∫_{−π}^{π} (−β′(s)/6π)(f(x) − f(x − s))³ ds` by quadrature,
/// on the same padded grid as [`k_spectral`].
pub fn k_integral(f: &SurfaceProfile, d: f64) -> Result<SurfaceProfile> {
    let grid = f.grid().refined(DEALIAS);
    let vals = cubic_kernel_integral(f, d, grid)?;
    SurfaceProfile::analyze(&vals, grid)
}

/// The constant `b` exactly as published alongside the `f` equation.
///
/// Its vorticity terms are not dimensionally consistent with the equation it
/// accompanies; [`consistent_b`] is the value that makes the `f` equation
/// equivalent to the elevation equation. Both are exposed so the difference
/// can be reported.
pub fn compute_b(params: &PhysicalParams, f: &SurfaceProfile) -> Result<f64> {
    let PhysicalParams { g, d, gamma, m, q } = *params;
    let quad = QuadraticTerms::new(f, d)?;
    let f_hf_mean = quad.f_hf.mean();
    let f2_mean = mul(&quad.f, &quad.f).mean();
    Ok(
        q / (2.0 * g) + gamma * m / g - d - f_hf_mean - gamma * q / (2.0 * g * g) * params.sigma(f2_mean)
            + gamma * gamma * q * q / (8.0 * g.powi(3)),
    )
}

/// The constant term of the `f` equation obtained by substituting
/// `η₀ = Q/(2g) − f` into the elevation equation:
/// `b = Q/(2g) + γm/g − d − [f H f′] + (Q/(2g))σ − γ²Q²/(8g³)`.
pub fn consistent_b(params: &PhysicalParams, f: &SurfaceProfile) -> Result<f64> {
    let PhysicalParams { g, d, gamma, m, .. } = *params;
    let c = params.head();
    let quad = QuadraticTerms::new(f, d)?;
    let f2_mean = mul(&quad.f, &quad.f).mean();
    Ok(c + gamma * m / g - d - quad.f_hf.mean() + c * params.sigma(f2_mean) - gamma * gamma * c * c / (2.0 * g))
}

/// Boundary trace of `ψ_y` written in `f`:
/// `γH(ff′) − γfH(f′) + γf + m/d − γQ²/(8dg²) + γ[f²]/(2d)`.
pub fn psi_y_trace(params: &PhysicalParams, f: &SurfaceProfile) -> Result<SurfaceProfile> {
    let PhysicalParams { g, d, gamma, m, q } = *params;
    let quad = QuadraticTerms::new(f, d)?;
    let f2_mean = mul(&quad.f, &quad.f).mean();
    let shift = m / d - gamma * q * q / (8.0 * d * g * g) + gamma * f2_mean / (2.0 * d);
    Ok(quad.h_ff.sub(&quad.f_hf).add(&quad.f).scaled(gamma).add_constant(shift))
}

/// Elevation-side fields shared by the dynamic and Babenko residuals.
pub(crate) struct EtaFields {
    pub eta: SurfaceProfile,
    pub deta: SurfaceProfile,
    pub h_deta: SurfaceProfile,
    pub h_eta_deta: SurfaceProfile,
    pub eta2_mean: f64,
}

impl EtaFields {
    pub fn new(eta: &SurfaceProfile, d: f64, pad: usize) -> Result<Self> {
        let eta = eta.padded(pad);
        let deta = eta.derivative();
        let h_deta = hilbert(&deta, d)?;
        let h_eta_deta = hilbert(&mul(&eta, &deta), d)?;
        let eta2_mean = mul(&eta, &eta).mean();
        Ok(Self {
            eta,
            deta,
            h_deta,
            h_eta_deta,
            eta2_mean,
        })
    }

    /// `m/d + γ[η²]/(2d) + γH(ηη′) − γη(1 + H(η′))`, the surface trace of `ψ_y`.
    pub fn psi_y(&self, params: &PhysicalParams) -> SurfaceProfile {
        let PhysicalParams { d, gamma, m, .. } = *params;
        let c = m / d + gamma * self.eta2_mean / (2.0 * d);
        let vals: Vec<f64> = (0..self.eta.grid().n_points())
            .map(|j| c + gamma * self.h_eta_deta.at(j) - gamma * self.eta.at(j) * (1.0 + self.h_deta.at(j)))
            .collect();
        SurfaceProfile::analyze(&vals, self.eta.grid()).expect("grid length")
    }

    /// `(Q − 2gη)((η′)² + (1 + H(η′))²)`.
    pub fn bernoulli_side(&self, params: &PhysicalParams) -> Vec<f64> {
        let PhysicalParams { g, q, .. } = *params;
        (0..self.eta.grid().n_points())
            .map(|j| {
                let e = self.deta.at(j);
                let h = 1.0 + self.h_deta.at(j);
                (q - 2.0 * g * self.eta.at(j)) * (e * e + h * h)
            })
            .collect()
    }
}

/// Pointwise LHS − RHS of the dynamic boundary condition
/// `(ψ_y)² = (Q − 2gη)((η′)² + (1 + H(η′))²)`.
pub fn dynamic_residual(params: &PhysicalParams, eta: &SurfaceProfile) -> Result<SurfaceProfile> {
    let fields = EtaFields::new(eta, params.d, DEALIAS)?;
    let psi = fields.psi_y(params);
    let rhs = fields.bernoulli_side(params);
    let vals: Vec<f64> = psi.values().iter().zip(&rhs).map(|(p, r)| p * p - r).collect();
    SurfaceProfile::analyze(&vals, fields.eta.grid())
}

pub(crate) fn babenko_from_fields(params: &PhysicalParams, fields: &EtaFields) -> Result<SurfaceProfile> {
    let PhysicalParams { g, d, gamma, m, q } = *params;
    let g2 = gamma * gamma;
    let eta = &fields.eta;
    let p = eta.map(|e| q - 2.0 * g * e - g2 * e * e);
    let lhs1 = hilbert(&mul(&p, &fields.deta), d)?;
    let eta_h_deta_mean = mul(eta, &fields.h_deta).mean();
    let lin = -2.0 * m * gamma / d - g2 * fields.eta2_mean / d + 2.0 * g;
    let cst = 2.0 * gamma * m - 2.0 * g * d - 2.0 * g * eta_h_deta_mean;
    let vals: Vec<f64> = (0..eta.grid().n_points())
        .map(|j| {
            let e = eta.at(j);
            let lhs = lhs1.at(j) + p.at(j) * fields.h_deta.at(j) + 2.0 * e * g2 * fields.h_eta_deta.at(j);
            let rhs = e * lin + g2 * e * e + cst;
            lhs - rhs
        })
        .collect();
    SurfaceProfile::analyze(&vals, eta.grid())
}

pub(crate) fn averages_from_fields(params: &PhysicalParams, fields: &EtaFields) -> f64 {
    let psi = fields.psi_y(params);
    let rhs = fields.bernoulli_side(params);
    let n = rhs.len() as f64;
    let lhs_mean = psi.values().iter().map(|p| p * p).sum::<f64>() / n;
    let rhs_mean = rhs.iter().sum::<f64>() / n;
    lhs_mean - rhs_mean
}

/// Tolerance on `|[η] − d|` for the residuals that assume the mean constraint.
pub const MEAN_TOL: f64 = 1e-10;

fn check_mean(params: &PhysicalParams, eta: &SurfaceProfile) -> Result<()> {
    let off = (eta.mean() - params.d).abs();
    if off > MEAN_TOL * params.d.max(1.0) {
        return Err(WaveError::Input(format!(
            "mean of η is {} but must equal the conformal depth {}",
            eta.mean(),
            params.d
        )));
    }
    Ok(())
}

/// Pointwise residual of the Babenko-type equation (LHS − RHS).
pub fn babenko_residual(params: &PhysicalParams, eta: &SurfaceProfile) -> Result<SurfaceProfile> {
    check_mean(params, eta)?;
    let fields = EtaFields::new(eta, params.d, DEALIAS)?;
    babenko_from_fields(params, &fields)
}

/// Difference of the two period averages in the scalar closing condition.
pub fn averages_residual(params: &PhysicalParams, eta: &SurfaceProfile) -> Result<f64> {
    check_mean(params, eta)?;
    let fields = EtaFields::new(eta, params.d, DEALIAS)?;
    Ok(averages_from_fields(params, &fields))
}

/// Pointwise residual of the `f` equation
/// `f + σf − (γ²/2g)f² − fHf′ − H(ff′) + (γ²/2g)Kf − b`, with `b` from
/// [`consistent_b`]. Equals the Babenko residual divided by `2g`.
pub fn f_equation_residual(params: &PhysicalParams, f: &SurfaceProfile) -> Result<SurfaceProfile> {
    let PhysicalParams { g, d, gamma, .. } = *params;
    let quad = QuadraticTerms::new(f, d)?;
    let k = k_spectral(f, d)?;
    let f2_mean = mul(&quad.f, &quad.f).mean();
    let sigma = params.sigma(f2_mean);
    let b = consistent_b(params, f)?;
    let c2 = gamma * gamma / (2.0 * g);
    let vals: Vec<f64> = (0..quad.f.grid().n_points())
        .map(|j| {
            let fv = quad.f.at(j);
            fv + sigma * fv - c2 * fv * fv - quad.f_hf.at(j) - quad.h_ff.at(j) + c2 * k.at(j) - b
        })
        .collect();
    SurfaceProfile::analyze(&vals, quad.f.grid())
}

/// Both sides of the crest-to-trough identity
/// `(1+σ) f|₀^π − (γ²/2g) f²|₀^π = {fHf′ + H(ff′)}|₀^π − (γ²/2g) Kf|₀^π`.
pub fn crest_trough_sides(params: &PhysicalParams, f: &SurfaceProfile) -> Result<(f64, f64)> {
    let PhysicalParams { g, d, gamma, .. } = *params;
    let quad = QuadraticTerms::new(f, d)?;
    let k = k_spectral(f, d)?;
    let f2_mean = mul(&quad.f, &quad.f).mean();
    let a = amplitude_of_f(&quad.f);
    let c2 = gamma * gamma / (2.0 * g);
    let lhs = (1.0 + params.sigma(f2_mean)) * a - c2 * a * (quad.f.trough() + quad.f.crest());
    let rhs = quad.crest_trough_sum() - c2 * (k.trough() - k.crest());
    Ok((lhs, rhs))
}

/// Pointwise and scalar residual magnitudes of one surface profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub dynamic_res: f64,
    pub babenko_res: f64,
    pub averages_res: f64,
    pub f_eq_res: f64,
    pub no_stagnation_margin: f64,
    pub nodal_ok: bool,
}

/// `η₀′ < 0` on `(0, π)`, sampled on a grid refined by [`DEALIAS`].
pub fn nodal_ok(eta: &SurfaceProfile) -> bool {
    let de = eta.derivative().padded(DEALIAS);
    let n = de.grid().n_points();
    (1..n / 2).all(|j| de.at(j) < 0.0)
}

/// Evaluate every residual of `eta` under `params`.
pub fn residual_report(params: &PhysicalParams, eta: &SurfaceProfile) -> Result<ResidualReport> {
    check_mean(params, eta)?;
    let fields = EtaFields::new(eta, params.d, DEALIAS)?;
    let bab = babenko_from_fields(params, &fields)?;
    let avg = averages_from_fields(params, &fields);
    let psi = fields.psi_y(params);
    let rhs = fields.bernoulli_side(params);
    let dynamic_res = psi
        .values()
        .iter()
        .zip(&rhs)
        .fold(0.0f64, |m, (p, r)| m.max((p * p - r).abs()));
    let f = eta_to_f(eta, params);
    let f_eq = f_equation_residual(params, &f)?;
    Ok(ResidualReport {
        dynamic_res,
        babenko_res: bab.sup_norm(),
        averages_res: avg.abs(),
        f_eq_res: f_eq.sup_norm(),
        no_stagnation_margin: rhs.iter().copied().fold(f64::INFINITY, f64::min),
        nodal_ok: nodal_ok(eta),
    })
}
