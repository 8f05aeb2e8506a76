use std::f64::consts::PI;

use super::{AuditReport, Check, Relation, ROUNDING_TOL};
use crate::bounds::{adverse_def, BETA_HALF_PI_FLOOR};
use crate::error::{Result, WaveError};
use crate::formulation::{
    amplitude_of_f, crest_trough_sides, k_spectral, section_three_report, PhysicalParams, QuadraticTerms,
    SectionThreeReport, DEALIAS,
};
use crate::solver::BranchPoint;
use crate::spectral::{beta, beta_half_pi, beta_prime, SurfaceProfile};

/// Absolute tolerance of identity checks on solutions.
const IDENTITY_TOL: f64 = 1e-9;
/// Relative amplitude below which a profile counts as flat.
const FLAT: f64 = 1e-12;

fn is_flat(f: &SurfaceProfile) -> bool {
    amplitude_of_f(f) <= FLAT * f.sup_norm().max(1.0)
}

fn admissible(f: &SurfaceProfile) -> bool {
    f.is_even() && f.min_value() > 0.0 && f.strictly_increasing_on_half(DEALIAS)
}

/// `sup |f′|`, sampled on a grid refined by [`DEALIAS`].
pub fn measured_slope(f: &SurfaceProfile) -> f64 {
    f.derivative().padded(DEALIAS).sup_norm()
}

/// Positivity and decrease of `β` on `(0, π]`, the floor of `β(π/2)`, the
/// envelope of `−β′`, and oddness, on `samples` equispaced points.
pub fn audit_kernel(d: f64, samples: usize) -> Result<AuditReport> {
    if !(d > 0.0) || samples < 2 {
        return Err(WaveError::Input(format!(
            "kernel audit needs d > 0 and at least 2 samples, got d = {d}, {samples}"
        )));
    }
    let s: Vec<f64> = (1..=samples).map(|j| PI * j as f64 / samples as f64).collect();
    let b: Vec<f64> = s.iter().map(|&x| beta(x, d)).collect::<Result<_>>()?;

    // β(π) = 0 by oddness and periodicity, so positivity is on the open interval
    let min_beta = b[..samples - 1].iter().copied().fold(f64::INFINITY, f64::min);
    let max_step = b.windows(2).map(|w| w[1] - w[0]).fold(f64::NEG_INFINITY, f64::max);
    let half = beta_half_pi(d)?;

    let mut worst = (f64::NEG_INFINITY, 0.0, 0.0);
    for &x in &s {
        let lhs = -beta_prime(x, d)?;
        let rhs = 1.0 / d + 2.0 / (x * x) + 0.5;
        let slack = (lhs - rhs) / rhs;
        if slack > worst.0 {
            worst = (slack, lhs, rhs);
        }
    }

    let mut odd = 0.0f64;
    for (&x, &bx) in s.iter().zip(&b) {
        odd = odd.max((beta(-x, d)? + bx).abs() / (1.0 + bx.abs()));
    }

    Ok(AuditReport::new(
        format!("kernel-d{d}"),
        vec![
            Check::new("beta_positive", 0.0, min_beta, Relation::Lt, 0.0),
            Check::new("beta_decreasing", max_step, 0.0, Relation::Lt, 0.0),
            Check::new("beta_half_pi_floor", half, BETA_HALF_PI_FLOOR, Relation::Ge, 0.0),
            Check::new("beta_prime_envelope", worst.1, worst.2, Relation::Lt, 0.0),
            Check::new("beta_odd", odd, 0.0, Relation::Eq, 1e-12),
        ],
    ))
}

fn quadratic_check(f: &SurfaceProfile, d: f64) -> Result<Check> {
    let quad = QuadraticTerms::new(f, d)?;
    let a = amplitude_of_f(&quad.f);
    let rhs = beta_half_pi(d)? / (2.0 * PI) * a * a;
    Ok(Check::new(
        "quadratic_lower",
        quad.crest_trough_sum(),
        rhs,
        Relation::Ge,
        ROUNDING_TOL,
    ))
}

/// `{fHf′ + H(ff′)}|₀^π ≥ (β(π/2)/2π) A²`. Inadmissible input makes the
/// report inconclusive.
pub fn audit_quadratic_lower(f: &SurfaceProfile, d: f64) -> Result<AuditReport> {
    let mut c = quadratic_check(f, d)?;
    if !admissible(f) {
        c = c.inconclusive();
    }
    Ok(AuditReport::new("quadratic", vec![c]))
}

/// `Kf|₀^π` and its two upper bounds at slope `n`.
fn cubic_checks(f: &SurfaceProfile, d: f64, n: f64) -> Result<[Check; 2]> {
    let k = k_spectral(f, d)?;
    let lhs = k.trough() - k.crest();
    let a = amplitude_of_f(f);
    let kappa = 1.0 / d + 0.5;
    let lemma = 2.0 / 3.0 * kappa * a.powi(3) + 8.0 * n / (3.0 * PI) * a * a;
    let delta = if n > 0.0 {
        (a / n).clamp(f64::MIN_POSITIVE, PI)
    } else {
        PI
    };
    let inter = 2.0 / 3.0 * (kappa + 2.0 / (PI * delta)) * a.powi(3) + 4.0 / (3.0 * PI) * n * n * delta * a;
    let flat = is_flat(f);
    Ok([
        Check::new("cubic_upper", lhs, lemma, Relation::Lt, 0.0).degenerate_if(flat),
        Check::new("cubic_intermediate", lhs, inter, Relation::Lt, 0.0).degenerate_if(flat),
    ])
}

/// `Kf|₀^π < (2/3)(1/d + 1/2)A³ + (8N/3π)A²` with `N` measured from `f`,
/// plus the intermediate bound at `δ = A/N` clamped to `(0, π]`.
pub fn audit_cubic_upper(f: &SurfaceProfile, params: &PhysicalParams) -> Result<AuditReport> {
    let mut checks = cubic_checks(f, params.d, measured_slope(f))?.to_vec();
    if !admissible(f) && !is_flat(f) {
        checks = checks.into_iter().map(Check::inconclusive).collect();
    }
    Ok(AuditReport::new("cubic", checks))
}

/// Section-three checks on an arbitrary profile. `L ≤ A` is a statement
/// about solutions with favorable vorticity and runs only when `solution`
/// is set and `γ ≤ 0`.
pub fn audit_section_three_profile(params: &PhysicalParams, f: &SurfaceProfile, solution: bool) -> Result<AuditReport> {
    let r = section_three_report(params, f)?;
    let flat = is_flat(f);
    let a = r.amplitude;
    let mut checks = Vec::new();
    if solution && params.is_favorable() {
        checks.push(Check::new("L_le_A", r.l_val, a, Relation::Le, ROUNDING_TOL));
    } else {
        checks.push(Check::skipped("L_le_A", Relation::Le));
    }
    let lower = SectionThreeReport::lower_bound(params, a);
    checks.push(Check::new("R_gt_lower", r.r_val, lower, Relation::Gt, 0.0).degenerate_if(flat));
    let scale = 1.0 + f.sup_norm().powi(3);
    checks.push(Check::new(
        "vbb_identity",
        r.vbb_defect / scale,
        0.0,
        Relation::Eq,
        IDENTITY_TOL,
    ));
    checks.push(Check::new(
        "whs_identity",
        r.whs_defect / scale,
        0.0,
        Relation::Eq,
        IDENTITY_TOL,
    ));
    let names = ["hopf_GBpi", "hopf_GB0", "hopf_GSpi", "hopf_GS0"];
    for (name, v) in names.iter().zip(r.hopf) {
        checks.push(Check::new(name, v, 0.0, Relation::Gt, 0.0).degenerate_if(flat));
    }
    if !r.monotone && !flat {
        checks = checks
            .into_iter()
            .map(|c| {
                if c.name.starts_with("hopf") || c.name == "R_gt_lower" {
                    c.inconclusive()
                } else {
                    c
                }
            })
            .collect();
    }
    Ok(AuditReport::new("section_three", checks))
}

/// Section-three checks on a converged branch point.
pub fn audit_section_three(params: &PhysicalParams, point: &BranchPoint) -> Result<AuditReport> {
    audit_section_three_profile(params, &point.f(), true)
}

/// Both sides of the crest-to-trough identity; for adverse points also the
/// lemma chain and the quadratic inequality with measured `N` and `[f²]`.
pub fn audit_crest_trough(params: &PhysicalParams, point: &BranchPoint) -> Result<AuditReport> {
    let f = point.f();
    let (lhs, rhs) = crest_trough_sides(params, &f)?;
    let mut checks = vec![Check::new(
        "crest_trough_identity",
        lhs,
        rhs,
        Relation::Eq,
        IDENTITY_TOL,
    )];
    if params.gamma > 0.0 {
        let PhysicalParams { g, d, gamma, .. } = *params;
        let a = amplitude_of_f(&f);
        let n = point.slope_n;
        let f2 = point.f2_mean();
        let b = beta_half_pi(d)?;
        let kappa = 1.0 / d + 0.5;
        let g2 = gamma * gamma;
        checks.push(quadratic_check(&f, d)?.degenerate_if(is_flat(&f)));
        checks.extend(cubic_checks(&f, d, n)?);
        let chain =
            (g2 / (2.0 * g) + b / (2.0 * PI)) * a - g2 / (3.0 * g) * kappa * a * a - 4.0 * g2 / (3.0 * PI * g) * n * a;
        checks.push(Check::new(
            "lemma_chain",
            1.0 + params.sigma(f2),
            chain,
            Relation::Ge,
            ROUNDING_TOL,
        ));
        let c = adverse_def(params, f2, n)?;
        let quad = a * a + (c.d - c.e) * a + c.f;
        checks.push(Check::new(
            "quadratic_inequality",
            quad,
            0.0,
            Relation::Ge,
            ROUNDING_TOL,
        ));
    }
    Ok(AuditReport::new("crest_trough", checks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Grid;
    use crate::verify::Status;

    fn grid() -> Grid {
        Grid::new(64).unwrap()
    }

    #[test]
    fn kernel_audits_pass() {
        for &d in &[0.01, 1.0, 10.0] {
            let r = audit_kernel(d, 1000).unwrap();
            assert!(r.overall, "{r:#?}");
        }
        // away from s = 0 the 1/d term dominates both sides of the envelope
        let slack = |d: f64| {
            let s = PI / 2.0;
            let env = 1.0 / d + 2.0 / (s * s) + 0.5;
            (env + beta_prime(s, d).unwrap()) / env
        };
        assert!(slack(0.01) < slack(1.0) && slack(0.01) > 0.0);
    }

    #[test]
    fn quadratic_examples() {
        let f = SurfaceProfile::from_fn(grid(), |x| 2.0 + 0.3 * (1.0 - x.cos()));
        let r = audit_quadratic_lower(&f, 1.0).unwrap();
        assert!(r.overall && r.checks[0].margin > 0.0);
        let flat = audit_quadratic_lower(&SurfaceProfile::constant(grid(), 1.3), 1.0).unwrap();
        assert_eq!(flat.checks[0].status, Status::Inconclusive);
        assert!(flat.checks[0].lhs.abs() < 1e-14 && flat.checks[0].rhs == 0.0);
        let dip = SurfaceProfile::from_fn(grid(), |x| 2.0 + 0.3 * x.cos());
        assert_eq!(
            audit_quadratic_lower(&dip, 1.0).unwrap().checks[0].status,
            Status::Inconclusive
        );
    }

    #[test]
    fn cubic_examples() {
        let p = PhysicalParams::new(9.81, 1.0, 0.5, -3.0, 30.0).unwrap();
        let f = SurfaceProfile::from_fn(grid(), |x| 1.0 + 0.2 * (1.0 - x.cos()));
        assert!(audit_cubic_upper(&f, &p).unwrap().overall);
        let c = audit_cubic_upper(&SurfaceProfile::constant(grid(), 1.0), &p).unwrap();
        assert!(c.overall);
        assert!(c
            .checks
            .iter()
            .all(|k| k.status == Status::DegeneratePass || k.status == Status::Pass));
    }

    #[test]
    fn section_three_synthetic() {
        let p = PhysicalParams::new(9.81, 1.0, -1.0, -3.0, 30.0).unwrap();
        let f = SurfaceProfile::from_fn(grid(), |x| 1.0 + 0.3 * (1.0 - x.cos()) + 0.05 * (1.0 - (2.0 * x).cos()));
        let r = audit_section_three_profile(&p, &f, false).unwrap();
        assert!(r.overall, "{r:#?}");
        assert_eq!(r.check("L_le_A").unwrap().status, Status::Skipped);
        assert!(r.check("R_gt_lower").unwrap().margin > 0.0);
    }
}
