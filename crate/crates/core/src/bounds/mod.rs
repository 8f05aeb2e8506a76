//! Closed-form amplitude bounds and the smallness conditions under which
//! they apply.
//!
//! Every function takes the actual `β(π/2)` of the depth in question; the
//! universal floor `(π − 2)/π` only appears in [`universal_number`].

mod sweep;

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

pub use sweep::{sweep_row, write_sweep_csv, SweepInput, SweepRow, SWEEP_HEADER};

use crate::error::{Result, WaveError};
use crate::formulation::PhysicalParams;
use crate::solver::BranchPoint;
use crate::spectral::beta_half_pi;

/// Lower bound `(π − 2)/π` of `β(π/2)` over all depths.
pub const BETA_HALF_PI_FLOOR: f64 = (PI - 2.0) / PI;

/// Default `ε` of the quartic route.
pub const DEFAULT_EPS: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Favorable,
    AdverseQuadratic,
    AdverseQuartic,
    UniversalCorollary,
}

impl Route {
    pub fn as_str(self) -> &'static str {
        match self {
            Route::Favorable => "favorable",
            Route::AdverseQuadratic => "adverse_quadratic",
            Route::AdverseQuartic => "adverse_quartic",
            Route::UniversalCorollary => "universal_corollary",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SlopeRoute {
    SlopeN,
    ConvexityM,
}

/// A named inequality `lhs < rhs` with signed relative slack
/// `(rhs − lhs)/|rhs|`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub satisfied: bool,
    pub margin: f64,
}

impl Condition {
    fn less(name: &str, lhs: f64, rhs: f64) -> Self {
        let margin = if rhs != 0.0 { (rhs - lhs) / rhs.abs() } else { -lhs };
        Self {
            name: name.to_string(),
            satisfied: lhs < rhs,
            margin,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub route: Route,
    pub applicable: bool,
    pub bound_value: Option<f64>,
    pub conditions: Vec<Condition>,
    /// Auxiliary numbers of the route (coefficients, envelopes).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, f64>,
}

impl BoundReport {
    fn new(route: Route, conditions: Vec<Condition>, bound: f64) -> Self {
        let applicable = conditions.iter().all(|c| c.satisfied);
        Self {
            route,
            applicable,
            bound_value: applicable.then_some(bound),
            conditions,
            details: BTreeMap::new(),
        }
    }

    fn with(mut self, key: &str, value: f64) -> Self {
        self.details.insert(key.to_string(), value);
        self
    }

    /// `amplitude < bound`, or `None` when the route does not apply.
    pub fn holds_for(&self, amplitude: f64) -> Option<bool> {
        self.bound_value.map(|b| amplitude < b)
    }
}

/// `min{2d, √(12gd)/|γ|}` for favorable vorticity.
pub fn favorable_bound(g: f64, d: f64, gamma: f64) -> Result<f64> {
    if gamma > 0.0 {
        return Err(WaveError::WrongRoute(format!(
            "favorable bound needs gamma <= 0, got {gamma}"
        )));
    }
    if gamma == 0.0 {
        return Ok(2.0 * d);
    }
    Ok((2.0 * d).min((12.0 * g * d).sqrt() / gamma.abs()))
}

pub fn favorable_report(g: f64, d: f64, gamma: f64) -> BoundReport {
    let cond = Condition {
        name: "gamma_nonpositive".into(),
        satisfied: gamma <= 0.0,
        margin: -gamma,
    };
    let bound = favorable_bound(g, d, gamma.min(0.0)).unwrap_or(f64::NAN);
    BoundReport::new(Route::Favorable, vec![cond], bound)
}

fn kappa(d: f64) -> f64 {
    1.0 / d + 0.5
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdverseCoefficients {
    /// `D` on the slope route, `D_M` on the convexity route.
    #[serde(rename = "D")]
    pub d: f64,
    #[serde(rename = "E")]
    pub e: f64,
    #[serde(rename = "F")]
    pub f: f64,
    pub route: SlopeRoute,
}

fn check_adverse(params: &PhysicalParams, f2_avg: f64) -> Result<()> {
    if params.gamma <= 0.0 {
        return Err(WaveError::WrongRoute(format!(
            "adverse bounds need gamma > 0, got {}",
            params.gamma
        )));
    }
    if params.m >= 0.0 {
        return Err(WaveError::Parameter(format!(
            "adverse bounds need m < 0, got {}",
            params.m
        )));
    }
    let cap = params.head() * params.head();
    if !(0.0..cap).contains(&f2_avg) {
        return Err(WaveError::Parameter(format!(
            "[f²] = {f2_avg} must lie in [0, Q²/4g² = {cap})"
        )));
    }
    Ok(())
}

fn e_and_f(params: &PhysicalParams, f2_avg: f64) -> Result<(f64, f64)> {
    let PhysicalParams { g, d, gamma, m, q } = *params;
    let k = kappa(d);
    let b = beta_half_pi(d)?;
    let e = 3.0 / (2.0 * k) + 3.0 * g * b / (2.0 * PI * gamma * gamma * k);
    let f =
        3.0 * g / k * (1.0 / (gamma * gamma) - m / (gamma * g * d) + (q * q / (4.0 * g * g) - f2_avg) / (2.0 * d * g));
    Ok((e, f))
}

/// `D, E, F` of the slope route. In a-priori use pass `f2_avg = 0`, which
/// maximizes `F`.
pub fn adverse_def(params: &PhysicalParams, f2_avg: f64, slope_n: f64) -> Result<AdverseCoefficients> {
    check_adverse(params, f2_avg)?;
    if !(slope_n >= 0.0) {
        return Err(WaveError::Parameter(format!("slope N must be >= 0, got {slope_n}")));
    }
    let (e, f) = e_and_f(params, f2_avg)?;
    Ok(AdverseCoefficients {
        d: 4.0 * slope_n / (PI * kappa(params.d)),
        e,
        f,
        route: SlopeRoute::SlopeN,
    })
}

/// `D_M, E, F` of the convexity route.
pub fn adverse_def_convexity(params: &PhysicalParams, f2_avg: f64, convexity_m: f64) -> Result<AdverseCoefficients> {
    check_adverse(params, f2_avg)?;
    if !(convexity_m >= 0.0) {
        return Err(WaveError::Parameter(format!(
            "convexity M must be >= 0, got {convexity_m}"
        )));
    }
    let (e, f) = e_and_f(params, f2_avg)?;
    Ok(AdverseCoefficients {
        d: 4.0 * convexity_m.sqrt() / (PI * kappa(params.d)),
        e,
        f,
        route: SlopeRoute::ConvexityM,
    })
}

/// Smaller root of `A² + (D − E)A + F` when `E > D` and `4F < (E − D)²`.
pub fn adverse_quadratic_bound(c: &AdverseCoefficients) -> Result<BoundReport> {
    if c.route != SlopeRoute::SlopeN {
        return Err(WaveError::WrongRoute(
            "quadratic bound needs slope-route coefficients".into(),
        ));
    }
    let gap = c.e - c.d;
    let conditions = vec![
        Condition::less("D_lt_E", c.d, c.e),
        Condition::less("4F_lt_(E-D)^2", 4.0 * c.f, gap * gap),
    ];
    let disc = (gap * gap - 4.0 * c.f).max(0.0);
    // the smaller root as F/(larger root), stable when F ≪ (E−D)²
    let big = 0.5 * (gap + disc.sqrt());
    let bound = if big > 0.0 { c.f / big } else { f64::NAN };
    Ok(BoundReport::new(Route::AdverseQuadratic, conditions, bound)
        .with("D", c.d)
        .with("E", c.e)
        .with("F", c.f))
}

/// `12π/β(π/2)` at depth `d`, and the depth-free value with the floor.
pub fn universal_number(d: f64) -> Result<(f64, f64)> {
    Ok((12.0 * PI / beta_half_pi(d)?, 12.0 * PI / BETA_HALF_PI_FLOOR))
}

fn shared_smallness(params: &PhysicalParams) -> Vec<Condition> {
    let PhysicalParams { g, d, gamma, m, q } = *params;
    vec![
        Condition::less("gamma_lt_gd_over_abs_m", gamma, g * d / m.abs()),
        Condition::less("gamma2_lt_8dg3_over_Q2", gamma * gamma, 8.0 * d * g.powi(3) / (q * q)),
    ]
}

/// The four explicit conditions of the slope-route corollary.
pub fn smallness_n(params: &PhysicalParams, slope_n: f64) -> Result<Vec<Condition>> {
    let PhysicalParams { g, d, gamma, .. } = *params;
    let b = beta_half_pi(d)?;
    let mut c = shared_smallness(params);
    c.push(Condition::less(
        "N_gamma2_lt_beta_g_over_8",
        slope_n * gamma * gamma,
        b * g / 8.0,
    ));
    c.push(Condition::less(
        "gamma2_lt_g_beta2_over_77pi2_kappa",
        gamma * gamma,
        g * b * b / (77.0 * PI * PI * kappa(d)),
    ));
    Ok(c)
}

/// The four explicit conditions of the convexity-route corollary.
pub fn smallness_m(params: &PhysicalParams, convexity_m: f64) -> Result<Vec<Condition>> {
    let PhysicalParams { g, d, gamma, .. } = *params;
    let r = beta_half_pi(d)? / (12.0 * PI);
    let mut c = shared_smallness(params);
    c.push(Condition::less(
        "sqrtM_gamma2_lt_pi_g_over_4_r32",
        convexity_m.sqrt() * gamma * gamma,
        PI * g / 4.0 * r.powf(1.5),
    ));
    c.push(Condition::less(
        "gamma2_lt_2g_r2_over_kappa",
        gamma * gamma,
        2.0 * g / kappa(d) * r * r,
    ));
    Ok(c)
}

fn corollary_report(params: &PhysicalParams, conditions: Vec<Condition>, route: SlopeRoute) -> Result<BoundReport> {
    let (value, floor) = universal_number(params.d)?;
    let route_code = match route {
        SlopeRoute::SlopeN => 0.0,
        SlopeRoute::ConvexityM => 1.0,
    };
    Ok(BoundReport::new(Route::UniversalCorollary, conditions, value)
        .with("twelve_pi_over_beta", value)
        .with("twelve_pi_over_floor", floor)
        .with("convexity_route", route_code))
}

pub fn smallness_n_report(params: &PhysicalParams, slope_n: f64) -> Result<BoundReport> {
    corollary_report(params, smallness_n(params, slope_n)?, SlopeRoute::SlopeN)
}

pub fn smallness_m_report(params: &PhysicalParams, convexity_m: f64) -> Result<BoundReport> {
    corollary_report(params, smallness_m(params, convexity_m)?, SlopeRoute::ConvexityM)
}

/// `P(Y) = Y⁴ + D_M Y³ − E Y² + F`.
pub fn quartic_p(y: f64, c: &AdverseCoefficients) -> f64 {
    let y2 = y * y;
    y2 * y2 + c.d * y2 * y - c.e * y2 + c.f
}

/// Convexity-route bound `(1 + ε)F/E`, valid when `P(Y₁) < 0` at
/// `Y₁ = √((1 + ε)F/E)`. The simplified envelope
/// `2(1+ε)π/β(π/2)·(1 + |m|γ/(gd) + γ²Q²/(8dg³))` is reported alongside.
pub fn adverse_quartic_bound(params: &PhysicalParams, convexity_m: f64, eps: f64, f2_avg: f64) -> Result<BoundReport> {
    if !(eps > 0.0) {
        return Err(WaveError::Parameter(format!("epsilon must be positive, got {eps}")));
    }
    let c = adverse_def_convexity(params, f2_avg, convexity_m)?;
    let a1 = (1.0 + eps) * c.f / c.e;
    let p = quartic_p(a1.sqrt(), &c);
    let PhysicalParams { g, d, gamma, m, q } = *params;
    let envelope = 2.0 * (1.0 + eps) * PI / beta_half_pi(d)?
        * (1.0 + m.abs() * gamma / (g * d) + gamma * gamma * q * q / (8.0 * d * g.powi(3)));
    let cond = Condition {
        name: "P(Y1)_lt_0".into(),
        satisfied: p < 0.0,
        margin: -p / c.f,
    };
    Ok(BoundReport::new(Route::AdverseQuartic, vec![cond], a1)
        .with("D_M", c.d)
        .with("E", c.e)
        .with("F", c.f)
        .with("P_Y1", p)
        .with("envelope", envelope)
        .with("epsilon", eps))
}

/// Every route for the given measured or assumed `[f²]`, `N` and `M`.
pub fn evaluate(
    params: &PhysicalParams,
    f2_avg: f64,
    slope_n: f64,
    convexity_m: f64,
    eps: f64,
) -> Result<Vec<BoundReport>> {
    if params.gamma <= 0.0 {
        return Ok(vec![favorable_report(params.g, params.d, params.gamma)]);
    }
    let coeffs = adverse_def(params, f2_avg, slope_n)?;
    Ok(vec![
        adverse_quadratic_bound(&coeffs)?,
        adverse_quartic_bound(params, convexity_m, eps, f2_avg)?,
        smallness_n_report(params, slope_n)?,
        smallness_m_report(params, convexity_m)?,
    ])
}

/// All routes for a solved wave, using its measured `N`, `M` and `[f²]`.
pub fn a_posteriori(point: &BranchPoint, eps: f64) -> Result<Vec<BoundReport>> {
    evaluate(&point.params, point.f2_mean(), point.slope_n, point.convexity_m, eps)
}

/// All routes from parameters alone: worst case `[f²] = 0` and caller
/// supplied caps on `N` and `M`.
pub fn a_priori(params: &PhysicalParams, slope_n: f64, convexity_m: f64, eps: f64) -> Result<Vec<BoundReport>> {
    evaluate(params, 0.0, slope_n, convexity_m, eps)
}
