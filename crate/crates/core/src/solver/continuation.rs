use nalgebra::{DMatrix, DVector};

use super::laminar::{find_bifurcation, Bifurcation};
use super::newton::{newton_core, Constraint, FreeParams, LinearRow};
use super::system::Layout;
use super::{detect_termination, BranchPoint, ContinuationConfig, StopKind, StoppingReason};
use crate::error::{Result, WaveError};
use crate::spectral::Grid;

#[derive(Debug, Clone)]
pub struct Branch {
    pub bifurcation: Bifurcation,
    pub points: Vec<BranchPoint>,
    pub stop: StoppingReason,
}

impl Branch {
    pub fn max_amplitude(&self) -> f64 {
        self.points.iter().map(|p| p.amplitude).fold(0.0, f64::max)
    }
}

/// Solve `[J; t_prevᵀ] t = [0; 1]` and normalize.
fn tangent(jac: &DMatrix<f64>, prev: &DVector<f64>) -> Option<DVector<f64>> {
    let n = prev.len();
    let mut a = DMatrix::zeros(n, n);
    a.view_mut((0, 0), (n - 1, n)).copy_from(jac);
    a.row_mut(n - 1).copy_from(&prev.transpose());
    let mut b = DVector::zeros(n);
    b[n - 1] = 1.0;
    let t = a.lu().solve(&b)?;
    let norm = t.norm();
    (norm.is_finite() && norm > 0.0).then(|| t / norm)
}

/// Small-amplitude point on the branch: `cos x` coefficient fixed at
/// `config.start_coefficient`, `Q` and `m` free.
pub fn first_point(
    g: f64,
    d: f64,
    gamma: f64,
    bif: &Bifurcation,
    config: &ContinuationConfig,
) -> Result<(Layout, DVector<f64>, DMatrix<f64>)> {
    let grid = Grid::new(config.n_points)?;
    let layout = Layout::new(grid, g, d, gamma);
    let params = bif.params(g, d, gamma)?;
    let mut x0 = layout.pack(&params, &super::laminar_profile(&params, grid));
    x0[0] = config.start_coefficient;
    let free = FreeParams::Both(Constraint::Coefficient {
        mode: 1,
        value: config.start_coefficient,
    });
    let row = LinearRow::new(&layout, &free, &x0)?;
    let out = newton_core(&layout, x0, &row, config.newton_tol, config.newton_max_iters)?;
    let jac = match out.jacobian {
        Some(j) => j,
        None => layout.jacobian(&out.x, &layout.galerkin(&out.x)?)?,
    };
    Ok((layout, out.x, jac))
}

/// Full branch: bifurcation detection, first point, continuation.
pub fn continue_branch(g: f64, d: f64, gamma: f64, config: &ContinuationConfig) -> Result<Branch> {
    config.validate()?;
    let bif = find_bifurcation(g, d, gamma)?;
    let (layout, x, jac) = first_point(g, d, gamma, &bif, config)?;
    let (points, stop) = continue_from(&layout, x, &jac, config)?;
    Ok(Branch {
        bifurcation: bif,
        points,
        stop,
    })
}

/// Pseudo-arclength continuation from a converged `x` with Jacobian `jac`.
/// The initial tangent is oriented so that the `cos x` coefficient grows.
pub fn continue_from(
    layout: &Layout,
    x: DVector<f64>,
    jac: &DMatrix<f64>,
    config: &ContinuationConfig,
) -> Result<(Vec<BranchPoint>, StoppingReason)> {
    let mut e1 = DVector::zeros(layout.dim());
    e1[0] = 1.0;
    let mut t = tangent(jac, &e1).ok_or_else(|| WaveError::Degeneracy("singular tangent system at start".into()))?;

    let first = BranchPoint::from_unknowns(layout, &x, 0.0)?;
    first.check_admissible()?;
    let mut points = vec![first];
    let mut x = x;
    let mut s = 0.0;
    let mut h = config.step;

    loop {
        if points.len() >= config.max_points {
            return Ok((
                points,
                StoppingReason {
                    kind: StopKind::MaxPoints,
                    evidence: config.max_points as f64,
                },
            ));
        }
        let free = FreeParams::Both(Constraint::Arclength {
            tangent: t.as_slice().to_vec(),
            anchor: x.as_slice().to_vec(),
            step: h,
        });
        let row = LinearRow::new(layout, &free, &x)?;
        let pred = &x + &t * h;
        let attempt = newton_core(layout, pred, &row, config.newton_tol, config.newton_max_iters).and_then(|out| {
            let pt = BranchPoint::from_unknowns(layout, &out.x, s + h)?;
            pt.check_admissible()?;
            Ok((out, pt))
        });
        match attempt {
            Ok((out, pt)) => {
                let jac = match out.jacobian {
                    Some(j) => j,
                    None => layout.jacobian(&out.x, &layout.galerkin(&out.x)?)?,
                };
                let new_t = tangent(&jac, &t).unwrap_or_else(|| t.clone());
                s += h;
                x = out.x;
                t = new_t;
                let stop = detect_termination(&pt, &points, config)?;
                points.push(pt);
                if let Some(stop) = stop {
                    return Ok((points, stop));
                }
                if out.iterations <= 3 {
                    h = (h * config.step_growth).min(config.step_max);
                }
            }
            Err(WaveError::Divergence { .. }) | Err(WaveError::Degeneracy(_)) | Err(WaveError::Parameter(_)) => {
                h *= 0.5;
                if h < config.step_min {
                    return Ok((
                        points,
                        StoppingReason {
                            kind: StopKind::StepCollapse,
                            evidence: h,
                        },
                    ));
                }
            }
            Err(e) => return Err(e),
        }
    }
}
