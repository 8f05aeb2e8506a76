use nalgebra::{DMatrix, DVector};

use super::system::Layout;
use super::{BranchPoint, ContinuationConfig};
use crate::error::{Result, WaveError};

/// Extra scalar equation closing the system when both `Q` and `m` are free.
#[derive(Debug, Clone, PartialEq)]
pub enum Constraint {
    /// `t · (x − anchor) = step` in the scaled unknowns.
    Arclength {
        tangent: Vec<f64>,
        anchor: Vec<f64>,
        step: f64,
    },
    /// Crest-to-trough amplitude `η(0) − η(π)`.
    Amplitude(f64),
    /// Cosine coefficient of `η` for mode `mode >= 1`.
    Coefficient { mode: usize, value: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum FreeParams {
    /// `m` held at its initial value.
    Q,
    /// `Q` held at its initial value.
    M,
    Both(Constraint),
}

/// One linear equation `row · x = rhs`.
pub(crate) struct LinearRow {
    pub row: DVector<f64>,
    pub rhs: f64,
}

impl LinearRow {
    pub fn new(layout: &Layout, free: &FreeParams, x0: &DVector<f64>) -> Result<Self> {
        let n = layout.dim();
        let unit = |i: usize| {
            let mut r = DVector::zeros(n);
            r[i] = 1.0;
            r
        };
        Ok(match free {
            FreeParams::Q => Self {
                row: unit(layout.m_index()),
                rhs: x0[layout.m_index()],
            },
            FreeParams::M => Self {
                row: unit(layout.q_index()),
                rhs: x0[layout.q_index()],
            },
            FreeParams::Both(Constraint::Amplitude(a)) => {
                let mut row = DVector::zeros(n);
                for i in (0..layout.n_free()).step_by(2) {
                    row[i] = 2.0;
                }
                Self { row, rhs: *a }
            }
            FreeParams::Both(Constraint::Coefficient { mode, value }) => {
                if *mode == 0 || *mode > layout.n_free() {
                    return Err(WaveError::Input(format!(
                        "coefficient constraint needs a mode in 1..={}, got {mode}",
                        layout.n_free()
                    )));
                }
                Self {
                    row: unit(mode - 1),
                    rhs: *value,
                }
            }
            FreeParams::Both(Constraint::Arclength { tangent, anchor, step }) => {
                if tangent.len() != n || anchor.len() != n {
                    return Err(WaveError::Input(format!(
                        "arclength constraint needs vectors of length {n}"
                    )));
                }
                let row = DVector::from_column_slice(tangent);
                let rhs = row.dot(&DVector::from_column_slice(anchor)) + step;
                Self { row, rhs }
            }
        })
    }
}

pub(crate) struct NewtonOutcome {
    pub x: DVector<f64>,
    pub iterations: usize,
    /// Galerkin Jacobian from the last iteration, if one was assembled.
    pub jacobian: Option<DMatrix<f64>>,
}

/// Newton iteration on the Galerkin system bordered by one linear row.
///
/// Convergence is declared on the full dealiased residual, so a profile that
/// needs more modes than the grid holds fails instead of converging.
pub(crate) fn newton_core(
    layout: &Layout,
    x0: DVector<f64>,
    constraint: &LinearRow,
    tol: f64,
    max_iters: usize,
) -> Result<NewtonOutcome> {
    let n = layout.dim();
    let mut x = x0;
    let mut jacobian = None;
    let mut last = f64::INFINITY;
    for it in 0..=max_iters {
        let full = layout.full_residual(&x)?;
        if !full.max().is_finite() {
            return Err(WaveError::Divergence {
                iterations: it,
                residual: full.max(),
            });
        }
        let gap = (constraint.rhs - constraint.row.dot(&x)).abs();
        if full.max() < tol && gap <= 1e-12 * (1.0 + constraint.rhs.abs()) {
            return Ok(NewtonOutcome {
                x,
                iterations: it,
                jacobian,
            });
        }
        let f = layout.galerkin(&x)?;
        // a solved projection with a large full residual means the grid
        // cannot resolve the profile
        let unresolved = it >= 1 && full.max() >= tol && f.amax() < 1e-3 * tol;
        if it == max_iters || unresolved || (it >= 3 && full.max() > 0.5 * last && full.max() >= tol) {
            return Err(WaveError::Divergence {
                iterations: it,
                residual: full.max(),
            });
        }
        last = full.max();

        let jac = layout.jacobian(&x, &f)?;
        let mut a = DMatrix::zeros(n, n);
        a.view_mut((0, 0), (n - 1, n)).copy_from(&jac);
        a.row_mut(n - 1).copy_from(&constraint.row.transpose());
        let mut b = DVector::zeros(n);
        b.rows_mut(0, n - 1).copy_from(&(-&f));
        b[n - 1] = constraint.rhs - constraint.row.dot(&x);
        let dx = a.lu().solve(&b).ok_or(WaveError::Divergence {
            iterations: it,
            residual: full.max(),
        })?;
        x += dx;
        jacobian = Some(jac);
    }
    unreachable!("loop returns on its last iteration")
}

/// Correct `initial` onto the solution set with the given free parameters.
pub fn newton_solve(initial: &BranchPoint, free: &FreeParams, config: &ContinuationConfig) -> Result<BranchPoint> {
    let layout = Layout::new(
        initial.eta.grid(),
        initial.params.g,
        initial.params.d,
        initial.params.gamma,
    );
    let x0 = layout.pack(&initial.params, &initial.eta);
    let row = LinearRow::new(&layout, free, &x0)?;
    let out = newton_core(&layout, x0, &row, config.newton_tol, config.newton_max_iters)?;
    let point = BranchPoint::from_unknowns(&layout, &out.x, initial.arclength_s)?;
    point.check_admissible()?;
    Ok(point)
}
