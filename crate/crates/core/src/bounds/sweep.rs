use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{evaluate, BoundReport, Route};
use crate::error::Result;
use crate::formulation::PhysicalParams;
use crate::io::fmt17;

/// One parameter tuple of a sweep. `f2_avg = 0` is the a-priori worst case.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepInput {
    pub params: PhysicalParams,
    pub slope_n: f64,
    pub convexity_m: f64,
    pub f2_avg: f64,
    pub eps: f64,
}

/// Flattened margins and bounds of every route. Entries that do not apply
/// to the sign of `γ` are NaN.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub input: SweepInput,
    pub values: Vec<f64>,
}

const COLUMNS: &[&str] = &[
    "favorable_bound",
    "quad_margin_D_lt_E",
    "quad_margin_disc",
    "quad_bound",
    "quartic_margin",
    "quartic_bound",
    "quartic_envelope",
    "N_margin_1",
    "N_margin_2",
    "N_margin_3",
    "N_margin_4",
    "N_bound",
    "M_margin_1",
    "M_margin_2",
    "M_margin_3",
    "M_margin_4",
    "M_bound",
];

pub const SWEEP_HEADER: &str = "g,d,gamma,m,Q,N,M,f2,eps,favorable_bound,quad_margin_D_lt_E,quad_margin_disc,quad_bound,quartic_margin,quartic_bound,quartic_envelope,N_margin_1,N_margin_2,N_margin_3,N_margin_4,N_bound,M_margin_1,M_margin_2,M_margin_3,M_margin_4,M_bound";

fn margins(r: &BoundReport) -> impl Iterator<Item = f64> + '_ {
    r.conditions.iter().map(|c| c.margin)
}

pub fn sweep_row(input: &SweepInput) -> Result<SweepRow> {
    let reports = evaluate(&input.params, input.f2_avg, input.slope_n, input.convexity_m, input.eps)?;
    let mut values = vec![f64::NAN; COLUMNS.len()];
    let bound = |r: &BoundReport| r.bound_value.unwrap_or(f64::NAN);
    for r in &reports {
        match r.route {
            Route::Favorable => values[0] = bound(r),
            Route::AdverseQuadratic => {
                for (i, m) in margins(r).enumerate() {
                    values[1 + i] = m;
                }
                values[3] = bound(r);
            }
            Route::AdverseQuartic => {
                values[4] = r.conditions[0].margin;
                values[5] = bound(r);
                values[6] = r.details["envelope"];
            }
            Route::UniversalCorollary => {
                let base = if r.details["convexity_route"] == 0.0 { 7 } else { 12 };
                for (i, m) in margins(r).enumerate() {
                    values[base + i] = m;
                }
                values[base + 4] = bound(r);
            }
        }
    }
    Ok(SweepRow { input: *input, values })
}

/// Header, config echo in comment lines, then one row per input in order.
pub fn write_sweep_csv<W: Write>(mut w: W, config: &serde_json::Value, rows: &[SweepRow]) -> Result<()> {
    crate::solver::io::write_comment_block(&mut w, config)?;
    writeln!(w, "{SWEEP_HEADER}")?;
    for r in rows {
        let p = &r.input.params;
        let lead = [
            p.g,
            p.d,
            p.gamma,
            p.m,
            p.q,
            r.input.slope_n,
            r.input.convexity_m,
            r.input.f2_avg,
            r.input.eps,
        ];
        let cells: Vec<String> = lead.iter().chain(&r.values).map(|&v| fmt17(v)).collect();
        writeln!(w, "{}", cells.join(","))?;
    }
    Ok(())
}
