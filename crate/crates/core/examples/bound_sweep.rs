//! Sweep the vorticity across zero and write every route's margins as CSV.
//!
//!     cargo run --example bound_sweep > sweep.csv

use rayon::prelude::*;
use wavebound::bounds::{sweep_row, write_sweep_csv, SweepInput};
use wavebound::solver::laminar_state;

fn main() -> wavebound::Result<()> {
    let count = 25;
    let rows = (0..count)
        .into_par_iter()
        .map(|i| {
            let gamma = -0.5 + 0.6 * i as f64 / (count - 1) as f64;
            sweep_row(&SweepInput {
                params: laminar_state(9.81, 1.0, gamma, -3.0)?,
                slope_n: 0.1,
                convexity_m: 0.1,
                f2_avg: 0.0,
                eps: 0.1,
            })
        })
        .collect::<wavebound::Result<Vec<_>>>()?;
    let echo = serde_json::json!({ "physics.depth": 1.0, "physics.flux": -3.0 });
    write_sweep_csv(std::io::stdout().lock(), &echo, &rows)
}
