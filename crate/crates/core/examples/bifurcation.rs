//! Laminar flows and the point where the first periodic branch leaves them.
//!
//!     cargo run --example bifurcation

use wavebound::formulation::dynamic_residual;
use wavebound::solver::{find_bifurcation, laminar_profile, laminar_state};
use wavebound::spectral::Grid;

fn main() -> wavebound::Result<()> {
    let (g, d) = (9.81, 1.0);

    let flow = laminar_state(g, d, -1.0, -2.0)?;
    let eta = laminar_profile(&flow, Grid::new(32)?);
    println!(
        "laminar m = -2, gamma = -1: Q = {:.6}, residual {:.1e}",
        flow.q,
        dynamic_residual(&flow, &eta)?.sup_norm()
    );

    for gamma in [-5.0, -1.0, 0.0, 0.5, 2.0] {
        let b = find_bifurcation(g, d, gamma)?;
        println!("gamma = {gamma:>5}: m* = {:.9}, Q* = {:.9} (mode {})", b.m, b.q, b.mode);
    }
    Ok(())
}
