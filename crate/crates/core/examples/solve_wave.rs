//! Solve for the wave of a prescribed crest-to-trough height: walk the branch
//! close to the target, then pin the amplitude with Newton.
//!
//!     cargo run --example solve_wave

use wavebound::solver::{continue_branch, newton_solve, Constraint, ContinuationConfig, FreeParams};

fn main() -> wavebound::Result<()> {
    let target = 0.15;
    let cfg = ContinuationConfig::default();
    let branch = continue_branch(9.81, 1.0, -0.5, &cfg)?;
    let start = branch
        .points
        .iter()
        .rev()
        .find(|p| p.amplitude <= target)
        .expect("branch starts below the target");

    let wave = newton_solve(start, &FreeParams::Both(Constraint::Amplitude(target)), &cfg)?;
    println!("A = {:.12}", wave.amplitude);
    println!("Q = {:.12}, m = {:.12}", wave.params.q, wave.params.m);
    println!("N = {:.6}, M = {:.6}", wave.slope_n, wave.convexity_m);
    println!(
        "residual {:.2e}, stagnation margin {:.4}",
        wave.residual(),
        wave.min_stag_margin()
    );

    let cos = wave.eta.cos_coeffs();
    for (k, a) in cos.iter().enumerate().take(8) {
        println!("  cos {k}x: {a:+.3e}");
    }
    Ok(())
}
