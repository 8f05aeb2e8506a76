//! Follow a branch from the bifurcation to the end of what the grid can
//! resolve, then write it in both branch formats.
//!
//!     cargo run --example branch_continuation -- -1.0

use wavebound::solver::io::{write_jsonl, write_summary_csv};
use wavebound::solver::{continue_branch, ContinuationConfig};

fn main() -> wavebound::Result<()> {
    let gamma: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(-1.0);
    let cfg = ContinuationConfig::default();
    let branch = continue_branch(9.81, 1.0, gamma, &cfg)?;

    for p in &branch.points {
        println!(
            "s = {:.5}  A = {:.6}  N = {:.4}  m = {:.6}  residual {:.1e}",
            p.arclength_s,
            p.amplitude,
            p.slope_n,
            p.params.m,
            p.residual()
        );
    }
    println!("stopped: {} ({:e})", branch.stop.kind.as_str(), branch.stop.evidence);

    let dir = std::env::temp_dir().join("wavebound-example");
    std::fs::create_dir_all(&dir)?;
    let echo = serde_json::json!({ "physics.gamma": gamma });
    write_jsonl(
        std::fs::File::create(dir.join("branch.jsonl"))?,
        &echo,
        Some(&branch.bifurcation),
        &branch.points,
        Some(&branch.stop),
    )?;
    write_summary_csv(
        std::fs::File::create(dir.join("branch_summary.csv"))?,
        &echo,
        &branch.points,
    )?;
    println!("wrote {}", dir.display());
    Ok(())
}
