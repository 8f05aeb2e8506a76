//! Check computed waves against the bounds evaluated with their own
//! measured slope, convexity and mean of f².
//!
//!     cargo run --example bounds_aposteriori

use wavebound::bounds::a_posteriori;
use wavebound::solver::{continue_branch, ContinuationConfig};

fn main() -> wavebound::Result<()> {
    for gamma in [-2.0, 0.01] {
        let branch = continue_branch(9.81, 1.0, gamma, &ContinuationConfig::default())?;
        println!("gamma = {gamma}, {} points", branch.points.len());
        for p in &branch.points {
            let reports = a_posteriori(p, 0.1)?;
            let line: Vec<String> = reports
                .iter()
                .filter(|r| r.applicable)
                .filter_map(|r| Some(format!("{} {:.4}", r.route.as_str(), r.bound_value?)))
                .collect();
            let held = reports.iter().all(|r| r.holds_for(p.amplitude) != Some(false));
            println!(
                "  A = {:.5} [{}] {}",
                p.amplitude,
                line.join(", "),
                if held { "ok" } else { "VIOLATED" }
            );
        }
    }
    Ok(())
}
