//! Audit a seeded batch of random admissible profiles and summarize the
//! smallest margin seen for each check.
//!
//!     cargo run --example synthetic_batch -- 500

use std::collections::BTreeMap;

use wavebound::formulation::PhysicalParams;
use wavebound::spectral::Grid;
use wavebound::verify::{synthetic_batch, Status, SyntheticConfig};

fn main() -> wavebound::Result<()> {
    let count = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(200);
    let cfg = SyntheticConfig {
        count,
        seed: 7,
        depths: vec![0.25, 1.0, 4.0],
        grid: Grid::new(64)?,
        params: PhysicalParams::new(9.81, 1.0, -1.0, -3.0, 40.0)?,
    };
    let reports = synthetic_batch(&cfg)?;

    let mut worst: BTreeMap<&str, (f64, usize)> = BTreeMap::new();
    for c in reports.iter().flat_map(|r| &r.checks) {
        if c.status == Status::Skipped {
            continue;
        }
        let e = worst.entry(c.name.as_str()).or_insert((f64::INFINITY, 0));
        e.0 = e.0.min(c.margin);
        e.1 += usize::from(!c.pass);
    }
    println!("{count} profiles, {} reports", reports.len());
    for (name, (margin, failed)) in worst {
        println!("  {name:<20} min margin {margin:+.3e}, {failed} failed");
    }
    Ok(())
}
