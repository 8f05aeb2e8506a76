//! Amplitude bounds from the flow constants alone, for favorable and
//! adverse vorticity.
//!
//!     cargo run --example bounds_apriori

use wavebound::bounds::{a_priori, universal_number};
use wavebound::solver::laminar_state;

fn main() -> wavebound::Result<()> {
    let (g, d, m) = (9.81, 1.0, -3.0);
    for gamma in [-10.0, -1.0, 0.005, 0.02, 0.5] {
        let params = laminar_state(g, d, gamma, m)?;
        println!("gamma = {gamma}");
        for r in a_priori(&params, 0.1, 0.1, 0.1)? {
            let label = match r.details.get("convexity_route") {
                Some(1.0) => format!("{} (M)", r.route.as_str()),
                Some(_) => format!("{} (N)", r.route.as_str()),
                None => r.route.as_str().to_string(),
            };
            match r.bound_value.filter(|_| r.applicable) {
                Some(b) => println!("  {label:<24} A < {b:.6}"),
                None => {
                    let failed: Vec<_> = r
                        .conditions
                        .iter()
                        .filter(|c| !c.satisfied)
                        .map(|c| c.name.as_str())
                        .collect();
                    println!("  {label:<24} not applicable: {}", failed.join(", "));
                }
            }
        }
    }
    let (at_d, floor) = universal_number(d)?;
    println!("12pi/beta(pi/2) = {at_d:.4} at d = {d}; depth-free {floor:.4}");
    Ok(())
}
