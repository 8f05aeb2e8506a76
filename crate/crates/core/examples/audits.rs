//! Run the kernel, lemma and identity audits and print each check.
//!
//!     cargo run --example audits

use wavebound::formulation::PhysicalParams;
use wavebound::solver::{continue_branch, ContinuationConfig};
use wavebound::spectral::{Grid, SurfaceProfile};
use wavebound::verify::{audit_crest_trough, audit_cubic_upper, audit_kernel, audit_quadratic_lower, AuditReport};

fn show(r: &AuditReport) {
    println!("{} -> {}", r.subject, if r.overall { "pass" } else { "FAIL" });
    for c in &r.checks {
        println!(
            "  {:<22} {:>12.5e} {} {:<12.5e} margin {:+.3e} [{}]",
            c.name,
            c.lhs,
            c.relation.symbol(),
            c.rhs,
            c.margin,
            c.status.as_str()
        );
    }
}

fn main() -> wavebound::Result<()> {
    show(&audit_kernel(1.0, 500)?);

    // a hand-made monotone profile: f = 1.5 − 0.4 cos x + 0.05 cos 2x
    let f = SurfaceProfile::from_cosines(Grid::new(64)?, vec![1.5, -0.4, 0.05]);
    let params = PhysicalParams::new(9.81, 1.0, -1.0, -3.0, 40.0)?;
    show(&audit_quadratic_lower(&f, 1.0)?);
    show(&audit_cubic_upper(&f, &params)?);

    let cfg = ContinuationConfig {
        max_points: 4,
        ..Default::default()
    };
    let branch = continue_branch(9.81, 1.0, 0.01, &cfg)?;
    let last = branch.points.last().expect("branch has points");
    show(&audit_crest_trough(&last.params, last)?);
    Ok(())
}
