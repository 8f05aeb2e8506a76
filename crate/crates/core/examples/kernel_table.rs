//! Tabulate the strip kernel β and β′ at a few depths and print the
//! quantities the bounds depend on.
//!
//!     cargo run --example kernel_table

use std::f64::consts::PI;

use wavebound::spectral::{beta_half_pi, KernelTable};

fn main() -> wavebound::Result<()> {
    println!("{:>8} {:>14} {:>14} {:>8}", "d", "beta(pi/2)", "max |beta|", "terms");
    for d in [0.1, 0.5, 1.0, 4.0, 20.0] {
        let table = KernelTable::build(d, 0.05, PI - 0.05, 64, 1e-14)?;
        println!(
            "{d:>8} {:>14.10} {:>14.6} {:>8}",
            beta_half_pi(d)?,
            table.max_abs_beta(),
            table.truncation_terms()
        );
    }
    println!("floor (pi-2)/pi = {:.10}", (PI - 2.0) / PI);

    // the CSV the `kernel` subcommand writes
    let table = KernelTable::build(1.0, 0.5, 2.5, 5, 1e-14)?;
    table.write_csv(std::io::stdout().lock())?;
    Ok(())
}
