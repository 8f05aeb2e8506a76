//! Discrete 2π-periodic surface functions and the nonlocal operators of the
//! strip: Hilbert transform, `H′`, the Dirichlet operator and the kernel `β`.

mod fourier;
pub mod grid;
pub mod kernel;
pub mod operators;
pub mod profile;
pub mod pv;

pub use grid::{Grid, SOLVE_POINTS, VERIFY_POINTS};
pub use kernel::{beta, beta_eval, beta_half_pi, beta_prime, beta_prime_eval, KernelTable, SeriesValue};
pub use operators::{coth_multiplier, dirichlet_g, hilbert, hilbert_prime};
pub use profile::{Parity, SurfaceProfile};
pub use pv::pv_convolve;
