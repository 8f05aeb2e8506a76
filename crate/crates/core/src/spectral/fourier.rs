//! Real trigonometric transforms on uniform 2π-periodic grids.
//!
//! Coefficient convention, for `n` nodes and `h = n / 2`:
//!
//! ```text
//! f(x) = Σ_{k=0}^{h} cos[k]·cos(kx) + sin[k]·sin(kx)
//! ```
//!
//! with `sin[0] = sin[h] = 0`. The Nyquist mode `k = h` only carries a cosine
//! part, since `sin(hx)` vanishes at every node.

use std::cell::RefCell;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan_forward(n: usize) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft_forward(n))
}

fn plan_inverse(n: usize) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(n))
}

/// Cosine and sine coefficients of the trigonometric interpolant of `values`.
pub(crate) fn analyze(values: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = values.len();
    let half = n / 2;
    let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    plan_forward(n).process(&mut buf);

    let nf = n as f64;
    let mut cos = vec![0.0; half + 1];
    let mut sin = vec![0.0; half + 1];
    cos[0] = buf[0].re / nf;
    for k in 1..half {
        cos[k] = 2.0 * buf[k].re / nf;
        sin[k] = -2.0 * buf[k].im / nf;
    }
    cos[half] = buf[half].re / nf;
    (cos, sin)
}

/// Node values on an `n`-point grid from coefficients. Modes above `n / 2` are
/// ignored; a sine component at the Nyquist mode is dropped.
pub(crate) fn synthesize(cos: &[f64], sin: &[f64], n: usize) -> Vec<f64> {
    let half = n / 2;
    let nf = n as f64;
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    let top = half.min(cos.len().saturating_sub(1));
    buf[0] = Complex64::new(nf * cos[0], 0.0);
    for k in 1..=top {
        let b = if k < half {
            sin.get(k).copied().unwrap_or(0.0)
        } else {
            0.0
        };
        if k == half {
            buf[k] = Complex64::new(nf * cos[k], 0.0);
        } else {
            let c = Complex64::new(0.5 * nf * cos[k], -0.5 * nf * b);
            buf[k] = c;
            buf[n - k] = c.conj();
        }
    }
    plan_inverse(n).process(&mut buf);
    buf.into_iter().map(|c| c.re / nf).collect()
}

/// Resize a coefficient vector to `half + 1` entries, zero-padding or truncating.
pub(crate) fn resize_coeffs(c: &[f64], half: usize) -> Vec<f64> {
    let mut out = vec![0.0; half + 1];
    let m = c.len().min(half + 1);
    out[..m].copy_from_slice(&c[..m]);
    out
}
