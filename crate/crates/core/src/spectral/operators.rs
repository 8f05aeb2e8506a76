//! Fourier-multiplier operators of the periodic strip of depth `d`.

use super::profile::SurfaceProfile;
use crate::error::{Result, WaveError};

pub(crate) fn check_depth(d: f64) -> Result<()> {
    if d > 0.0 && d.is_finite() {
        Ok(())
    } else {
        Err(WaveError::Parameter(format!("depth must be positive, got {d}")))
    }
}

/// `coth(k d)`, the strip multiplier of mode `k >= 1`.
pub fn coth_multiplier(k: usize, d: f64) -> f64 {
    1.0 / (k as f64 * d).tanh()
}

/// Relative size below which a mean is treated as roundoff.
const MEAN_EPS: f64 = 1e-13;

/// Strip Hilbert transform: `cos(kx) ↦ coth(kd) sin(kx)`,
/// `sin(kx) ↦ −coth(kd) cos(kx)`.
///
/// The transform is defined for zero-mean input. A nonzero mean is discarded
/// and recorded on the output (see [`SurfaceProfile::dropped_mean`]).
pub fn hilbert(p: &SurfaceProfile, d: f64) -> Result<SurfaceProfile> {
    check_depth(d)?;
    let mean = p.mean();
    let out = p.rotate_modes(|k| coth_multiplier(k, d));
    let flag = (mean.abs() > MEAN_EPS * p.sup_norm()).then_some(mean);
    Ok(out.with_dropped_mean(flag))
}

/// `H′ = H∂ = ∂H`: multiplier `k coth(kd)` on both `cos(kx)` and `sin(kx)`.
pub fn hilbert_prime(p: &SurfaceProfile, d: f64) -> Result<SurfaceProfile> {
    check_depth(d)?;
    let nyquist = p.grid().n_modes();
    Ok(p.scale_modes(0.0, |k| {
        if k == nyquist {
            0.0
        } else {
            k as f64 * coth_multiplier(k, d)
        }
    }))
}

/// Dirichlet operator of the strip: normal derivative at the top of the
/// harmonic extension that vanishes at the bottom. `G φ = [φ]/d + H′φ`.
pub fn dirichlet_g(p: &SurfaceProfile, d: f64) -> Result<SurfaceProfile> {
    check_depth(d)?;
    let nyquist = p.grid().n_modes();
    Ok(p.scale_modes(1.0 / d, |k| {
        if k == nyquist {
            0.0
        } else {
            k as f64 * coth_multiplier(k, d)
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::grid::Grid;

    fn grid() -> Grid {
        Grid::new(64).unwrap()
    }

    #[test]
    fn hilbert_of_cos() {
        let p = SurfaceProfile::from_fn(grid(), f64::cos);
        let h = hilbert(&p, 1.0).unwrap();
        assert!((h.sin_coeffs()[1] - 1.313_035_285_499_331_3).abs() < 1e-12);
        assert!(h.dropped_mean().is_none());
    }

    #[test]
    fn hilbert_of_sin2() {
        let p = SurfaceProfile::from_fn(grid(), |x| (2.0 * x).sin());
        let h = hilbert(&p, 0.5).unwrap();
        let expected = -1.0 / 1.0f64.tanh();
        assert!((h.cos_coeffs()[2] - expected).abs() < 1e-12);
    }

    #[test]
    fn constant_maps_to_zero_with_flag() {
        let p = SurfaceProfile::constant(grid(), 2.5);
        let h = hilbert(&p, 1.0).unwrap();
        assert_eq!(h.sup_norm(), 0.0);
        assert_eq!(h.dropped_mean(), Some(2.5));
        assert_eq!(hilbert_prime(&p, 1.0).unwrap().sup_norm(), 0.0);
    }

    #[test]
    fn rejects_nonpositive_depth() {
        let p = SurfaceProfile::constant(grid(), 1.0);
        assert!(matches!(hilbert(&p, 0.0), Err(WaveError::Parameter(_))));
        assert!(matches!(dirichlet_g(&p, -1.0), Err(WaveError::Parameter(_))));
    }

    #[test]
    fn hilbert_prime_of_cos_n() {
        let d = 0.7;
        for n in 1..5 {
            let p = SurfaceProfile::from_fn(grid(), |x| (n as f64 * x).cos());
            let h = hilbert_prime(&p, d).unwrap();
            let expected = n as f64 / (n as f64 * d).tanh();
            assert!((h.cos_coeffs()[n] - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn g_of_one_and_cos3() {
        let one = SurfaceProfile::constant(grid(), 1.0);
        let g = dirichlet_g(&one, 2.0).unwrap();
        assert!((g.mean() - 0.5).abs() < 1e-15);
        let p = SurfaceProfile::from_fn(grid(), |x| (3.0 * x).cos());
        let g = dirichlet_g(&p, 2.0).unwrap();
        assert!((g.cos_coeffs()[3] - 3.0 / 6.0f64.tanh()).abs() < 1e-12);
    }

    #[test]
    fn g_positive_at_unique_maximum() {
        let p = SurfaceProfile::from_fn(grid(), |x| -(1.0 - x.cos()).powi(2));
        let g = dirichlet_g(&p, 1.0).unwrap();
        assert!(g.at(0) > 0.0);
    }

    #[test]
    fn multiplier_exceeds_one_and_decreases() {
        for &d in &[0.1, 1.0, 3.0] {
            let mut prev = f64::INFINITY;
            for k in 1..40 {
                let m = coth_multiplier(k, d);
                assert!(m >= 1.0);
                assert!(m <= prev);
                prev = m;
            }
        }
    }
}
