//! The discretized elevation system on even cosine coefficients.
//!
//! Unknown vector `x = (a_1, …, a_K, Q/(2g), m/√(gd))` with `K = n/2 − 1`;
//! every entry has units of length. The residual vector holds the Galerkin
//! projections of the Babenko equation onto `cos kx`, `k = 1..K`, followed by
//! the averages condition, all divided by `2g`. Mode 0 of the Babenko
//! equation vanishes identically once `[η] = d`, so it is not an equation.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::error::Result;
use crate::formulation::{averages_from_fields, babenko_from_fields, EtaFields, PhysicalParams, DEALIAS};
use crate::spectral::{Grid, SurfaceProfile};

/// Padding that makes the projection onto modes `1..K` alias-free.
const GALERKIN_PAD: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Layout {
    pub grid: Grid,
    pub g: f64,
    pub d: f64,
    pub gamma: f64,
}

/// Sup-norm of the Babenko residual and magnitude of the averages residual,
/// both unscaled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FullResidual {
    pub babenko: f64,
    pub averages: f64,
}

impl FullResidual {
    pub fn max(&self) -> f64 {
        self.babenko.max(self.averages)
    }
}

impl Layout {
    pub fn new(grid: Grid, g: f64, d: f64, gamma: f64) -> Self {
        Self { grid, g, d, gamma }
    }

    /// Number of free cosine modes `K`.
    pub fn n_free(&self) -> usize {
        self.grid.n_modes() - 1
    }

    pub fn dim(&self) -> usize {
        self.n_free() + 2
    }

    pub fn q_index(&self) -> usize {
        self.n_free()
    }

    pub fn m_index(&self) -> usize {
        self.n_free() + 1
    }

    fn m_scale(&self) -> f64 {
        (self.g * self.d).sqrt()
    }

    pub fn pack(&self, params: &PhysicalParams, eta: &SurfaceProfile) -> DVector<f64> {
        let k = self.n_free();
        let eta = eta.resample(self.grid.n_points()).expect("grid is valid");
        let mut x = DVector::zeros(self.dim());
        for i in 0..k {
            x[i] = eta.cos_coeffs()[i + 1];
        }
        x[self.q_index()] = params.q / (2.0 * self.g);
        x[self.m_index()] = params.m / self.m_scale();
        x
    }

    /// Parameters encoded in `x`, without validation.
    pub fn params(&self, x: &DVector<f64>) -> PhysicalParams {
        PhysicalParams {
            g: self.g,
            d: self.d,
            gamma: self.gamma,
            m: x[self.m_index()] * self.m_scale(),
            q: 2.0 * self.g * x[self.q_index()],
        }
    }

    pub fn eta(&self, x: &DVector<f64>) -> SurfaceProfile {
        let mut cos = vec![0.0; self.grid.n_modes() + 1];
        cos[0] = self.d;
        cos[1..=self.n_free()].copy_from_slice(&x.as_slice()[..self.n_free()]);
        SurfaceProfile::from_cosines(self.grid, cos)
    }

    /// Scaled Galerkin residual, length `K + 1`.
    pub fn galerkin(&self, x: &DVector<f64>) -> Result<DVector<f64>> {
        let params = self.params(x);
        let fields = EtaFields::new(&self.eta(x), self.d, GALERKIN_PAD)?;
        let bab = babenko_from_fields(&params, &fields)?;
        let avg = averages_from_fields(&params, &fields);
        let k = self.n_free();
        let scale = 1.0 / (2.0 * self.g);
        let mut r = DVector::zeros(k + 1);
        for i in 0..k {
            r[i] = bab.cos_coeffs()[i + 1] * scale;
        }
        r[k] = avg * scale;
        Ok(r)
    }

    /// Pointwise residuals on the dealiased grid.
    pub fn full_residual(&self, x: &DVector<f64>) -> Result<FullResidual> {
        let params = self.params(x);
        let fields = EtaFields::new(&self.eta(x), self.d, DEALIAS)?;
        let bab = babenko_from_fields(&params, &fields)?;
        Ok(FullResidual {
            babenko: bab.sup_norm(),
            averages: averages_from_fields(&params, &fields).abs(),
        })
    }

    /// Central-difference Jacobian of [`Layout::galerkin`], `(K+1) × (K+2)`.
    /// The O(h) error of a one-sided stencil is enough to shift the
    /// continuation tangent visibly, so the extra evaluations are worth it.
    pub fn jacobian(&self, x: &DVector<f64>, _f0: &DVector<f64>) -> Result<DMatrix<f64>> {
        let cols: Vec<DVector<f64>> = (0..self.dim())
            .into_par_iter()
            .map(|j| {
                let h = JAC_STEP * (1.0 + x[j].abs());
                let mut xp = x.clone();
                xp[j] += h;
                let mut xm = x.clone();
                xm[j] -= h;
                let hh = xp[j] - xm[j];
                Ok((self.galerkin(&xp)? - self.galerkin(&xm)?) / hh)
            })
            .collect::<Result<_>>()?;
        Ok(DMatrix::from_columns(&cols))
    }
}

/// Roughly the cube root of machine epsilon.
const JAC_STEP: f64 = 6e-6;
