//! Position-space state representations: pure-state wavefunctions and
//! density-operator kernels on the grid's x-axis.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fft::upsample2x;
use crate::grid::PhaseSpaceGrid;

/// Tolerance on |∫|ψ|²dx − 1| after `normalized()`.
pub const NORM_TOL: f64 = 1e-10;

/// Fraction of the x-domain on each side counted as "outer" by the
/// wrap-around guard.
pub const EDGE_FRACTION: f64 = 0.05;

/// Maximum probability mass allowed in the outer region.
pub const EDGE_MASS_TOL: f64 = 1e-6;

/// Complex position-space amplitudes on the x-axis of a grid.
#[derive(Debug, Clone)]
pub struct WaveFunction {
    pub grid: PhaseSpaceGrid,
    pub values: Array1<C64>,
}

impl WaveFunction {
    /// Wrap raw samples; the caller is responsible for normalization.
    pub fn from_samples(grid: PhaseSpaceGrid, values: Array1<C64>) -> Result<Self> {
        if values.len() != grid.nx {
            return Err(Error::InvalidParameter {
                name: "values",
                reason: format!("expected {} samples, got {}", grid.nx, values.len()),
            });
        }
        Ok(Self { grid, values })
    }

    /// ∫|ψ|² dx on the grid.
    pub fn norm_sq(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.dx
    }

    /// Rescale to unit norm.
    pub fn normalized(mut self) -> Result<Self> {
        let n2 = self.norm_sq();
        if !(n2.is_finite() && n2 > 0.0) {
            return Err(Error::InvalidParameter {
                name: "values",
                reason: format!("cannot normalize: ∫|ψ|²dx = {n2}"),
            });
        }
        let s = 1.0 / n2.sqrt();
        for v in self.values.iter_mut() {
            *v *= s;
        }
        Ok(self)
    }

    /// Fraction of the total probability mass in the outer `EDGE_FRACTION`
    /// of the x-domain on either side.
    pub fn edge_mass_fraction(&self) -> f64 {
        let cut = (1.0 - EDGE_FRACTION) * self.grid.half_width;
        let mut outer = 0.0;
        let mut total = 0.0;
        for (j, v) in self.values.iter().enumerate() {
            let w = v.norm_sqr();
            total += w;
            if self.grid.x(j).abs() > cut {
                outer += w;
            }
        }
        if total > 0.0 {
            outer / total
        } else {
            0.0
        }
    }

    /// Error unless the state is normalized and decays before the boundary.
    pub(crate) fn require_transformable(&self) -> Result<()> {
        let dev = (self.norm_sq() - 1.0).abs();
        if dev > 1e-8 {
            return Err(Error::NotNormalized(dev));
        }
        let frac = self.edge_mass_fraction();
        if frac > EDGE_MASS_TOL {
            return Err(Error::EdgeMass(frac));
        }
        Ok(())
    }

    /// Samples on the refined x-axis (spacing dx/2), by band-limited
    /// upsampling.
    pub(crate) fn fine_values(&self) -> Array1<C64> {
        Array1::from(upsample2x(self.values.as_slice().expect("contiguous")))
    }

    /// Overlap ⟨self|other⟩ = ∫ ψ*·φ dx.
    pub fn overlap(&self, other: &WaveFunction) -> Result<C64> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        let s: C64 = self
            .values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| a.conj() * b)
            .sum();
        Ok(s * self.grid.dx)
    }
}

/// Complex matrix ρ(x_j, x_k)·dx on the x-grid; the dx weight makes traces
/// and matrix powers plain sums.
#[derive(Debug, Clone)]
pub struct DensityOperatorKernel {
    pub grid: PhaseSpaceGrid,
    pub matrix: Array2<C64>,
}

impl DensityOperatorKernel {
    /// ρ = |ψ⟩⟨ψ| for a normalized pure state.
    pub fn from_pure(psi: &WaveFunction) -> Result<Self> {
        let dev = (psi.norm_sq() - 1.0).abs();
        if dev > 1e-8 {
            return Err(Error::NotNormalized(dev));
        }
        let n = psi.grid.nx;
        let dx = psi.grid.dx;
        let mut m = Array2::from_elem((n, n), C64::new(0.0, 0.0));
        for j in 0..n {
            for k in 0..n {
                m[[j, k]] = psi.values[j] * psi.values[k].conj() * dx;
            }
        }
        Ok(Self {
            grid: psi.grid,
            matrix: m,
        })
    }

    /// Convex mixture Σ wᵢ |ψᵢ⟩⟨ψᵢ|; weights must be positive and sum to 1.
    pub fn mixture(parts: &[(f64, &WaveFunction)]) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidParameter {
                name: "weights",
                reason: "mixture needs at least one component".into(),
            });
        }
        let total: f64 = parts.iter().map(|(w, _)| w).sum();
        if parts.iter().any(|(w, _)| *w <= 0.0) || (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParameter {
                name: "weights",
                reason: format!("must be positive and sum to 1, got sum {total}"),
            });
        }
        let grid = parts[0].1.grid;
        let n = grid.nx;
        let dx = grid.dx;
        let mut m = Array2::from_elem((n, n), C64::new(0.0, 0.0));
        for (w, psi) in parts {
            if psi.grid != grid {
                return Err(Error::GridMismatch);
            }
            let dev = (psi.norm_sq() - 1.0).abs();
            if dev > 1e-8 {
                return Err(Error::NotNormalized(dev));
            }
            for j in 0..n {
                for k in 0..n {
                    m[[j, k]] += *w * psi.values[j] * psi.values[k].conj() * dx;
                }
            }
        }
        Ok(Self { grid, matrix: m })
    }

    pub(crate) fn from_matrix(grid: PhaseSpaceGrid, matrix: Array2<C64>) -> Self {
        Self { grid, matrix }
    }

    /// Tr ρ (real part; the imaginary residue is rounding noise).
    pub fn trace(&self) -> f64 {
        (0..self.grid.nx).map(|j| self.matrix[[j, j]].re).sum()
    }

    /// max|ρ − ρ†|.
    pub fn hermiticity_residual(&self) -> f64 {
        crate::eigen::hermiticity_residual(&self.matrix)
    }

    /// Tr ρ², using Hermiticity: Σ_{jk} |ρ_{jk}|².
    pub fn purity(&self) -> f64 {
        self.matrix.iter().map(|v| v.norm_sqr()).sum()
    }

    /// Eigenvalues in ascending order. Requires Hermiticity within 1e−10;
    /// the matrix is symmetrized before the solve.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        crate::eigen::hermitian_eigenvalues(&self.matrix, 1e-10)
    }
}
