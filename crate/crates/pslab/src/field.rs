//! Real-valued fields on the phase-space grid.
//!
//! A field is stored on the midpoint-refined lattice (spacings dx/2, dp/2);
//! the coarse `nx × np` grid the rest of the API talks about is its
//! even-index sublattice, available as a strided view. Constructors sample
//! analytic expressions directly on the refined lattice, so no field is ever
//! interpolated: the refined values are exact wherever the coarse ones are.

use ndarray::{s, Array1, Array2, ArrayView2};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::PhaseSpaceGrid;

/// What a field represents; some operations only accept specific kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldKind {
    Wigner,
    Husimi,
    Kernel,
    Generic,
}

impl FieldKind {
    pub fn name(self) -> &'static str {
        match self {
            FieldKind::Wigner => "wigner",
            FieldKind::Husimi => "husimi",
            FieldKind::Kernel => "kernel",
            FieldKind::Generic => "generic",
        }
    }
}

/// Real values on a phase-space grid.
#[derive(Debug, Clone)]
pub struct PhaseSpaceField {
    pub grid: PhaseSpaceGrid,
    pub kind: FieldKind,
    fine: Array2<f64>,
}

impl PhaseSpaceField {
    /// Build from refined-lattice samples (2nx × 2np, x-major).
    pub(crate) fn from_fine(
        grid: PhaseSpaceGrid,
        kind: FieldKind,
        fine: Array2<f64>,
    ) -> Self {
        assert_eq!(
            fine.dim(),
            (grid.nx_fine(), grid.np_fine()),
            "refined lattice dimensions"
        );
        Self { grid, kind, fine }
    }

    /// Sample an analytic expression f(x, p) on the refined lattice.
    pub fn from_fn(
        grid: PhaseSpaceGrid,
        kind: FieldKind,
        f: impl Fn(f64, f64) -> f64,
    ) -> Self {
        let fine = Array2::from_shape_fn((grid.nx_fine(), grid.np_fine()), |(s, t)| {
            f(grid.x_fine(s), grid.p_fine(t))
        });
        Self { grid, kind, fine }
    }

    /// Rebuild a field from coarse-grid values (used when importing
    /// serialized fields); refined samples come from band-limited
    /// upsampling, which is exact only for smooth decayed data.
    pub fn from_view_values(
        grid: PhaseSpaceGrid,
        kind: FieldKind,
        values: Array2<f64>,
    ) -> Result<Self> {
        if values.dim() != (grid.nx, grid.np) {
            return Err(Error::InvalidParameter {
                name: "values",
                reason: format!(
                    "expected {}x{}, got {}x{}",
                    grid.nx,
                    grid.np,
                    values.dim().0,
                    values.dim().1
                ),
            });
        }
        let complex = values.mapv(|v| num_complex::Complex64::new(v, 0.0));
        let fine_c = crate::fft::upsample2x_2d(&complex);
        let mut fine = fine_c.mapv(|v| v.re);
        // imported coarse samples are authoritative where they exist
        for j in 0..grid.nx {
            for k in 0..grid.np {
                fine[[2 * j, 2 * k]] = values[[j, k]];
            }
        }
        Ok(Self { grid, kind, fine })
    }

    /// Values on the coarse nx × np grid (zero-copy strided view).
    pub fn values(&self) -> ArrayView2<'_, f64> {
        self.fine.slice(s![..;2, ..;2])
    }

    /// Value at coarse grid point (j, k).
    pub fn value_at(&self, j: usize, k: usize) -> f64 {
        self.fine[[2 * j, 2 * k]]
    }

    /// Value at the phase-space point nearest to (x, p) on the refined
    /// lattice.
    pub fn value_near(&self, x: f64, p: f64) -> f64 {
        let g = &self.grid;
        let s = ((x / (0.5 * g.dx)).round() as i64 + g.nx as i64)
            .clamp(0, g.nx_fine() as i64 - 1) as usize;
        let t = ((p / (0.5 * g.dp)).round() as i64 + g.np as i64)
            .clamp(0, g.np_fine() as i64 - 1) as usize;
        self.fine[[s, t]]
    }

    pub(crate) fn fine(&self) -> &Array2<f64> {
        &self.fine
    }

    /// ∬ field dx dp, quadrature on the refined lattice.
    pub fn integral(&self) -> f64 {
        self.fine.sum() * self.grid.fine_cell_area()
    }

    /// Σ values·dx·dp on the coarse grid (the quadrature the grid contract
    /// is stated in; agrees with `integral` to spectral accuracy for
    /// resolved fields).
    pub fn integral_coarse(&self) -> f64 {
        self.values().sum() * self.grid.cell_area()
    }

    /// Minimum value over the refined lattice.
    pub fn min_value(&self) -> f64 {
        self.fine.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Largest |value| over the refined lattice.
    pub fn max_abs(&self) -> f64 {
        self.fine.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// True if every sample is finite.
    pub fn is_finite(&self) -> bool {
        self.fine.iter().all(|v| v.is_finite())
    }

    /// Largest |value| at coarse points within the outer `frac` of the
    /// x- or p-domain, for the boundary-decay guards.
    pub fn outer_max_abs(&self, frac: f64) -> f64 {
        let g = &self.grid;
        let x_cut = (1.0 - frac) * g.half_width;
        let p_cut = (1.0 - frac) * g.momentum_half_width();
        let mut worst = 0.0f64;
        for s in 0..g.nx_fine() {
            let edge_x = g.x_fine(s).abs() > x_cut;
            for t in 0..g.np_fine() {
                if edge_x || g.p_fine(t).abs() > p_cut {
                    let v = self.fine[[s, t]].abs();
                    if !v.is_finite() {
                        return f64::INFINITY;
                    }
                    if v > worst {
                        worst = v;
                    }
                }
            }
        }
        worst
    }

    /// Marginal densities: (Σ_p W·dp at each x_j, Σ_x W·dx at each p_k),
    /// integrated over the refined conjugate axis.
    pub fn marginals(&self) -> (Array1<f64>, Array1<f64>) {
        let g = &self.grid;
        let x_density = Array1::from_iter((0..g.nx).map(|j| {
            self.fine.row(2 * j).sum() * (0.5 * g.dp)
        }));
        let p_density = Array1::from_iter((0..g.np).map(|k| {
            self.fine.column(2 * k).sum() * (0.5 * g.dx)
        }));
        (x_density, p_density)
    }

    /// Pointwise linear combination a·self + b·other.
    pub fn linear_combination(&self, a: f64, other: &PhaseSpaceField, b: f64) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        let fine = &self.fine * a + &other.fine * b;
        Ok(Self {
            grid: self.grid,
            kind: FieldKind::Generic,
            fine,
        })
    }

    /// Same field retagged with another kind.
    pub fn with_kind(mut self, kind: FieldKind) -> Self {
        self.kind = kind;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::build_grid;

    #[test]
    fn view_is_even_sublattice() {
        let g = build_grid(1.0, 4.0, 16).unwrap();
        let f = PhaseSpaceField::from_fn(g, FieldKind::Generic, |x, p| x + 10.0 * p);
        let v = f.values();
        assert_eq!(v.dim(), (16, 16));
        for j in 0..g.nx {
            for k in 0..g.np {
                assert_eq!(v[[j, k]], g.x(j) + 10.0 * g.p(k));
            }
        }
    }

    #[test]
    fn integral_of_unit_gaussian() {
        let g = build_grid(1.0, 8.0, 64).unwrap();
        let f = PhaseSpaceField::from_fn(g, FieldKind::Generic, |x, p| {
            (-(x * x + p * p) / 2.0).exp() / (2.0 * std::f64::consts::PI)
        });
        assert!((f.integral() - 1.0).abs() < 1e-12);
        assert!((f.integral_coarse() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn marginals_of_separable_gaussian() {
        let g = build_grid(1.0, 8.0, 64).unwrap();
        let f = PhaseSpaceField::from_fn(g, FieldKind::Generic, |x, p| {
            (-(x * x + p * p)).exp() / std::f64::consts::PI
        });
        let (mx, mp) = f.marginals();
        let root_pi = std::f64::consts::PI.sqrt();
        for j in 0..g.nx {
            let want = (-(g.x(j) * g.x(j))).exp() / root_pi;
            assert!((mx[j] - want).abs() < 1e-12);
        }
        let mid = g.np / 2;
        assert!((mp[mid] - 1.0 / root_pi).abs() < 1e-12);
    }
}
