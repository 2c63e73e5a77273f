use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// Uniform discretization of the (x, p) plane.
///
/// The x-axis has `nx` points spaced `dx = 2L/nx`; the momentum axis is the
/// FFT conjugate of the x-axis, `dp = 2πħ/(nx·dx)`, so `dx·dp·nx = 2πħ`
/// holds exactly (to rounding). Coordinates are generated from signed integer
/// offsets times the spacing, which makes the grid reflection-symmetric about
/// the origin bitwise: `x[nx-j] == -x[j]`.
///
/// Every field additionally carries samples on the midpoint-refined lattice
/// (spacings `dx/2`, `dp/2`). The refined x-axis is what makes the inverse
/// Weyl transform's midpoints `(x + x')/2` land on sample points without any
/// interpolation; the refined p-axis resolves interference fringes (e.g. a
/// separation-6 cat state) that the coarse lattice undersamples in quadratic
/// functionals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseSpaceGrid {
    /// ħ in the chosen units.
    pub hbar: f64,
    /// Half-width L of the x-domain [−L, L).
    pub half_width: f64,
    /// Number of x samples (even, ≥ 8).
    pub nx: usize,
    /// Number of p samples; equal to `nx` in this version.
    pub np: usize,
    /// x spacing, 2L/nx.
    pub dx: f64,
    /// p spacing, 2πħ/(nx·dx).
    pub dp: f64,
}

/// Build a grid from ħ, the half-width L, and the x sample count.
///
/// `np` is set equal to `nx`.
pub fn build_grid(hbar: f64, half_width: f64, nx: usize) -> Result<PhaseSpaceGrid> {
    if !(hbar.is_finite() && hbar > 0.0) {
        return Err(Error::InvalidParameter {
            name: "hbar",
            reason: format!("must be positive and finite, got {hbar}"),
        });
    }
    if !(half_width.is_finite() && half_width > 0.0) {
        return Err(Error::InvalidParameter {
            name: "L",
            reason: format!("must be positive and finite, got {half_width}"),
        });
    }
    if nx < 8 {
        return Err(Error::InvalidParameter {
            name: "Nx",
            reason: format!("must be at least 8, got {nx}"),
        });
    }
    if !nx.is_multiple_of(2) {
        return Err(Error::InvalidParameter {
            name: "Nx",
            reason: format!("must be even, got {nx}"),
        });
    }
    let dx = 2.0 * half_width / nx as f64;
    let dp = 2.0 * PI * hbar / (nx as f64 * dx);
    Ok(PhaseSpaceGrid {
        hbar,
        half_width,
        nx,
        np: nx,
        dx,
        dp,
    })
}

impl<'de> serde::Deserialize<'de> for PhaseSpaceGrid {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        #[derive(serde::Deserialize)]
        struct Raw {
            hbar: f64,
            half_width: f64,
            nx: usize,
            np: usize,
            dx: f64,
            dp: f64,
        }
        let raw = Raw::deserialize(deserializer)?;
        let grid = build_grid(raw.hbar, raw.half_width, raw.nx).map_err(serde::de::Error::custom)?;
        if raw.np != grid.np
            || (raw.dx - grid.dx).abs() > 1e-15
            || (raw.dp - grid.dp).abs() > 1e-15
        {
            return Err(serde::de::Error::custom(
                "grid spacings are inconsistent with hbar, half_width, and nx",
            ));
        }
        Ok(grid)
    }
}

impl PhaseSpaceGrid {
    /// x-coordinate of sample `j` (0 ≤ j < nx): x_j = (j − nx/2)·dx.
    pub fn x(&self, j: usize) -> f64 {
        (j as i64 - (self.nx / 2) as i64) as f64 * self.dx
    }

    /// p-coordinate of sample `k` (0 ≤ k < np): p_k = (k − np/2)·dp.
    pub fn p(&self, k: usize) -> f64 {
        (k as i64 - (self.np / 2) as i64) as f64 * self.dp
    }

    /// x-coordinate on the refined lattice (0 ≤ s < 2nx), spacing dx/2.
    pub fn x_fine(&self, s: usize) -> f64 {
        (s as i64 - self.nx as i64) as f64 * (0.5 * self.dx)
    }

    /// p-coordinate on the refined lattice (0 ≤ t < 2np), spacing dp/2.
    pub fn p_fine(&self, t: usize) -> f64 {
        (t as i64 - self.np as i64) as f64 * (0.5 * self.dp)
    }

    /// Half-width P of the momentum domain [−P, P).
    pub fn momentum_half_width(&self) -> f64 {
        self.np as f64 * self.dp / 2.0
    }

    /// Area of one coarse cell, dx·dp.
    pub fn cell_area(&self) -> f64 {
        self.dx * self.dp
    }

    /// Area of one refined cell, (dx/2)·(dp/2).
    pub fn fine_cell_area(&self) -> f64 {
        0.25 * self.dx * self.dp
    }

    /// All x samples.
    pub fn xs(&self) -> Vec<f64> {
        (0..self.nx).map(|j| self.x(j)).collect()
    }

    /// All p samples.
    pub fn ps(&self) -> Vec<f64> {
        (0..self.np).map(|k| self.p(k)).collect()
    }

    /// Number of points on the refined x-axis.
    pub fn nx_fine(&self) -> usize {
        2 * self.nx
    }

    /// Number of points on the refined p-axis.
    pub fn np_fine(&self) -> usize {
        2 * self.np
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_spacings() {
        let g = build_grid(1.0, 8.0, 256).unwrap();
        assert_eq!(g.dx, 0.0625);
        assert!((g.dp - 2.0 * PI / 16.0).abs() < 1e-15);
        assert!((g.dx * g.dp * g.nx as f64 - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn dp_scales_with_hbar() {
        let g1 = build_grid(1.0, 8.0, 256).unwrap();
        let g2 = build_grid(0.5, 8.0, 256).unwrap();
        assert!((g2.dp - 0.5 * g1.dp).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(build_grid(0.0, 8.0, 256).is_err());
        assert!(build_grid(-1.0, 8.0, 256).is_err());
        assert!(build_grid(1.0, 0.0, 256).is_err());
        assert!(build_grid(1.0, 8.0, 255).is_err());
        assert!(build_grid(1.0, 8.0, 6).is_err());
        assert!(build_grid(f64::NAN, 8.0, 256).is_err());
    }

    #[test]
    fn coordinates_are_reflection_symmetric_bitwise() {
        // +0.0 normalizes the −0.0 produced at the origin
        let bits = |v: f64| (v + 0.0).to_bits();
        let g = build_grid(1.0, 7.3, 64).unwrap();
        for j in 1..g.nx {
            assert_eq!(bits(g.x(g.nx - j)), bits(-g.x(j)));
        }
        for s in 1..g.nx_fine() {
            assert_eq!(bits(g.x_fine(g.nx_fine() - s)), bits(-g.x_fine(s)));
        }
        // coarse samples are the even refined samples, bit for bit
        for j in 0..g.nx {
            assert_eq!(g.x(j).to_bits(), g.x_fine(2 * j).to_bits());
            assert_eq!(g.p(j).to_bits(), g.p_fine(2 * j).to_bits());
        }
    }

    #[test]
    fn domain_endpoints() {
        let g = build_grid(1.0, 8.0, 256).unwrap();
        assert_eq!(g.x(0), -8.0);
        assert_eq!(g.x_fine(0), -8.0);
        let p_max = g.momentum_half_width();
        assert!((g.p(0) + p_max).abs() < 1e-12);
    }
}
