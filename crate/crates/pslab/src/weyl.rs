//! The Weyl-transform pair connecting wavefunctions and operator kernels to
//! phase-space fields.
//!
//! Discretization notes. For a center u on the refined x-lattice (spacing
//! dx/2) the offset v = x − x' of the kernel ρ(u + v/2, u − v/2) runs over
//! multiples of dx up to ±2L, which a length-2nx FFT maps exactly onto the
//! refined p-lattice (spacing dp/2). Working at that resolution keeps the
//! transform free of wrap-around ghosts for any state supported inside the
//! box, and makes quadratic functionals (purity, overlaps) spectrally exact
//! even for fields with interference fringes near the coarse-grid Nyquist
//! limit. Midpoints (x + x')/2 of coarse kernel indices are refined-lattice
//! sample points, so the inverse transform never interpolates.

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fft::{upsample2x_2d, FftPair};
use crate::field::{FieldKind, PhaseSpaceField};
use crate::state::{DensityOperatorKernel, WaveFunction};

/// Largest imaginary residue tolerated when a transform result must be real.
const IM_RESIDUE_TOL: f64 = 1e-10;

/// W(x, p) = (πħ)⁻¹ ∫ dy ψ*(x+y) ψ(x−y) e^{2ipy/ħ}, one FFT per x-row.
pub fn wigner_from_pure(psi: &WaveFunction) -> Result<PhaseSpaceField> {
    psi.require_transformable()?;
    let g = psi.grid;
    let n = g.nx as i64;
    let nf = g.nx_fine();
    let psi_f = psi.fine_values();
    let fft = FftPair::new(nf);
    let scale = 0.5 * g.dx / (std::f64::consts::PI * g.hbar);

    let mut fine = Array2::zeros((nf, g.np_fine()));
    let mut row = vec![C64::new(0.0, 0.0); nf];
    let mut max_im = 0.0f64;
    for s in 0..nf {
        row.fill(C64::new(0.0, 0.0));
        // correlation at y = m·dx/2; arguments outside the box are zero
        for m in -n..n {
            let a = s as i64 + m;
            let b = s as i64 - m;
            if (0..nf as i64).contains(&a) && (0..nf as i64).contains(&b) {
                let idx = m.rem_euclid(nf as i64) as usize;
                row[idx] = psi_f[a as usize].conj() * psi_f[b as usize];
            }
        }
        fft.forward(&mut row);
        for t in 0..g.np_fine() {
            let q = (n - t as i64).rem_euclid(nf as i64) as usize;
            let v = row[q] * scale;
            max_im = max_im.max(v.im.abs());
            fine[[s, t]] = v.re;
        }
    }
    assert!(
        max_im <= IM_RESIDUE_TOL,
        "imaginary residue {max_im:.3e} exceeds {IM_RESIDUE_TOL:.0e}"
    );
    Ok(PhaseSpaceField::from_fine(g, FieldKind::Wigner, fine))
}

/// W(x, p) = (πħ)⁻¹ ∫ dy ρ(x+y, x−y) e^{2ipy/ħ} for a Hermitian unit-trace
/// kernel; agrees with `wigner_from_pure` on ρ = |ψ⟩⟨ψ|.
pub fn wigner_from_density(rho: &DensityOperatorKernel) -> Result<PhaseSpaceField> {
    let asym = rho.hermiticity_residual();
    if asym > 1e-10 {
        return Err(Error::NonHermitian(asym));
    }
    let g = rho.grid;
    let n = g.nx as i64;
    let nf = g.nx_fine();
    let kernel_fine = upsample2x_2d(&rho.matrix);
    let fft = FftPair::new(nf);
    let scale = 1.0 / (2.0 * std::f64::consts::PI * g.hbar);

    let mut fine = Array2::zeros((nf, g.np_fine()));
    let mut row = vec![C64::new(0.0, 0.0); nf];
    let mut max_im = 0.0f64;
    for s in 0..nf {
        row.fill(C64::new(0.0, 0.0));
        // ρ(ξ_{s+m}, ξ_{s−m}) at offset v = m·dx; the (−1)^m folds the
        // p-grid origin shift into the FFT
        for m in -n..n {
            let a = s as i64 + m;
            let b = s as i64 - m;
            if (0..nf as i64).contains(&a) && (0..nf as i64).contains(&b) {
                let idx = m.rem_euclid(nf as i64) as usize;
                let sign = if m.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                row[idx] = kernel_fine[[a as usize, b as usize]] * sign;
            }
        }
        fft.forward(&mut row);
        for t in 0..g.np_fine() {
            let v = row[t] * scale;
            max_im = max_im.max(v.im.abs());
            fine[[s, t]] = v.re;
        }
    }
    assert!(
        max_im <= IM_RESIDUE_TOL,
        "imaginary residue {max_im:.3e} exceeds {IM_RESIDUE_TOL:.0e}"
    );
    Ok(PhaseSpaceField::from_fine(g, FieldKind::Wigner, fine))
}

/// ρ(x, x') = ∫ dp W((x+x')/2, p) e^{ip(x−x')/ħ} on the grid's x-axis.
///
/// Midpoints land on the refined lattice the field already carries, so
/// arbitrary fields — admissible or not — transform without interpolation.
pub fn inverse_weyl(field: &PhaseSpaceField) -> DensityOperatorKernel {
    let g = field.grid;
    let n = g.nx;
    let nf = g.np_fine();
    let fft = FftPair::new(nf);
    let dp2 = 0.5 * g.dp;

    // G[s][m] = Σ_t fine[s,t] e^{+i ϖ_t m dx/ħ} · dp/2, per refined center s
    let mut transforms = Array2::from_elem((g.nx_fine(), nf), C64::new(0.0, 0.0));
    let mut row = vec![C64::new(0.0, 0.0); nf];
    for s in 0..g.nx_fine() {
        for (t, v) in row.iter_mut().enumerate() {
            *v = C64::new(field.fine()[[s, t]], 0.0);
        }
        fft.forward(&mut row);
        for (q, v) in row.iter().enumerate() {
            transforms[[s, q]] = *v;
        }
    }

    let mut matrix = Array2::from_elem((n, n), C64::new(0.0, 0.0));
    for j in 0..n {
        for k in 0..n {
            let s = j + k;
            let m = j as i64 - k as i64;
            let q = (-m).rem_euclid(nf as i64) as usize;
            let sign = if m.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            matrix[[j, k]] = transforms[[s, q]] * sign * dp2 * g.dx;
        }
    }
    DensityOperatorKernel::from_matrix(g, matrix)
}

/// (2πħ)·Σ A·B·dx·dp — the phase-space overlap equal to Tr(ÂB̂) for the
/// corresponding operators.
pub fn hilbert_schmidt_trace(a: &PhaseSpaceField, b: &PhaseSpaceField) -> Result<f64> {
    if a.grid != b.grid {
        return Err(Error::GridMismatch);
    }
    let g = a.grid;
    let sum: f64 = a
        .fine()
        .iter()
        .zip(b.fine().iter())
        .map(|(x, y)| x * y)
        .sum();
    Ok(2.0 * std::f64::consts::PI * g.hbar * sum * g.fine_cell_area())
}

/// Position and momentum densities of a field (quadrature over the
/// conjugate axis).
pub fn marginals(field: &PhaseSpaceField) -> (ndarray::Array1<f64>, ndarray::Array1<f64>) {
    field.marginals()
}
