//! Eigenvalues of complex Hermitian matrices via the real symmetric
//! embedding `[[Re H, -Im H], [Im H, Re H]]`, whose spectrum is that of H
//! with every eigenvalue doubled.

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Largest absolute deviation from Hermiticity, max|H − H†|.
pub(crate) fn hermiticity_residual(m: &Array2<C64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for j in 0..n {
        for k in j..n {
            let d = (m[[j, k]] - m[[k, j]].conj()).norm();
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

/// Replace `m` by (m + m†)/2.
pub(crate) fn symmetrize(m: &mut Array2<C64>) {
    let n = m.nrows();
    for j in 0..n {
        for k in j..n {
            let avg = 0.5 * (m[[j, k]] + m[[k, j]].conj());
            m[[j, k]] = avg;
            m[[k, j]] = avg.conj();
        }
        m[[j, j]] = C64::new(m[[j, j]].re, 0.0);
    }
}

/// Eigenvalues (ascending) of a complex Hermitian matrix.
///
/// The input is required to be Hermitian within `tol_asym` and is
/// symmetrized before the solve; eigensolvers for symmetric matrices need
/// exact symmetry.
pub(crate) fn hermitian_eigenvalues(m: &Array2<C64>, tol_asym: f64) -> Result<Vec<f64>> {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "eigenvalues need a square matrix");
    let asym = hermiticity_residual(m);
    if asym > tol_asym {
        return Err(Error::NonHermitian(asym));
    }
    let mut h = m.clone();
    symmetrize(&mut h);

    let big = nalgebra::DMatrix::<f64>::from_fn(2 * n, 2 * n, |r, c| {
        let (i, ic) = (r % n, r / n);
        let (j, jc) = (c % n, c / n);
        let v = h[[i, j]];
        match (ic, jc) {
            (0, 0) | (1, 1) => v.re,
            (0, 1) => -v.im,
            (1, 0) => v.im,
            _ => unreachable!(),
        }
    });
    let mut evs: Vec<f64> = big.symmetric_eigenvalues().iter().copied().collect();
    evs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // every eigenvalue of H appears exactly twice; collapse adjacent pairs
    let mut out = Vec::with_capacity(n);
    for pair in evs.chunks_exact(2) {
        out.push(0.5 * (pair[0] + pair[1]));
    }
    Ok(out)
}
