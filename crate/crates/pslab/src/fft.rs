//! Thin wrappers around `rustfft` plus band-limited (trigonometric)
//! upsampling used to move wavefunctions and operator kernels onto the
//! refined lattice.

use std::sync::Arc;

use ndarray::Array2;
use num_complex::Complex64 as C64;
use rustfft::{Fft, FftPlanner};

/// Forward/inverse plans for one transform length.
pub(crate) struct FftPair {
    pub len: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl FftPair {
    pub fn new(len: usize) -> Self {
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(len);
        let inv = planner.plan_fft_inverse(len);
        Self { len, fwd, inv }
    }

    /// In-place unnormalized forward DFT: X[q] = Σ_m x[m]·e^{−2πi qm/len}.
    pub fn forward(&self, buf: &mut [C64]) {
        debug_assert_eq!(buf.len(), self.len);
        self.fwd.process(buf);
    }

    /// In-place unnormalized inverse DFT: x[m] = Σ_q X[q]·e^{+2πi qm/len}.
    pub fn inverse(&self, buf: &mut [C64]) {
        debug_assert_eq!(buf.len(), self.len);
        self.inv.process(buf);
    }
}

/// Double the sampling rate of a complex signal by zero-padding its DFT
/// (exact for signals band-limited to the original Nyquist window; the
/// Nyquist bin is split evenly between ±Nyquist so the interpolation
/// weights stay real).
pub(crate) fn upsample2x(values: &[C64]) -> Vec<C64> {
    let n = values.len();
    assert!(n >= 2 && n.is_multiple_of(2), "upsample2x requires an even length");
    let m = 2 * n;
    let mut spec: Vec<C64> = values.to_vec();
    FftPair::new(n).forward(&mut spec);

    let mut padded = vec![C64::new(0.0, 0.0); m];
    for (q, &v) in spec.iter().enumerate().take(n / 2) {
        padded[q] = v;
    }
    for (q, &v) in spec.iter().enumerate().skip(n / 2 + 1) {
        padded[m - n + q] = v;
    }
    let nyq = 0.5 * spec[n / 2];
    padded[n / 2] = nyq;
    padded[m - n / 2] = nyq;

    FftPair::new(m).inverse(&mut padded);
    let scale = 1.0 / n as f64;
    for v in padded.iter_mut() {
        *v *= scale;
    }
    padded
}

/// Unnormalized 2D DFT over both axes, in place. The inverse applies the
/// conjugate transform without the 1/(rows·cols) factor.
pub(crate) fn fft2_inplace(m: &mut Array2<C64>, inverse: bool) {
    let (r, c) = m.dim();
    let row_fft = FftPair::new(c);
    for mut row in m.outer_iter_mut() {
        let buf = row.as_slice_mut().expect("row-major layout");
        if inverse {
            row_fft.inverse(buf);
        } else {
            row_fft.forward(buf);
        }
    }
    let col_fft = FftPair::new(r);
    let mut col = vec![C64::new(0.0, 0.0); r];
    for j in 0..c {
        for i in 0..r {
            col[i] = m[[i, j]];
        }
        if inverse {
            col_fft.inverse(&mut col);
        } else {
            col_fft.forward(&mut col);
        }
        for i in 0..r {
            m[[i, j]] = col[i];
        }
    }
}

/// Signed frequency index of DFT bin `q` for transform length `len`.
pub(crate) fn signed_freq(q: usize, len: usize) -> i64 {
    if q <= len / 2 {
        q as i64
    } else {
        q as i64 - len as i64
    }
}

/// Band-limited 2x upsampling along both axes of a complex matrix.
pub(crate) fn upsample2x_2d(m: &Array2<C64>) -> Array2<C64> {
    let (r, c) = m.dim();
    let mut rows = Array2::zeros((r, 2 * c));
    for (i, row) in m.outer_iter().enumerate() {
        let up = upsample2x(row.as_slice().expect("row-major layout"));
        for (j, v) in up.into_iter().enumerate() {
            rows[[i, j]] = v;
        }
    }
    let mut out = Array2::zeros((2 * r, 2 * c));
    let mut col = vec![C64::new(0.0, 0.0); r];
    for j in 0..2 * c {
        for i in 0..r {
            col[i] = rows[[i, j]];
        }
        let up = upsample2x(&col);
        for (i, v) in up.into_iter().enumerate() {
            out[[i, j]] = v;
        }
    }
    out
}
