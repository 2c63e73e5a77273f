//! Gaussian smoothing of arbitrary fields, operator-positivity verdicts via
//! the inverse Weyl transform, the parity condition behind the convolution
//! reordering, and the truncated-integral divergence probe.

use ndarray::Array2;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fft::{fft2_inplace, signed_freq};
use crate::field::{FieldKind, PhaseSpaceField};
use crate::grid::PhaseSpaceGrid;
use crate::weyl::inverse_weyl;

/// Eigenvalue tolerance for the admissibility verdict.
pub const TOL_EIG: f64 = 1e-6;
/// Trace tolerance for the admissibility verdict.
pub const TOL_TRACE: f64 = 1e-4;
/// Relative boundary amplitude above which smoothing refuses to run.
pub const BOUNDARY_DECAY_TOL: f64 = 1e-6;

/// Normalized Gaussian smoothing kernel
/// K(x, p) = (2π σx σp)⁻¹ exp(−x²/2σx² − p²/2σp²).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmoothingKernel {
    pub sigma_x: f64,
    pub sigma_p: f64,
}

impl SmoothingKernel {
    pub fn new(sigma_x: f64, sigma_p: f64) -> Result<Self> {
        for (name, v) in [("sigma_x", sigma_x), ("sigma_p", sigma_p)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter {
                    name,
                    reason: format!("must be positive, got {v}"),
                });
            }
        }
        Ok(Self { sigma_x, sigma_p })
    }

    /// Minimal-uncertainty kernel with widths σx² = ħκ/2, σp² = ħ/2κ.
    pub fn minimal(hbar: f64, kappa: f64) -> Result<Self> {
        if !(kappa.is_finite() && kappa > 0.0) {
            return Err(Error::InvalidParameter {
                name: "kappa",
                reason: format!("must be positive, got {kappa}"),
            });
        }
        Self::new((hbar * kappa / 2.0).sqrt(), (hbar / (2.0 * kappa)).sqrt())
    }

    /// True when σx·σp = ħ/2, the smoothing that produces a Husimi function.
    pub fn is_minimal(&self, hbar: f64) -> bool {
        (self.sigma_x * self.sigma_p - hbar / 2.0).abs() <= 1e-12
    }

    pub fn value(&self, x: f64, p: f64) -> f64 {
        let norm = 1.0 / (2.0 * std::f64::consts::PI * self.sigma_x * self.sigma_p);
        let ex = x / self.sigma_x;
        let ep = p / self.sigma_p;
        norm * (-0.5 * (ex * ex + ep * ep)).exp()
    }

    /// Sample the kernel as a field (even by construction: the grid
    /// coordinates are reflection-symmetric bitwise).
    pub fn as_field(&self, grid: &PhaseSpaceGrid) -> PhaseSpaceField {
        let k = *self;
        PhaseSpaceField::from_fn(*grid, FieldKind::Kernel, move |x, p| k.value(x, p))
    }
}

fn boundary_guard(field: &PhaseSpaceField) -> Result<()> {
    if !field.is_finite() {
        return Err(Error::DivergenceSuspected { ratio: f64::INFINITY });
    }
    let max = field.max_abs();
    if max == 0.0 {
        return Ok(());
    }
    let ratio = field.outer_max_abs(0.05) / max;
    if ratio > BOUNDARY_DECAY_TOL {
        return Err(Error::DivergenceSuspected { ratio });
    }
    Ok(())
}

/// W̄ = W ∗ K by FFT convolution. Preserves the total integral exactly (the
/// zero-frequency multiplier is 1) and errors with `DivergenceSuspected`
/// when the field carries mass at the domain boundary, where the periodic
/// convolution stops being meaningful.
pub fn gaussian_smooth(
    field: &PhaseSpaceField,
    kernel: &SmoothingKernel,
) -> Result<PhaseSpaceField> {
    boundary_guard(field)?;
    let g = field.grid;
    let (nr, nc) = (g.nx_fine(), g.np_fine());
    let mut spec = Array2::from_shape_fn((nr, nc), |(s, t)| {
        C64::new(field.fine()[[s, t]], 0.0)
    });
    fft2_inplace(&mut spec, false);
    let two_pi = 2.0 * std::f64::consts::PI;
    let dtheta = two_pi / (nr as f64 * 0.5 * g.dx);
    let dtau = two_pi / (nc as f64 * 0.5 * g.dp);
    for s in 0..nr {
        let theta = signed_freq(s, nr) as f64 * dtheta;
        let ax = kernel.sigma_x * theta;
        for t in 0..nc {
            let tau = signed_freq(t, nc) as f64 * dtau;
            let ap = kernel.sigma_p * tau;
            spec[[s, t]] *= (-0.5 * (ax * ax + ap * ap)).exp();
        }
    }
    fft2_inplace(&mut spec, true);
    let scale = 1.0 / (nr * nc) as f64;
    let fine = spec.mapv(|v| v.re * scale);
    let kind = if field.kind == FieldKind::Wigner && kernel.is_minimal(g.hbar) {
        FieldKind::Husimi
    } else {
        FieldKind::Generic
    };
    Ok(PhaseSpaceField::from_fine(g, kind, fine))
}

/// Three-way admissibility verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdmissibilityVerdict {
    Admissible,
    Inadmissible,
    Indeterminate,
}

/// Measured facts about the inverse-Weyl operator of a field.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub trace: f64,
    pub hermiticity_residual: f64,
    pub min_eigenvalue: f64,
    pub purity: f64,
    /// Sum of the negative eigenvalues.
    pub negative_mass: f64,
    pub marginals_nonneg: bool,
    pub verdict: AdmissibilityVerdict,
}

fn verdict_from(min_eig: f64, trace: f64) -> AdmissibilityVerdict {
    let eig_ok = min_eig >= -TOL_EIG;
    let trace_ok = (trace - 1.0).abs() <= TOL_TRACE;
    if eig_ok && trace_ok {
        AdmissibilityVerdict::Admissible
    } else if min_eig >= -2.0 * TOL_EIG && (trace - 1.0).abs() <= 2.0 * TOL_TRACE {
        AdmissibilityVerdict::Indeterminate
    } else {
        AdmissibilityVerdict::Inadmissible
    }
}

/// Inverse-Weyl positivity diagnosis plus the operator's full spectrum
/// (ascending). Inadmissibility is a result, not an error.
pub fn admissibility_report_with_spectrum(
    field: &PhaseSpaceField,
) -> Result<(AdmissibilityReport, Vec<f64>)> {
    let rho = inverse_weyl(field);
    let trace = rho.trace();
    let residual = rho.hermiticity_residual();
    let eigenvalues = rho.eigenvalues()?;
    let min_eigenvalue = eigenvalues.first().copied().unwrap_or(0.0);
    let purity: f64 = eigenvalues.iter().map(|l| l * l).sum();
    let negative_mass: f64 = eigenvalues.iter().filter(|l| **l < 0.0).sum();
    let (mx, mp) = field.marginals();
    let marginals_nonneg = mx.iter().all(|v| *v >= -1e-10) && mp.iter().all(|v| *v >= -1e-10);
    let report = AdmissibilityReport {
        trace,
        hermiticity_residual: residual,
        min_eigenvalue,
        purity,
        negative_mass,
        marginals_nonneg,
        verdict: verdict_from(min_eigenvalue, trace),
    };
    Ok((report, eigenvalues))
}

/// Inverse-Weyl positivity diagnosis of a field.
pub fn admissibility_report(field: &PhaseSpaceField) -> Result<AdmissibilityReport> {
    admissibility_report_with_spectrum(field).map(|(r, _)| r)
}

/// max |W(x, p) − W(−x, −p)| over the grid, by index reflection.
pub fn parity_residual(field: &PhaseSpaceField) -> f64 {
    let g = field.grid;
    let v = field.values();
    let mut worst = 0.0f64;
    for j in 0..g.nx {
        let jr = (g.nx - j) % g.nx;
        for k in 0..g.np {
            let kr = (g.np - k) % g.np;
            let d = (v[[j, k]] - v[[jr, kr]]).abs();
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

/// |A − B| where A = ∬K(z″)[∬W(z−z″)F(z)dz]dz″ pairs the kernel with the
/// reordered double integral and B = ∬K(z″)[∬W(z″−z)F(z)dz]dz″ contains
/// the genuine convolution; the two agree for all F exactly when
/// W(x,p) = W(−x,−p).
pub fn convolution_chain_residual(
    w: &PhaseSpaceField,
    f: &PhaseSpaceField,
    kernel: &SmoothingKernel,
) -> Result<f64> {
    if w.grid != f.grid {
        return Err(Error::GridMismatch);
    }
    boundary_guard(w)?;
    let g = w.grid;
    let (n, m) = (g.nx, g.np);
    // index difference d maps to coordinate difference d·dx only after an
    // fftshift: entry [j,k] of the shifted array is W at coordinate offset
    // ((j − n/2)·dx, (k − m/2)·dp) with periodic wrap
    let mut w_hat = Array2::from_shape_fn((n, m), |(j, k)| {
        C64::new(w.value_at((j + n / 2) % n, (k + m / 2) % m), 0.0)
    });
    let mut f_hat = Array2::from_shape_fn((n, m), |(j, k)| C64::new(f.value_at(j, k), 0.0));
    fft2_inplace(&mut w_hat, false);
    fft2_inplace(&mut f_hat, false);

    // g_corr[u] = Σ_z F(z)·W(z−u),  g_conv[u] = Σ_z F(z)·W(u−z)
    let mut corr = Array2::from_shape_fn((n, m), |(j, k)| f_hat[[j, k]] * w_hat[[j, k]].conj());
    let mut conv = Array2::from_shape_fn((n, m), |(j, k)| f_hat[[j, k]] * w_hat[[j, k]]);
    fft2_inplace(&mut corr, true);
    fft2_inplace(&mut conv, true);

    let cell = g.cell_area();
    let scale = cell / (n * m) as f64;
    let mut a = 0.0;
    let mut b = 0.0;
    for j in 0..n {
        for k in 0..m {
            let kv = kernel.value(g.x(j), g.p(k));
            a += kv * corr[[j, k]].re * scale;
            b += kv * conv[[j, k]].re * scale;
        }
    }
    Ok(((a - b) * cell).abs())
}

/// max|W|·πħ; values above 1 prove the field is not a pure-state Wigner
/// function.
pub fn wigner_bound_check(field: &PhaseSpaceField) -> f64 {
    field.max_abs() * std::f64::consts::PI * field.grid.hbar
}

/// Convergence classification of the truncated smoothing integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convergence {
    Convergent,
    Divergent,
    Indeterminate,
}

/// Growth record for I(R) = ∬_{|z|≤R} e^{a(x²+p²)} K(−z) dz.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DivergenceReport {
    pub a: f64,
    pub sigma_x: f64,
    pub sigma_p: f64,
    /// Threshold 1/(2·max(σx,σp)²): the integral converges iff a is below it.
    pub threshold: f64,
    pub cutoffs: Vec<f64>,
    pub values: Vec<f64>,
    pub increments: Vec<f64>,
    pub relative_increments: Vec<f64>,
    pub classification: Convergence,
}

/// Final relative increment below which the probe calls the sequence
/// convergent (together with decreasing increments).
pub const PROBE_CONV_TOL: f64 = 1e-4;

/// Truncated smoothing integrals of e^{a(x²+p²)} at the origin over growing
/// radii, each on a fresh cell-centered grid.
pub fn divergence_probe(
    a: f64,
    kernel: &SmoothingKernel,
    cutoffs: &[f64],
) -> Result<DivergenceReport> {
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::InvalidParameter {
            name: "a",
            reason: format!("must be positive, got {a}"),
        });
    }
    if cutoffs.len() < 2 {
        return Err(Error::InvalidParameter {
            name: "cutoffs",
            reason: "need at least two radii".into(),
        });
    }
    if cutoffs
        .windows(2)
        .any(|w| !(w[0] > 0.0 && w[1] > w[0] && w[1].is_finite()))
    {
        return Err(Error::InvalidParameter {
            name: "cutoffs",
            reason: "radii must be positive and strictly increasing".into(),
        });
    }

    let delta = (kernel.sigma_x.min(kernel.sigma_p) / 20.0).min(0.05);
    let values: Vec<f64> = cutoffs
        .iter()
        .map(|&radius| {
            let cells = (2.0 * radius / delta).ceil() as usize;
            let r2 = radius * radius;
            let mut sum = 0.0;
            for i in 0..cells {
                let x = -radius + (i as f64 + 0.5) * delta;
                for j in 0..cells {
                    let p = -radius + (j as f64 + 0.5) * delta;
                    if x * x + p * p <= r2 {
                        // K(−z) = K(z): the kernel is even
                        sum += (a * (x * x + p * p)).exp() * kernel.value(x, p);
                    }
                }
            }
            sum * delta * delta
        })
        .collect();

    let increments: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
    let relative_increments: Vec<f64> = values
        .windows(2)
        .map(|w| (w[1] - w[0]) / w[1].max(f64::MIN_POSITIVE))
        .collect();

    let classification = classify(&values, &increments, &relative_increments);
    let sigma_max = kernel.sigma_x.max(kernel.sigma_p);
    Ok(DivergenceReport {
        a,
        sigma_x: kernel.sigma_x,
        sigma_p: kernel.sigma_p,
        threshold: 1.0 / (2.0 * sigma_max * sigma_max),
        cutoffs: cutoffs.to_vec(),
        values,
        increments,
        relative_increments,
        classification,
    })
}

fn classify(values: &[f64], increments: &[f64], relative: &[f64]) -> Convergence {
    if values.iter().any(|v| !v.is_finite()) {
        return Convergence::Divergent;
    }
    if increments.len() >= 3 {
        let tail = &increments[increments.len() - 3..];
        if tail[0] < tail[1] && tail[1] < tail[2] {
            return Convergence::Divergent;
        }
        let rtail = &relative[relative.len() - 3..];
        if rtail[0] > rtail[1]
            && rtail[1] > rtail[2]
            && rtail[2] < PROBE_CONV_TOL
        {
            return Convergence::Convergent;
        }
    }
    Convergence::Indeterminate
}
