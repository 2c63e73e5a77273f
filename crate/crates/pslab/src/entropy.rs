//! Entropy functionals: the squared-field purity integral, linear entropy
//! in both the field and operator pictures, von Neumann entropy, Husimi
//! smoothing, and Wehrl entropy. All entropies are in nats.

use serde::{Deserialize, Serialize};

use crate::admissibility::{gaussian_smooth, SmoothingKernel};
use crate::error::{Error, Result};
use crate::field::{FieldKind, PhaseSpaceField};
use crate::state::{DensityOperatorKernel, WaveFunction};
use crate::weyl::wigner_from_pure;

/// Eigenvalues below this are treated as spectral noise in λ·ln λ sums.
const EIGENVALUE_FLOOR: f64 = 1e-12;

/// Squeezing ratio κ of the Husimi smoothing kernel; the induced widths are
/// σx² = ħκ/2 and σp² = ħ/2κ, so σx·σp = ħ/2 for every κ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HusimiParameter {
    pub kappa: f64,
}

impl HusimiParameter {
    pub fn new(kappa: f64) -> Result<Self> {
        if !(kappa.is_finite() && kappa > 0.0) {
            return Err(Error::InvalidParameter {
                name: "kappa",
                reason: format!("must be positive, got {kappa}"),
            });
        }
        Ok(Self { kappa })
    }

    pub fn kernel(&self, hbar: f64) -> SmoothingKernel {
        SmoothingKernel::minimal(hbar, self.kappa).expect("kappa validated at construction")
    }
}

impl Default for HusimiParameter {
    fn default() -> Self {
        Self { kappa: 1.0 }
    }
}

/// (2πħ)·∬ W² dx dp; equals Tr ρ² for the operator behind the field.
pub fn purity_integral(field: &PhaseSpaceField) -> f64 {
    let g = field.grid;
    let sum: f64 = field.fine().iter().map(|v| v * v).sum();
    2.0 * std::f64::consts::PI * g.hbar * sum * g.fine_cell_area()
}

/// Linear entropy in the field picture: 1 − (2πħ)∬W².
pub fn s2_wigner(field: &PhaseSpaceField) -> f64 {
    1.0 - purity_integral(field)
}

/// Linear entropy in the operator picture: 1 − Tr ρ².
pub fn s2_operator(rho: &DensityOperatorKernel) -> Result<f64> {
    let asym = rho.hermiticity_residual();
    if asym > 1e-10 {
        return Err(Error::NonHermitian(asym));
    }
    Ok(1.0 - rho.purity())
}

/// −Tr ρ ln ρ over the kernel's spectrum; eigenvalues are clipped to [0, 1]
/// after checking none is below −1e−8.
pub fn von_neumann_entropy(rho: &DensityOperatorKernel) -> Result<f64> {
    let eigenvalues = rho.eigenvalues()?;
    if let Some(&min) = eigenvalues.first() {
        if min < -1e-8 {
            return Err(Error::NotAState(min));
        }
    }
    Ok(eigenvalues
        .iter()
        .map(|l| l.clamp(0.0, 1.0))
        .filter(|l| *l > EIGENVALUE_FLOOR)
        .map(|l| -l * l.ln())
        .sum())
}

/// Husimi function of a pure state: the Wigner field smoothed with the
/// minimal-uncertainty kernel of ratio κ.
pub fn husimi_from_state(
    psi: &WaveFunction,
    kappa: &HusimiParameter,
) -> Result<PhaseSpaceField> {
    let w = wigner_from_pure(psi)?;
    let q = gaussian_smooth(&w, &kappa.kernel(psi.grid.hbar))?;
    let q = q.with_kind(FieldKind::Husimi);
    let min = q.min_value();
    assert!(
        min >= -1e-12,
        "minimal-uncertainty smoothing produced negativity {min:.3e}"
    );
    Ok(q)
}

/// −∬ Q ln Q dx dp for a Husimi field; round-off negatives are clipped to 0,
/// genuine negativity (min < −1e−6) is rejected.
pub fn wehrl_entropy(q: &PhaseSpaceField) -> Result<f64> {
    if q.kind != FieldKind::Husimi {
        return Err(Error::WrongFieldKind {
            expected: "husimi",
            got: q.kind.name(),
        });
    }
    let min = q.min_value();
    if min < -1e-6 {
        return Err(Error::NegativeHusimi(min));
    }
    let g = q.grid;
    let sum: f64 = q
        .fine()
        .iter()
        .filter(|v| **v > 0.0)
        .map(|v| -v * v.ln())
        .sum();
    Ok(sum * g.fine_cell_area())
}
