//! # pslab
//!
//! A numerical laboratory for quantum phase-space distributions in one
//! degree of freedom: Wigner and Husimi functions, the entropy functionals
//! built on them (quadratic/linear entropy, von Neumann, Wehrl), and
//! operator-level diagnostics for the Gaussian-smoothing machinery —
//! explicit inverse-Weyl reconstruction, positivity spectra, the parity
//! condition behind the convolution-reordering identity, and truncated
//! divergence probes.
//!
//! The crate is organized around a few core types:
//!
//! - [`PhaseSpaceGrid`]: uniform (x, p) discretization with FFT-conjugate
//!   spacings, `dx·dp·Nx = 2πħ`.
//! - [`WaveFunction`] / [`DensityOperatorKernel`]: pure states and operator
//!   kernels on the x-axis.
//! - [`PhaseSpaceField`]: real values on the grid — Wigner functions,
//!   Husimi functions, smoothing kernels, or arbitrary test fields.
//! - [`ClaimReport`]: reproducible, tolerance-tagged verdicts for the six
//!   numbered claims the claims suite adjudicates.
//!
//! All operations are pure functions of their inputs; nothing here holds
//! shared mutable state, so values can be shared freely across threads.

pub mod admissibility;
pub mod claims;
pub mod cli;
mod eigen;
pub mod entropy;
pub mod error;
mod fft;
pub mod field;
pub mod grid;
pub mod io;
pub mod state;
pub mod statelib;
pub mod weyl;

pub use admissibility::{
    admissibility_report, admissibility_report_with_spectrum, convolution_chain_residual,
    divergence_probe, gaussian_smooth, parity_residual, wigner_bound_check,
    AdmissibilityReport, AdmissibilityVerdict, Convergence, DivergenceReport, SmoothingKernel,
};
pub use claims::{run_all_claims, run_claim, ClaimId, ClaimReport, Measurement, Verdict};
pub use entropy::{
    husimi_from_state, purity_integral, s2_operator, s2_wigner, von_neumann_entropy,
    wehrl_entropy, HusimiParameter,
};
pub use error::{Error, Result};
pub use field::{FieldKind, PhaseSpaceField};
pub use grid::{build_grid, PhaseSpaceGrid};
pub use io::{export_field, load_field_json, load_scenario, ExportFormat, Operation, Scenario};
pub use state::{DensityOperatorKernel, WaveFunction};
pub use statelib::{
    box_field, cat_state, coherent_state, constant_field, exp_quadratic_field,
    gaussian_bump_field, harmonic_eigenstate, BoxShape, BuiltState, StateSpec,
};
pub use weyl::{
    hilbert_schmidt_trace, inverse_weyl, marginals, wigner_from_density, wigner_from_pure,
};
