//! Checks of the transform stack against independent brute-force quadrature
//! oracles and frozen closed-form values.

mod common;

use common::*;
use pslab::*;

fn grid() -> PhaseSpaceGrid {
    build_grid(1.0, 8.0, 256).unwrap()
}

type AnalyticState = Box<dyn Fn(f64) -> num_complex::Complex64>;

#[test]
fn wigner_origin_values_against_quadrature() {
    let g = grid();
    // oracle first: direct quadrature of the defining integral
    let oracle0 = wigner_point(&psi_n(0), 0.0, 0.0);
    let oracle1 = wigner_point(&psi_n(1), 0.0, 0.0);
    assert!((oracle0 - 1.0 / PI).abs() < 1e-10);
    assert!((oracle1 + 1.0 / PI).abs() < 1e-10);

    let w0 = wigner_from_pure(&harmonic_eigenstate(0, &g).unwrap()).unwrap();
    let w1 = wigner_from_pure(&harmonic_eigenstate(1, &g).unwrap()).unwrap();
    assert!((w0.value_near(0.0, 0.0) - oracle0).abs() < 1e-9);
    assert!((w1.value_near(0.0, 0.0) - oracle1).abs() < 1e-9);
}

/// Window an analytic state to the grid's x-domain; grid states are exactly
/// zero outside the box, and comparisons at 1e−8 resolve that difference
/// for states with boundary tails (the odd cat's is ~1e−7).
fn windowed(
    psi: impl Fn(f64) -> num_complex::Complex64 + 'static,
    half_width: f64,
) -> AnalyticState {
    Box::new(move |x| {
        if x.abs() <= half_width {
            psi(x)
        } else {
            num_complex::Complex64::new(0.0, 0.0)
        }
    })
}

#[test]
fn wigner_fields_match_quadrature_pointwise() {
    let g = grid();
    let cases: Vec<(AnalyticState, WaveFunction)> = vec![
        (windowed(psi_n(5), 8.0), harmonic_eigenstate(5, &g).unwrap()),
        (
            windowed(psi_coherent(2.0, 0.0), 8.0),
            coherent_state(2.0, 0.0, &g).unwrap(),
        ),
        (
            windowed(psi_cat(6.0, -1.0), 8.0),
            cat_state(6.0, -1, &g).unwrap(),
        ),
    ];
    // a handful of grid points scattered around the support
    let probes = [(128usize, 128usize), (160, 128), (128, 136), (144, 120), (100, 130)];
    for (analytic, state) in cases {
        let w = wigner_from_pure(&state).unwrap();
        for (j, k) in probes {
            let want = wigner_point(&analytic, g.x(j), g.p(k));
            let got = w.value_at(j, k);
            // the cat's ~3e−6 boundary amplitude leaves ~2e−8 of ringing
            // in the band-limited refinement of the truncated state
            assert!(
                (got - want).abs() < 5e-8,
                "W({}, {}): impl {got:.12e} vs oracle {want:.12e}",
                g.x(j),
                g.p(k)
            );
        }
    }
}

#[test]
fn odd_cat_origin_is_minus_inverse_pi() {
    let g = grid();
    let oracle = wigner_point(&psi_cat(6.0, -1.0), 0.0, 0.0);
    assert!((oracle + 1.0 / PI).abs() < 1e-3);
    let w = wigner_from_pure(&cat_state(6.0, -1, &g).unwrap()).unwrap();
    assert!((w.value_near(0.0, 0.0) + 1.0 / PI).abs() < 1e-3);
}

#[test]
fn even_cat_has_positive_origin_fringe() {
    let g = grid();
    let w = wigner_from_pure(&cat_state(6.0, 1, &g).unwrap()).unwrap();
    assert!(w.value_near(0.0, 0.0) > 0.0);
}

#[test]
fn coherent_peak_sits_at_displacement() {
    let g = grid();
    let w = wigner_from_pure(&coherent_state(2.0, 0.0, &g).unwrap()).unwrap();
    assert!((w.value_near(2.0, 0.0) - 1.0 / PI).abs() < 1e-6);
}

#[test]
fn marginal_values_against_closed_forms() {
    let g = grid();
    let w0 = wigner_from_pure(&harmonic_eigenstate(0, &g).unwrap()).unwrap();
    let (mx, mp) = marginals(&w0);
    assert!((mx[g.nx / 2] - PI.powf(-0.5)).abs() < 1e-9);
    for k in 0..g.np {
        assert!((mp[k] - mp[(g.np - k) % g.np]).abs() < 1e-10);
    }

    // Husimi x-marginal at the origin is broadened below |ψ₀(0)|²
    let q0 = husimi_from_state(
        &harmonic_eigenstate(0, &g).unwrap(),
        &HusimiParameter::default(),
    )
    .unwrap();
    let (qx, _) = marginals(&q0);
    assert!(qx[g.nx / 2] < PI.powf(-0.5) - 1e-2);
}

#[test]
fn momentum_marginals_match_fourier_densities() {
    let g = grid();
    struct Case {
        state: WaveFunction,
        density: Box<dyn Fn(f64) -> f64>,
    }
    let cases = vec![
        Case {
            state: harmonic_eigenstate(5, &g).unwrap(),
            density: Box::new(momentum_density_fock(5)),
        },
        Case {
            state: coherent_state(2.0, 0.0, &g).unwrap(),
            density: Box::new(momentum_density_coherent(0.0)),
        },
        Case {
            state: cat_state(6.0, -1, &g).unwrap(),
            density: Box::new(momentum_density_cat(6.0, -1.0)),
        },
    ];
    for case in cases {
        let w = wigner_from_pure(&case.state).unwrap();
        let (_, mp) = marginals(&w);
        for k in 0..g.np {
            let want = (case.density)(g.p(k));
            assert!(
                (mp[k] - want).abs() < 1e-6,
                "p-marginal at {}: {} vs {}",
                g.p(k),
                mp[k],
                want
            );
        }
    }
}

#[test]
fn husimi_matches_overlap_oracle() {
    let g = grid();
    let kappa = HusimiParameter::default();
    let cases: Vec<(AnalyticState, WaveFunction)> = vec![
        (Box::new(psi_n(0)), harmonic_eigenstate(0, &g).unwrap()),
        (Box::new(psi_n(1)), harmonic_eigenstate(1, &g).unwrap()),
        (Box::new(psi_cat(6.0, -1.0)), cat_state(6.0, -1, &g).unwrap()),
    ];
    let probes = [(128usize, 128usize), (144, 128), (128, 132), (112, 124)];
    for (analytic, state) in cases {
        let q = husimi_from_state(&state, &kappa).unwrap();
        for (j, k) in probes {
            let want = husimi_point(&analytic, g.x(j), g.p(k), 1.0);
            let got = q.value_at(j, k);
            assert!(
                (got - want).abs() < 1e-8,
                "Q({}, {}): impl {got:.12e} vs oracle {want:.12e}",
                g.x(j),
                g.p(k)
            );
        }
    }
}

#[test]
fn husimi_frozen_values() {
    let g = grid();
    let kappa = HusimiParameter::default();
    let q0 = husimi_from_state(&harmonic_eigenstate(0, &g).unwrap(), &kappa).unwrap();
    assert!((q0.value_near(0.0, 0.0) - 1.0 / (2.0 * PI)).abs() < 1e-9);
    let q1 = husimi_from_state(&harmonic_eigenstate(1, &g).unwrap(), &kappa).unwrap();
    assert!(q1.value_near(0.0, 0.0).abs() < 1e-9);
}

#[test]
fn inverse_weyl_kernel_matches_analytic_projector() {
    let g = grid();
    let psi = psi_n(0);
    let w = wigner_from_pure(&harmonic_eigenstate(0, &g).unwrap()).unwrap();
    let rho = inverse_weyl(&w);
    for (j, k) in [(128usize, 128usize), (140, 120), (100, 160), (128, 96)] {
        let want = (psi(g.x(j)) * psi(g.x(k)).conj()).re * g.dx;
        let got = rho.matrix[[j, k]].re;
        assert!(
            (got - want).abs() < 1e-9,
            "ρ({}, {}): {got:.12e} vs {want:.12e}",
            g.x(j),
            g.x(k)
        );
    }
}

#[test]
fn box_kernel_has_strictly_negative_eigenvalue() {
    let g = grid();
    for shape in [BoxShape::Square, BoxShape::Disk] {
        let f = box_field(4.0, shape, &g).unwrap();
        let rho = inverse_weyl(&f);
        let eigs = rho.eigenvalues().unwrap();
        assert!(
            eigs[0] < -1e-4,
            "{shape:?}: min eigenvalue {:.3e}",
            eigs[0]
        );
    }
}

#[test]
fn wehrl_frozen_value_and_ordering() {
    let g = grid();
    let kappa = HusimiParameter::default();
    let q0 = husimi_from_state(&harmonic_eigenstate(0, &g).unwrap(), &kappa).unwrap();
    let want = 1.0 + (2.0 * PI).ln(); // −∫ q ln q for q = (1/2π)e^{−r²/2}
    assert!((wehrl_entropy(&q0).unwrap() - want).abs() < 1e-4);
}

#[test]
fn probe_limit_matches_gaussian_closed_form() {
    let kernel = SmoothingKernel::new(1.0, 1.0).unwrap();
    let cutoffs: Vec<f64> = (2..=8).map(f64::from).collect();
    let report = divergence_probe(0.25, &kernel, &cutoffs).unwrap();
    // I(∞) = 1/(1 − 2aσ²) for a < 1/(2σ²)
    let limit = 2.0;
    let last = *report.values.last().unwrap();
    assert!((last - limit).abs() / limit < 1e-4, "I(8) = {last}");
    // finite-R truncation: I(R) = limit·(1 − e^{−cR²}) with c = 1/2σ² − a;
    // small radii carry the cell-mask edge error of the disk boundary
    for (radius, value) in report.cutoffs.iter().zip(report.values.iter()) {
        let expect = limit * (1.0 - (-0.25 * radius * radius).exp());
        assert!(
            (value - expect).abs() / expect < 2e-2,
            "I({radius}) = {value}, closed form {expect}"
        );
    }
}

#[test]
fn husimi_field_purity_closed_form() {
    // (2π)∫Q₀² = 1/2 for the κ=1 Husimi of the ground state
    let g = grid();
    let q0 = husimi_from_state(
        &harmonic_eigenstate(0, &g).unwrap(),
        &HusimiParameter::default(),
    )
    .unwrap();
    assert!((purity_integral(&q0) - 0.5).abs() < 1e-3);
}

#[test]
fn parity_residual_of_displaced_state() {
    let g = grid();
    let w = wigner_from_pure(&coherent_state(2.0, 0.0, &g).unwrap()).unwrap();
    let want = (1.0 - (-16.0f64).exp()) / PI;
    assert!((parity_residual(&w) - want).abs() < 1e-5);
}
