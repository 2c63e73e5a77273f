//! Property tests for the spec-level invariants: grid conjugacy, picture
//! equivalence, transform linearity, smoothing behavior, and export
//! round-trips.

use proptest::prelude::*;
use pslab::*;

fn small_grid() -> PhaseSpaceGrid {
    build_grid(1.0, 8.0, 64).unwrap()
}

/// Random convex weights over the first four oscillator levels.
fn weights() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.05f64..1.0, 4).prop_map(|raw| {
        let total: f64 = raw.iter().sum();
        raw.into_iter().map(|w| w / total).collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn grid_conjugacy_holds(
        hbar in 0.1f64..4.0,
        half_width in 2.0f64..20.0,
        exp in 3u32..9,
    ) {
        let nx = 1usize << exp;
        let g = build_grid(hbar, half_width, nx).unwrap();
        let residual = (g.dx * g.dp * g.nx as f64 - 2.0 * std::f64::consts::PI * hbar).abs();
        prop_assert!(residual <= 1e-12 * hbar.max(1.0));
    }

    #[test]
    fn picture_equivalence_on_random_mixtures(ws in weights()) {
        let g = small_grid();
        let states: Vec<_> = (0..4)
            .map(|n| harmonic_eigenstate(n, &g).unwrap())
            .collect();
        let parts: Vec<(f64, &WaveFunction)> =
            ws.iter().copied().zip(states.iter()).collect();
        let rho = DensityOperatorKernel::mixture(&parts).unwrap();
        let w = wigner_from_density(&rho).unwrap();

        let s2_op = s2_operator(&rho).unwrap();
        let s2_w = s2_wigner(&w);
        prop_assert!((s2_op - s2_w).abs() <= 1e-6, "op {s2_op} vs field {s2_w}");
        prop_assert!((-1e-9..=1.0).contains(&s2_w));
        prop_assert!(von_neumann_entropy(&rho).unwrap() >= -1e-9);
        // Wigner bound: convex mixtures stay under 1/πħ
        prop_assert!(wigner_bound_check(&w) <= 1.0 + 1e-8);
    }

    #[test]
    fn density_transform_is_affine(alpha in 0.05f64..0.95) {
        let g = small_grid();
        let a = harmonic_eigenstate(0, &g).unwrap();
        let b = harmonic_eigenstate(2, &g).unwrap();
        let mixed = DensityOperatorKernel::mixture(&[(alpha, &a), (1.0 - alpha, &b)]).unwrap();
        let w_mixed = wigner_from_density(&mixed).unwrap();
        let w_a = wigner_from_pure(&a).unwrap();
        let w_b = wigner_from_pure(&b).unwrap();
        let combo = w_a.linear_combination(alpha, &w_b, 1.0 - alpha).unwrap();
        let diff = w_mixed
            .values()
            .iter()
            .zip(combo.values().iter())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0f64, f64::max);
        prop_assert!(diff <= 1e-10, "linearity violated by {diff:.3e}");
    }

    #[test]
    fn smoothing_preserves_mass_and_raises_s2(
        sigma_x in 0.3f64..1.5,
        sigma_p in 0.3f64..1.5,
        n in 0usize..4,
    ) {
        let g = small_grid();
        let w = wigner_from_pure(&harmonic_eigenstate(n, &g).unwrap()).unwrap();
        let kernel = SmoothingKernel::new(sigma_x, sigma_p).unwrap();
        let smoothed = gaussian_smooth(&w, &kernel).unwrap();
        prop_assert!((smoothed.integral() - w.integral()).abs() <= 1e-6);
        prop_assert!(s2_wigner(&smoothed) >= s2_wigner(&w) - 1e-8);
    }

    #[test]
    fn cat_fields_are_even(d in 4.0f64..6.5, odd in any::<bool>()) {
        let g = small_grid();
        let parity = if odd { -1 } else { 1 };
        let w = wigner_from_pure(&cat_state(d, parity, &g).unwrap()).unwrap();
        prop_assert!(parity_residual(&w) <= 1e-8);
    }

    #[test]
    fn displacement_leaves_wehrl_and_s2_invariant(
        x0 in -2.0f64..2.0,
        p0 in -2.0f64..2.0,
    ) {
        let g = small_grid();
        let kappa = HusimiParameter::default();
        let base = husimi_from_state(&harmonic_eigenstate(0, &g).unwrap(), &kappa).unwrap();
        let displaced_state = coherent_state(x0, p0, &g).unwrap();
        let displaced = husimi_from_state(&displaced_state, &kappa).unwrap();
        let s_base = wehrl_entropy(&base).unwrap();
        let s_disp = wehrl_entropy(&displaced).unwrap();
        prop_assert!((s_base - s_disp).abs() <= 1e-6, "{s_base} vs {s_disp}");

        let w = wigner_from_pure(&displaced_state).unwrap();
        prop_assert!(s2_wigner(&w).abs() <= 1e-6);
    }

    #[test]
    fn field_exports_round_trip(
        sigma_x in 0.3f64..1.5,
        sigma_p in 0.3f64..1.5,
        x0 in -1.0f64..1.0,
        p0 in -1.0f64..1.0,
    ) {
        let g = build_grid(1.0, 8.0, 16).unwrap();
        let field = gaussian_bump_field(sigma_x, sigma_p, x0, p0, &g).unwrap();
        let dir = tempfile::tempdir().unwrap();

        let json_path = dir.path().join("field.json");
        export_field(&field, ExportFormat::Json, &json_path).unwrap();
        let back = load_field_json(&json_path).unwrap();
        for j in 0..g.nx {
            for k in 0..g.np {
                prop_assert_eq!(
                    back.value_at(j, k).to_bits(),
                    field.value_at(j, k).to_bits()
                );
            }
        }

        let csv_path = dir.path().join("field.csv");
        export_field(&field, ExportFormat::Csv, &csv_path).unwrap();
        let text = std::fs::read_to_string(&csv_path).unwrap();
        for (line, (j, k)) in text.lines().skip(1).zip(
            (0..g.nx).flat_map(|j| (0..g.np).map(move |k| (j, k))),
        ) {
            let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
            prop_assert!((cols[2] - field.value_at(j, k)).abs() <= 1e-15);
        }
    }
}

#[test]
fn round_trip_identity_on_library_states() {
    let g = build_grid(1.0, 8.0, 256).unwrap();
    let states = [
        harmonic_eigenstate(0, &g).unwrap(),
        harmonic_eigenstate(5, &g).unwrap(),
        coherent_state(2.0, 0.0, &g).unwrap(),
        cat_state(6.0, -1, &g).unwrap(),
    ];
    for psi in states {
        let w = wigner_from_pure(&psi).unwrap();
        let back = wigner_from_density(&inverse_weyl(&w)).unwrap();
        let diff = w
            .values()
            .iter()
            .zip(back.values().iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        assert!(diff <= 1e-8, "round trip error {diff:.3e}");
    }
}

#[test]
fn admissibility_of_states_and_mixtures() {
    let g = build_grid(1.0, 8.0, 256).unwrap();
    let f0 = harmonic_eigenstate(0, &g).unwrap();
    let f1 = harmonic_eigenstate(1, &g).unwrap();
    let mixed = DensityOperatorKernel::mixture(&[(0.5, &f0), (0.5, &f1)]).unwrap();
    for field in [
        wigner_from_pure(&cat_state(6.0, -1, &g).unwrap()).unwrap(),
        wigner_from_density(&mixed).unwrap(),
    ] {
        let report = admissibility_report(&field).unwrap();
        assert_eq!(report.verdict, AdmissibilityVerdict::Admissible);
    }
}

#[test]
fn kernel_field_is_exactly_even() {
    let g = build_grid(1.0, 8.0, 64).unwrap();
    let kernel = SmoothingKernel::new(0.7, 1.3).unwrap();
    assert_eq!(parity_residual(&kernel.as_field(&g)), 0.0);
}
