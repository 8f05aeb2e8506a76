use approx::assert_relative_eq;
use proptest::prelude::*;
use wavebound::formulation::{
    amplitude_of_eta, amplitude_of_f, babenko_residual, dynamic_residual, eta_to_f, f_to_eta, k_integral, k_spectral,
    section_three_report, PhysicalParams,
};
use wavebound::solver::{laminar_profile, laminar_state};
use wavebound::spectral::{Grid, SurfaceProfile};
use wavebound::verify::random_admissible;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn laminar_flow_solves_both_forms(
        g in 1.0f64..20.0, d in 0.1f64..5.0, gamma in -8.0f64..8.0, m in -6.0f64..-0.2,
    ) {
        let p = laminar_state(g, d, gamma, m).unwrap();
        let eta = laminar_profile(&p, Grid::new(32).unwrap());
        prop_assert!(dynamic_residual(&p, &eta).unwrap().sup_norm() <= 8.0 * f64::EPSILON * p.q);
        prop_assert!(babenko_residual(&p, &eta).unwrap().sup_norm() <= 1e-12 * p.q);
    }

    #[test]
    fn surface_change_of_variable_round_trips(seed in 0u64..1000, q in 5.0f64..60.0) {
        let grid = Grid::new(64).unwrap();
        let p = PhysicalParams::new(9.81, 1.0, 0.5, -2.0, q).unwrap();
        let f = random_admissible(seed, 0, grid);
        let back = eta_to_f(&f_to_eta(&f, &p), &p);
        prop_assert!(back.sub(&f).sup_norm() < 1e-12 * (1.0 + p.head()));
        prop_assert!((amplitude_of_eta(&f_to_eta(&f, &p)) - amplitude_of_f(&f)).abs() < 1e-12);
    }

    #[test]
    fn k_operator_oracles_agree(seed in 0u64..1000, d in 0.2f64..5.0) {
        let f = random_admissible(seed, 1, Grid::new(64).unwrap());
        let gap = k_spectral(&f, d).unwrap().sub(&k_integral(&f, d).unwrap()).sup_norm();
        prop_assert!(gap < 1e-8);
    }
}

#[test]
fn constant_profile_has_zero_k() {
    let f = SurfaceProfile::constant(Grid::new(32).unwrap(), 2.5);
    assert!(k_spectral(&f, 1.0).unwrap().sup_norm() < 1e-14);
}

#[test]
fn cubic_sum_identity_on_single_mode() {
    let grid = Grid::new(64).unwrap();
    let f = SurfaceProfile::from_cosines(grid, vec![2.0, -0.3]);
    let p = PhysicalParams::new(9.81, 1.0, -1.0, -3.0, 40.0).unwrap();
    let r = section_three_report(&p, &f).unwrap();
    assert_relative_eq!(r.amplitude, 0.6, epsilon = 1e-14);
    let s = r.s_pi.add(&r.s_0);
    for j in 0..s.grid().n_points() {
        assert_relative_eq!(s.at(j), -r.amplitude.powi(3) / 6.0, max_relative = 1e-10);
    }
}
