//! Property tests for the algebraic invariants of the analytic layer.

use num_complex::Complex64 as C64;
use proptest::prelude::*;
use squeezelab_core::mach_zehnder::{mean_n2_out, mean_n_out, MZConfig, Port};
use squeezelab_core::photon_stats::{mean_n_total, p_even, p_odd};
use squeezelab_core::quadratures::{
    transition_polys_from_coeffs, transition_roots, variance_conventional, variance_from_coeffs,
    variance_general, variance_one_photon, TransitionRoots,
};
use squeezelab_core::su11::{
    disentangle_conventional, disentangle_general, property_residual, SqueezeParams,
};

fn params_strategy() -> impl Strategy<Value = SqueezeParams> {
    (
        -10.0f64..10.0,
        0.0f64..2.0,
        0.0f64..std::f64::consts::TAU,
        0.0f64..std::f64::consts::FRAC_PI_2,
    )
        .prop_map(|(alpha, tau_abs, tau_phase, theta)| {
            SqueezeParams::new(alpha, C64::from_polar(tau_abs, tau_phase), theta).unwrap()
        })
}

proptest! {
    #[test]
    fn p_plus_strictly_inside_unit_disk(p in params_strategy()) {
        let c = disentangle_general(&p);
        prop_assert!(c.p_plus().norm() < 1.0);
    }

    #[test]
    fn disentanglement_identity_residual(p in params_strategy()) {
        let c = disentangle_general(&p);
        prop_assert!(property_residual(&c) < 1e-12);
    }

    #[test]
    fn p_minus_is_p_plus_up_to_phase(p in params_strategy()) {
        let c = disentangle_general(&p);
        let scale = c.p_plus().norm();
        if scale > 1e-12 {
            let rel = (c.p_minus().norm() - scale).abs() / scale;
            prop_assert!(rel < 5e-16, "relative defect {rel}");
        } else {
            prop_assert!(c.p_minus().norm() <= scale);
        }
    }

    #[test]
    fn conventional_is_general_at_alpha_zero(
        tau_abs in 0.0f64..2.0,
        tau_phase in 0.0f64..std::f64::consts::TAU,
    ) {
        let tau = C64::from_polar(tau_abs, tau_phase);
        let g = disentangle_general(&SqueezeParams::new(0.0, tau, 0.0).unwrap());
        let c = disentangle_conventional(tau);
        prop_assert!((g.p_plus() - c.p_plus()).norm() < 1e-12);
        prop_assert!((g.p_zero() - c.p_zero()).norm() < 1e-12);
        prop_assert!((g.p_minus() - c.p_minus()).norm() < 1e-12);
    }

    #[test]
    fn heisenberg_bound(p in params_strategy()) {
        let v = variance_general(&p);
        prop_assert!(v.var_q >= 0.0 && v.var_p >= 0.0);
        prop_assert!(v.var_q * v.var_p >= 0.25 - 1e-10, "product {}", v.var_q * v.var_p);
    }

    #[test]
    fn variance_reduction_chain(
        tau_abs in 0.0f64..2.0,
        tau_phase in 0.0f64..std::f64::consts::TAU,
    ) {
        let tau = C64::from_polar(tau_abs, tau_phase);
        let g0 = variance_general(&SqueezeParams::new(0.0, tau, 0.0).unwrap());
        let c = variance_conventional(tau);
        prop_assert!((g0.var_q - c.var_q).abs() < 1e-12);
        prop_assert!((g0.var_p - c.var_p).abs() < 1e-12);

        let g1 = variance_general(
            &SqueezeParams::new(0.0, tau, std::f64::consts::FRAC_PI_2).unwrap(),
        );
        let o = variance_one_photon(tau);
        prop_assert!((g1.var_q - o.var_q).abs() < 1e-12);
        prop_assert!((g1.var_p - o.var_p).abs() < 1e-12);
    }

    #[test]
    fn polynomial_split_reproduces_variances(p in params_strategy()) {
        let c = disentangle_general(&p);
        let polys = transition_polys_from_coeffs(&c);
        let direct = variance_from_coeffs(&c, p.theta());
        let split = polys.variances_at(p.s());
        prop_assert!((direct.var_q - split.var_q).abs() < 1e-10);
        prop_assert!((direct.var_p - split.var_p).abs() < 1e-10);
    }

    #[test]
    fn f_polynomial_positive(p in params_strategy(), s in 0.0f64..=1.0) {
        let polys = transition_polys_from_coeffs(&disentangle_general(&p));
        prop_assert!(polys.f_at(s) > 0.0);
    }

    #[test]
    fn roots_annihilate_monic_g(x in -1.0f64..=-0.7321) {
        // G/L is monic with linear coefficient x and constant (1+x)/2
        for s in transition_roots(x).to_vec() {
            let residual = (s * s + x * s + (1.0 + x) / 2.0).abs();
            prop_assert!(residual < 1e-12, "residual {residual} at x={x}");
            prop_assert!((0.0..=1.0).contains(&s));
        }
    }

    #[test]
    fn out_of_range_x_yields_no_unit_roots(x in -0.73f64..1.0) {
        // discriminant is negative strictly inside (1-sqrt(3), 1+sqrt(3))
        prop_assert_eq!(transition_roots(x), TransitionRoots::Empty);
    }

    #[test]
    fn sector_distributions_see_only_p_plus_magnitude(
        alpha in -10.0f64..10.0,
        tau_abs in 0.0f64..1.8,
        phase_a in 0.0f64..std::f64::consts::TAU,
        phase_b in 0.0f64..std::f64::consts::TAU,
    ) {
        let ca = disentangle_general(
            &SqueezeParams::new(alpha, C64::from_polar(tau_abs, phase_a), 0.0).unwrap(),
        );
        let cb = disentangle_general(
            &SqueezeParams::new(alpha, C64::from_polar(tau_abs, phase_b), 0.0).unwrap(),
        );
        for n in [0usize, 1, 3, 10] {
            let (pa, pb) = (p_even(n, &ca), p_even(n, &cb));
            prop_assert!((pa - pb).abs() <= 1e-11 * pa.max(1e-30));
            let (qa, qb) = (p_odd(n, &ca), p_odd(n, &cb));
            prop_assert!((qa - qb).abs() <= 1e-11 * qa.max(1e-30));
        }
    }

    #[test]
    fn ports_conserve_photon_number(
        p in params_strategy(),
        z_abs in 0.0f64..2.0,
        z_phase in 0.0f64..std::f64::consts::TAU,
        phi in 0.0f64..std::f64::consts::TAU,
    ) {
        let z = C64::from_polar(z_abs, z_phase);
        let ca = MZConfig::new(z, phi, Port::APrime).unwrap();
        let cb = MZConfig::new(z, phi, Port::BPrime).unwrap();
        let total = mean_n_out(&ca, &p) + mean_n_out(&cb, &p);
        let expect = z.norm_sqr() + mean_n_total(&p);
        prop_assert!((total - expect).abs() < 1e-8, "defect {}", total - expect);
    }

    #[test]
    fn port_shift_direction_is_immaterial(
        p in params_strategy(),
        phi in 0.0f64..std::f64::consts::TAU,
    ) {
        let z = C64::new(1.0, 0.0);
        let plus = MZConfig::new(z, phi + std::f64::consts::PI, Port::APrime).unwrap();
        let minus = MZConfig::new(z, phi - std::f64::consts::PI, Port::APrime).unwrap();
        prop_assert!((mean_n_out(&plus, &p) - mean_n_out(&minus, &p)).abs() < 1e-10);
        prop_assert!((mean_n2_out(&plus, &p) - mean_n2_out(&minus, &p)).abs() < 1e-9);
    }
}
