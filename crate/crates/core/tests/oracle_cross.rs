//! Cross-validation of every closed form against the truncated-Fock oracle
//! on seeded random parameter grids.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use squeezelab_core::mach_zehnder::{mean_n2_out, mean_n_out, MZConfig, Port};
use squeezelab_core::oracle::{
    oracle_distribution, oracle_mz_auto, oracle_state_auto, oracle_variances,
};
use squeezelab_core::photon_stats::p_n;
use squeezelab_core::quadratures::{squeezed_quadrature, transition_polys, variance_general};
use squeezelab_core::states::fock_amplitudes;
use squeezelab_core::su11::SqueezeParams;

fn random_params(rng: &mut ChaCha8Rng, tau_max: f64, alpha_max: f64) -> SqueezeParams {
    let alpha = rng.gen_range(-alpha_max..alpha_max);
    let tau = C64::from_polar(
        rng.gen_range(0.0..tau_max),
        rng.gen_range(0.0..std::f64::consts::TAU),
    );
    let theta = rng.gen_range(0.0..std::f64::consts::FRAC_PI_2);
    SqueezeParams::new(alpha, tau, theta).unwrap()
}

#[test]
fn amplitudes_match_oracle_entrywise() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for _ in 0..25 {
        let p = random_params(&mut rng, 2.0, 8.0);
        let analytic = fock_amplitudes(&p, 1e-14).unwrap();
        let oracle = oracle_state_auto(&p).unwrap();
        for n in 0..analytic.len().min(oracle.len()) {
            worst = worst.max((analytic.amplitude(n) - oracle.amplitude(n)).norm());
        }
    }
    assert!(worst < 1e-8, "entrywise deviation {worst}");
}

#[test]
fn amplitudes_match_across_log_branch_windows() {
    // beta > pi (one unwinding) and beta > 2 pi (two): the even/odd
    // prefactor signs must track the exponential, not the principal log
    for (alpha, tau) in [(7.0, 0.5), (13.0, 0.4), (20.0, 1.0), (-7.0, 0.5), (27.0, 1.3)] {
        let p = SqueezeParams::new(alpha, C64::new(tau, 0.0), 0.7).unwrap();
        let analytic = fock_amplitudes(&p, 1e-14).unwrap();
        let oracle = oracle_state_auto(&p).unwrap();
        let mut worst = 0.0f64;
        for n in 0..analytic.len() {
            worst = worst.max((analytic.amplitude(n) - oracle.amplitude(n)).norm());
        }
        assert!(worst < 1e-9, "deviation {worst} at alpha={alpha}, tau={tau}");
    }
}

#[test]
fn variances_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0.0f64;
    for _ in 0..40 {
        let p = random_params(&mut rng, 2.0, 10.0);
        let a = variance_general(&p);
        let o = oracle_variances(&oracle_state_auto(&p).unwrap());
        worst = worst.max((a.var_q - o.var_q).abs().max((a.var_p - o.var_p).abs()));
    }
    assert!(worst < 1e-8, "variance deviation {worst}");
}

#[test]
fn squeezing_classification_matches_oracle_variances() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..25 {
        let p = random_params(&mut rng, 1.5, 6.0);
        let polys = transition_polys(&p);
        let class = squeezed_quadrature(p.s(), &polys);
        let o = oracle_variances(&oracle_state_auto(&p).unwrap());
        use squeezelab_core::quadratures::SqueezedQuadrature::*;
        match class {
            QSqueezed => assert!(o.var_q < 0.5 + 1e-9 && o.var_q < o.var_p + 1e-9),
            PSqueezed => assert!(o.var_p < 0.5 + 1e-9 && o.var_p < o.var_q + 1e-9),
            Neither => {
                assert!(o.var_q.min(o.var_p) > 0.5 - 1e-7 || (o.var_q - o.var_p).abs() < 1e-7)
            }
        }
    }
}

#[test]
fn photon_probabilities_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let p = random_params(&mut rng, 2.0, 8.0);
        let state = oracle_state_auto(&p).unwrap();
        let dist = oracle_distribution(&state);
        for big_n in 0..60 {
            worst = worst.max((p_n(big_n, &p) - dist.probs()[big_n]).abs());
        }
    }
    assert!(worst < 1e-8, "probability deviation {worst}");
}

#[test]
fn figure_scan_shapes_with_oracle_spot_checks() {
    // alpha in [0, 30] step 0.1 at tau = 0.1 for four mixing angles; ten
    // seeded rows re-evaluated by the two-mode oracle
    use squeezelab_core::mach_zehnder::{q_scan, ScanGrid};
    let config = MZConfig::new(
        C64::new(1.0, 0.0),
        std::f64::consts::FRAC_PI_2,
        Port::APrime,
    )
    .unwrap();
    let grid = ScanGrid {
        taus: vec![C64::new(0.1, 0.0)],
        thetas: vec![
            0.0,
            std::f64::consts::FRAC_PI_8,
            std::f64::consts::FRAC_PI_4,
            std::f64::consts::FRAC_PI_2,
        ],
        alphas: (0..=300).map(|k| k as f64 * 0.1).collect(),
    };
    let rows = q_scan(&config, &grid);
    assert_eq!(rows.len(), 4 * 301);

    // theta = 0 has a sub-Poissonian window; the most negative point is
    // confirmed negative by the oracle
    let theta0: Vec<_> = rows.iter().filter(|r| r.theta == 0.0).collect();
    let most_negative = theta0
        .iter()
        .min_by(|a, b| a.mandel_q.unwrap().total_cmp(&b.mandel_q.unwrap()))
        .unwrap();
    assert!(most_negative.mandel_q.unwrap() < 0.0);
    let p = SqueezeParams::new(most_negative.alpha, most_negative.tau, 0.0).unwrap();
    let obs = oracle_mz_auto(&config, &p).unwrap();
    assert!(obs.mandel_q < 0.0);

    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let row = &rows[rng.gen_range(0..rows.len())];
        let p = SqueezeParams::new(row.alpha, row.tau, row.theta).unwrap();
        let obs = oracle_mz_auto(&config, &p).unwrap();
        worst = worst
            .max((obs.mean_n - row.mean_n).abs())
            .max((obs.mean_n2 - row.mean_n2).abs());
    }
    assert!(worst < 1e-7, "spot-check deviation {worst}");
}

#[test]
fn mz_moments_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut worst = 0.0f64;
    for k in 0..20 {
        let p = random_params(&mut rng, 1.5, 10.0);
        let z = C64::from_polar(
            rng.gen_range(0.0..2.0),
            rng.gen_range(0.0..std::f64::consts::TAU),
        );
        let phi = rng.gen_range(0.0..std::f64::consts::TAU);
        let port = if k % 2 == 0 { Port::APrime } else { Port::BPrime };
        let c = MZConfig::new(z, phi, port).unwrap();
        let obs = match oracle_mz_auto(&c, &p) {
            Ok(obs) => obs,
            Err(_) => continue, // vanishing output mean: Q undefined
        };
        worst = worst.max((obs.mean_n - mean_n_out(&c, &p)).abs());
        worst = worst.max((obs.mean_n2 - mean_n2_out(&c, &p)).abs());
    }
    assert!(worst < 1e-7, "MZ moment deviation {worst}");
}
