//! Fock-space amplitudes of the generalized squeezed vacuum.
//!
//! The state splits into definite-parity sectors,
//! `cos(theta) sum_n c_{2n} |2n> + sin(theta) sum_n c_{2n+1} |2n+1>`, with
//! `c_{2n} = exp(p0/4) (p+/2)^n sqrt((2n)!)/n!` and
//! `c_{2n+1} = exp(3p0/4) (p+/2)^n sqrt((2n+1)!)/n!`.

use num_complex::Complex64 as C64;

use crate::error::SqueezeError;
use crate::numeric::ln_factorial;
use crate::su11::{disentangle_general, DisentangledCoeffs, SqueezeParams};

/// Hard cap on the truncation search; |p+| < 1 guarantees termination well
/// below this for any parameters of physical interest.
const MAX_LEN: usize = 4_000_000;

/// Finite Fock-amplitude vector with a certified bound on the discarded mass.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    amplitudes: Vec<C64>,
    tail_bound: f64,
}

impl FockVector {
    pub fn from_parts(amplitudes: Vec<C64>, tail_bound: f64) -> Self {
        Self {
            amplitudes,
            tail_bound,
        }
    }

    /// Amplitude of `|n>`; zero beyond the truncation.
    pub fn amplitude(&self, n: usize) -> C64 {
        self.amplitudes.get(n).copied().unwrap_or(C64::new(0.0, 0.0))
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    /// Upper bound on the squared norm of the discarded amplitudes.
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// Even-sector amplitude `c_{2n}` in log-factorial arithmetic.
///
/// `sqrt((2n)!)/n!` overflows f64 factorials near n = 85; the log-gamma form
/// holds to n = 10^4 and beyond.
pub fn c_even(n: usize, coeffs: &DisentangledCoeffs) -> C64 {
    if n == 0 {
        return coeffs.even_prefactor();
    }
    let half = coeffs.p_plus() / 2.0;
    if half.norm_sqr() == 0.0 {
        return C64::new(0.0, 0.0);
    }
    let ln_ratio = 0.5 * ln_factorial(2 * n) - ln_factorial(n);
    let ln_mag = n as f64 * half.norm().ln() + ln_ratio;
    let phase = n as f64 * half.arg();
    coeffs.even_prefactor() * C64::from_polar(ln_mag.exp(), phase)
}

/// Odd-sector amplitude `c_{2n+1}`, same arithmetic as [`c_even`].
pub fn c_odd(n: usize, coeffs: &DisentangledCoeffs) -> C64 {
    if n == 0 {
        return coeffs.odd_prefactor();
    }
    let half = coeffs.p_plus() / 2.0;
    if half.norm_sqr() == 0.0 {
        return C64::new(0.0, 0.0);
    }
    let ln_ratio = 0.5 * ln_factorial(2 * n + 1) - ln_factorial(n);
    let ln_mag = n as f64 * half.norm().ln() + ln_ratio;
    let phase = n as f64 * half.arg();
    coeffs.odd_prefactor() * C64::from_polar(ln_mag.exp(), phase)
}

/// Builds the state vector of `U(alpha,tau)(cos(theta)|0> + sin(theta)|1>)`
/// truncated so that the discarded squared norm is at most `eps`.
///
/// The truncation index comes from the geometric tails of the parity-sector
/// weights: successive even weights shrink by `|p+|^2 (2n+1)/(2n+2)` and odd
/// ones by `|p+|^2 (2n+3)/(2n+2)`, both summable in closed form. The error
/// branch reports the achieved bound when `eps` is out of reach.
pub fn fock_amplitudes(params: &SqueezeParams, eps: f64) -> Result<FockVector, SqueezeError> {
    assert!(eps > 0.0, "tail bound must be positive");
    let coeffs = disentangle_general(params);
    // snap the parity weights at the interval endpoints so theta = pi/2
    // (where cos evaluates to ~6e-17) zeroes the even sector exactly
    let cos_t = snap_tiny(params.theta().cos());
    let sin_t = snap_tiny(params.theta().sin());
    let w_even = cos_t * cos_t;
    let w_odd = sin_t * sin_t;
    let y2 = coeffs.p_plus().norm_sqr();
    if y2 >= 1.0 {
        // |p+| rounded up to 1: the geometric tail bounds are void
        return Err(SqueezeError::TruncationFailure {
            requested: eps,
            achieved: f64::INFINITY,
        });
    }

    // amplitude recurrences: all factors are O(1), so rounding stays at
    // a few ulps per step
    let mut ce = coeffs.even_prefactor();
    let mut co = coeffs.odd_prefactor();
    let half = coeffs.p_plus() / 2.0;

    let mut amps: Vec<C64> = Vec::with_capacity(64);
    let mut n = 0usize;
    loop {
        amps.push(ce * cos_t);
        amps.push(co * sin_t);

        let tail = w_even * even_tail_bound(ce.norm_sqr(), y2)
            + w_odd * odd_tail_bound(co.norm_sqr(), y2, n);
        if tail <= eps {
            let mut v = FockVector {
                amplitudes: amps,
                tail_bound: tail,
            };
            trim_trailing_zeros(&mut v.amplitudes);
            return Ok(v);
        }
        if amps.len() >= MAX_LEN {
            return Err(SqueezeError::TruncationFailure {
                requested: eps,
                achieved: tail,
            });
        }

        let m = n as f64;
        ce *= half * ((2.0 * m + 1.0) * (2.0 * m + 2.0)).sqrt() / (m + 1.0);
        co *= half * ((2.0 * m + 2.0) * (2.0 * m + 3.0)).sqrt() / (m + 1.0);
        n += 1;
    }
}

/// Tail of the even sector past a term of weight `w = |c_{2n}|^2`:
/// ratios are bounded by `y2`, so the tail is at most `w y2 / (1 - y2)`.
fn even_tail_bound(w: f64, y2: f64) -> f64 {
    if y2 >= 1.0 {
        return f64::INFINITY;
    }
    w * y2 / (1.0 - y2)
}

/// Tail of the odd sector past `w = |c_{2n+1}|^2`:
/// `sum_{k>=1} y2^k (2n+2k+1)/(2n+1) = y2/(1-y2) + (2/(2n+1)) y2/(1-y2)^2`.
fn odd_tail_bound(w: f64, y2: f64, n: usize) -> f64 {
    if y2 >= 1.0 {
        return f64::INFINITY;
    }
    let g = y2 / (1.0 - y2);
    w * (g + 2.0 / (2.0 * n as f64 + 1.0) * g / (1.0 - y2))
}

fn trim_trailing_zeros(amps: &mut Vec<C64>) {
    while amps.len() > 1 && amps.last() == Some(&C64::new(0.0, 0.0)) {
        amps.pop();
    }
}

fn snap_tiny(x: f64) -> f64 {
    if x.abs() < 1e-15 {
        0.0
    } else {
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su11::disentangle_conventional;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4};

    fn params(alpha: f64, tau: f64, theta: f64) -> SqueezeParams {
        SqueezeParams::real(alpha, tau, theta).unwrap()
    }

    #[test]
    fn identity_amplitudes() {
        let c = disentangle_general(&params(0.0, 0.0, 0.0));
        assert_eq!(c_even(0, &c), C64::new(1.0, 0.0));
        assert_eq!(c_odd(0, &c), C64::new(1.0, 0.0));
        assert_eq!(c_even(3, &c), C64::new(0.0, 0.0));
    }

    #[test]
    fn n_zero_reads_off_prefactors() {
        let c = disentangle_general(&params(1.2, 0.8, 0.0));
        assert!((c_even(0, &c) - c.even_prefactor()).norm() < 1e-15);
        assert!((c_odd(0, &c) - c.odd_prefactor()).norm() < 1e-15);
    }

    #[test]
    fn c_even_matches_expm_oracle_column() {
        // <6|U|0> at alpha=0, tau=1, frozen from an independent
        // matrix-exponential evaluation
        let c = disentangle_general(&params(0.0, 1.0, 0.0));
        let got = c_even(3, &c);
        assert!((got - C64::new(0.198_793_192_783_054_66, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn c_odd_matches_expm_oracle_column() {
        // <5|U|1> at alpha=1, tau=1, frozen from an independent
        // matrix-exponential evaluation
        let c = disentangle_general(&params(1.0, 1.0, 0.0));
        let got = c_odd(2, &c);
        let want = C64::new(0.093_506_458_214_366_34, 0.403_597_654_882_841_55);
        assert!((got - want).norm() < 1e-8);
    }

    #[test]
    fn vacuum_superposition_state() {
        let v = fock_amplitudes(&params(0.0, 0.0, FRAC_PI_4), 1e-12).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((v.amplitude(0) - C64::new(r, 0.0)).norm() < 1e-15);
        assert!((v.amplitude(1) - C64::new(r, 0.0)).norm() < 1e-15);
        assert_eq!(v.amplitude(2), C64::new(0.0, 0.0));
        assert!(v.tail_bound() <= 1e-12);
    }

    #[test]
    fn theta_zero_kills_odd_sector() {
        let v = fock_amplitudes(&params(0.5, 1.0, 0.0), 1e-10).unwrap();
        for n in (1..v.len()).step_by(2) {
            assert_eq!(v.amplitude(n), C64::new(0.0, 0.0));
        }
        // conventional squeezed vacuum at alpha=0: even amplitudes match the
        // tanh-form coefficients
        let v = fock_amplitudes(&params(0.0, 1.0, 0.0), 1e-12).unwrap();
        let c = disentangle_conventional(C64::new(1.0, 0.0));
        for n in 0..v.len() / 2 {
            assert!((v.amplitude(2 * n) - c_even(n, &c)).norm() < 1e-13);
        }
    }

    #[test]
    fn theta_half_pi_kills_even_sector() {
        let v = fock_amplitudes(&params(0.5, 1.0, FRAC_PI_2), 1e-10).unwrap();
        for n in (0..v.len()).step_by(2) {
            assert_eq!(v.amplitude(n), C64::new(0.0, 0.0));
        }
    }

    #[test]
    fn norm_with_tail_is_unit() {
        for (a, t, th) in [
            (1.0, 1.0, FRAC_PI_3),
            (0.0, 1.8, 0.3),
            (5.0, 0.7, 1.2),
            (2.0, 1.0, FRAC_PI_4),
        ] {
            let v = fock_amplitudes(&params(a, t, th), 1e-10).unwrap();
            let total = v.norm_sqr() + v.tail_bound();
            assert!(
                (total - 1.0).abs() < 1e-9,
                "norm+tail = {total} at ({a},{t},{th})"
            );
            assert!(v.norm_sqr() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn recurrence_agrees_with_log_gamma_route() {
        let p = params(1.0, 1.5, 0.9);
        let coeffs = disentangle_general(&p);
        let v = fock_amplitudes(&p, 1e-12).unwrap();
        let cos_t = p.theta().cos();
        let sin_t = p.theta().sin();
        for n in 0..(v.len() / 2).min(200) {
            let even = c_even(n, &coeffs) * cos_t;
            let odd = c_odd(n, &coeffs) * sin_t;
            assert!((v.amplitude(2 * n) - even).norm() < 1e-12);
            assert!((v.amplitude(2 * n + 1) - odd).norm() < 1e-12);
        }
    }

    #[test]
    fn unreachable_eps_reports_achieved_bound() {
        // tanh(25) rounds to 1.0 in f64, so the geometric tail bound is void
        let err = fock_amplitudes(&params(0.0, 25.0, 0.4), 1e-300).unwrap_err();
        match err {
            SqueezeError::TruncationFailure { requested, achieved } => {
                assert_eq!(requested, 1e-300);
                assert!(achieved > 1e-300);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }
}
