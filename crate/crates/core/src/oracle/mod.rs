//! Independent ground-truth engine on a truncated Fock space.
//!
//! Observables are computed by direct linear algebra on explicit matrices
//! for `a`, `a^dag`, `K0`, `K±` and the exponentiated generator. No closed
//! forms are shared with the analytic modules; agreement between the two
//! routes is the correctness argument for both.

mod expm;
mod two_mode;

pub use expm::BandedGenerator;
pub use two_mode::{oracle_mz, oracle_mz_auto, two_mode_input, TwoModeState, MZ_BASE_DIMS};

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::error::SqueezeError;
use crate::photon_stats::{Parity, PhotonDistribution};
use crate::quadratures::VariancePair;
use crate::states::FockVector;
use crate::su11::SqueezeParams;

/// Boundary-leak threshold for a certified state evaluation.
pub const LEAK_THRESHOLD: f64 = 1e-8;

/// Largest cutoff the auto-escalating constructors will try.
pub const MAX_ORACLE_DIM: usize = 4096;

/// A dense operator on the truncated space `{|0>, ..., |dim-1>}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedOperator {
    dim: usize,
    matrix: Array2<C64>,
}

impl TruncatedOperator {
    pub fn from_matrix(matrix: Array2<C64>) -> Self {
        assert_eq!(matrix.nrows(), matrix.ncols());
        Self {
            dim: matrix.nrows(),
            matrix,
        }
    }

    /// `a`: entries `sqrt(n)` on the first superdiagonal only.
    pub fn annihilation(dim: usize) -> Self {
        let mut m = Array2::zeros((dim, dim));
        for n in 1..dim {
            m[[n - 1, n]] = C64::new((n as f64).sqrt(), 0.0);
        }
        Self::from_matrix(m)
    }

    pub fn creation(dim: usize) -> Self {
        Self::annihilation(dim).dagger()
    }

    pub fn number(dim: usize) -> Self {
        let mut m = Array2::zeros((dim, dim));
        for n in 0..dim {
            m[[n, n]] = C64::new(n as f64, 0.0);
        }
        Self::from_matrix(m)
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_matrix(Array2::eye(dim))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &Array2<C64> {
        &self.matrix
    }

    pub fn dagger(&self) -> Self {
        let m = self.matrix.t().mapv(|z| z.conj());
        Self::from_matrix(m)
    }

    pub fn dot(&self, other: &Self) -> Self {
        Self::from_matrix(self.matrix.dot(&other.matrix))
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self::from_matrix(self.matrix.mapv(|z| z * factor))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_matrix(&self.matrix + &other.matrix)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_matrix(&self.matrix - &other.matrix)
    }

    /// `[self, other] = self other - other self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.dot(other).sub(&other.dot(self))
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim);
        self.matrix
            .rows()
            .into_iter()
            .map(|row| row.iter().zip(v).map(|(m, x)| m * x).sum())
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        self.matrix.column(j).to_vec()
    }

    /// Largest entry magnitude inside the square block `0..rows` x `0..rows`.
    pub fn max_abs_in_block(&self, rows: usize) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..rows.min(self.dim) {
            for j in 0..rows.min(self.dim) {
                worst = worst.max(self.matrix[[i, j]].norm());
            }
        }
        worst
    }

    /// Dense matrix exponential (Pade 13, scaling and squaring).
    pub fn expm(&self) -> Self {
        Self::from_matrix(expm::expm_dense(&self.matrix))
    }
}

/// `(K0, K+, K-)` with `K- = a^2/2`, `K+ = (a^dag)^2/2`, `K0 = (n + 1/2)/2`.
pub fn build_generators(dim: usize) -> (TruncatedOperator, TruncatedOperator, TruncatedOperator) {
    assert!(dim >= 4, "need at least four Fock states");
    let a = TruncatedOperator::annihilation(dim);
    let half = C64::new(0.5, 0.0);
    let k_minus = a.dot(&a).scale(half);
    let k_plus = k_minus.dagger();
    let mut m = Array2::zeros((dim, dim));
    for n in 0..dim {
        m[[n, n]] = C64::new((n as f64 + 0.5) / 2.0, 0.0);
    }
    (TruncatedOperator::from_matrix(m), k_plus, k_minus)
}

/// Dense `U(alpha, tau) = exp(i alpha K0 + tau K+ - conj(tau) K-)` on the
/// truncated space.
pub fn unitary(params: &SqueezeParams, dim: usize) -> TruncatedOperator {
    let (k0, kp, km) = build_generators(dim);
    let gen = k0
        .scale(C64::new(0.0, params.alpha()))
        .add(&kp.scale(params.tau()))
        .sub(&km.scale(params.tau().conj()));
    gen.expm()
}

/// Cutoff heuristic from the worst-case amplitude decay `tanh|tau|`; the
/// leak certificate still guards the result a posteriori.
pub fn recommended_dim(tau_norm: f64) -> usize {
    let rate = (-tau_norm.tanh().ln()).max(0.02);
    let dim = (60.0 / rate).ceil() as usize;
    dim.clamp(128, 3072).next_multiple_of(64)
}

/// Applies `U(alpha, tau)` to `cos(theta)|0> + sin(theta)|1>` by a banded
/// exponential action and certifies the truncation.
///
/// The certificate is the squared mass in the top 10% of the basis times the
/// boundary coupling of the generator; it must stay below [`LEAK_THRESHOLD`]
/// or the evaluation is rejected as truncation-insufficient.
pub fn oracle_state(params: &SqueezeParams, dim: usize) -> Result<FockVector, SqueezeError> {
    let gen = BandedGenerator::new(params.alpha(), params.tau(), dim);
    let mut v = vec![C64::new(0.0, 0.0); dim];
    v[0] = C64::new(params.theta().cos(), 0.0);
    v[1] = C64::new(params.theta().sin(), 0.0);
    let state = gen.expm_action(&v);

    let top_start = dim - dim / 10 - 1;
    let top_mass: f64 = state[top_start..].iter().map(|z| z.norm_sqr()).sum();
    let leak = gen.boundary_coupling() * top_mass.sqrt();
    if leak > LEAK_THRESHOLD {
        return Err(SqueezeError::TruncationInsufficient {
            dim,
            leak,
            threshold: LEAK_THRESHOLD,
        });
    }
    let norm_defect = (1.0 - state.iter().map(|z| z.norm_sqr()).sum::<f64>()).abs();
    Ok(FockVector::from_parts(state, top_mass + norm_defect))
}

/// [`oracle_state`] with the heuristic cutoff, doubling it until the leak
/// certificate passes.
pub fn oracle_state_auto(params: &SqueezeParams) -> Result<FockVector, SqueezeError> {
    let mut dim = recommended_dim(params.tau().norm());
    loop {
        match oracle_state(params, dim) {
            Ok(state) => return Ok(state),
            Err(SqueezeError::TruncationInsufficient { .. }) if dim < MAX_ORACLE_DIM => {
                dim = (dim * 2).min(MAX_ORACLE_DIM);
            }
            Err(e) => return Err(e),
        }
    }
}

/// Quadrature variances by tridiagonal matrix-vector products:
/// `q v` and `p v` are formed directly from the ladder structure.
pub fn oracle_variances(state: &FockVector) -> VariancePair {
    let amps = state.amplitudes();
    let n = amps.len();
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;

    // (a v)[k] = sqrt(k+1) v[k+1]; (a^dag v)[k] = sqrt(k) v[k-1]
    let mut qv = vec![C64::new(0.0, 0.0); n];
    let mut pv = vec![C64::new(0.0, 0.0); n];
    for k in 0..n {
        let down = if k + 1 < n {
            ((k + 1) as f64).sqrt() * amps[k + 1]
        } else {
            C64::new(0.0, 0.0)
        };
        let up = if k > 0 {
            (k as f64).sqrt() * amps[k - 1]
        } else {
            C64::new(0.0, 0.0)
        };
        qv[k] = (down + up) * inv_sqrt2;
        pv[k] = (up - down) * C64::new(0.0, inv_sqrt2);
    }

    let mean = |w: &[C64]| -> f64 {
        amps.iter()
            .zip(w)
            .map(|(av, wv)| (av.conj() * wv).re)
            .sum()
    };
    let second = |w: &[C64]| -> f64 { w.iter().map(|z| z.norm_sqr()).sum() };

    let mq = mean(&qv);
    let mp = mean(&pv);
    VariancePair {
        var_q: second(&qv) - mq * mq,
        var_p: second(&pv) - mp * mp,
    }
}

/// Photon-number distribution `|<N|state>|^2`.
pub fn oracle_distribution(state: &FockVector) -> PhotonDistribution {
    let probs: Vec<f64> = state.amplitudes().iter().map(|z| z.norm_sqr()).collect();
    PhotonDistribution::from_probs(Parity::Mixed, probs, state.tail_bound())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{c_even, c_odd};
    use crate::su11::disentangle_general;
    use std::f64::consts::FRAC_PI_4;

    fn params(alpha: f64, tau: f64, theta: f64) -> SqueezeParams {
        SqueezeParams::real(alpha, tau, theta).unwrap()
    }

    #[test]
    fn ladder_structure() {
        let a = TruncatedOperator::annihilation(6);
        for n in 1..6 {
            assert_eq!(a.matrix()[[n - 1, n]], C64::new((n as f64).sqrt(), 0.0));
        }
        assert_eq!(a.matrix()[[3, 2]], C64::new(0.0, 0.0));
    }

    #[test]
    fn commutation_relations_on_interior_block() {
        let dim = 32;
        let (k0, kp, km) = build_generators(dim);
        let interior = dim - 2;
        // [K0, K+] - K+ and [K0, K-] + K-
        let d1 = k0.commutator(&kp).sub(&kp);
        let d2 = k0.commutator(&km).add(&km);
        // [K+, K-] + 2 K0
        let d3 = kp.commutator(&km).add(&k0.scale(C64::new(2.0, 0.0)));
        assert!(d1.max_abs_in_block(interior) < 1e-12);
        assert!(d2.max_abs_in_block(interior) < 1e-12);
        assert!(d3.max_abs_in_block(interior) < 1e-12);
    }

    #[test]
    fn lowering_annihilates_vacuum_and_one_photon() {
        let (_, _, km) = build_generators(8);
        let mut e0 = vec![C64::new(0.0, 0.0); 8];
        e0[0] = C64::new(1.0, 0.0);
        let mut e1 = vec![C64::new(0.0, 0.0); 8];
        e1[1] = C64::new(1.0, 0.0);
        assert!(km.apply(&e0).iter().all(|z| z.norm() == 0.0));
        assert!(km.apply(&e1).iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn unitary_identity_case() {
        let u = unitary(&params(0.0, 0.0, 0.0), 16);
        for i in 0..16 {
            for j in 0..16 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((u.matrix()[[i, j]] - C64::new(want, 0.0)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn unitarity_defect_on_lower_half() {
        let u = unitary(&params(1.0, 1.0, 0.0), 256);
        let gram = u.dagger().dot(&u);
        let mut worst = 0.0f64;
        for i in 0..128 {
            for j in 0..128 {
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((gram.matrix()[[i, j]] - C64::new(want, 0.0)).norm());
            }
        }
        assert!(worst < 1e-9, "unitarity defect {worst}");
    }

    #[test]
    fn unitary_columns_match_closed_amplitudes() {
        let p = params(1.0, 1.0, 0.0);
        let u = unitary(&p, 256);
        let coeffs = disentangle_general(&p);
        let mut worst = 0.0f64;
        for n in 0..40 {
            worst = worst.max((u.matrix()[[2 * n, 0]] - c_even(n, &coeffs)).norm());
            worst = worst.max((u.matrix()[[2 * n + 1, 1]] - c_odd(n, &coeffs)).norm());
        }
        assert!(worst < 1e-8, "column deviation {worst}");
    }

    #[test]
    fn state_identity_case() {
        let v = oracle_state(&params(0.0, 0.0, FRAC_PI_4), 128).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((v.amplitude(0) - C64::new(r, 0.0)).norm() < 1e-13);
        assert!((v.amplitude(1) - C64::new(r, 0.0)).norm() < 1e-13);
        assert!(v.amplitude(5).norm() < 1e-13);
        assert!((v.norm_sqr() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn state_norm_preserved() {
        for (a, t, th) in [(0.0, 1.0, 0.0), (2.0, 1.0, 0.7), (6.0, 0.5, 1.1)] {
            let v = oracle_state_auto(&params(a, t, th)).unwrap();
            assert!((v.norm_sqr() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn insufficient_dim_is_rejected_and_escalation_recovers() {
        let p = params(0.0, 2.0, 0.0);
        match oracle_state(&p, 128) {
            Err(SqueezeError::TruncationInsufficient { dim, leak, .. }) => {
                assert_eq!(dim, 128);
                assert!(leak > LEAK_THRESHOLD);
            }
            other => panic!("expected truncation error, got {other:?}"),
        }
        let v = oracle_state_auto(&p).unwrap();
        assert!((v.norm_sqr() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn vacuum_and_one_photon_variances() {
        let v = oracle_state(&params(0.0, 0.0, 0.0), 64).unwrap();
        let var = oracle_variances(&v);
        assert!((var.var_q - 0.5).abs() < 1e-12);
        assert!((var.var_p - 0.5).abs() < 1e-12);
        let v = oracle_state(&params(0.0, 0.0, std::f64::consts::FRAC_PI_2), 64).unwrap();
        let var = oracle_variances(&v);
        assert!((var.var_q - 1.5).abs() < 1e-12);
        assert!((var.var_p - 1.5).abs() < 1e-12);
    }

    #[test]
    fn random_vector_respects_heisenberg() {
        // a fixed pseudo-random normalized vector
        let dim = 40usize;
        let mut v: Vec<C64> = (0..dim)
            .map(|k| {
                let x = ((k.wrapping_mul(2_654_435_761)) % 1000) as f64 / 1000.0 - 0.5;
                let y = ((k.wrapping_mul(40_503)) % 1000) as f64 / 1000.0 - 0.5;
                C64::new(x, y)
            })
            .collect();
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut v {
            *z /= norm;
        }
        let var = oracle_variances(&FockVector::from_parts(v, 0.0));
        assert!(var.var_q * var.var_p >= 0.25 - 1e-10);
    }

    #[test]
    fn distribution_from_state() {
        let v = oracle_state(&params(0.0, 1.0, 0.0), 256).unwrap();
        let d = oracle_distribution(&v);
        assert!(d.norm_defect() < 1e-9);
        // even state: odd probabilities vanish
        for n in (1..40).step_by(2) {
            assert!(d.probs()[n] < 1e-20);
        }
    }

    #[test]
    fn truncation_monotonicity() {
        // doubling the cutoff moves the observables by less than the
        // reported tail bounds
        let p = params(1.0, 1.2, 0.6);
        let v1 = oracle_state(&p, 384).unwrap();
        let v2 = oracle_state(&p, 768).unwrap();
        let a = oracle_variances(&v1);
        let b = oracle_variances(&v2);
        let budget = (v1.tail_bound() + v2.tail_bound()).max(1e-12) * 1e3;
        assert!((a.var_q - b.var_q).abs() <= budget);
        assert!((a.var_p - b.var_p).abs() <= budget);
    }
}
