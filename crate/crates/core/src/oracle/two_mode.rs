//! Two-mode brute-force evaluation of the interferometer observables.
//!
//! The input `|z> (x) |alpha,tau,theta>` lives on `F_a (x) F_b`; the output
//! number operator for either port is assembled from the transfer-matrix row
//! and applied as a structured sparse operator, never as a dense matrix.

use num_complex::Complex64 as C64;

use super::{oracle_state, MAX_ORACLE_DIM};
use crate::error::SqueezeError;
use crate::mach_zehnder::{transfer_matrix, MZConfig, MZObservables, Port};
use crate::su11::SqueezeParams;

/// Baseline `(coherent, squeezed)` cutoffs; escalated when a certificate
/// fails.
pub const MZ_BASE_DIMS: (usize, usize) = (64, 256);

/// Product state on the truncated two-mode space, row-major over
/// `(coherent index, squeezed index)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeState {
    dims: (usize, usize),
    amplitudes: Vec<C64>,
    tail_bound: f64,
}

impl TwoModeState {
    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// Smallest coherent-mode cutoff considered safe for amplitude `z`.
pub fn coherent_dim_floor(z: C64) -> usize {
    let n = z.norm_sqr();
    (n + 10.0 * n.sqrt() + 20.0).ceil() as usize
}

fn coherent_amplitudes(z: C64, dim: usize) -> (Vec<C64>, f64) {
    let mut amps = vec![C64::new(0.0, 0.0); dim];
    amps[0] = C64::new((-z.norm_sqr() / 2.0).exp(), 0.0);
    for n in 1..dim {
        amps[n] = amps[n - 1] * z / (n as f64).sqrt();
    }
    let mass: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    (amps, (1.0 - mass).max(0.0))
}

/// Builds the certified input state `|z> (x) U(alpha,tau)|omega>`.
pub fn two_mode_input(
    config: &MZConfig,
    params: &SqueezeParams,
    dims: (usize, usize),
) -> Result<TwoModeState, SqueezeError> {
    let (dim_a, dim_b) = dims;
    let floor = coherent_dim_floor(config.z());
    if dim_a < floor {
        return Err(SqueezeError::TruncationInsufficient {
            dim: dim_a,
            leak: floor as f64 - dim_a as f64,
            threshold: 0.0,
        });
    }
    let (za, za_tail) = coherent_amplitudes(config.z(), dim_a);
    let zb = oracle_state(params, dim_b)?;

    let mut amplitudes = vec![C64::new(0.0, 0.0); dim_a * dim_b];
    for (i, &ai) in za.iter().enumerate() {
        if ai.norm_sqr() == 0.0 {
            continue;
        }
        let row = &mut amplitudes[i * dim_b..(i + 1) * dim_b];
        for (j, &bj) in zb.amplitudes().iter().enumerate() {
            row[j] = ai * bj;
        }
    }
    Ok(TwoModeState {
        dims,
        amplitudes,
        tail_bound: za_tail + zb.tail_bound(),
    })
}

/// Applies the output-port number operator
/// `|Tr1|^2 n_a + |Tr2|^2 n_b + (conj(Tr1) Tr2 a^dag b + h.c.)`,
/// where `(Tr1, Tr2)` is the transfer-matrix row of the observed port.
fn apply_output_number(state: &TwoModeState, port: Port, phi: f64) -> Vec<C64> {
    let t = transfer_matrix(phi);
    let (t1, t2) = match port {
        Port::APrime => (t.t11, t.t12),
        Port::BPrime => (t.t21, t.t22),
    };
    let w1 = t1.norm_sqr();
    let w2 = t2.norm_sqr();
    let cross = t1.conj() * t2;
    let cross_conj = cross.conj();
    let (dim_a, dim_b) = state.dims;
    let amps = &state.amplitudes;

    let mut out = vec![C64::new(0.0, 0.0); amps.len()];
    for i in 0..dim_a {
        for j in 0..dim_b {
            let idx = i * dim_b + j;
            let mut acc = (w1 * i as f64 + w2 * j as f64) * amps[idx];
            // a^dag (x) b: sqrt(i) sqrt(j+1) psi[i-1, j+1]
            if i >= 1 && j + 1 < dim_b {
                acc += cross
                    * ((i as f64).sqrt() * ((j + 1) as f64).sqrt())
                    * amps[(i - 1) * dim_b + (j + 1)];
            }
            // a (x) b^dag: sqrt(i+1) sqrt(j) psi[i+1, j-1]
            if i + 1 < dim_a && j >= 1 {
                acc += cross_conj
                    * (((i + 1) as f64).sqrt() * (j as f64).sqrt())
                    * amps[(i + 1) * dim_b + (j - 1)];
            }
            out[idx] = acc;
        }
    }
    out
}

/// Brute-force `<n>`, `<n^2>`, and Q at the configured output port.
///
/// Uses the transfer-matrix row of the port directly, independently of the
/// analytic modules' phase-shift shortcut for port b'.
pub fn oracle_mz(
    config: &MZConfig,
    params: &SqueezeParams,
    dims: (usize, usize),
) -> Result<MZObservables, SqueezeError> {
    let state = two_mode_input(config, params, dims)?;
    let w = apply_output_number(&state, config.port(), config.phi());
    let mean: f64 = state
        .amplitudes
        .iter()
        .zip(&w)
        .map(|(psi, wv)| (psi.conj() * wv).re)
        .sum();
    let mean2: f64 = w.iter().map(|z| z.norm_sqr()).sum();
    if mean <= 1e-12 {
        return Err(SqueezeError::UndefinedMandelQ { mean });
    }
    Ok(MZObservables {
        mean_n: mean,
        mean_n2: mean2,
        mandel_q: mean2 / mean - mean - 1.0,
    })
}

/// [`oracle_mz`] starting from [`MZ_BASE_DIMS`], escalating whichever mode's
/// certificate fails.
pub fn oracle_mz_auto(
    config: &MZConfig,
    params: &SqueezeParams,
) -> Result<MZObservables, SqueezeError> {
    let mut dim_a = MZ_BASE_DIMS.0.max(coherent_dim_floor(config.z()).next_multiple_of(32));
    let mut dim_b = MZ_BASE_DIMS.1;
    loop {
        match oracle_mz(config, params, (dim_a, dim_b)) {
            Ok(obs) => return Ok(obs),
            Err(SqueezeError::TruncationInsufficient { dim, .. })
                if dim == dim_a && dim_a < MAX_ORACLE_DIM =>
            {
                dim_a *= 2;
            }
            Err(SqueezeError::TruncationInsufficient { dim, .. })
                if dim == dim_b && dim_b < MAX_ORACLE_DIM =>
            {
                dim_b *= 2;
            }
            Err(e) => return Err(e),
        }
    }
}
