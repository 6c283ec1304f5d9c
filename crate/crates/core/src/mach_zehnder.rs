//! Two-mode Mach-Zehnder model: transfer matrix, output photon-number
//! moments, Mandel Q.
//!
//! A Glauber coherent state `|z>` enters port a and the generalized squeezed
//! vacuum enters port b. Output port a' observables follow from
//! `n_a' = |T11|^2 n_a + |T12|^2 n_b + (conj(T11) T12 a^dag b + h.c.)`;
//! port b' evaluates the same expressions at `phi + pi`.

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use std::f64::consts::PI;

use crate::error::SqueezeError;
use crate::su11::{disentangle_general, DisentangledCoeffs, Regime, SqueezeParams};

/// Mean output photon number below which Q is reported as undefined.
const MEAN_FLOOR: f64 = 1e-12;

/// `|p-|` threshold that flags the trigonometric zero loci
/// `alpha^2/4 - |tau|^2 = (k pi)^2` in scan output.
const BREAK_LOCUS_TOL: f64 = 1e-10;

/// Which output port is observed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Port {
    APrime,
    BPrime,
}

/// Interferometer configuration: coherent amplitude, phase shift, port.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MZConfig {
    z: C64,
    phi: f64,
    port: Port,
}

impl MZConfig {
    pub fn new(z: C64, phi: f64, port: Port) -> Result<Self, SqueezeError> {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(SqueezeError::NonFinite("z"));
        }
        if !phi.is_finite() {
            return Err(SqueezeError::NonFinite("phi"));
        }
        Ok(Self { z, phi, port })
    }

    pub fn z(&self) -> C64 {
        self.z
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn port(&self) -> Port {
        self.port
    }

    /// Phase at which the port-a' expressions are evaluated: `phi` for a',
    /// `phi + pi` for b'. The `+pi` and `-pi` shifts give identical
    /// observables; tests assert this rather than assume it.
    pub fn effective_phi(&self) -> f64 {
        match self.port {
            Port::APrime => self.phi,
            Port::BPrime => self.phi + PI,
        }
    }
}

/// Beam-splitter-pair transfer matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix {
    pub t11: C64,
    pub t12: C64,
    pub t21: C64,
    pub t22: C64,
}

impl TransferMatrix {
    /// Largest entry of `T^dag T - I`.
    pub fn unitarity_defect(&self) -> f64 {
        let g11 = self.t11.conj() * self.t11 + self.t21.conj() * self.t21 - 1.0;
        let g12 = self.t11.conj() * self.t12 + self.t21.conj() * self.t22;
        let g21 = self.t12.conj() * self.t11 + self.t22.conj() * self.t21;
        let g22 = self.t12.conj() * self.t12 + self.t22.conj() * self.t22 - 1.0;
        g11.norm()
            .max(g12.norm())
            .max(g21.norm())
            .max(g22.norm())
    }
}

/// `T11 = -T22 = -(1 - e^{-i phi})/2`, `T21 = T12 = -(i/2)(1 + e^{-i phi})`.
pub fn transfer_matrix(phi: f64) -> TransferMatrix {
    let e = C64::from_polar(1.0, -phi);
    let t11 = -(C64::new(1.0, 0.0) - e) / 2.0;
    let t12 = -C64::new(0.0, 0.5) * (C64::new(1.0, 0.0) + e);
    TransferMatrix {
        t11,
        t12,
        t21: t12,
        t22: -t11,
    }
}

/// Output-port photon-number moments and Mandel Q.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MZObservables {
    pub mean_n: f64,
    pub mean_n2: f64,
    pub mandel_q: f64,
}

/// `<n_a'>`: coherent term, squeezed-sector term, and the
/// `sin(2 theta) sin(phi)` cross term.
pub fn mean_n_out(config: &MZConfig, params: &SqueezeParams) -> f64 {
    mean_n_from(config, &disentangle_general(params), params.theta())
}

fn mean_n_from(config: &MZConfig, coeffs: &DisentangledCoeffs, theta: f64) -> f64 {
    let phi = config.effective_phi();
    let z = config.z;
    let pm = coeffs.p_minus();
    let y2 = pm.norm_sqr();
    let s2 = theta.sin().powi(2);
    let sin_half2 = (phi / 2.0).sin().powi(2);
    let cos_half2 = (phi / 2.0).cos().powi(2);
    let e_half = coeffs.exp_neg_half_p0();

    z.norm_sqr() * sin_half2
        + (y2 + (1.0 + y2) * s2) / (1.0 - y2) * cos_half2
        + 0.5 * (z * e_half * (C64::new(1.0, 0.0) - pm)).re * (2.0 * theta).sin() * phi.sin()
}

/// `<n_a'^2>`: the five printed groups, verbatim.
pub fn mean_n2_out(config: &MZConfig, params: &SqueezeParams) -> f64 {
    mean_n2_from(config, &disentangle_general(params), params.theta())
}

fn mean_n2_from(config: &MZConfig, coeffs: &DisentangledCoeffs, theta: f64) -> f64 {
    let phi = config.effective_phi();
    let z = config.z;
    let z2 = z.norm_sqr();
    let pm = coeffs.p_minus();
    let y2 = pm.norm_sqr();
    let s2 = theta.sin().powi(2);
    let sin_half2 = (phi / 2.0).sin().powi(2);
    let cos_half2 = (phi / 2.0).cos().powi(2);
    let sin_phi = phi.sin();
    let sin_phi2 = sin_phi * sin_phi;
    let sin_2t = (2.0 * theta).sin();
    let one = C64::new(1.0, 0.0);
    let e_half = coeffs.exp_neg_half_p0();
    let e_full = coeffs.exp_neg_p0();
    let denom = 1.0 - y2;

    sin_half2 * sin_half2 * z2 * (1.0 + z2)
        + cos_half2 * cos_half2 / (denom * denom)
            * ((1.0 + 8.0 * y2 + 3.0 * y2 * y2) * s2 + y2 * (2.0 + y2))
        + sin_phi2 / denom * (y2 + (1.0 + y2) * s2) * (0.25 + z2)
        + 0.25 * sin_phi2 * (z2 - 2.0 * (z * z * e_full * pm).re * (1.0 + 2.0 * s2))
        + 0.25
            * sin_2t
            * sin_phi
            * ((1.0 + 2.0 * z2) * 2.0 * (z * e_half * (one - pm)).re * sin_half2
                + 2.0 * (z * e_half / denom * (one * (1.0 + 5.0 * y2) - pm * 3.0 * (1.0 + y2)))
                    .re
                    * cos_half2)
}

/// `Q = <n^2>/<n> - <n> - 1`; undefined when the mean vanishes.
pub fn mandel_q(config: &MZConfig, params: &SqueezeParams) -> Result<f64, SqueezeError> {
    observables(config, params).map(|o| o.mandel_q)
}

/// Computes all three observables with one disentanglement.
pub fn observables(
    config: &MZConfig,
    params: &SqueezeParams,
) -> Result<MZObservables, SqueezeError> {
    let coeffs = disentangle_general(params);
    let mean = mean_n_from(config, &coeffs, params.theta());
    let mean2 = mean_n2_from(config, &coeffs, params.theta());
    if mean <= MEAN_FLOOR {
        return Err(SqueezeError::UndefinedMandelQ { mean });
    }
    Ok(MZObservables {
        mean_n: mean,
        mean_n2: mean2,
        mandel_q: mean2 / mean - mean - 1.0,
    })
}

/// Grid over the squeezing parameters for [`q_scan`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScanGrid {
    pub taus: Vec<C64>,
    pub thetas: Vec<f64>,
    pub alphas: Vec<f64>,
}

/// One scan result row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub alpha: f64,
    pub tau: C64,
    pub theta: f64,
    pub mean_n: f64,
    pub mean_n2: f64,
    /// `None` when the output mean vanishes.
    pub mandel_q: Option<f64>,
    /// True on the trigonometric zero loci of `|p-|` (`tau != 0`).
    pub break_locus: bool,
}

/// Evaluates the observables over the cartesian grid, tau-major then theta
/// then alpha. Rows are computed in parallel and returned in grid order.
pub fn q_scan(config: &MZConfig, grid: &ScanGrid) -> Vec<ScanRow> {
    let points: Vec<(C64, f64, f64)> = grid
        .taus
        .iter()
        .flat_map(|&tau| {
            grid.thetas.iter().flat_map(move |&theta| {
                grid.alphas.iter().map(move |&alpha| (tau, theta, alpha))
            })
        })
        .collect();

    points
        .into_par_iter()
        .map(|(tau, theta, alpha)| {
            let params = SqueezeParams::new(alpha, tau, theta)
                .expect("scan grids are built from finite values");
            scan_point(config, &params)
        })
        .collect()
}

fn scan_point(config: &MZConfig, params: &SqueezeParams) -> ScanRow {
    let coeffs = disentangle_general(params);
    let mean = mean_n_from(config, &coeffs, params.theta());
    let mean2 = mean_n2_from(config, &coeffs, params.theta());
    let mandel = if mean > MEAN_FLOOR {
        Some(mean2 / mean - mean - 1.0)
    } else {
        None
    };
    let break_locus = coeffs.regime() == Regime::Trigonometric
        && params.tau().norm() > 0.0
        && coeffs.p_minus().norm() < BREAK_LOCUS_TOL;
    ScanRow {
        alpha: params.alpha(),
        tau: params.tau(),
        theta: params.theta(),
        mean_n: mean,
        mean_n2: mean2,
        mandel_q: mandel,
        break_locus,
    }
}
