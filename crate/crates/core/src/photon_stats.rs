//! Photon-number statistics of the generalized squeezed vacuum.
//!
//! The even and odd parity sectors carry separately normalized distributions
//! `p_{2n} = sqrt(1-y^2) (y^2/4)^n C(2n,n)` and
//! `p_{2n+1} = (1-y^2)(2n+1) p_{2n}` with `y = |p_+|`; both depend on the
//! disentanglement coefficients through `y` alone.

use crate::error::SqueezeError;
use crate::numeric::{ln_central_binomial, KahanSum};
use crate::su11::{disentangle_general, DisentangledCoeffs, SqueezeParams};

/// Relative mass threshold at which the tail of a probability series is cut.
const SERIES_TAIL_REL: f64 = 1e-12;

/// Guard against `1 - |p_+|^2` underflow in the sector means.
const MEAN_GUARD: f64 = 1e-12;

/// Parity content of a [`PhotonDistribution`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// Probabilities indexed by n for photon number 2n.
    Even,
    /// Probabilities indexed by n for photon number 2n+1.
    Odd,
    /// Probabilities indexed directly by photon number N.
    Mixed,
}

/// A photon-number probability sequence with a normalization certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct PhotonDistribution {
    parity: Parity,
    probs: Vec<f64>,
    tail_bound: f64,
    norm_defect: f64,
}

impl PhotonDistribution {
    /// Even-sector probabilities for `n = 0..len`.
    pub fn even(coeffs: &DisentangledCoeffs, len: usize) -> Self {
        let y2 = coeffs.p_plus().norm_sqr();
        let probs: Vec<f64> = (0..len).map(|n| p_even(n, coeffs)).collect();
        Self::with_certificate(Parity::Even, probs, even_tail(&y2, len))
    }

    /// Odd-sector probabilities for `n = 0..len`.
    pub fn odd(coeffs: &DisentangledCoeffs, len: usize) -> Self {
        let y2 = coeffs.p_plus().norm_sqr();
        let probs: Vec<f64> = (0..len).map(|n| p_odd(n, coeffs)).collect();
        Self::with_certificate(Parity::Odd, probs, odd_tail(&y2, len))
    }

    /// Full-state probabilities for photon numbers `N = 0..len`.
    pub fn mixed(params: &SqueezeParams, len: usize) -> Self {
        let coeffs = disentangle_general(params);
        let y2 = coeffs.p_plus().norm_sqr();
        let cos2 = params.theta().cos().powi(2);
        let sin2 = params.theta().sin().powi(2);
        let probs: Vec<f64> = (0..len)
            .map(|big_n| p_n_from(big_n, &coeffs, cos2, sin2))
            .collect();
        let n_half = len / 2;
        let tail = cos2 * even_tail(&y2, len - n_half) + sin2 * odd_tail(&y2, n_half);
        Self::with_certificate(Parity::Mixed, probs, tail)
    }

    /// Wraps an externally computed probability sequence, deriving the
    /// normalization certificate.
    pub fn from_probs(parity: Parity, probs: Vec<f64>, tail_bound: f64) -> Self {
        Self::with_certificate(parity, probs, tail_bound)
    }

    fn with_certificate(parity: Parity, probs: Vec<f64>, tail_bound: f64) -> Self {
        let mut sum = KahanSum::new();
        for &p in &probs {
            sum.add(p);
        }
        let norm_defect = (1.0 - sum.value() - tail_bound).abs();
        Self {
            parity,
            probs,
            tail_bound,
            norm_defect,
        }
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    /// `|1 - sum(probs) - tail_bound|`.
    pub fn norm_defect(&self) -> f64 {
        self.norm_defect
    }
}

/// Geometric bound on `sum_{n >= len} p_{2n}`.
fn even_tail(y2: &f64, len: usize) -> f64 {
    if *y2 >= 1.0 {
        return f64::INFINITY;
    }
    if len == 0 {
        return 1.0;
    }
    // ratio p_{2n+2}/p_{2n} = y2 (2n+1)/(2n+2) <= y2
    let last = p_even_y2(len - 1, *y2);
    last * y2 / (1.0 - y2)
}

/// Geometric bound on `sum_{n >= len} p_{2n+1}`.
fn odd_tail(y2: &f64, len: usize) -> f64 {
    if *y2 >= 1.0 {
        return f64::INFINITY;
    }
    if len == 0 {
        return 1.0;
    }
    let n = len - 1;
    let last = (1.0 - y2) * (2.0 * n as f64 + 1.0) * p_even_y2(n, *y2);
    let g = y2 / (1.0 - y2);
    last * (g + 2.0 / (2.0 * n as f64 + 1.0) * g / (1.0 - y2))
}

fn p_even_y2(n: usize, y2: f64) -> f64 {
    if n == 0 {
        return (1.0 - y2).sqrt();
    }
    if y2 == 0.0 {
        return 0.0;
    }
    let ln = 0.5 * (1.0 - y2).ln() + n as f64 * (y2 / 4.0).ln() + ln_central_binomial(n);
    ln.exp()
}

/// `p_{2n} = sqrt(1 - |p+|^2) (|p+|^2/4)^n C(2n,n)`, in the log domain.
pub fn p_even(n: usize, coeffs: &DisentangledCoeffs) -> f64 {
    p_even_y2(n, coeffs.p_plus().norm_sqr())
}

/// `p_{2n+1} = (1 - |p+|^2) (2n+1) p_{2n}`.
pub fn p_odd(n: usize, coeffs: &DisentangledCoeffs) -> f64 {
    let y2 = coeffs.p_plus().norm_sqr();
    (1.0 - y2) * (2.0 * n as f64 + 1.0) * p_even_y2(n, y2)
}

/// Even-sector mean `<n>_e = |p+|^2 / (1 - |p+|^2)`.
pub fn mean_n_even(coeffs: &DisentangledCoeffs) -> Result<f64, SqueezeError> {
    let y2 = coeffs.p_plus().norm_sqr();
    let denom = 1.0 - y2;
    if denom < MEAN_GUARD {
        return Err(SqueezeError::DivergentMean(denom));
    }
    Ok(y2 / denom)
}

/// Odd-sector mean `<n>_o = (1 + 2|p+|^2) / (1 - |p+|^2)`.
pub fn mean_n_odd(coeffs: &DisentangledCoeffs) -> Result<f64, SqueezeError> {
    let y2 = coeffs.p_plus().norm_sqr();
    let denom = 1.0 - y2;
    if denom < MEAN_GUARD {
        return Err(SqueezeError::DivergentMean(denom));
    }
    Ok((1.0 + 2.0 * y2) / denom)
}

/// Even-sector probability parameterized by its mean:
/// `p_{2n} = C(2n,n) (m+1)^{-1/2} [m / (4(m+1))]^n`.
pub fn p_even_from_mean(n: usize, mean_e: f64) -> Result<f64, SqueezeError> {
    if mean_e < 0.0 || mean_e.is_nan() {
        return Err(SqueezeError::InvalidMean {
            value: mean_e,
            reason: "even-sector mean must be >= 0",
        });
    }
    if n == 0 {
        return Ok(1.0 / (mean_e + 1.0).sqrt());
    }
    if mean_e == 0.0 {
        return Ok(0.0);
    }
    let base = mean_e / (4.0 * (mean_e + 1.0));
    let ln = ln_central_binomial(n) - 0.5 * (mean_e + 1.0).ln() + n as f64 * base.ln();
    Ok(ln.exp())
}

/// Odd-sector probability parameterized by its mean:
/// `p_{2n+1} = 3^{3/2} (2n+1) C(2n,n) (m+2)^{-3/2} [(m-1) / (4(m+2))]^n`.
///
/// Derived by substituting `|p+|^2 = (m-1)/(m+2)` into the sector
/// distribution; a `(m+1)`-based prefactor would evaluate to `(3/2)^{3/2}`
/// instead of 1 at the single-photon point `m = 1, n = 0` and is not
/// consistent with the distribution it parameterizes.
pub fn p_odd_from_mean(n: usize, mean_o: f64) -> Result<f64, SqueezeError> {
    if mean_o < 1.0 || mean_o.is_nan() {
        return Err(SqueezeError::InvalidMean {
            value: mean_o,
            reason: "odd-sector mean must be >= 1 (the sector holds at least one photon)",
        });
    }
    if n == 0 {
        return Ok((3.0 / (mean_o + 2.0)).powf(1.5));
    }
    if mean_o == 1.0 {
        return Ok(0.0);
    }
    let base = (mean_o - 1.0) / (4.0 * (mean_o + 2.0));
    let ln = 1.5 * 3.0f64.ln() + (2.0 * n as f64 + 1.0).ln() + ln_central_binomial(n)
        - 1.5 * (mean_o + 2.0).ln()
        + n as f64 * base.ln();
    Ok(ln.exp())
}

/// Probability of finding `photon_number` photons in the full state:
/// `cos^2(theta) p_{2n}` at even numbers, `sin^2(theta) p_{2n+1}` at odd.
pub fn p_n(photon_number: usize, params: &SqueezeParams) -> f64 {
    let coeffs = disentangle_general(params);
    let cos2 = params.theta().cos().powi(2);
    let sin2 = params.theta().sin().powi(2);
    p_n_from(photon_number, &coeffs, cos2, sin2)
}

fn p_n_from(photon_number: usize, coeffs: &DisentangledCoeffs, cos2: f64, sin2: f64) -> f64 {
    if photon_number.is_multiple_of(2) {
        cos2 * p_even(photon_number / 2, coeffs)
    } else {
        sin2 * p_odd(photon_number / 2, coeffs)
    }
}

/// `<n> = cos^2(theta) <n>_e + sin^2(theta) <n>_o`.
pub fn mean_n_total(params: &SqueezeParams) -> f64 {
    let coeffs = disentangle_general(params);
    let cos2 = params.theta().cos().powi(2);
    let sin2 = params.theta().sin().powi(2);
    let me = mean_n_even(&coeffs).expect("finite params keep |p_plus| < 1");
    let mo = mean_n_odd(&coeffs).expect("finite params keep |p_plus| < 1");
    cos2 * me + sin2 * mo
}

/// Sums `f(n) * p_sector(n)` with Kahan compensation until the geometric
/// bound on the remaining mass drops below 1e-12 of the accumulated sum.
pub fn sector_series_sum(
    coeffs: &DisentangledCoeffs,
    parity: Parity,
    f: impl Fn(usize) -> f64,
) -> f64 {
    assert!(parity != Parity::Mixed, "series run over one parity sector");
    let y2 = coeffs.p_plus().norm_sqr();
    let mut sum = KahanSum::new();
    let mut n = 0usize;
    loop {
        let p = match parity {
            Parity::Even => p_even(n, coeffs),
            Parity::Odd => p_odd(n, coeffs),
            Parity::Mixed => unreachable!(),
        };
        sum.add(f(n) * p);
        let tail = match parity {
            Parity::Even => even_tail(&y2, n + 1),
            Parity::Odd => odd_tail(&y2, n + 1),
            Parity::Mixed => unreachable!(),
        };
        // weight the mass bound by a crude growth factor for polynomial f
        let weight = f(n + 1).abs().max(1.0) * (1.0 + 2.0 * (n as f64) * y2 / (1.0 - y2));
        if tail * weight <= SERIES_TAIL_REL * sum.value().abs().max(1e-300) || n > 2_000_000 {
            return sum.value();
        }
        n += 1;
    }
}
