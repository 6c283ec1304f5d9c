//! Disentanglement of SU(1,1) group elements.
//!
//! `U(alpha, tau) = exp(i alpha K0 + tau K+ - conj(tau) K-)` is rewritten in
//! normal order `exp(p+ K+) exp(p0 K0) exp(p- K-)`. Three parameter regimes
//! appear depending on the sign of `|tau|^2 - alpha^2/4`; the coefficients are
//! hyperbolic, trigonometric, or rational in the boundary case.

use num_complex::Complex64 as C64;
use std::f64::consts::PI;

use crate::error::SqueezeError;
use crate::numeric::{sinc, sinhc};

/// Default relative width of the regime-transition band.
///
/// Kept below the series-expansion threshold for beta so that points
/// classified as Transition are also well inside the series regime.
pub const REGIME_TOL: f64 = 1e-10;

/// Control parameters of the generalized squeezing operator and vacuum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeParams {
    alpha: f64,
    tau: C64,
    theta: f64,
}

impl SqueezeParams {
    /// Validates finiteness and clamps `theta` into `[0, pi/2]`, where
    /// `s = sin^2(theta)` already covers `[0, 1]`.
    pub fn new(alpha: f64, tau: C64, theta: f64) -> Result<Self, SqueezeError> {
        if !alpha.is_finite() {
            return Err(SqueezeError::NonFinite("alpha"));
        }
        if !tau.re.is_finite() || !tau.im.is_finite() {
            return Err(SqueezeError::NonFinite("tau"));
        }
        if !theta.is_finite() {
            return Err(SqueezeError::NonFinite("theta"));
        }
        Ok(Self {
            alpha,
            tau,
            theta: theta.clamp(0.0, PI / 2.0),
        })
    }

    /// Real `tau` convenience constructor.
    pub fn real(alpha: f64, tau_abs: f64, theta: f64) -> Result<Self, SqueezeError> {
        Self::new(alpha, C64::new(tau_abs, 0.0), theta)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn tau(&self) -> C64 {
        self.tau
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `s = sin^2(theta)`.
    pub fn s(&self) -> f64 {
        let s = self.theta.sin();
        s * s
    }
}

/// Which branch of the disentanglement formulas applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `|tau|^2 > alpha^2/4`: hyperbolic functions of beta.
    Hyperbolic,
    /// `|tau|^2 < alpha^2/4`: trigonometric functions of beta.
    Trigonometric,
    /// `|tau|^2 = alpha^2/4` within tolerance: rational limit forms.
    Transition,
}

/// Normal-order disentanglement coefficients `(p+, p0, p-)`.
///
/// `d = exp(-p0/2)` is carried explicitly: it is a single-valued function of
/// the parameters, so every downstream formula built from `exp(-p0/2)` and
/// `exp(-p0)` can bypass the logarithm branch entirely.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DisentangledCoeffs {
    p_plus: C64,
    p_zero: C64,
    p_minus: C64,
    regime: Regime,
    beta: f64,
    d: C64,
}

impl DisentangledCoeffs {
    pub fn p_plus(&self) -> C64 {
        self.p_plus
    }

    pub fn p_zero(&self) -> C64 {
        self.p_zero
    }

    pub fn p_minus(&self) -> C64 {
        self.p_minus
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// `beta = sqrt(| |tau|^2 - alpha^2/4 |)`.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `exp(-p0/2)`, single-valued.
    pub fn exp_neg_half_p0(&self) -> C64 {
        self.d
    }

    /// `exp(-p0)`, single-valued.
    pub fn exp_neg_p0(&self) -> C64 {
        self.d * self.d
    }

    /// `exp(-(p0 + conj(p0))/2) = |exp(-p0/2)|^2`, real and positive.
    pub fn exp_neg_re_p0(&self) -> f64 {
        self.d.norm_sqr()
    }

    /// `exp(p0/4)`: prefactor of the even-sector Fock amplitudes.
    pub fn even_prefactor(&self) -> C64 {
        (self.p_zero / 4.0).exp()
    }

    /// `exp(3 p0/4)`: prefactor of the odd-sector Fock amplitudes.
    pub fn odd_prefactor(&self) -> C64 {
        (self.p_zero * 0.75).exp()
    }

    /// Builds coefficients directly from parts. Intended for tests.
    pub fn from_raw(p_plus: C64, p_zero: C64, p_minus: C64, regime: Regime, beta: f64) -> Self {
        Self {
            p_plus,
            p_zero,
            p_minus,
            regime,
            beta,
            d: (-p_zero / 2.0).exp(),
        }
    }
}

/// Classifies the parameter regime with a relative tolerance band.
///
/// The band half-width is `tol * max(|tau|^2, alpha^2/4)`, so `alpha = tau = 0`
/// lands on Transition (the identity operator is the boundary limit).
///
/// Panics if `tol <= 0`.
pub fn classify_regime(params: &SqueezeParams, tol: f64) -> Regime {
    assert!(tol > 0.0, "regime tolerance must be positive");
    let t2 = params.tau.norm_sqr();
    let a24 = params.alpha * params.alpha / 4.0;
    let band = tol * t2.max(a24);
    let diff = t2 - a24;
    if diff > band {
        Regime::Hyperbolic
    } else if diff < -band {
        Regime::Trigonometric
    } else {
        Regime::Transition
    }
}

/// Disentangles the general element `U(alpha, tau)`.
///
/// Hyperbolic regime:
/// `p+ = tau sinh(beta) / D`, `p- = -(conj(tau)/tau) p+`, `p0 = -2 ln(D/beta)`
/// with `D = beta cosh(beta) - i (alpha/2) sinh(beta)`. The trigonometric
/// regime replaces hyperbolic functions by trigonometric ones; on the
/// transition boundary `p+ = 2 tau / (2 - i alpha)`, `p0 = -2 ln(1 - i alpha/2)`.
///
/// All regimes are evaluated through `D/beta`, whose `sinh(beta)/beta` and
/// `sin(beta)/beta` factors switch to series below `beta = 1e-6`, so the
/// boundary is approached without 0/0.
///
/// For `tau = 0` the phase factor `conj(tau)/tau` is undefined and both
/// `p+` and `p-` are zero; `p0` keeps its regime formula.
pub fn disentangle_general(params: &SqueezeParams) -> DisentangledCoeffs {
    let alpha = params.alpha;
    let tau = params.tau;
    let regime = classify_regime(params, REGIME_TOL);
    let t2 = tau.norm_sqr();
    let a24 = alpha * alpha / 4.0;
    let beta = (t2 - a24).abs().sqrt();

    // ratio = sinh(beta)/beta (resp. sin(beta)/beta, or 1 on the boundary),
    // d_over_beta = D/beta in the same convention.
    let (ratio, d_over_beta) = match regime {
        Regime::Hyperbolic => {
            let r = sinhc(beta);
            (r, C64::new(beta.cosh(), -alpha / 2.0 * r))
        }
        Regime::Trigonometric => {
            let r = sinc(beta);
            (r, C64::new(beta.cos(), -alpha / 2.0 * r))
        }
        Regime::Transition => (1.0, C64::new(1.0, -alpha / 2.0)),
    };

    let p_plus = tau * ratio / d_over_beta;
    let p_minus = if tau == C64::new(0.0, 0.0) {
        C64::new(0.0, 0.0)
    } else {
        -(tau.conj() / tau) * p_plus
    };
    let p_zero = p_zero_from(d_over_beta, regime, beta, alpha);

    DisentangledCoeffs {
        p_plus,
        p_zero,
        p_minus,
        regime,
        beta,
        d: d_over_beta,
    }
}

/// `p0 = -2 log(D/beta)` on the branch for which the normal-order product
/// reproduces the exponential.
///
/// Along the path `t -> U(t alpha, t tau)` from the identity, `D/beta` passes
/// through `(-1)^k` each time `t beta` crosses `k pi` (trigonometric regime
/// only), pinning the continued argument to `-k pi sign(alpha)` there. The
/// principal argument is therefore unwound by `k = floor(beta/pi)` windows.
/// Hyperbolic and transition regimes have `Re(D/beta) >= 1` and never leave
/// the principal sheet.
fn p_zero_from(d_over_beta: C64, regime: Regime, beta: f64, alpha: f64) -> C64 {
    if regime != Regime::Trigonometric || beta < PI {
        return -2.0 * d_over_beta.ln();
    }
    let m = (beta / PI).floor();
    // Mirror alpha < 0 onto alpha > 0 by conjugation.
    let d_eff = if alpha > 0.0 {
        d_over_beta
    } else {
        d_over_beta.conj()
    };
    let phi0 = d_eff.arg();
    // The continued argument lies in (-(m+1) pi, -m pi]; recover the unique
    // 2 pi multiple from the window midpoint.
    let k = ((phi0 + (m + 0.5) * PI) / (2.0 * PI)).round();
    let mut theta = phi0 - 2.0 * PI * k;
    if alpha < 0.0 {
        theta = -theta;
    }
    C64::new(-2.0 * d_over_beta.norm().ln(), -2.0 * theta)
}

/// Disentangles the conventional squeezing operator `S(tau) = U(0, tau)`:
/// `t+ = (tau/|tau|) tanh|tau|`, `t- = -conj(t+)`, `t0 = -2 ln cosh|tau|`.
///
/// This is a separate evaluation path from [`disentangle_general`]; their
/// agreement at `alpha = 0` is asserted in tests rather than by construction.
pub fn disentangle_conventional(tau: C64) -> DisentangledCoeffs {
    let r = tau.norm();
    if r == 0.0 {
        return DisentangledCoeffs {
            p_plus: C64::new(0.0, 0.0),
            p_zero: C64::new(0.0, 0.0),
            p_minus: C64::new(0.0, 0.0),
            regime: Regime::Transition,
            beta: 0.0,
            d: C64::new(1.0, 0.0),
        };
    }
    let t_plus = tau / r * r.tanh();
    let t_zero = C64::new(-2.0 * r.cosh().ln(), 0.0);
    DisentangledCoeffs {
        p_plus: t_plus,
        p_zero: t_zero,
        p_minus: -t_plus.conj(),
        regime: Regime::Hyperbolic,
        beta: r,
        d: C64::new(r.cosh(), 0.0),
    }
}

/// Residual of the identity `exp(-(p0 + conj(p0))/2) (1 - |p+|^2) = 1`.
pub fn property_residual(coeffs: &DisentangledCoeffs) -> f64 {
    (coeffs.exp_neg_re_p0() * (1.0 - coeffs.p_plus.norm_sqr()) - 1.0).abs()
}
