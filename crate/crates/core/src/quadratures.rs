//! Quadrature variances and the squeezing-transition algebra.
//!
//! Variances of `q = (a^dag + a)/sqrt(2)` and `p = i(a^dag - a)/sqrt(2)` are
//! evaluated three ways: specialized closed forms for the conventional and
//! one-photon squeezed states, the general three-line expressions in the
//! disentanglement coefficients, and the polynomial split
//! `var = 1/2 + F(s) -+ G(s)` in `s = sin^2(theta)`. The sign of `G` decides
//! which quadrature is the smaller one; its roots mark the transitions.

use num_complex::Complex64 as C64;

use crate::su11::{disentangle_general, DisentangledCoeffs, SqueezeParams};

/// A `(var_q, var_p)` pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VariancePair {
    pub var_q: f64,
    pub var_p: f64,
}

impl VariancePair {
    /// Product defect against the Heisenberg bound `1/4`.
    pub fn uncertainty_product(&self) -> f64 {
        self.var_q * self.var_p
    }
}

/// Conventional squeezed vacuum:
/// `var_q = 1/2 + sinh^2|tau| + sinh|tau| cosh|tau| cos(arg tau)`, mirror
/// sign for `p`.
pub fn variance_conventional(tau: C64) -> VariancePair {
    let r = tau.norm();
    let cos_phase = if r == 0.0 { 1.0 } else { tau.re / r };
    let sh = r.sinh();
    let ch = r.cosh();
    VariancePair {
        var_q: 0.5 + sh * sh + sh * ch * cos_phase,
        var_p: 0.5 + sh * sh - sh * ch * cos_phase,
    }
}

/// Squeezed one-photon state:
/// `var_q = 1/2 + (1 + 3 sinh^2|tau|) + 3 sinh|tau| cosh|tau| cos(arg tau)`.
pub fn variance_one_photon(tau: C64) -> VariancePair {
    let r = tau.norm();
    let cos_phase = if r == 0.0 { 1.0 } else { tau.re / r };
    let sh = r.sinh();
    let ch = r.cosh();
    VariancePair {
        var_q: 1.5 + 3.0 * sh * sh + 3.0 * sh * ch * cos_phase,
        var_p: 1.5 + 3.0 * sh * sh - 3.0 * sh * ch * cos_phase,
    }
}

/// General variances from the disentanglement coefficients, as typeset:
/// three groups in `s^0`, `s`, and `s(1-s)` built from `exp(-p0/2)`,
/// `exp(-p0)` and `p-`.
pub fn variance_from_coeffs(coeffs: &DisentangledCoeffs, theta: f64) -> VariancePair {
    let s = theta.sin().powi(2);
    let sc = s * (1.0 - s); // sin^2 cos^2
    let pm = coeffs.p_minus();
    let e_half = coeffs.exp_neg_half_p0();
    let e_full = coeffs.exp_neg_p0();
    let e_re = coeffs.exp_neg_re_p0();
    let pm2 = pm.norm_sqr();
    let cross = (e_full * pm).re; // (e^{-p0} p- + c.c.)/2
    let w = e_half * (C64::new(1.0, 0.0) - pm);

    // [w + c.c.]^2 = 4 Re(w)^2, [w - c.c.]^2 = -4 Im(w)^2
    let var_q = 0.5 + (e_re * pm2 - cross) + (e_re * (1.0 + pm2) - 2.0 * cross) * s
        - 2.0 * w.re * w.re * sc;
    let var_p = 0.5 + (e_re * pm2 + cross) + (e_re * (1.0 + pm2) + 2.0 * cross) * s
        - 2.0 * w.im * w.im * sc;
    VariancePair { var_q, var_p }
}

/// General variances of `|alpha, tau, theta>`.
pub fn variance_general(params: &SqueezeParams) -> VariancePair {
    variance_from_coeffs(&disentangle_general(params), params.theta())
}

/// Coefficients of `F(s) = A s^2 + B s + C` and `G(s) = L s^2 + M s + N`,
/// plus `x = M/L` when defined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionPolys {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
    /// `M / L`; `None` when `L = 0`.
    pub x: Option<f64>,
}

impl TransitionPolys {
    pub fn f_at(&self, s: f64) -> f64 {
        (self.a * s + self.b) * s + self.c
    }

    pub fn g_at(&self, s: f64) -> f64 {
        (self.l * s + self.m) * s + self.n
    }

    /// `(var_q, var_p) = (1/2 + F - G, 1/2 + F + G)`.
    pub fn variances_at(&self, s: f64) -> VariancePair {
        let f = self.f_at(s);
        let g = self.g_at(s);
        VariancePair {
            var_q: 0.5 + f - g,
            var_p: 0.5 + f + g,
        }
    }
}

/// Polynomial coefficients from the disentanglement coefficients, with
/// `p- = |p-| exp(i Phi)`:
/// `A = E (1 + |p-|^2 - 2|p-| cos Phi)`, `B = 2 E |p-| cos Phi`,
/// `C = E |p-|^2`, `L = -Re[e^{-p0}(1-p-)^2]`, `M = Re[e^{-p0}(1+p-^2)]`,
/// `N = Re[e^{-p0} p-]`, where `E = e^{-Re p0}`.
pub fn transition_polys_from_coeffs(coeffs: &DisentangledCoeffs) -> TransitionPolys {
    let pm = coeffs.p_minus();
    let e_full = coeffs.exp_neg_p0();
    let e_re = coeffs.exp_neg_re_p0();
    let pm_abs = pm.norm();
    let cos_phi = if pm_abs == 0.0 { 1.0 } else { pm.re / pm_abs };
    let one = C64::new(1.0, 0.0);

    let a = e_re * (1.0 + pm_abs * pm_abs - 2.0 * pm_abs * cos_phi);
    let b = 2.0 * e_re * pm_abs * cos_phi;
    let c = e_re * pm_abs * pm_abs;
    let l = -(e_full * (one - pm) * (one - pm)).re;
    let m = (e_full * (one + pm * pm)).re;
    let n = (e_full * pm).re;
    let x = if l == 0.0 { None } else { Some(m / l) };
    TransitionPolys { a, b, c, l, m, n, x }
}

/// Polynomial coefficients for the given parameters.
pub fn transition_polys(params: &SqueezeParams) -> TransitionPolys {
    transition_polys_from_coeffs(&disentangle_general(params))
}

/// Roots of `G(s) = 0` lying in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TransitionRoots {
    /// No real root falls inside `[0, 1]`.
    Empty,
    /// One root (the discriminant vanished, or only one root is in range).
    Single(f64),
    /// Both roots in range, ordered.
    Pair { lower: f64, upper: f64 },
}

impl TransitionRoots {
    pub fn to_vec(self) -> Vec<f64> {
        match self {
            TransitionRoots::Empty => vec![],
            TransitionRoots::Single(s) => vec![s],
            TransitionRoots::Pair { lower, upper } => vec![lower, upper],
        }
    }
}

/// Snap window for a vanishing discriminant, so the double root at
/// `x = 1 - sqrt(3)` survives rounding of `x^2 - 2x - 2`.
const DISC_SNAP: f64 = 1e-12;

/// Solves `s_± = (-x ± sqrt(x^2 - 2x - 2))/2` and keeps roots in `[0, 1]`.
///
/// Both roots lie in `[0, 1]` exactly for `x` in `[-1, 1 - sqrt(3)]`.
/// A negative discriminant yields `Empty` (not an error).
pub fn transition_roots(x: f64) -> TransitionRoots {
    let disc = x * x - 2.0 * x - 2.0;
    let scale = (x * x).max(1.0);
    if disc.abs() <= DISC_SNAP * scale {
        let s = -x / 2.0;
        return if in_unit(s) {
            TransitionRoots::Single(s)
        } else {
            TransitionRoots::Empty
        };
    }
    if disc < 0.0 {
        return TransitionRoots::Empty;
    }
    let root = disc.sqrt();
    let lower = (-x - root) / 2.0;
    let upper = (-x + root) / 2.0;
    match (in_unit(lower), in_unit(upper)) {
        (true, true) => TransitionRoots::Pair { lower, upper },
        (true, false) => TransitionRoots::Single(lower),
        (false, true) => TransitionRoots::Single(upper),
        (false, false) => TransitionRoots::Empty,
    }
}

fn in_unit(s: f64) -> bool {
    (0.0..=1.0).contains(&s)
}

/// Sub-vacuum squeezing classification at mixing `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SqueezedQuadrature {
    /// `G(s) > 0` and `1/2 + F - G < 1/2`.
    QSqueezed,
    /// `G(s) < 0` and `1/2 + F + G < 1/2`.
    PSqueezed,
    /// Neither variance is below the vacuum value, or `G(s) = 0`.
    Neither,
}

/// Reports which quadrature is squeezed below the vacuum variance `1/2`.
///
/// The sign of `G` alone picks the *smaller* variance (see
/// [`smaller_variance`]); sub-vacuum squeezing additionally requires that
/// variance to drop under `1/2`.
pub fn squeezed_quadrature(s: f64, polys: &TransitionPolys) -> SqueezedQuadrature {
    let f = polys.f_at(s);
    let g = polys.g_at(s);
    if g > 0.0 && f - g < 0.0 {
        SqueezedQuadrature::QSqueezed
    } else if g < 0.0 && f + g < 0.0 {
        SqueezedQuadrature::PSqueezed
    } else {
        SqueezedQuadrature::Neither
    }
}

/// Quadrature axis label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureAxis {
    Q,
    P,
}

/// Relative comparison: which variance is smaller at mixing `s`
/// (`None` exactly on the transition `G(s) = 0`).
pub fn smaller_variance(s: f64, polys: &TransitionPolys) -> Option<QuadratureAxis> {
    let g = polys.g_at(s);
    if g > 0.0 {
        Some(QuadratureAxis::Q)
    } else if g < 0.0 {
        Some(QuadratureAxis::P)
    } else {
        None
    }
}
