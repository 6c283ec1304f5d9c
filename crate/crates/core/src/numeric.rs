//! Small numeric helpers: compensated summation and log-domain factorials.

use statrs::function::gamma::ln_gamma;

/// Kahan-compensated accumulator.
///
/// The photon-number series multiply central binomials (~4^n) against
/// (|p_+|^2/4)^n; individual terms stay O(1) but long sums near |p_+| -> 1
/// lose digits without compensation.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: f64) {
        let y = value - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// ln(n!)
pub fn ln_factorial(n: usize) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

/// ln C(2n, n), the central binomial coefficient.
///
/// C(2n, n) ~ 4^n / sqrt(pi n) overflows f64 factorials near n = 514;
/// plain f64 factorial products already fail near n = 85 for the
/// sqrt((2n)!)/n! amplitude ratios, hence the log-gamma route.
pub fn ln_central_binomial(n: usize) -> f64 {
    ln_factorial(2 * n) - 2.0 * ln_factorial(n)
}

/// sinh(x)/x, continued through x = 0 by its series.
pub fn sinhc(x: f64) -> f64 {
    if x.abs() < 1e-6 {
        let x2 = x * x;
        1.0 + x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sinh() / x
    }
}

/// sin(x)/x, continued through x = 0 by its series.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-6 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}
