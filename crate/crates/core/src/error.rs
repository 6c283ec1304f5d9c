//! Error type shared by all modules.

use thiserror::Error;

/// Errors reported by the analytic and oracle layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SqueezeError {
    /// An input was NaN or infinite.
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    /// A requested truncation tail bound could not be met.
    #[error("truncation failure: requested tail bound {requested:e}, achieved {achieved:e}")]
    TruncationFailure { requested: f64, achieved: f64 },

    /// The Fock cutoff is too small for a certified oracle evaluation.
    #[error("truncated basis too small (dim {dim}): boundary leak estimate {leak:e} exceeds {threshold:e}")]
    TruncationInsufficient { dim: usize, leak: f64, threshold: f64 },

    /// Mandel Q is undefined because the output mean photon number vanishes.
    #[error("Mandel Q undefined: mean photon number {mean:e} below 1e-12")]
    UndefinedMandelQ { mean: f64 },

    /// `1 - |p_+|^2` dropped below 1e-12; the sector means diverge.
    #[error("sector mean diverges: 1 - |p_plus|^2 = {0:e}")]
    DivergentMean(f64),

    /// Mean-parameterized distributions need `mean_e >= 0` / `mean_o >= 1`.
    #[error("invalid sector mean {value}: {reason}")]
    InvalidMean { value: f64, reason: &'static str },
}
