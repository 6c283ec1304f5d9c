//! Generalized su(1,1) squeezed vacuum states.
//!
//! The crate models states `U(alpha, tau) |omega>`, where `U` is the most
//! general SU(1,1) group element in the Schwinger single-mode realization
//! (`K- = a^2/2`, `K+ = a^dag^2/2`, `K0 = (n + 1/2)/2`) and
//! `|omega> = cos(theta)|0> + sin(theta)|1>` is the most general state
//! annihilated by `K-`. Everything observable is computed twice:
//!
//! * closed forms, via the normal-order disentanglement coefficients
//!   (`su11`, `states`, `quadratures`, `photon_stats`, `mach_zehnder`);
//! * brute force, via truncated-Fock matrices and matrix exponentials
//!   (`oracle`), sharing no closed forms with the analytic path.
//!
//! The two routes agree to tight tolerances; the `oracle` module is the
//! arbiter wherever a printed formula could have been transcribed wrong.

pub mod error;
pub mod mach_zehnder;
pub mod numeric;
pub mod oracle;
pub mod photon_stats;
pub mod quadratures;
pub mod states;
pub mod su11;

pub use error::SqueezeError;
pub use mach_zehnder::{MZConfig, MZObservables, Port, ScanGrid, ScanRow, TransferMatrix};
pub use photon_stats::{Parity, PhotonDistribution};
pub use quadratures::{
    SqueezedQuadrature, TransitionPolys, TransitionRoots, VariancePair,
};
pub use states::FockVector;
pub use su11::{DisentangledCoeffs, Regime, SqueezeParams};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
