//! Declarative sweep specification, shared by command-line flags and
//! `--config` documents (TOML).

use anyhow::{bail, Context, Result};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::grid::{parse_complex, parse_grid, parse_index_grid, parse_scalar};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_MAX_POINTS: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Variances,
    Transition,
    PhotonDist,
    Mandel,
}

impl Quantity {
    pub fn name(&self) -> &'static str {
        match self {
            Quantity::Variances => "variances",
            Quantity::Transition => "transition",
            Quantity::PhotonDist => "photon_dist",
            Quantity::Mandel => "mandel",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PortArg {
    APrime,
    BPrime,
}

impl From<PortArg> for squeezelab_core::Port {
    fn from(p: PortArg) -> Self {
        match p {
            PortArg::APrime => squeezelab_core::Port::APrime,
            PortArg::BPrime => squeezelab_core::Port::BPrime,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParityArg {
    Even,
    Odd,
    Mixed,
}

/// A grid as written by the user: an expression string, an explicit list,
/// or a range object.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridSpec {
    Expr(String),
    Values(Vec<Scalar>),
    Range { start: Scalar, stop: Scalar, step: Scalar },
}

/// A number or a scalar expression such as `"pi/8"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Num(f64),
    Expr(String),
}

impl Scalar {
    pub fn resolve(&self) -> Result<f64> {
        match self {
            Scalar::Num(v) => Ok(*v),
            Scalar::Expr(e) => parse_scalar(e),
        }
    }
}

impl GridSpec {
    pub fn resolve(&self) -> Result<Vec<f64>> {
        match self {
            GridSpec::Expr(e) => parse_grid(e),
            GridSpec::Values(vs) => vs.iter().map(Scalar::resolve).collect(),
            GridSpec::Range { start, stop, step } => {
                crate::grid::expand_range(start.resolve()?, stop.resolve()?, step.resolve()?)
            }
        }
    }

    pub fn resolve_indices(&self) -> Result<Vec<usize>> {
        match self {
            GridSpec::Expr(e) => parse_index_grid(e),
            _ => {
                let values = self.resolve()?;
                values
                    .into_iter()
                    .map(|v| {
                        if (v - v.round()).abs() > 1e-9 || v < 0.0 {
                            bail!("index grid entry {v} is not a non-negative integer")
                        }
                        Ok(v.round() as usize)
                    })
                    .collect()
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grids {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<GridSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau_abs: Option<GridSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<GridSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<GridSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<GridSpec>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixed {
    /// Complex coherent amplitude, `re` or `re,im`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<String>,
    /// Interferometer phase (radians; pi shortcuts allowed).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<String>,
    /// Phase of tau when `tau_abs` grids are used.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau_phase: Option<String>,
    /// Full complex tau, `re` or `re,im`; excludes `tau_abs`/`tau_phase`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub port: Option<PortArg>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parity: Option<ParityArg>,
    /// Mixing angle for `photon_dist` with `parity = mixed`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<String>,
}

/// Complete description of one sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub quantity: Quantity,
    #[serde(default)]
    pub grids: Grids,
    #[serde(default)]
    pub fixed: Fixed,
    #[serde(default)]
    pub output_format: OutputFormat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_check: Option<f64>,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_max_points")]
    pub max_points: usize,
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

fn default_max_points() -> usize {
    DEFAULT_MAX_POINTS
}

impl SweepSpec {
    pub fn from_config_file(path: &Path, expected: Quantity) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let spec: SweepSpec = toml::from_str(&text)
            .with_context(|| format!("parsing config {}", path.display()))?;
        if spec.quantity != expected {
            bail!(
                "config quantity `{}` does not match the `{}` subcommand",
                spec.quantity.name(),
                expected.name()
            );
        }
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(f) = self.oracle_check {
            if !(0.0..=1.0).contains(&f) {
                bail!("oracle_check fraction {f} outside [0, 1]");
            }
        }
        if self.fixed.tau.is_some() && (self.fixed.tau_phase.is_some() || self.grids.tau_abs.is_some())
        {
            bail!("`tau` excludes `tau_abs`/`tau_phase`");
        }
        match self.quantity {
            Quantity::Variances => {
                if self.grids.x.is_some() || self.grids.n.is_some() {
                    bail!("variances sweeps take alpha/tau_abs/theta grids only");
                }
            }
            Quantity::Transition => {
                let x_mode = self.grids.x.is_some();
                let param_mode = self.grids.alpha.is_some()
                    || self.grids.tau_abs.is_some()
                    || self.fixed.tau.is_some();
                if x_mode == param_mode {
                    bail!("transition sweeps take either an x grid or alpha+tau grids");
                }
            }
            Quantity::PhotonDist => {
                if self.grids.n.is_none() {
                    bail!("photon_dist sweeps need an n grid");
                }
                if matches!(self.fixed.parity, Some(ParityArg::Mixed)) && self.fixed.theta.is_none()
                {
                    bail!("parity = mixed needs a theta value");
                }
            }
            Quantity::Mandel => {
                if self.grids.x.is_some() || self.grids.n.is_some() {
                    bail!("mandel sweeps take alpha/tau_abs/theta grids only");
                }
            }
        }
        Ok(())
    }

    /// The complex tau values of the sweep: the `tau` scalar, or the
    /// `tau_abs` grid rotated by `tau_phase` (default phase 0, matching the
    /// real-tau presets).
    pub fn resolve_taus(&self) -> Result<Vec<C64>> {
        if let Some(tau) = &self.fixed.tau {
            return Ok(vec![parse_complex(tau)?]);
        }
        let phase = self
            .fixed
            .tau_phase
            .as_deref()
            .map(parse_scalar)
            .transpose()?
            .unwrap_or(0.0);
        let abs = match &self.grids.tau_abs {
            Some(g) => g.resolve()?,
            None => vec![0.0],
        };
        Ok(abs.into_iter().map(|r| C64::from_polar(r, phase)).collect())
    }

    pub fn resolve_z(&self) -> Result<C64> {
        match &self.fixed.z {
            Some(z) => parse_complex(z),
            None => Ok(C64::new(1.0, 0.0)),
        }
    }

    pub fn resolve_phi(&self) -> Result<f64> {
        match &self.fixed.phi {
            Some(p) => parse_scalar(p),
            None => Ok(std::f64::consts::FRAC_PI_2),
        }
    }
}
