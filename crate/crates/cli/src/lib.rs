//! Sweep engine, spec parsing, and output formatting behind the
//! `squeezelab` binary.

pub mod args;
pub mod grid;
pub mod output;
pub mod spec;
pub mod sweep;
pub mod verify;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
