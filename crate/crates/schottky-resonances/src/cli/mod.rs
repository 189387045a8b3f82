//! Configuration-driven command layer shared by the binary and the tests.

pub mod commands;
pub mod config;

pub use commands::{run, Command};
pub use config::{parse_complex, RawConfig, RunConfig, SurfaceSpec};
