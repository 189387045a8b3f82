//! Crate-wide error type.

use crate::schottky::Violation;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("Moebius derivative undefined: |c*x + d| < 1e-14 at x = {x}")]
    PoleAtPoint { x: f64 },

    #[error("generator is affine (|c| < 1e-14); its isometric disk contains infinity, conjugate the surface data first")]
    AffineGenerator,

    #[error("Moebius pole {pole} lies inside interval [{lo}, {hi}]")]
    PoleInsideInterval { pole: f64, lo: f64, hi: f64 },

    #[error("Schottky data invalid ({} violation(s)); first: {first}", report.len())]
    OverlappingDisks { report: Vec<Violation>, first: String },

    #[error("waist solver failed to converge on l_{index} over [{lo}, {hi}]")]
    NoConvergence { index: usize, lo: f64, hi: f64 },

    #[error("mapped collocation point left target interval by {excess:+.3e} (relative) for block ({v}, {w})")]
    ContainmentViolation { v: String, w: String, excess: f64 },

    #[error("nonpositive derivative {value:.3e} at collocation point {x} of block ({v}, {w})")]
    NonpositiveDerivative { v: String, w: String, x: f64, value: f64 },

    #[error("discretization dimension {dim} exceeds cap {cap}; lower N or the refinement level")]
    DimensionCap { dim: usize, cap: usize },

    #[error("weight overflow in block ({v}, {w}): |f^s| ~ exp({magnitude:.1}); reduce |Re s| or increase the refinement level")]
    Overflow { v: String, w: String, magnitude: f64 },

    #[error("orbit enumeration would visit ~{count:.3e} words, above the cap {cap:.3e}")]
    EnumerationCap { count: f64, cap: f64 },

    #[error("word {word:?} is not hyperbolic: |trace| = {trace} < 2; Schottky data is invalid")]
    NonHyperbolicWord { word: Vec<i32>, trace: f64 },

    #[error("winding sum {value:.3} is not within 0.2 of an integer; increase contour points or shrink the radius")]
    AmbiguousWinding { value: f64 },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
