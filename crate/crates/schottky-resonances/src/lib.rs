//! Resonances of Schottky surfaces from zeros of the Selberg zeta function.
//!
//! The zeta function is evaluated as the Fredholm determinant of a transfer
//! operator, discretized by Lagrange-Chebyshev collocation on a word-indexed
//! refinement of the Schottky intervals. An independent periodic-orbit
//! expansion of the same determinant serves as a cross-check. Newton runs
//! from a seed line locate the zeros; the argument principle classifies
//! their multiplicities.
//!
//! The pieces compose in dependency order:
//!
//! * [`geometry`] - Moebius transformations and interval images;
//! * [`schottky`] - validated Schottky data for the funnel surface families;
//! * [`refinement`] - admissible words and the refined interval hierarchy;
//! * [`chebyshev`] - collocation nodes, the interpolation kernel, sub-blocks;
//! * [`transfer`] - static parts, assembly, `Z(s) = det(1 - L_s)` via LU;
//! * [`orbits`] - length spectra and the periodic-orbit expansion of `Z`;
//! * [`zeros`] - Newton scans, dedup, windings, resonance sets;
//! * [`cli`] - the flat-file configuration and the command layer.

pub mod chebyshev;
pub mod cli;
pub mod dd;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod orbits;
pub mod refinement;
pub mod schottky;
pub mod transfer;
pub mod zeros;

pub use error::{Error, Result};
