//! Assembly of the discretized transfer operator and evaluation of
//! `Z(s) = det(1 - L_s)` through LU factorization.
//!
//! The operator splits into an s-independent static part (derivative samples
//! and kernel matrices, built once) and the cheap s-dependent weights
//! `f_i^s = exp(s log f_i)`, so scanning in s reuses all geometry.

use num_complex::Complex64;
use std::collections::HashMap;

use crate::chebyshev::{lblock_dd, ChebGrid, LBlock};
use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::geometry::Interval;
use crate::linalg::{wrap_phase, CMatrix, RMatrix};
use crate::refinement::{block_partners, index_set, refined_interval_dd, Word};
use crate::schottky::SchottkyData;

/// Largest dense dimension accepted by default.
pub const DEFAULT_DIM_CAP: usize = 8192;

/// Exponent bound before `exp` overflows f64.
const OVERFLOW_LN: f64 = 690.0;

/// `exp(s * lf)` with the product formed in double-double and split into a
/// correctly rounded magnitude and a phase correction; rounding `ln f` to one
/// f64 first would already cost ~10 ulps per weight, which the determinant of
/// a deeply refined operator amplifies. `None` signals overflow.
fn complex_weight(s: Complex64, lf: Dd) -> Option<Complex64> {
    let a = lf.scale(s.re);
    let b = lf.scale(s.im);
    if a.hi > OVERFLOW_LN {
        return None;
    }
    let ea = a.hi.exp() * (1.0 + a.lo);
    let (sb, cb) = b.hi.sin_cos();
    Some(Complex64::new(ea * (cb - sb * b.lo), ea * (sb + cb * b.lo)))
}

fn real_weight(s: f64, lf: Dd) -> Option<f64> {
    let a = lf.scale(s);
    if a.hi > OVERFLOW_LN {
        return None;
    }
    Some(a.hi.exp() * (1.0 + a.lo))
}

/// `log|Z| + i arg Z` representation of a complex value; immune to the
/// exponential growth of `Z` toward negative `Re s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledComplex {
    /// Natural log of the modulus; `-inf` encodes an exact zero.
    pub log_modulus: f64,
    /// Argument in (-pi, pi].
    pub phase: f64,
}

impl ScaledComplex {
    pub fn new(log_modulus: f64, phase: f64) -> Self {
        ScaledComplex { log_modulus, phase: wrap_phase(phase) }
    }

    pub fn from_complex(z: Complex64) -> Self {
        if z == Complex64::new(0.0, 0.0) {
            ScaledComplex { log_modulus: f64::NEG_INFINITY, phase: 0.0 }
        } else {
            ScaledComplex { log_modulus: z.norm().ln(), phase: z.arg() }
        }
    }

    /// The plain complex value; overflows to infinity past `log_modulus ~ 709`.
    pub fn to_complex(&self) -> Complex64 {
        self.rescaled(0.0)
    }

    /// `exp(log_modulus - offset) * e^{i phase}`: the value divided by the
    /// real scale `e^offset`. Ratios of equally-offset values are exact.
    pub fn rescaled(&self, offset: f64) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::from_polar((self.log_modulus - offset).exp(), self.phase)
    }

    pub fn conj(&self) -> Self {
        ScaledComplex::new(self.log_modulus, -self.phase)
    }

    pub fn is_zero(&self) -> bool {
        self.log_modulus == f64::NEG_INFINITY
    }
}

impl std::fmt::Display for ScaledComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "exp({:.6}) * e^(i {:.6})", self.log_modulus, self.phase)
    }
}

/// Log-determinant of a complex matrix as a `ScaledComplex`.
pub fn log_det(m: CMatrix) -> ScaledComplex {
    let (lm, ph) = m.log_det();
    ScaledComplex { log_modulus: lm, phase: ph }
}

/// Log-determinant of a real matrix; the phase is 0 or pi.
pub fn log_det_real(m: RMatrix) -> ScaledComplex {
    let (lm, ph) = m.log_det();
    ScaledComplex { log_modulus: lm, phase: ph }
}

/// One stored sub-block: rows of word `v`, columns of word `w`.
#[derive(Debug, Clone)]
pub(crate) struct Block {
    pub v: usize,
    pub w: usize,
    pub lb: LBlock,
}

/// The s-independent parts of the level-n discretized transfer operator over
/// `2q (2q-1)^n` words with N collocation points each.
#[derive(Debug, Clone)]
pub struct StaticParts {
    data: SchottkyData,
    order: usize,
    level: usize,
    words: Vec<Word>,
    intervals: Vec<Interval>,
    blocks: Vec<Block>,
    dim: usize,
}

impl StaticParts {
    fn build(data: &SchottkyData, order: usize, level: usize, cap: usize) -> Result<Self> {
        if order < 1 {
            return Err(Error::InvalidParameter("collocation order must be at least 1".into()));
        }
        let q = data.q();
        let words = index_set(q, level);
        let dim = words.len() * order;
        if dim > cap {
            return Err(Error::DimensionCap { dim, cap });
        }
        let grid = ChebGrid::new(order);
        let ivs_dd: Vec<_> =
            words.iter().map(|w| refined_interval_dd(data, w)).collect::<Result<_>>()?;
        let intervals: Vec<Interval> =
            ivs_dd.iter().map(|iv| iv.to_interval()).collect::<Result<_>>()?;
        let index: HashMap<&Word, usize> = words.iter().zip(0..).collect();
        let mut blocks = Vec::with_capacity(words.len() * (2 * q - 1));
        for (vi, v) in words.iter().enumerate() {
            for w in block_partners(q, v) {
                let wi = index[&w];
                // level 0 blocks carry tau_s(S_k) with pullback S_{-k}; at
                // level >= 1 the coefficient is tau_s(S_{-w_1}) with pullback
                // S_{w_1}. Containment of the mapped nodes is asserted either
                // way, which pins the map uniquely.
                let g = if level == 0 {
                    data.generator(-w.target())
                } else {
                    data.generator(w.first())
                };
                let lb = lblock_dd(
                    &grid,
                    &ivs_dd[vi],
                    &ivs_dd[wi],
                    &g,
                    &v.to_string(),
                    &w.to_string(),
                )?;
                blocks.push(Block { v: vi, w: wi, lb });
            }
        }
        Ok(StaticParts {
            data: data.clone(),
            order,
            level,
            words,
            intervals,
            blocks,
            dim,
        })
    }

    pub fn data(&self) -> &SchottkyData {
        &self.data
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    /// Interval of the word at the given index.
    pub fn interval(&self, word_index: usize) -> Interval {
        self.intervals[word_index]
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Word-index pairs (v, w) of the nonzero blocks, in storage order.
    pub fn nonzero_pattern(&self) -> Vec<(usize, usize)> {
        self.blocks.iter().map(|b| (b.v, b.w)).collect()
    }

    /// `1 - L_s` as a dense complex matrix.
    pub fn assemble(&self, s: Complex64) -> Result<CMatrix> {
        let n = self.order;
        let mut a = CMatrix::identity(self.dim);
        for b in &self.blocks {
            for i in 0..n {
                let w = match complex_weight(s, b.lb.log_f[i]) {
                    Some(w) => w,
                    None => return Err(self.overflow_error(b, s.re * b.lb.log_f[i].hi)),
                };
                let row = a.row_mut(b.v * n + i);
                let mrow = &b.lb.m[i * n..(i + 1) * n];
                for (j, &mv) in mrow.iter().enumerate() {
                    row[b.w * n + j] -= w * mv;
                }
            }
        }
        Ok(a)
    }

    /// `1 - L_s` for real s (the matrix is real).
    pub fn assemble_real(&self, s: f64) -> Result<RMatrix> {
        let n = self.order;
        let mut a = RMatrix::identity(self.dim);
        for b in &self.blocks {
            for i in 0..n {
                let w = match real_weight(s, b.lb.log_f[i]) {
                    Some(w) => w,
                    None => return Err(self.overflow_error(b, s * b.lb.log_f[i].hi)),
                };
                let row = a.row_mut(b.v * n + i);
                let mrow = &b.lb.m[i * n..(i + 1) * n];
                for (j, &mv) in mrow.iter().enumerate() {
                    row[b.w * n + j] -= w * mv;
                }
            }
        }
        Ok(a)
    }

    fn overflow_error(&self, b: &Block, magnitude: f64) -> Error {
        Error::Overflow {
            v: self.words[b.v].to_string(),
            w: self.words[b.w].to_string(),
            magnitude,
        }
    }

    /// `Z(s) = det(1 - L_s)` as a `ScaledComplex`. Real s takes the real
    /// factorization path, so the phase is exactly 0 or pi there.
    pub fn zeta(&self, s: Complex64) -> Result<ScaledComplex> {
        if s.im == 0.0 {
            Ok(log_det_real(self.assemble_real(s.re)?))
        } else {
            Ok(log_det(self.assemble(s)?))
        }
    }
}

/// Builds the static parts (Chebyshev order N, refinement level n) with the
/// default dimension cap.
pub fn lparts(data: &SchottkyData, order: usize, level: usize) -> Result<StaticParts> {
    StaticParts::build(data, order, level, DEFAULT_DIM_CAP)
}

/// As `lparts` with an explicit dimension cap.
pub fn lparts_capped(
    data: &SchottkyData,
    order: usize,
    level: usize,
    cap: usize,
) -> Result<StaticParts> {
    StaticParts::build(data, order, level, cap)
}
