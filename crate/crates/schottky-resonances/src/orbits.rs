//! Periodic-orbit data and the expansion
//! `Z(s) = 1 + sum d_n(s)`, `d_n = -(1/n) sum_{k<=n} d_{n-k} Tr L_s^k`,
//! with `Tr L_s^k = sum_{l in L_k} e^{-s l} / (1 - e^{-l})`.
//!
//! `L_k` collects the lengths of ALL ordered cyclically admissible k-letter
//! words (fixed points of the k-th iterate of the coding, not conjugacy
//! classes). Each unoriented closed geodesic therefore appears twice, once
//! per orientation; the determinant side counts the same way, so the two
//! evaluations agree.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::schottky::SchottkyData;

/// Default bound on `(2q - 1)^k`, the number of words visited at depth k.
pub const DEFAULT_ENUMERATION_CAP: f64 = 1e7;

/// A cyclically admissible word with the trace and geodesic length of the
/// corresponding group element.
#[derive(Debug, Clone)]
pub struct SymbolicOrbit {
    pub word: Vec<i32>,
    /// `2 arccosh(|trace| / 2)`.
    pub length: f64,
    /// Trace of the word product; saturates to infinity for very long words,
    /// while the length stays finite through log-scaled products.
    pub trace: f64,
}

/// 2x2 product tracked with a separate log-scale so that entries of order
/// `e^{k l / 2}` never overflow.
#[derive(Clone, Copy)]
struct ScaledMat {
    m: [f64; 4],
    log_scale: f64,
}

impl ScaledMat {
    fn of(g: &crate::geometry::MoebiusTransform) -> ScaledMat {
        let (a, b, c, d) = g.entries();
        ScaledMat { m: [a, b, c, d], log_scale: 0.0 }
    }

    fn mul(&self, o: &ScaledMat) -> ScaledMat {
        let a = &self.m;
        let b = &o.m;
        let mut m = [
            a[0] * b[0] + a[1] * b[2],
            a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3],
        ];
        let mut log_scale = self.log_scale + o.log_scale;
        let mx = m.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        if mx > 1e100 {
            for v in &mut m {
                *v /= mx;
            }
            log_scale += mx.ln();
        }
        ScaledMat { m, log_scale }
    }

    /// `(sign, ln |trace|)`.
    fn log_trace(&self) -> (f64, f64) {
        let t = self.m[0] + self.m[3];
        (t.signum(), t.abs().ln() + self.log_scale)
    }
}

/// Geodesic length from `ln |trace|`: `2 arccosh(e^{log_t} / 2)`.
fn length_from_log_trace(log_t: f64) -> f64 {
    if log_t < 300.0 {
        2.0 * (log_t.exp() / 2.0).acosh()
    } else {
        // arccosh(T/2) = ln T + ln(1/2 + sqrt(1/4 - 1/T^2))
        2.0 * (log_t + (0.5 + (0.25 - (-2.0 * log_t).exp()).sqrt()).ln())
    }
}

fn ig(q: usize) -> Vec<i32> {
    let q = q as i32;
    (-q..0).chain(1..=q).collect()
}

/// Enumerates every ordered cyclically admissible k-tuple over `I_G`
/// (`w_{i+1} != -w_i` and `w_1 != -w_k`) together with trace and length.
pub fn orbits(data: &SchottkyData, k: usize) -> Result<Vec<SymbolicOrbit>> {
    orbits_capped(data, k, DEFAULT_ENUMERATION_CAP)
}

pub fn orbits_capped(data: &SchottkyData, k: usize, cap: f64) -> Result<Vec<SymbolicOrbit>> {
    if k == 0 {
        return Err(Error::InvalidParameter("orbit word length must be positive".into()));
    }
    let q = data.q();
    let count = ((2 * q - 1) as f64).powi(k as i32);
    if count > cap {
        return Err(Error::EnumerationCap { count, cap });
    }
    let alphabet = ig(q);
    let gens: Vec<ScaledMat> =
        alphabet.iter().map(|&c| ScaledMat::of(&data.generator(c))).collect();
    let pos = |c: i32| -> usize {
        alphabet.iter().position(|&a| a == c).expect("letter in I_G")
    };
    let mut out = Vec::new();
    let mut word: Vec<i32> = Vec::with_capacity(k);
    // DFS with prefix products
    fn dfs(
        depth: usize,
        k: usize,
        word: &mut Vec<i32>,
        prod: ScaledMat,
        alphabet: &[i32],
        gens: &[ScaledMat],
        pos: &dyn Fn(i32) -> usize,
        out: &mut Vec<SymbolicOrbit>,
    ) -> Result<()> {
        if depth == k {
            if word[0] != -word[k - 1] {
                let (sign, log_t) = prod.log_trace();
                if log_t < (2.0 + 1e-12f64).ln() {
                    return Err(Error::NonHyperbolicWord {
                        word: word.clone(),
                        trace: sign * log_t.exp(),
                    });
                }
                out.push(SymbolicOrbit {
                    word: word.clone(),
                    length: length_from_log_trace(log_t),
                    trace: sign * log_t.exp(),
                });
            }
            return Ok(());
        }
        for &c in alphabet {
            if let Some(&last) = word.last() {
                if c == -last {
                    continue;
                }
            }
            word.push(c);
            let next = prod.mul(&gens[pos(c)]);
            dfs(depth + 1, k, word, next, alphabet, gens, pos, out)?;
            word.pop();
        }
        Ok(())
    }
    for &c in &alphabet {
        word.push(c);
        dfs(1, k, &mut word, gens[pos(c)], &alphabet, &gens, &pos, &mut out)?;
        word.pop();
    }
    Ok(out)
}

/// `Tr L_s^k` via the orbit sum.
pub fn trace_power(data: &SchottkyData, s: Complex64, k: usize) -> Result<Complex64> {
    Ok(LengthSpectra::new(data, k)?.trace_power(s, k))
}

/// Orbit lengths for word lengths `1..=k_max`, enumerated once and reused
/// across parameters.
#[derive(Debug, Clone)]
pub struct LengthSpectra {
    lengths: Vec<Vec<f64>>,
}

impl LengthSpectra {
    pub fn new(data: &SchottkyData, k_max: usize) -> Result<Self> {
        let mut lengths = Vec::with_capacity(k_max);
        for k in 1..=k_max {
            lengths.push(orbits(data, k)?.into_iter().map(|o| o.length).collect());
        }
        Ok(LengthSpectra { lengths })
    }

    pub fn k_max(&self) -> usize {
        self.lengths.len()
    }

    pub fn lengths(&self, k: usize) -> &[f64] {
        &self.lengths[k - 1]
    }

    pub fn trace_power(&self, s: Complex64, k: usize) -> Complex64 {
        self.lengths[k - 1]
            .iter()
            .map(|&l| (-s * l).exp() / (1.0 - (-l).exp()))
            .sum()
    }

    /// The expansion coefficients `d_0, ..., d_{n_trunc}`.
    pub fn dn(&self, s: Complex64, n_trunc: usize) -> Vec<Complex64> {
        assert!(n_trunc <= self.k_max());
        let traces: Vec<Complex64> =
            (1..=n_trunc).map(|k| self.trace_power(s, k)).collect();
        let mut d = vec![Complex64::new(1.0, 0.0)];
        for n in 1..=n_trunc {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 1..=n {
                acc += d[n - k] * traces[k - 1];
            }
            d.push(-acc / n as f64);
        }
        d
    }

    /// Truncated expansion `Z_{n_trunc}(s) = 1 + sum_{n=1}^{n_trunc} d_n(s)`.
    pub fn zeta(&self, s: Complex64, n_trunc: usize) -> Complex64 {
        self.dn(s, n_trunc).into_iter().sum()
    }
}

/// One-shot periodic-orbit evaluation of `Z(s)` truncated at `n_trunc`.
pub fn zeta_poe(data: &SchottkyData, s: Complex64, n_trunc: usize) -> Result<Complex64> {
    Ok(LengthSpectra::new(data, n_trunc)?.zeta(s, n_trunc))
}
