//! Word sets, refined intervals and the sparsity pattern of the level-n
//! transfer operator.
//!
//! A level-n word `(w_1, ..., w_n, l)` labels the interval
//! `I_w = S_{w_1} ... S_{w_n} . I_l`. Adjacent letters never cancel
//! (`w_k != -w_{k-1}`) and the final application never expands
//! (`l != w_n`), so the intervals nest strictly into `I_{-w_1}` and
//! converge to the limit set as n grows.

use crate::error::{Error, Result};
use crate::geometry::{DdInterval, Interval};
use crate::schottky::SchottkyData;

/// Index tuple `(w_1, ..., w_n, l)` over `I_G`; the last letter is the domain
/// index of the base interval.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<i32>);

impl Word {
    /// Validates the alphabet and the two admissibility constraints.
    pub fn new(letters: Vec<i32>, q: usize) -> Result<Word> {
        if letters.is_empty() {
            return Err(Error::InvalidParameter("word needs at least the domain letter".into()));
        }
        for &c in &letters {
            if c == 0 || c.unsigned_abs() as usize > q {
                return Err(Error::InvalidParameter(format!("letter {c} not in I_G for q = {q}")));
            }
        }
        for k in 1..letters.len() - 1 {
            if letters[k] == -letters[k - 1] {
                return Err(Error::InvalidParameter(format!(
                    "letters {} and {} cancel",
                    letters[k - 1],
                    letters[k]
                )));
            }
        }
        let n = letters.len() - 1;
        if n >= 1 && letters[n] == letters[n - 1] {
            return Err(Error::InvalidParameter(format!(
                "domain letter {} equals last map letter",
                letters[n]
            )));
        }
        Ok(Word(letters))
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    /// Refinement level n; a word has n + 1 letters.
    pub fn level(&self) -> usize {
        self.0.len() - 1
    }

    pub fn first(&self) -> i32 {
        self.0[0]
    }

    /// The domain letter l indexing the base interval.
    pub fn target(&self) -> i32 {
        self.0[self.0.len() - 1]
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn ig(q: usize) -> impl Iterator<Item = i32> {
    let q = q as i32;
    (-q..0).chain(1..=q)
}

/// The word set for level n in construction order: level 0 is `I_G` itself in
/// the order `[-q, ..., -1, 1, ..., q]`, and each higher level prepends every
/// admissible letter to each previous word, outer loop over words, inner over
/// `I_G`. The prepend condition is `k != First(w)` when building level 1
/// (keeping the domain letter distinct) and `-k != First(w)` above (keeping
/// adjacent letters from cancelling). Cardinality `2q (2q-1)^n`.
pub fn index_set(q: usize, n: usize) -> Vec<Word> {
    assert!(q >= 1, "need at least one generator pair");
    let mut words: Vec<Word> = ig(q).map(|k| Word(vec![k])).collect();
    for level in 1..=n {
        let r: i32 = if level < 2 { 1 } else { -1 };
        let mut next = Vec::with_capacity(words.len() * (2 * q - 1));
        for w in &words {
            for k in ig(q) {
                if r * k != w.first() {
                    let mut letters = Vec::with_capacity(w.0.len() + 1);
                    letters.push(k);
                    letters.extend_from_slice(&w.0);
                    next.push(Word(letters));
                }
            }
        }
        words = next;
    }
    words
}

/// The words `w` whose block `(v, w)` in the level-n transfer matrix is
/// nonzero, in `I_G` order of the leading letter; there are always `2q - 1`.
///
/// At level 0 these are all `w != -v`; at level n >= 1 they are
/// `w = (w_1, v_1, ..., v_{n-1}, -v_n)` with `w_1` ranging over
/// `I_G \ {-v_1}`.
pub fn block_partners(q: usize, v: &Word) -> Vec<Word> {
    let n = v.level();
    if n == 0 {
        return ig(q).filter(|&k| k != -v.first()).map(|k| Word(vec![k])).collect();
    }
    let mut out = Vec::with_capacity(2 * q - 1);
    for k in ig(q) {
        if k == -v.0[0] {
            continue;
        }
        let mut letters = Vec::with_capacity(n + 1);
        letters.push(k);
        letters.extend_from_slice(&v.0[..n - 1]);
        letters.push(-v.0[n - 1]);
        out.push(Word(letters));
    }
    out
}

/// The interval `I_w = S_{w_1} ... S_{w_n} . I_l`; equals `I_l` at level 0 and
/// is contained in `I_{-w_1}` at level >= 1.
pub fn refined_interval(data: &SchottkyData, w: &Word) -> Result<Interval> {
    refined_interval_dd(data, w)?.to_interval()
}

/// Double-double variant; the chain of endpoint images cancels most of the
/// f64 mantissa once the intervals shrink below ~1e-8.
pub(crate) fn refined_interval_dd(data: &SchottkyData, w: &Word) -> Result<DdInterval> {
    let mut iv = DdInterval::from_interval(data.interval(w.target()));
    for &k in w.0[..w.0.len() - 1].iter().rev() {
        iv = data.generator(k).map_interval_dd(&iv)?;
    }
    Ok(iv)
}
