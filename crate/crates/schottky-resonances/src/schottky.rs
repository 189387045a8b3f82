//! Schottky data: paired disks/intervals with generators, and the surface
//! families built from them.

use crate::error::{Error, Result};
use crate::geometry::{generator_s, isometric_interval, rotation, Interval, MoebiusTransform};

/// Margin below which a validity condition counts as violated.
pub const VALIDITY_MARGIN: f64 = 1e-10;

/// How a set of Schottky data fails to be valid.
#[derive(Debug, Clone, PartialEq)]
pub enum ViolationKind {
    /// Closures of the intervals for `k` and `j` are not disjoint.
    Overlap,
    /// The image of interval `j` under `S_{-k}` is not strictly inside interval `k`.
    MappingNotContained,
    /// Interval image could not be formed at all (pole inside, affine generator).
    Geometry,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub k: i32,
    pub j: i32,
    /// Numeric margin of the failed condition (<= VALIDITY_MARGIN).
    pub margin: f64,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.kind {
            ViolationKind::Overlap => write!(
                f,
                "intervals I_{} and I_{} overlap (gap {:.3e})",
                self.k, self.j, self.margin
            ),
            ViolationKind::MappingNotContained => write!(
                f,
                "image of I_{} under S_{} is not strictly inside I_{} (margin {:.3e})",
                self.j, -self.k, self.k, self.margin
            ),
            ViolationKind::Geometry => {
                write!(f, "interval image for (k, j) = ({}, {}) undefined", self.k, self.j)
            }
        }
    }
}

/// Generators and intervals of a Schottky group, indexed by
/// `I_G = {-q, ..., -1, 1, ..., q}` with `S_{-k} = S_k^{-1}`.
///
/// Only `S_1, ..., S_q` are stored; inverses are derived on access. The
/// interval for index `k` is the real trace of the isometric disk of `S_k`.
#[derive(Debug, Clone)]
pub struct SchottkyData {
    q: usize,
    gens: Vec<MoebiusTransform>,
    intervals: Vec<Interval>,
    label: String,
}

impl SchottkyData {
    /// Builds data from the generators `S_1, ..., S_q` and validates it.
    pub fn from_generators(gens: Vec<MoebiusTransform>, label: impl Into<String>) -> Result<Self> {
        let data = Self::from_generators_unchecked(gens, label)?;
        let report = data.validate();
        if report.is_empty() {
            Ok(data)
        } else {
            let first = report[0].to_string();
            Err(Error::OverlappingDisks { report, first })
        }
    }

    /// Builds data without checking validity; `validate` can then report the
    /// violations. Still fails if some isometric disk is undefined.
    pub fn from_generators_unchecked(
        gens: Vec<MoebiusTransform>,
        label: impl Into<String>,
    ) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::InvalidParameter("need at least one generator".into()));
        }
        let q = gens.len();
        let mut intervals = Vec::with_capacity(2 * q);
        for k in ig_indices(q) {
            let g = if k > 0 { gens[(k - 1) as usize] } else { gens[(-k - 1) as usize].inverse() };
            intervals.push(isometric_interval(&g)?);
        }
        Ok(SchottkyData { q, gens, intervals, label: label.into() })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn euler_characteristic(&self) -> i32 {
        1 - self.q as i32
    }

    /// Index set `I_G` in the fixed order `[-q, ..., -1, 1, ..., q]`.
    pub fn ig(&self) -> impl Iterator<Item = i32> {
        ig_indices(self.q)
    }

    /// Generator for index `k`; negative indices yield the inverse.
    pub fn generator(&self, k: i32) -> MoebiusTransform {
        assert!(k != 0 && k.unsigned_abs() as usize <= self.q, "index {k} not in I_G");
        if k > 0 {
            self.gens[(k - 1) as usize]
        } else {
            self.gens[(-k - 1) as usize].inverse()
        }
    }

    /// Interval `I_k`.
    pub fn interval(&self, k: i32) -> Interval {
        self.intervals[self.slot(k)]
    }

    fn slot(&self, k: i32) -> usize {
        assert!(k != 0 && k.unsigned_abs() as usize <= self.q, "index {k} not in I_G");
        if k < 0 {
            (k + self.q as i32) as usize
        } else {
            self.q + (k - 1) as usize
        }
    }

    /// Checks every validity condition and reports each violation; an empty
    /// report means the data is valid with margins above `VALIDITY_MARGIN`.
    /// Never fails.
    pub fn validate(&self) -> Vec<Violation> {
        let mut report = Vec::new();
        let ks: Vec<i32> = self.ig().collect();
        for (i, &k) in ks.iter().enumerate() {
            for &j in &ks[i + 1..] {
                let gap = self.interval(k).gap_to(&self.interval(j));
                if gap <= VALIDITY_MARGIN {
                    report.push(Violation { kind: ViolationKind::Overlap, k, j, margin: gap });
                }
            }
        }
        for &k in &ks {
            let ik = self.interval(k);
            let g = self.generator(-k);
            for &j in &ks {
                if j == -k {
                    continue;
                }
                match g.map_interval(self.interval(j)) {
                    Ok(img) => {
                        let margin = ik.containment_margin(&img);
                        if margin <= VALIDITY_MARGIN {
                            report.push(Violation {
                                kind: ViolationKind::MappingNotContained,
                                k,
                                j,
                                margin,
                            });
                        }
                    }
                    Err(_) => {
                        report.push(Violation { kind: ViolationKind::Geometry, k, j, margin: 0.0 })
                    }
                }
            }
        }
        report
    }
}

fn ig_indices(q: usize) -> impl Iterator<Item = i32> {
    let q = q as i32;
    (-q..0).chain(1..=q)
}

/// The widest-funnel quotient: one generator pair `S(l, 1)`.
pub fn hyperbolic_cylinder(l: f64) -> Result<SchottkyData> {
    let s1 = generator_s(l, 1.0)?;
    SchottkyData::from_generators(vec![s1], format!("cylinder({l})"))
}

/// `A(l1, l2, l3) = d - sqrt(d^2 - 1)` with
/// `d = (cosh(l1/2) cosh(l2/2) + cosh(l3/2)) / (sinh(l1/2) sinh(l2/2))`.
/// Solves the trace condition fixing the third funnel width of a three-funnel
/// surface; always in (0, 1] since d >= 1.
pub fn waist_function_a(l1: f64, l2: f64, l3: f64) -> Result<f64> {
    if !(l1 > 0.0 && l2 > 0.0 && l3 > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "funnel widths must be positive, got ({l1}, {l2}, {l3})"
        )));
    }
    let d = ((l1 / 2.0).cosh() * (l2 / 2.0).cosh() + (l3 / 2.0).cosh())
        / ((l1 / 2.0).sinh() * (l2 / 2.0).sinh());
    Ok(d - (d * d - 1.0).sqrt())
}

/// Three-funnel surface X(l1, l2, l3): `S_1 = S(l1, 1)`,
/// `S_2 = S(l2, A(l1, l2, l3))`, so that `tr(S_1 S_{-2}) = -2 cosh(l3/2)`.
pub fn three_funnel(l1: f64, l2: f64, l3: f64) -> Result<SchottkyData> {
    let a = waist_function_a(l1, l2, l3)?;
    let s1 = generator_s(l1, 1.0)?;
    let s2 = generator_s(l2, a)?;
    SchottkyData::from_generators(vec![s1, s2], format!("X({l1},{l2},{l3})"))
}

/// Surface with `n >= 3` funnels of the given widths, built from `q = n - 1`
/// generators `S(l_k, a_k)` with multiplicative `a_k`.
///
/// The outer parameters are fixed by the first and last width; the `n - 3`
/// inner `l_k` either come from `inner_l` or, for all-equal widths, are tuned
/// by bisection until each inner generator's translation length matches the
/// corresponding separating waist word `S_{k-1} S_{k+1}^{-1}`.
pub fn n_funnel(widths: &[f64], inner_l: Option<&[f64]>) -> Result<SchottkyData> {
    let n = widths.len();
    if n < 3 {
        return Err(Error::InvalidParameter(format!("need at least 3 funnels, got {n}")));
    }
    if widths.iter().any(|&w| !(w > 0.0)) {
        return Err(Error::InvalidParameter("funnel widths must be positive".into()));
    }
    if n == 3 {
        if inner_l.map_or(false, |v| !v.is_empty()) {
            return Err(Error::InvalidParameter(
                "a 3-funnel surface has no inner parameters".into(),
            ));
        }
        return three_funnel(widths[0], widths[1], widths[2]);
    }
    let q = n - 1;
    let mut ls = vec![0.0; q + 1]; // 1-based
    ls[1] = widths[0];
    ls[q] = widths[n - 1];
    match inner_l {
        Some(inner) => {
            if inner.len() != n - 3 {
                return Err(Error::InvalidParameter(format!(
                    "expected {} inner parameters, got {}",
                    n - 3,
                    inner.len()
                )));
            }
            if inner.iter().any(|&w| !(w > 0.0)) {
                return Err(Error::InvalidParameter("inner parameters must be positive".into()));
            }
            ls[2..q].copy_from_slice(inner);
        }
        None => {
            let w0 = widths[0];
            if widths.iter().any(|&w| (w - w0).abs() > 1e-12) {
                return Err(Error::InvalidParameter(
                    "auto-symmetrization needs equal widths; pass inner_l explicitly".into(),
                ));
            }
            tune_inner(&mut ls, widths)?;
        }
    }
    let gens = build_chain(&ls, widths)?;
    let label = format!(
        "nfunnel({})",
        widths.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(",")
    );
    SchottkyData::from_generators(gens, label)
}

fn build_chain(ls: &[f64], widths: &[f64]) -> Result<Vec<MoebiusTransform>> {
    let q = ls.len() - 1;
    let mut a = vec![0.0; q + 1];
    a[1] = 1.0;
    for k in 1..q {
        a[k + 1] = waist_function_a(ls[k], ls[k + 1], widths[k])? * a[k];
    }
    (1..=q).map(|k| generator_s(ls[k], a[k])).collect()
}

/// Translation length of the separating waist word `S_{k-1} S_{k+1}^{-1}`
/// minus the inner parameter `l_k`; the tuning zeroes this residual.
fn waist_residual(ls: &[f64], widths: &[f64], k: usize) -> Result<f64> {
    let gens = build_chain(ls, widths)?;
    let word = gens[k - 2].compose(&gens[k].inverse());
    Ok(word.translation_length()? - ls[k])
}

fn tune_inner(ls: &mut Vec<f64>, widths: &[f64]) -> Result<()> {
    let q = ls.len() - 1;
    let wmax = widths.iter().cloned().fold(f64::MIN, f64::max);
    let (blo, bhi) = (wmax, 4.0 * wmax);
    for k in 2..q {
        ls[k] = 0.5 * (blo + bhi); // initial guess for the sweep
    }
    for _sweep in 0..100 {
        for k in 2..q {
            let mut lo = blo;
            let mut hi = bhi;
            let eval = |x: f64, ls: &mut Vec<f64>| -> Result<f64> {
                ls[k] = x;
                waist_residual(ls, widths, k)
            };
            let flo = eval(lo, ls)?;
            let fhi = eval(hi, ls)?;
            if flo * fhi > 0.0 {
                return Err(Error::NoConvergence { index: k, lo, hi });
            }
            let mut flo = flo;
            while hi - lo > 1e-12 {
                let mid = 0.5 * (lo + hi);
                let fm = eval(mid, ls)?;
                if flo * fm <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            ls[k] = 0.5 * (lo + hi);
        }
        // all residuals re-measured after the sweep: later solves move the
        // earlier equations, so in-sweep values overstate convergence
        let mut worst: f64 = 0.0;
        for k in 2..q {
            worst = worst.max(waist_residual(ls, widths, k)?.abs());
        }
        if worst < 1e-10 {
            return Ok(());
        }
    }
    Err(Error::NoConvergence { index: 0, lo: blo, hi: bhi })
}

/// Funneled torus Y(l1, l2, phi) from the diagonal generator and the
/// phi-sheared one, both conjugated by a rotation so that no isometric disk
/// contains infinity. The rotation angle defaults to pi/8.
pub fn funneled_torus(l1: f64, l2: f64, phi: f64) -> Result<SchottkyData> {
    funneled_torus_rotated(l1, l2, phi, std::f64::consts::FRAC_PI_8)
}

/// As `funneled_torus`, with an explicit rotation angle for cases where the
/// default produces overlapping disks.
pub fn funneled_torus_rotated(l1: f64, l2: f64, phi: f64, psi: f64) -> Result<SchottkyData> {
    let gens = funneled_torus_generators(l1, l2, phi, psi)?;
    SchottkyData::from_generators(gens, format!("Y({l1},{l2},{phi})"))
}

pub(crate) fn funneled_torus_generators(
    l1: f64,
    l2: f64,
    phi: f64,
    psi: f64,
) -> Result<Vec<MoebiusTransform>> {
    if !(l1 > 0.0 && l2 > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "geodesic lengths must be positive, got ({l1}, {l2})"
        )));
    }
    if !(phi > 0.0 && phi < std::f64::consts::PI) {
        return Err(Error::InvalidParameter(format!("twist angle {phi} must lie in (0, pi)")));
    }
    let s1_tilde =
        MoebiusTransform::from_unimodular((l1 / 2.0).exp(), 0.0, 0.0, (-l1 / 2.0).exp());
    let (ch, sh) = ((l2 / 2.0).cosh(), (l2 / 2.0).sinh());
    let s2_tilde = MoebiusTransform::from_unimodular(
        ch - phi.cos() * sh,
        phi.sin() * phi.sin() * sh,
        sh,
        ch + phi.cos() * sh,
    );
    let r = rotation(psi);
    let ri = rotation(-psi);
    Ok(vec![r.compose(&s1_tilde).compose(&ri), r.compose(&s2_tilde).compose(&ri)])
}
