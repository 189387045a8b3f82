//! Zero location in a rectangle: Newton runs from a seed line, duplicate
//! filtering, argument-principle windings and real-axis bisection.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::transfer::{ScaledComplex, StaticParts};

/// Anything that evaluates `Z(s)` in log form. Evaluation failures
/// (overflow, dimension issues) surface as `None` and divert the consumer.
pub trait ZetaEvaluator: Sync {
    fn eval(&self, s: Complex64) -> Option<ScaledComplex>;
}

impl ZetaEvaluator for StaticParts {
    fn eval(&self, s: Complex64) -> Option<ScaledComplex> {
        self.zeta(s).ok()
    }
}

impl<F> ZetaEvaluator for F
where
    F: Fn(Complex64) -> Option<ScaledComplex> + Sync,
{
    fn eval(&self, s: Complex64) -> Option<ScaledComplex> {
        self(s)
    }
}

/// Closed search rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Window {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        if !(re_min < re_max && im_min < im_max) {
            return Err(Error::InvalidParameter(format!(
                "empty window [{re_min}, {re_max}] x [{im_min}, {im_max}]"
            )));
        }
        Ok(Window { re_min, re_max, im_min, im_max })
    }

    pub fn contains(&self, s: Complex64, slack: f64) -> bool {
        s.re >= self.re_min - slack
            && s.re <= self.re_max + slack
            && s.im >= self.im_min - slack
            && s.im <= self.im_max + slack
    }
}

/// Newton and acceptance tolerances; all configurable, defaults as documented.
#[derive(Debug, Clone)]
pub struct NewtonConfig {
    /// Step size below which the iteration is considered stationary.
    pub step_tol: f64,
    /// Largest scale-free residual accepted as a zero.
    pub zero_tol: f64,
    pub max_iter: usize,
    /// Relative central-difference step, scaled by `1 + |s|`.
    pub fd_step: f64,
    /// How far outside the window an iterate may wander before diverging.
    pub margin: f64,
}

impl Default for NewtonConfig {
    fn default() -> Self {
        NewtonConfig { step_tol: 1e-10, zero_tol: 1e-9, max_iter: 60, fd_step: 1e-6, margin: 1.0 }
    }
}

/// A located zero of `Z`.
#[derive(Debug, Clone)]
pub struct Resonance {
    pub s: Complex64,
    /// `|Z(s)|` relative to the largest `|Z|` at four reference points a
    /// distance `0.05 (1 + |s|)` away; scale-free against the exponential
    /// growth of `Z`.
    pub residual: f64,
    /// Argument-principle winding, when computed.
    pub multiplicity: Option<u32>,
    /// Within 1e-6 of a nonpositive integer on the real axis; such zeros may
    /// be topological rather than resonances. Advisory only, nothing is
    /// filtered.
    pub topological: bool,
    /// The seed the Newton run started from.
    pub seed: Complex64,
}

/// Deduplicated zero set of one search, sorted by (Re desc, Im asc).
#[derive(Debug, Clone)]
pub struct ResonanceSet {
    pub label: String,
    pub order: usize,
    pub level: usize,
    pub window: Window,
    pub resonances: Vec<Resonance>,
}

/// Why a Newton run produced nothing. Not a fault: most seeds on a dense
/// line are expected to diverge or duplicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Diverged {
    /// An evaluation failed or an iterate became non-finite.
    NonFinite,
    /// The iterate left the window by more than the margin.
    LeftRegion,
    MaxIterations,
}

impl std::fmt::Display for Diverged {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Diverged::NonFinite => write!(f, "non-finite evaluation"),
            Diverged::LeftRegion => write!(f, "left the search region"),
            Diverged::MaxIterations => write!(f, "iteration limit reached"),
        }
    }
}

const RESIDUAL_RHO: f64 = 0.05;
const TOPOLOGICAL_TOL: f64 = 1e-6;

fn topological_flag(s: Complex64) -> bool {
    s.im.abs() <= TOPOLOGICAL_TOL
        && (s.re - s.re.round()).abs() <= TOPOLOGICAL_TOL
        && s.re.round() <= 0.0
}

/// Scale-free residual: `|Z(s)|` divided by the largest `|Z|` at the four
/// compass points at distance `0.05 (1 + |s|)`. Near-unity for generic
/// points, tiny at a zero, robust against the global exponential scale.
pub fn residual<E: ZetaEvaluator + ?Sized>(eval: &E, s: Complex64) -> f64 {
    let z0 = match eval.eval(s) {
        Some(z) => z,
        None => return f64::INFINITY,
    };
    if z0.is_zero() {
        return 0.0;
    }
    let rho = RESIDUAL_RHO * (1.0 + s.norm());
    let mut reference = f64::NEG_INFINITY;
    for d in [
        Complex64::new(rho, 0.0),
        Complex64::new(-rho, 0.0),
        Complex64::new(0.0, rho),
        Complex64::new(0.0, -rho),
    ] {
        match eval.eval(s + d) {
            Some(z) => reference = reference.max(z.log_modulus),
            None => return f64::INFINITY,
        }
    }
    (z0.log_modulus - reference).exp()
}

/// One Newton run `s -> s - Z(s)/Z'(s)` with the derivative by central
/// differences on the rescaled evaluator. All three evaluations per step are
/// divided by `exp(log|Z(s)|)`, so the ratio never overflows; success needs
/// both a small step and a small scale-free residual.
pub fn newton_refine<E: ZetaEvaluator + ?Sized>(
    eval: &E,
    seed: Complex64,
    window: &Window,
    cfg: &NewtonConfig,
) -> std::result::Result<Resonance, Diverged> {
    let mut s = seed;
    for _ in 0..cfg.max_iter {
        if !window.contains(s, cfg.margin) {
            return Err(Diverged::LeftRegion);
        }
        let h = cfg.fd_step * (1.0 + s.norm());
        let z0 = eval.eval(s).ok_or(Diverged::NonFinite)?;
        if z0.is_zero() {
            return finish(eval, s, seed, cfg);
        }
        let zp = eval.eval(s + h).ok_or(Diverged::NonFinite)?;
        let zm = eval.eval(s - h).ok_or(Diverged::NonFinite)?;
        let offset = z0.log_modulus;
        let dz = (zp.rescaled(offset) - zm.rescaled(offset)) / (2.0 * h);
        if dz == Complex64::new(0.0, 0.0) {
            return Err(Diverged::NonFinite);
        }
        if !dz.is_finite() {
            // neighbors dwarf |Z(s)|: s is already a zero to working precision
            return finish(eval, s, seed, cfg);
        }
        let step = z0.rescaled(offset) / dz;
        s -= step;
        if !s.is_finite() {
            return Err(Diverged::NonFinite);
        }
        if step.norm() < cfg.step_tol {
            return finish(eval, s, seed, cfg);
        }
    }
    Err(Diverged::MaxIterations)
}

fn finish<E: ZetaEvaluator + ?Sized>(
    eval: &E,
    s: Complex64,
    seed: Complex64,
    cfg: &NewtonConfig,
) -> std::result::Result<Resonance, Diverged> {
    let res = residual(eval, s);
    if res < cfg.zero_tol {
        Ok(Resonance {
            s,
            residual: res,
            multiplicity: None,
            topological: topological_flag(s),
            seed,
        })
    } else {
        Err(Diverged::MaxIterations)
    }
}

/// Keeps one representative (the smaller residual) of each cluster of zeros
/// within `tol * (1 + |s|)`. Processing order is the input order, so the
/// result is deterministic; running it twice changes nothing.
pub fn dedup(candidates: Vec<Resonance>, tol: f64) -> Vec<Resonance> {
    let mut kept: Vec<Resonance> = Vec::new();
    for cand in candidates {
        match kept
            .iter_mut()
            .find(|k| (k.s - cand.s).norm() <= tol * (1.0 + cand.s.norm()))
        {
            Some(k) => {
                if cand.residual < k.residual {
                    *k = cand;
                }
            }
            None => kept.push(cand),
        }
    }
    kept
}

fn sort_set(rs: &mut [Resonance]) {
    rs.sort_by(|a, b| {
        b.s.re
            .partial_cmp(&a.s.re)
            .unwrap()
            .then(a.s.im.partial_cmp(&b.s.im).unwrap())
    });
}

/// Newton runs from seeds `c + i m spacing` covering `im_range`, keeping the
/// deduplicated zeros inside `window`. Seeds run in parallel; the reduction
/// order is fixed by the seed order.
pub fn scan_line<E: ZetaEvaluator + ?Sized>(
    eval: &E,
    c: f64,
    im_range: (f64, f64),
    spacing: f64,
    window: &Window,
    cfg: &NewtonConfig,
    dedup_tol: f64,
) -> Vec<Resonance> {
    assert!(spacing > 0.0, "seed spacing must be positive");
    let m_lo = (im_range.0 / spacing - 1e-9).ceil() as i64;
    let m_hi = (im_range.1 / spacing + 1e-9).floor() as i64;
    let hits: Vec<Option<Resonance>> = (m_lo..=m_hi)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&m| {
            let seed = Complex64::new(c, m as f64 * spacing);
            newton_refine(eval, seed, window, cfg)
                .ok()
                .filter(|r| window.contains(r.s, 1e-9))
        })
        .collect();
    let mut found = dedup(hits.into_iter().flatten().collect(), dedup_tol);
    sort_set(&mut found);
    found
}

/// Argument-principle winding of `Z` around the circle of the given radius:
/// the sum of phase increments (each wrapped to (-pi, pi]) over the closed
/// polygon, divided by 2 pi. The nearest integer is returned; a sum farther
/// than 0.2 from an integer is an error.
pub fn multiplicity<E: ZetaEvaluator + ?Sized>(
    eval: &E,
    s0: Complex64,
    radius: f64,
    points: usize,
) -> Result<i64> {
    assert!(points >= 8, "need at least 8 contour points");
    let mut total = 0.0;
    let mut prev: Option<f64> = None;
    for i in 0..=points {
        let theta = 2.0 * std::f64::consts::PI * i as f64 / points as f64;
        let s = s0 + Complex64::from_polar(radius, theta);
        let z = eval
            .eval(s)
            .ok_or(Error::AmbiguousWinding { value: f64::NAN })?;
        let phase = z.phase;
        if let Some(p) = prev {
            total += crate::linalg::wrap_phase(phase - p);
        }
        prev = Some(phase);
    }
    let winding = total / (2.0 * std::f64::consts::PI);
    let nearest = winding.round();
    if (winding - nearest).abs() > 0.2 || !nearest.is_finite() {
        return Err(Error::AmbiguousWinding { value: winding });
    }
    Ok(nearest as i64)
}

/// Newton runs from a local seed grid inside the disk around `center`,
/// splitting clusters that a coarse line scan resolved as a single zero.
pub fn resolve_cluster<E: ZetaEvaluator + ?Sized>(
    eval: &E,
    center: Complex64,
    radius: f64,
    window: &Window,
    cfg: &NewtonConfig,
    dedup_tol: f64,
) -> Vec<Resonance> {
    let k = 4i32;
    let mut seeds = Vec::new();
    for i in -k..=k {
        for j in -k..=k {
            seeds.push(center + radius * Complex64::new(i as f64 / k as f64, j as f64 / k as f64));
        }
    }
    let hits: Vec<Option<Resonance>> = seeds
        .par_iter()
        .map(|&seed| {
            newton_refine(eval, seed, window, cfg)
                .ok()
                .filter(|r| (r.s - center).norm() <= 2.0 * radius && window.contains(r.s, 1e-9))
        })
        .collect();
    let mut found = dedup(hits.into_iter().flatten().collect(), dedup_tol);
    sort_set(&mut found);
    found
}

/// Largest real zero below `re_hi`: marches down in `coarse_step` until the
/// sign of real `Z` flips, then bisects the bracket to `tol`.
pub fn largest_real_zero<E: ZetaEvaluator + ?Sized>(
    eval: &E,
    re_hi: f64,
    re_lo: f64,
    coarse_step: f64,
    tol: f64,
) -> Option<f64> {
    let sign = |x: f64| -> Option<f64> {
        let z = eval.eval(Complex64::new(x, 0.0))?;
        Some(if z.phase.cos() >= 0.0 { 1.0 } else { -1.0 })
    };
    let mut x = re_hi;
    let mut sx = sign(x)?;
    while x > re_lo {
        let x2 = x - coarse_step;
        let s2 = sign(x2)?;
        if sx * s2 < 0.0 {
            let (mut a, mut b) = (x2, x);
            let sa = s2;
            while b - a > tol {
                let mid = 0.5 * (a + b);
                if sign(mid)? * sa <= 0.0 {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            return Some(0.5 * (a + b));
        }
        x = x2;
        sx = s2;
    }
    None
}

/// Everything `find_resonances` needs beyond the static parts.
#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub window: Window,
    /// Real part of the seed line; `None` seeds from the window's left edge,
    /// whose Newton basins reach every zero to its right.
    pub seed_re: Option<f64>,
    pub spacing: f64,
    pub newton: NewtonConfig,
    pub dedup_tol: f64,
    /// Compute argument-principle windings per zero.
    pub multiplicity: bool,
    pub contour_points: usize,
    /// Cap on the winding radius, scaled by `1 + |s|`.
    pub radius_cap: f64,
}

impl SearchOptions {
    pub fn new(window: Window) -> Self {
        SearchOptions {
            window,
            seed_re: None,
            spacing: 0.05,
            newton: NewtonConfig::default(),
            dedup_tol: 1e-6,
            multiplicity: false,
            contour_points: 64,
            radius_cap: 0.02,
        }
    }
}

/// Full pipeline over prebuilt static parts: line scan, dedup, optional
/// winding per zero with cluster splitting, topological flagging.
///
/// When a winding exceeds one, a local seed grid tries to split the contour
/// into distinct zeros first (a coarse scan can land on only one member of a
/// close pair); only an unsplittable cluster is reported as a multiple zero.
pub fn find_resonances(parts: &StaticParts, opts: &SearchOptions) -> Result<ResonanceSet> {
    let seed_re = opts.seed_re.unwrap_or(opts.window.re_min);
    let mut found = scan_line(
        parts,
        seed_re,
        (opts.window.im_min, opts.window.im_max),
        opts.spacing,
        &opts.window,
        &opts.newton,
        opts.dedup_tol,
    );
    if opts.multiplicity {
        for _round in 0..3 {
            let (next, split_any) = winding_pass(parts, found, opts)?;
            found = next;
            if !split_any {
                break;
            }
        }
    }
    Ok(ResonanceSet {
        label: parts.data().label().to_string(),
        order: parts.order(),
        level: parts.level(),
        window: opts.window,
        resonances: found,
    })
}

fn winding_radius(s: Complex64, nearest: f64, cap: f64) -> f64 {
    (0.4 * nearest).min(cap * (1.0 + s.norm()))
}

fn winding_pass(
    parts: &StaticParts,
    found: Vec<Resonance>,
    opts: &SearchOptions,
) -> Result<(Vec<Resonance>, bool)> {
    let mut out: Vec<Resonance> = Vec::new();
    let mut split_any = false;
    for (i, r) in found.iter().enumerate() {
        let nearest = found
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, o)| (o.s - r.s).norm())
            .fold(f64::INFINITY, f64::min);
        let radius = winding_radius(r.s, nearest, opts.radius_cap);
        // an ambiguous contour (a zero too close to it) retries smaller;
        // if that keeps failing the zero is still reported, unclassified
        let w = match (0..3)
            .map(|half| multiplicity(parts, r.s, radius / (1 << half) as f64, opts.contour_points))
            .find_map(|res| res.ok())
        {
            Some(w) => w,
            None => {
                out.push(r.clone());
                continue;
            }
        };
        if w >= 2 {
            let cluster = resolve_cluster(
                parts,
                r.s,
                radius,
                &opts.window,
                &opts.newton,
                opts.dedup_tol,
            );
            if cluster.len() > 1 {
                split_any = true;
                out.extend(cluster);
                continue;
            }
        }
        let mut r = r.clone();
        r.multiplicity = if w >= 1 { Some(w as u32) } else { None };
        out.push(r);
    }
    let mut out = dedup(out, opts.dedup_tol);
    sort_set(&mut out);
    Ok((out, split_any))
}
