//! Real Moebius transformations, their boundary action and interval images.

use crate::dd::Dd;
use crate::error::{Error, Result};

/// Entries with `|c*x + d|` below this are treated as a pole.
pub const POLE_TOL: f64 = 1e-14;

/// An element of PSL(2, R) acting on the extended real line.
///
/// The stored representative is normalized to determinant one with the first
/// nonzero entry of (a, c) positive, so equal group elements have equal
/// entries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusTransform {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl MoebiusTransform {
    /// Builds the transformation from matrix entries, rescaling to det = 1.
    /// Entries with `a*d - b*c <= 0` do not represent an orientation-preserving
    /// isometry and are rejected.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !det.is_finite() || det <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "determinant {det} must be positive and finite"
            )));
        }
        let s = det.sqrt();
        let (mut a, mut b, mut c, mut d) = (a / s, b / s, c / s, d / s);
        if a < 0.0 || (a == 0.0 && c < 0.0) {
            a = -a;
            b = -b;
            c = -c;
            d = -d;
        }
        Ok(MoebiusTransform { a, b, c, d })
    }

    /// Constructor for entries that are unimodular by construction (analytic
    /// determinant one); applies only the sign convention. Recomputing the
    /// determinant of such entries in f64 would cancel catastrophically once
    /// they reach ~1e8, so no rescaling is attempted.
    pub(crate) fn from_unimodular(a: f64, b: f64, c: f64, d: f64) -> Self {
        if a < 0.0 || (a == 0.0 && c < 0.0) {
            MoebiusTransform { a: -a, b: -b, c: -c, d: -d }
        } else {
            MoebiusTransform { a, b, c, d }
        }
    }

    pub fn identity() -> Self {
        MoebiusTransform { a: 1.0, b: 0.0, c: 0.0, d: 1.0 }
    }

    /// Entries (a, b, c, d) of the normalized representative.
    pub fn entries(&self) -> (f64, f64, f64, f64) {
        (self.a, self.b, self.c, self.d)
    }

    /// Matrix product `self * other`, so `(self.compose(other)).apply(x) =
    /// self.apply(other.apply(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        MoebiusTransform::from_unimodular(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )
    }

    pub fn inverse(&self) -> Self {
        MoebiusTransform::from_unimodular(self.d, -self.b, -self.c, self.a)
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    /// Length of the closed geodesic of a hyperbolic element, `2 arccosh(|tr|/2)`.
    pub fn translation_length(&self) -> Result<f64> {
        let t = self.trace().abs();
        if t < 2.0 {
            return Err(Error::InvalidParameter(format!(
                "element with |trace| = {t} < 2 is not hyperbolic"
            )));
        }
        Ok(2.0 * (t / 2.0).acosh())
    }

    /// Action on the extended real line. Both `INFINITY` and `NEG_INFINITY`
    /// denote the single boundary point at infinity.
    pub fn apply(&self, x: f64) -> f64 {
        if x.is_infinite() {
            return if self.c == 0.0 { f64::INFINITY } else { self.a / self.c };
        }
        let den = self.c * x + self.d;
        if den == 0.0 {
            return f64::INFINITY;
        }
        (self.a * x + self.b) / den
    }

    pub(crate) fn apply_dd(&self, x: Dd) -> Dd {
        let num = x.scale(self.a) + Dd::new(self.b);
        let den = x.scale(self.c) + Dd::new(self.d);
        num / den
    }

    /// Derivative of the boundary action, `(c*x + d)^-2 > 0`.
    pub fn derivative(&self, x: f64) -> Result<f64> {
        let den = self.c * x + self.d;
        if den.abs() < POLE_TOL {
            return Err(Error::PoleAtPoint { x });
        }
        Ok(1.0 / (den * den))
    }

    /// `c x + d` in double-double form.
    pub(crate) fn linear_denominator_dd(&self, x: Dd) -> Dd {
        x.scale(self.c) + Dd::new(self.d)
    }

    /// Preimage of infinity, if the transformation is not affine.
    pub fn pole(&self) -> Option<f64> {
        if self.c.abs() < POLE_TOL {
            None
        } else {
            Some(-self.d / self.c)
        }
    }

    /// Entrywise comparison of the normalized representatives.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.a - other.a).abs() <= tol
            && (self.b - other.b).abs() <= tol
            && (self.c - other.c).abs() <= tol
            && (self.d - other.d).abs() <= tol
    }

    /// Maps a real interval whose closure avoids the pole. The restriction of
    /// a unimodular Moebius map to such an interval is monotone increasing, so
    /// the image is spanned by the endpoint images.
    pub fn map_interval(&self, iv: Interval) -> Result<Interval> {
        if let Some(p) = self.pole() {
            if (p - iv.center()).abs() <= iv.radius() {
                return Err(Error::PoleInsideInterval { pole: p, lo: iv.lo(), hi: iv.hi() });
            }
        }
        let e1 = self.apply(iv.lo());
        let e2 = self.apply(iv.hi());
        Interval::from_endpoints(e1.min(e2), e1.max(e2))
    }

    pub(crate) fn map_interval_dd(&self, iv: &DdInterval) -> Result<DdInterval> {
        if let Some(p) = self.pole() {
            if (p - iv.center.to_f64()).abs() <= iv.radius.to_f64() {
                return Err(Error::PoleInsideInterval {
                    pole: p,
                    lo: (iv.center - iv.radius).to_f64(),
                    hi: (iv.center + iv.radius).to_f64(),
                });
            }
        }
        let e1 = self.apply_dd(iv.center - iv.radius);
        let e2 = self.apply_dd(iv.center + iv.radius);
        let (lo, hi) = if e1.to_f64() <= e2.to_f64() { (e1, e2) } else { (e2, e1) };
        Ok(DdInterval { center: (lo + hi).scale(0.5), radius: (hi - lo).scale(0.5) })
    }
}

/// A bounded open interval given by center and radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    center: f64,
    radius: f64,
}

impl Interval {
    pub fn new(center: f64, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !center.is_finite() || !radius.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "interval needs finite center and positive radius, got ({center}, {radius})"
            )));
        }
        Ok(Interval { center, radius })
    }

    pub fn from_endpoints(lo: f64, hi: f64) -> Result<Self> {
        Interval::new(0.5 * (lo + hi), 0.5 * (hi - lo))
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn lo(&self) -> f64 {
        self.center - self.radius
    }

    pub fn hi(&self) -> f64 {
        self.center + self.radius
    }

    pub fn contains(&self, x: f64) -> bool {
        (x - self.center).abs() <= self.radius
    }

    /// Signed distance between closures; positive iff the closures are disjoint.
    pub fn gap_to(&self, other: &Interval) -> f64 {
        (self.center - other.center).abs() - (self.radius + other.radius)
    }

    /// Smallest margin by which `other` sits inside `self`; positive iff
    /// `other` is strictly contained.
    pub fn containment_margin(&self, other: &Interval) -> f64 {
        self.radius - (other.center - self.center).abs() - other.radius
    }
}

/// Interval with double-double endpoints, used along refinement chains.
#[derive(Debug, Clone, Copy)]
pub(crate) struct DdInterval {
    pub center: Dd,
    pub radius: Dd,
}

impl DdInterval {
    pub fn from_interval(iv: Interval) -> Self {
        DdInterval { center: Dd::new(iv.center()), radius: Dd::new(iv.radius()) }
    }

    pub fn to_interval(self) -> Result<Interval> {
        Interval::new(self.center.to_f64(), self.radius.to_f64())
    }
}

/// The generator family `S(l, a)` of funnel surfaces:
/// entries `(cosh(l/2), a sinh(l/2); sinh(l/2)/a, cosh(l/2))`, a hyperbolic
/// element of translation length `l` with `S(l, a)^-1 = S(l, -a)`.
pub fn generator_s(l: f64, a: f64) -> Result<MoebiusTransform> {
    if !(l > 0.0) {
        return Err(Error::InvalidParameter(format!("generator length l = {l} must be positive")));
    }
    if a == 0.0 || !a.is_finite() {
        return Err(Error::InvalidParameter(format!("generator parameter a = {a} must be nonzero")));
    }
    let ch = (l / 2.0).cosh();
    let sh = (l / 2.0).sinh();
    Ok(MoebiusTransform::from_unimodular(ch, a * sh, sh / a, ch))
}

/// Rotation matrix `(cos psi, -sin psi; sin psi, cos psi)`.
pub fn rotation(psi: f64) -> MoebiusTransform {
    MoebiusTransform::from_unimodular(psi.cos(), -psi.sin(), psi.sin(), psi.cos())
}

/// Real trace of the isometric disk `{ |c z + d| < 1 }` of `g`: center `-d/c`,
/// radius `1/|c|`. For `generator_s(l, a)` this is the disk with center
/// `-a coth(l/2)` and radius `|a|/sinh(l/2)`.
pub fn isometric_interval(g: &MoebiusTransform) -> Result<Interval> {
    let (_, _, c, d) = g.entries();
    if c.abs() < POLE_TOL {
        return Err(Error::AffineGenerator);
    }
    Interval::new(-d / c, 1.0 / c.abs())
}
