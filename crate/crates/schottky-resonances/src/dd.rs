//! Double-double scalars (~31 significant digits).
//!
//! Refined intervals shrink geometrically with the refinement level; for wide
//! funnels their radii reach 1e-11 and below while their centers stay O(1).
//! Rescaling mapped collocation points into such an interval then cancels most
//! of the f64 mantissa. The interval chain and the point mapping are therefore
//! carried in double-double arithmetic and rounded only at the end.

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let v = s - a;
    (s, (a - (s - v)) + (b - v))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    #[inline]
    pub fn new(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let e = e + self.lo + o.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, o: Dd) -> Dd {
        self.add(Dd { hi: -o.hi, lo: -o.lo })
    }

    #[inline]
    pub fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + self.hi * o.lo + self.lo * o.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.sub(o.mul(Dd::new(q1)));
        let q2 = r.hi / o.hi;
        let r2 = r.sub(o.mul(Dd::new(q2)));
        let q3 = r2.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add(Dd::new(q3))
    }

    #[inline]
    pub fn scale(self, k: f64) -> Dd {
        self.mul(Dd::new(k))
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            Dd { hi: -self.hi, lo: -self.lo }
        } else {
            self
        }
    }

    /// Natural log of a positive value, one Newton correction past libm:
    /// `y0 + (a e^{-y0} - 1)` leaves an absolute error near 1e-16, an order
    /// below the ulp of a double-size result.
    pub fn ln(self) -> Dd {
        let y0 = self.hi.ln();
        let r = self.scale((-y0).exp());
        Dd::new(y0).add(r.sub(Dd::new(1.0)))
    }
}

impl std::ops::Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        Dd::add(self, o)
    }
}

impl std::ops::Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        Dd::sub(self, o)
    }
}

impl std::ops::Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        Dd::mul(self, o)
    }
}

impl std::ops::Div for Dd {
    type Output = Dd;
    fn div(self, o: Dd) -> Dd {
        Dd::div(self, o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_recovers_lost_bits() {
        // (1 + 2^-30)^2 = 1 + 2^-29 + 2^-60; the 2^-60 term is below f64 ulp
        let x = Dd::new(1.0).add(Dd::new((2.0f64).powi(-30)));
        let sq = x.mul(x);
        let expect_lo = (2.0f64).powi(-60);
        let err = (sq.sub(Dd::new(1.0)).sub(Dd::new((2.0f64).powi(-29)))).to_f64() - expect_lo;
        assert!(err.abs() < 1e-25, "err = {err}");
    }

    #[test]
    fn div_inverse_roundtrip() {
        let a = Dd::new(std::f64::consts::PI);
        let b = Dd::new(std::f64::consts::E);
        let r = a.div(b).mul(b).sub(a).to_f64();
        assert!(r.abs() < 1e-30, "r = {r}");
    }

    #[test]
    fn cancellation_survives() {
        // (1e8 + 1e-9) - 1e8 in plain f64 loses the small part entirely
        let a = Dd::new(1e8).add(Dd::new(1e-9));
        let d = a.sub(Dd::new(1e8)).to_f64();
        assert!((d - 1e-9).abs() < 1e-24);
    }

    proptest::proptest! {
        #[test]
        fn mul_div_roundtrip(a in -1e8f64..1e8, b in 1e-8f64..1e8) {
            let x = Dd::new(a) + Dd::new(a * 1e-17);
            let y = Dd::new(b);
            let r = (x / y) * y - x;
            proptest::prop_assert!(r.to_f64().abs() <= 1e-25 * (1.0 + a.abs()));
        }

        #[test]
        fn sub_recovers_exact_sum_parts(a in -1e6f64..1e6, b in -1.0f64..1.0) {
            let s = Dd::new(a) + Dd::new(b);
            let back = (s - Dd::new(a)).to_f64();
            proptest::prop_assert!((back - b).abs() <= 1e-18 * (1.0 + a.abs()));
        }
    }

    #[test]
    fn ln_beats_single_precision_rounding() {
        // ln(e^10) = 10: the f64 result alone carries ~1.8e-15 ulp; the
        // corrected value resolves the residual below 1e-16
        let a = Dd::new(10.0f64.exp());
        let err = (a.ln().sub(Dd::new(10.0))).to_f64();
        assert!(err.abs() < 2e-16, "err = {err}");
        let b = Dd::new(3.0);
        let e = (b.ln().to_f64() - 3.0f64.ln()).abs();
        assert!(e < 1e-15);
    }
}
