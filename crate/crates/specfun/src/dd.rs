//! Complex double-double arithmetic used to rescue series with heavy cancellation.
//!
//! Each real component is an unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`,
//! giving roughly 106 bits of significand.

use num_complex::Complex64;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
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

    pub fn new(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn neg(self) -> Self {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    pub fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }

    pub fn sub(self, b: Dd) -> Dd {
        self.add(b.neg())
    }

    pub fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self.sub(b.mul(Dd::new(q1)));
        let q2 = r.hi / b.hi;
        let r = r.sub(b.mul(Dd::new(q2)));
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add(Dd::new(q3))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub(crate) struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    pub const ONE: CDd = CDd { re: Dd { hi: 1.0, lo: 0.0 }, im: Dd::ZERO };

    pub fn from_c64(z: Complex64) -> Self {
        CDd { re: Dd::new(z.re), im: Dd::new(z.im) }
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn add(self, b: CDd) -> CDd {
        CDd { re: self.re.add(b.re), im: self.im.add(b.im) }
    }

    /// `self + x` for a real double.
    pub fn add_real(self, x: f64) -> CDd {
        CDd { re: self.re.add(Dd::new(x)), im: self.im }
    }

    pub fn mul(self, b: CDd) -> CDd {
        CDd {
            re: self.re.mul(b.re).sub(self.im.mul(b.im)),
            im: self.re.mul(b.im).add(self.im.mul(b.re)),
        }
    }

    pub fn div(self, b: CDd) -> CDd {
        let den = b.re.mul(b.re).add(b.im.mul(b.im));
        let num = self.mul(CDd { re: b.re, im: b.im.neg() });
        CDd { re: num.re.div(den), im: num.im.div(den) }
    }

    pub fn norm1(self) -> f64 {
        self.re.hi.abs() + self.im.hi.abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dd_recovers_bits_lost_in_f64() {
        let a = Dd::new(1.0).add(Dd::new(1e-20));
        let b = a.sub(Dd::new(1.0));
        assert!((b.to_f64() - 1e-20).abs() < 1e-35);
    }

    #[test]
    fn dd_division_roundtrip() {
        let a = Dd::new(1.0).div(Dd::new(3.0));
        let back = a.mul(Dd::new(3.0)).sub(Dd::new(1.0));
        assert!(back.to_f64().abs() < 1e-31);
    }

    #[test]
    fn complex_dd_matches_f64_for_plain_values() {
        let a = Complex64::new(1.5, -0.25);
        let b = Complex64::new(-2.0, 3.0);
        let p = CDd::from_c64(a).mul(CDd::from_c64(b)).to_c64();
        let q = CDd::from_c64(a).div(CDd::from_c64(b)).to_c64();
        assert!((p - a * b).norm() < 1e-15);
        assert!((q - a / b).norm() < 1e-15);
    }
}
