//! Double-double arithmetic for the phase computations.
//!
//! The node solver has to drive `theta(t) - (pi*nu + tau)` below 1e-10 while
//! `theta(t)` itself reaches ~1e9, which is beyond plain f64 granularity.  A
//! (hi, lo) pair gives ~32 significant digits, which is plenty.  Algorithms
//! follow Dekker/Knuth error-free transformations; products are split with
//! Veltkamp's trick so no hardware FMA is required.

// The leading words of the double-double constants below are exact f64
// components, not rounded approximations.
#![allow(clippy::approx_constant)]

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
pub const PI: Dd = Dd {
    hi: 3.141592653589793,
    lo: 1.2246467991473532e-16,
};
pub const TWO_PI: Dd = Dd {
    hi: 6.283185307179586,
    lo: 2.4492935982947064e-16,
};
// pi/8 is an exact power-of-two scaling of pi.
pub const PI_OVER_8: Dd = Dd {
    hi: 0.39269908169872414,
    lo: 1.5308084989341915e-17,
};
pub const LN_2: Dd = Dd {
    hi: 0.6931471805599453,
    lo: 2.3190468138462996e-17,
};

const SQRT_2: f64 = 1.4142135623730951;
const SPLITTER: f64 = 134217729.0; // 2^27 + 1

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let v = s - a;
    let e = (a - (s - v)) + (b - v);
    (s, e)
}

/// Requires |a| >= |b|.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[inline]
fn split(a: f64) -> (f64, f64) {
    let c = SPLITTER * a;
    let hi = c - (c - a);
    (hi, a - hi)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    let e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    (p, e)
}

impl Dd {
    #[inline]
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    /// Exact multiplication by 2^k (no rounding).
    #[inline]
    pub fn scale2(self, k: i32) -> Self {
        let f = f64::powi(2.0, k);
        Dd {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }

    /// pi * n, exact two-product of the high word plus the tail contribution.
    pub fn pi_times(n: i64) -> Self {
        let nf = n as f64;
        let (p, e) = two_prod(PI.hi, nf);
        let (hi, lo) = quick_two_sum(p, e + PI.lo * nf);
        Dd { hi, lo }
    }

    /// Natural logarithm for positive arguments.
    ///
    /// Reduces to m in [sqrt(1/2), sqrt(2)) and sums the atanh series of
    /// (m-1)/(m+1); 21 terms bound the truncation below 1e-33 on that range.
    pub fn ln(self) -> Self {
        assert!(
            self.hi > 0.0 && self.hi.is_finite(),
            "dd ln domain: {}",
            self.hi
        );
        let mut e = ((self.hi.to_bits() >> 52) & 0x7ff) as i32 - 1023;
        let mut m = self.scale2(-e);
        if m.hi >= SQRT_2 {
            m = m.scale2(-1);
            e += 1;
        }
        let u = (m - 1.0) / (m + 1.0);
        let u2 = u * u;
        // Horner over S = sum_{j>=1} u2^j / (2j+1)
        let mut s = ZERO;
        for j in (1..=21).rev() {
            s = (s + Dd::from_f64(1.0) / (2 * j + 1) as f64) * u2;
        }
        let atanh2 = u.scale2(1) + u.scale2(1) * s;
        LN_2 * (e as f64) + atanh2
    }
}

impl Neg for Dd {
    type Output = Dd;

    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;

    fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let (t, f) = two_sum(self.lo, other.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Add<f64> for Dd {
    type Output = Dd;

    #[inline]
    fn add(self, b: f64) -> Dd {
        let (s, e) = two_sum(self.hi, b);
        let (hi, lo) = quick_two_sum(s, e + self.lo);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;

    #[inline]
    fn sub(self, other: Dd) -> Dd {
        self + (-other)
    }
}

impl Sub<f64> for Dd {
    type Output = Dd;

    #[inline]
    fn sub(self, b: f64) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;

    fn mul(self, other: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + (self.hi * other.lo + self.lo * other.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;

    #[inline]
    fn mul(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;

    fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self - other * q1;
        let q2 = r.hi / other.hi;
        let r = r - other * q2;
        let q3 = r.hi / other.hi;
        let (s, e) = quick_two_sum(q1, q2);
        let (hi, lo) = quick_two_sum(s, e + q3);
        Dd { hi, lo }
    }
}

impl Div<f64> for Dd {
    type Output = Dd;

    #[inline]
    fn div(self, b: f64) -> Dd {
        self / Dd::from_f64(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_sum_exact() {
        let (s, e) = two_sum(1.0, 1e-30);
        assert_eq!(s, 1.0);
        assert_eq!(e, 1e-30);
    }

    #[test]
    fn ln_matches_known_constants() {
        let l2 = Dd::from_f64(2.0).ln();
        assert_eq!(l2.hi, LN_2.hi);
        assert!((l2.lo - LN_2.lo).abs() < 1e-30);

        // ln 10 double-double expansion
        let l10 = Dd::from_f64(10.0).ln();
        assert_eq!(l10.hi, 2.302585092994046);
        assert!((l10.lo - -2.1707562233822494e-16).abs() < 1e-30);
    }

    #[test]
    fn ln_functional_identity() {
        // ln(x^2) = 2 ln(x) to double-double accuracy
        for &x in &[1.5_f64, 3.0, 17.845, 1.0e6, 123456.789] {
            let xd = Dd::from_f64(x);
            let a = (xd * xd).ln();
            let b = xd.ln().scale2(1);
            let d = a - b;
            assert!(d.to_f64().abs() < 1e-28 * a.hi.abs().max(1.0), "x={x}");
        }
    }

    #[test]
    fn div_round_trip() {
        let a = Dd::from_f64(std::f64::consts::PI);
        let b = Dd::from_f64(7.0);
        let back = (a / b) * b - a;
        assert!(back.to_f64().abs() < 1e-30);
    }

    #[test]
    fn pi_times_tail() {
        // pi*1e7 must keep sub-ulp accuracy: compare against dd multiply
        let a = Dd::pi_times(10_000_000);
        let b = PI * 1e7;
        assert_eq!(a.hi, b.hi);
        assert!((a.lo - b.lo).abs() < 1e-12);
    }

    #[test]
    fn abs_and_neg() {
        let x = Dd {
            hi: -2.0,
            lo: 1e-20,
        };
        assert_eq!(x.abs(), -x);
        assert_eq!(Dd::from_f64(3.0).abs(), Dd::from_f64(3.0));
    }
}
