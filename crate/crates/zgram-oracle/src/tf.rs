//! Minimal two-float (hi, lo) helpers for carrying phases that exceed f64
//! granularity.  Only what the Euler-Maclaurin sum needs: error-free add,
//! scalar multiply, and reduction mod 2 pi.

// TWO_PI's leading word is the exact f64 component of a two-float constant.
#![allow(clippy::approx_constant)]

#[derive(Clone, Copy, Debug, Default)]
pub struct Tf {
    pub hi: f64,
    pub lo: f64,
}

pub const TWO_PI: Tf = Tf {
    hi: 6.283185307179586,
    lo: 2.4492935982947064e-16,
};

const SPLITTER: f64 = 134217729.0; // 2^27 + 1

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
    let c = SPLITTER * a;
    let ah = c - (c - a);
    let al = a - ah;
    let c = SPLITTER * b;
    let bh = c - (c - b);
    let bl = b - bh;
    (p, ((ah * bh - p) + ah * bl + al * bh) + al * bl)
}

impl Tf {
    #[inline]
    pub fn new(hi: f64, lo: f64) -> Self {
        let (h, l) = quick_two_sum(hi, lo);
        Tf { hi: h, lo: l }
    }

    #[inline]
    pub fn add(self, other: Tf) -> Self {
        let (s, e) = two_sum(self.hi, other.hi);
        let (t, f) = two_sum(self.lo, other.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Tf { hi, lo }
    }

    /// self * b for exact f64 b.
    #[inline]
    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Tf { hi, lo }
    }

    /// Value reduced into (-pi, pi] modulo 2 pi, returned as plain f64
    /// (the reduced magnitude is small enough for full f64 accuracy).
    pub fn rem_two_pi(self) -> f64 {
        let q = (self.hi / TWO_PI.hi).round();
        let (p1, e1) = two_prod(q, TWO_PI.hi);
        let r = self.add(Tf {
            hi: -p1,
            lo: -(e1 + q * TWO_PI.lo),
        });
        r.hi + r.lo
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_of_large_multiples() {
        // 10^7 * 2pi + 0.5 reduces to 0.5
        let x = TWO_PI.mul_f64(1e7).add(Tf::new(0.5, 0.0));
        assert!((x.rem_two_pi() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn add_keeps_tails() {
        let a = Tf::new(1.0, 1e-20);
        let b = Tf::new(1e-16, 0.0);
        let c = a.add(b);
        // the sub-ulp parts survive in the tail
        let total = (c.hi - 1.0) + c.lo;
        assert!((total - (1e-16 + 1e-20)).abs() < 1e-32);
    }
}
