//! Arbitrary-precision scalar support (astro-float) plus the pieces the
//! references need: complex log-gamma by shifted Stirling series, the phase
//! function theta built from it, and Gram points by bisection.

use astro_float::{BigFloat, Consts, RoundingMode};

const RM: RoundingMode = RoundingMode::ToEven;

/// Working precision in bits; roughly 57 decimal digits, far beyond every
/// tolerance in the test suite.
pub const PREC: usize = 192;

/// Shared context: precision plus the lazily-cached constants.
pub struct Hp {
    pub prec: usize,
    cc: Consts,
}

/// Complex number with arbitrary-precision parts.
#[derive(Clone, Debug)]
pub struct Cx {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl Default for Hp {
    fn default() -> Self {
        Hp::new(PREC)
    }
}

impl Hp {
    pub fn new(prec: usize) -> Self {
        Hp {
            prec,
            cc: Consts::new().expect("constants cache"),
        }
    }

    pub fn from_f64(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.prec)
    }

    pub fn from_i64(&self, x: i64) -> BigFloat {
        BigFloat::from_i128(x as i128, self.prec)
    }

    /// Correctly rounded f64 value via the decimal round trip.
    pub fn to_f64(&self, x: &BigFloat) -> f64 {
        if x.is_zero() {
            return 0.0;
        }
        format!("{x}")
            .parse::<f64>()
            .expect("BigFloat decimal form")
    }

    /// (hi, lo) split: hi is the rounded f64, lo the rounded remainder.
    pub fn to_f64_pair(&self, x: &BigFloat) -> (f64, f64) {
        let hi = self.to_f64(x);
        let rest = x.sub(&self.from_f64(hi), self.prec, RM);
        (hi, self.to_f64(&rest))
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.prec, RM)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.prec, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.prec, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.prec, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.prec, RM)
    }

    pub fn ln(&mut self, a: &BigFloat) -> BigFloat {
        a.ln(self.prec, RM, &mut self.cc)
    }

    pub fn atan(&mut self, a: &BigFloat) -> BigFloat {
        a.atan(self.prec, RM, &mut self.cc)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.prec, RM)
    }

    fn cx(&self, re: f64, im: f64) -> Cx {
        Cx {
            re: self.from_f64(re),
            im: self.from_f64(im),
        }
    }

    fn cx_add(&self, a: &Cx, b: &Cx) -> Cx {
        Cx {
            re: self.add(&a.re, &b.re),
            im: self.add(&a.im, &b.im),
        }
    }

    fn cx_sub(&self, a: &Cx, b: &Cx) -> Cx {
        Cx {
            re: self.sub(&a.re, &b.re),
            im: self.sub(&a.im, &b.im),
        }
    }

    fn cx_mul(&self, a: &Cx, b: &Cx) -> Cx {
        Cx {
            re: self.sub(&self.mul(&a.re, &b.re), &self.mul(&a.im, &b.im)),
            im: self.add(&self.mul(&a.re, &b.im), &self.mul(&a.im, &b.re)),
        }
    }

    fn cx_div(&self, a: &Cx, b: &Cx) -> Cx {
        let den = self.add(&self.mul(&b.re, &b.re), &self.mul(&b.im, &b.im));
        let num = self.cx_mul(
            a,
            &Cx {
                re: b.re.clone(),
                im: b.im.neg(),
            },
        );
        Cx {
            re: self.div(&num.re, &den),
            im: self.div(&num.im, &den),
        }
    }

    /// Principal log of a complex number with positive real part.
    fn cx_ln_right_half(&mut self, a: &Cx) -> Cx {
        debug_assert!(!a.re.is_negative());
        let mag2 = self.add(&self.mul(&a.re, &a.re), &self.mul(&a.im, &a.im));
        let half = self.from_f64(0.5);
        let ln_mag2 = self.ln(&mag2);
        let quot = self.div(&a.im, &a.re);
        Cx {
            re: self.mul(&half, &ln_mag2),
            im: self.atan(&quot),
        }
    }
}

/// Exact Bernoulli numbers B_2 .. B_32 as (numerator, denominator) pairs.
const BERNOULLI: [(i64, i64); 16] = [
    (1, 6),
    (-1, 30),
    (1, 42),
    (-1, 30),
    (5, 66),
    (-691, 2730),
    (7, 6),
    (-3617, 510),
    (43867, 798),
    (-174611, 330),
    (854513, 138),
    (-236364091, 2730),
    (8553103, 6),
    (-23749461029, 870),
    (8615841276005, 14322),
    (-7709321041217, 510),
];

/// How far the argument is shifted up before applying the Stirling series.
const SHIFT: i64 = 24;

/// ln Gamma(1/4 + i t/2) for t > 0, by recurrence shifting and the Stirling
/// series with exact Bernoulli coefficients.  Truncation stays below 1e-35
/// for the shifted argument.
pub fn ln_gamma_quarter(hp: &mut Hp, t: f64) -> Cx {
    assert!(t > 0.0);
    let z = Cx {
        re: hp.from_f64(0.25),
        im: hp.div(&hp.from_f64(t), &hp.from_f64(2.0)),
    };

    // ln Gamma(z) = ln Gamma(z + SHIFT) - sum_j ln(z + j)
    let mut shift_sum = Cx {
        re: hp.from_f64(0.0),
        im: hp.from_f64(0.0),
    };
    for j in 0..SHIFT {
        let zj = Cx {
            re: hp.add(&z.re, &hp.from_i64(j)),
            im: z.im.clone(),
        };
        let l = hp.cx_ln_right_half(&zj);
        shift_sum = hp.cx_add(&shift_sum, &l);
    }
    let w = Cx {
        re: hp.add(&z.re, &hp.from_i64(SHIFT)),
        im: z.im.clone(),
    };

    // (w - 1/2) ln w - w + ln(2 pi)/2
    let ln_w = hp.cx_ln_right_half(&w);
    let w_half = Cx {
        re: hp.sub(&w.re, &hp.from_f64(0.5)),
        im: w.im.clone(),
    };
    let mut stirling = hp.cx_sub(&hp.cx_mul(&w_half, &ln_w), &w);
    let pi = hp.pi();
    let two_pi = hp.mul(&hp.from_f64(2.0), &pi);
    let ln_two_pi = hp.ln(&two_pi);
    let half_ln_2pi = hp.mul(&hp.from_f64(0.5), &ln_two_pi);
    stirling.re = hp.add(&stirling.re, &half_ln_2pi);

    // + sum_k B_2k / ((2k)(2k-1) w^(2k-1))
    let one = hp.cx(1.0, 0.0);
    let inv_w = hp.cx_div(&one, &w);
    let inv_w2 = hp.cx_mul(&inv_w, &inv_w);
    let mut power = inv_w;
    let mut series = hp.cx(0.0, 0.0);
    for (k, &(num, den)) in BERNOULLI.iter().enumerate() {
        let k2 = 2 * (k as i64 + 1);
        let coeff = hp.div(
            &hp.from_i64(num),
            &hp.mul(&hp.from_i64(den), &hp.from_i64(k2 * (k2 - 1))),
        );
        let term = Cx {
            re: hp.mul(&coeff, &power.re),
            im: hp.mul(&coeff, &power.im),
        };
        series = hp.cx_add(&series, &term);
        power = hp.cx_mul(&power, &inv_w2);
    }
    stirling = hp.cx_add(&stirling, &series);

    hp.cx_sub(&stirling, &shift_sum)
}

/// Reference phase theta(t) = Im ln Gamma(1/4 + it/2) - (t/2) ln pi.
pub fn theta_ref_big(hp: &mut Hp, t: f64) -> BigFloat {
    let lg = ln_gamma_quarter(hp, t);
    let pi = hp.pi();
    let ln_pi = hp.ln(&pi);
    let half_t = hp.div(&hp.from_f64(t), &hp.from_f64(2.0));
    hp.sub(&lg.im, &hp.mul(&half_t, &ln_pi))
}

pub fn theta_ref(hp: &mut Hp, t: f64) -> f64 {
    let b = theta_ref_big(hp, t);
    hp.to_f64(&b)
}

/// Gram point g_nu (shift tau): the root of theta(t) = pi nu + tau, located
/// by pure sign bisection on the reference phase.
pub fn gram_point_ref(hp: &mut Hp, nu: i64, tau: f64) -> f64 {
    assert!(tau.abs() <= std::f64::consts::PI);
    let pi = hp.pi();
    let target = hp.add(&hp.mul(&pi, &hp.from_i64(nu)), &hp.from_f64(tau));
    let below = |hp: &mut Hp, t: f64| -> bool {
        let th = theta_ref_big(hp, t);
        hp.sub(&th, &target).is_negative()
    };
    // bracket: crude growth from a safe floor
    let mut lo = 10.0;
    let mut hi = 40.0;
    while !below(hp, lo) && lo > 2.0 {
        lo *= 0.5;
    }
    while below(hp, hi) {
        hi *= 2.0;
        assert!(hi < 1e12, "bracket expansion ran away");
    }
    for _ in 0..90 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if below(hp, mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn to_f64_round_trip() {
        let hp = Hp::default();
        for &x in &[1.0, -2.5, std::f64::consts::PI, 1e-12, 7.0e9] {
            assert_eq!(hp.to_f64(&hp.from_f64(x)), x);
        }
    }

    #[test]
    fn ln_gamma_real_anchor() {
        // Gamma(1/4) = 3.6256099082219083119... => ln = 1.2880225246980774...
        let mut hp = Hp::default();
        let lg = ln_gamma_quarter(&mut hp, 1e-30); // effectively real argument
        let re = hp.to_f64(&lg.re);
        assert!((re - 1.2880225246980774).abs() < 1e-16 * 10.0, "re = {re}");
    }

    #[test]
    fn theta_known_value() {
        // theta(1000) from published double-double tables
        let mut hp = Hp::default();
        let th = theta_ref(&mut hp, 1000.0);
        assert!(
            (th - 2034.5464280380315).abs() < 1e-10,
            "theta(1000) = {th}"
        );
    }

    #[test]
    fn first_two_gram_points() {
        let mut hp = Hp::default();
        let g0 = gram_point_ref(&mut hp, 0, 0.0);
        let g1 = gram_point_ref(&mut hp, 1, 0.0);
        assert!((g0 - 17.8455995405).abs() < 2e-9, "g0 = {g0}");
        assert!((g1 - 23.1702827012).abs() < 2e-9, "g1 = {g1}");
    }
}
