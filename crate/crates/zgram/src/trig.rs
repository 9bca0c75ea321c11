//! Elementary trigonometric sums S(a, b) = sum_{a <= n < b} n^{it} and the
//! empirical exponent estimate they support.

use crate::error::{Error, Result};
use crate::kahan::KahanSum;

/// Modulus of S(a, b) together with the implied exponent
/// delta_hat = ln(|S|/sqrt(a)) / ln(t) (zero when |S| <= sqrt(a)).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrigSumEstimate {
    pub a: u64,
    pub b: u64,
    pub t: f64,
    pub modulus: f64,
    pub delta_hat: f64,
}

/// Direct evaluation of |S(a, b)| for 1 <= a <= b <= 2a, b <= sqrt(t/2pi).
pub fn trig_sum(a: u64, b: u64, t: f64) -> Result<TrigSumEstimate> {
    let p0 = (t / (2.0 * std::f64::consts::PI)).sqrt();
    if a < 1 || b < a || b > 2 * a || (b as f64) > p0 || !t.is_finite() {
        return Err(Error::TrigSumPrecondition { a, b, t });
    }
    let mut re = KahanSum::new();
    let mut im = KahanSum::new();
    for n in a..b {
        let phase = t * (n as f64).ln();
        re.add(phase.cos());
        im.add(phase.sin());
    }
    let modulus = re.value().hypot(im.value());
    let sqrt_a = (a as f64).sqrt();
    let delta_hat = if modulus > sqrt_a {
        (modulus / sqrt_a).ln() / t.ln()
    } else {
        0.0
    };
    Ok(TrigSumEstimate {
        a,
        b,
        t,
        modulus,
        delta_hat,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_singleton() {
        let e = trig_sum(5, 5, 1e6).unwrap();
        assert_eq!(e.modulus, 0.0);
        assert_eq!(e.delta_hat, 0.0);
        // single term 1^{it} = 1
        let s = trig_sum(1, 2, 1e6).unwrap();
        assert!((s.modulus - 1.0).abs() < 1e-15);
    }

    #[test]
    fn preconditions() {
        assert!(trig_sum(0, 0, 1e6).is_err());
        assert!(trig_sum(4, 3, 1e6).is_err());
        assert!(trig_sum(4, 9, 1e6).is_err());
        // b beyond sqrt(t/2pi)
        assert!(trig_sum(300, 400, 1e5).is_err());
    }

    #[test]
    fn modulus_respects_triangle_inequality() {
        for a in [1u64, 7, 33, 120] {
            let b = (2 * a).min(398);
            if b < a {
                continue;
            }
            let e = trig_sum(a, b, 1e6).unwrap();
            assert!(e.modulus <= (b - a) as f64 + 1e-9);
        }
    }
}
