//! Composite Gauss-Legendre quadrature for Z and Z' over short intervals.
//!
//! Panel length is capped at 1 / ln(b/2pi): the fastest oscillation of Z near
//! abscissa t has angular frequency ~ ln(sqrt(t/2pi)), so a panel spans well
//! under a wavelength and the order-16 rule is effectively exact.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::config::RsConfig;
use crate::error::{Error, Result};
use crate::hardy::{z, z_prime};
use crate::kahan::KahanSum;

/// Which function to integrate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HardyFn {
    Z,
    ZPrime,
}

pub const MAX_INTERVAL: f64 = 10.0;

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
///
/// Computed by Newton iteration on P_n from the Chebyshev-like initial
/// guesses; accurate to ~1e-15 for the orders admitted by `RsConfig`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!((2..=200).contains(&n));
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for k in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // evaluate P_n(x) and P_n'(x) by the three-term recurrence
            let mut p0 = 1.0;
            let mut p1 = x;
            for j in 2..=n {
                let jf = j as f64;
                let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[k] = -x;
        nodes[n - 1 - k] = x;
        weights[k] = w;
        weights[n - 1 - k] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

type GlRule = (Vec<f64>, Vec<f64>);

thread_local! {
    static RULES: RefCell<HashMap<usize, GlRule>> = RefCell::new(HashMap::new());
}

fn with_rule<R>(n: usize, f: impl FnOnce(&[f64], &[f64]) -> R) -> R {
    RULES.with(|cell| {
        let mut map = cell.borrow_mut();
        let (nodes, weights) = map.entry(n).or_insert_with(|| gauss_legendre(n));
        f(nodes, weights)
    })
}

/// Integral of Z or Z' over [a, b], b - a <= 10.
pub fn integrate(f: HardyFn, a: f64, b: f64, cfg: &RsConfig) -> Result<f64> {
    cfg.validate()?;
    if !(a >= cfg.min_t) {
        return Err(Error::BelowValidityFloor {
            value: a,
            floor: cfg.min_t,
        });
    }
    if !(b >= a) {
        return Err(Error::InvalidInterval {
            a,
            b,
            reason: "reversed".into(),
        });
    }
    if b - a > MAX_INTERVAL {
        return Err(Error::InvalidInterval {
            a,
            b,
            reason: format!("longer than {MAX_INTERVAL}"),
        });
    }
    if a == b {
        return Ok(0.0);
    }
    let length = b - a;
    let panels = (length * (b / (2.0 * std::f64::consts::PI)).ln()).ceil() as usize + 1;
    let eval = |t: f64| match f {
        HardyFn::Z => z(t, cfg),
        HardyFn::ZPrime => z_prime(t, cfg),
    };
    with_rule(cfg.quad_order, |nodes, weights| {
        let mut acc = KahanSum::new();
        let step = length / panels as f64;
        for i in 0..panels {
            let lo = a + i as f64 * step;
            let hi = if i + 1 == panels {
                b
            } else {
                a + (i + 1) as f64 * step
            };
            let mid = 0.5 * (lo + hi);
            let half = 0.5 * (hi - lo);
            for (x, w) in nodes.iter().zip(weights) {
                acc.add(w * half * eval(mid + half * x)?);
            }
        }
        Ok(acc.value())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_nodes_symmetric_and_weights_sum_to_two() {
        for n in [8, 16, 17, 32, 64] {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
            for k in 0..n {
                assert!((x[k] + x[n - 1 - k]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn order_16_known_nodes() {
        let (x, w) = gauss_legendre(16);
        // largest abscissa / weight of the 16-point rule
        assert!((x[15] - 0.9894009349916499).abs() < 1e-14);
        assert!((w[15] - 0.027152459411754095).abs() < 1e-14);
    }

    #[test]
    fn polynomial_exactness() {
        // order n integrates degree 2n-1 exactly; check x^15 and x^14 on [0,1]
        let (x, w) = gauss_legendre(8);
        for (deg, exact) in [(15u32, 1.0 / 16.0), (14, 1.0 / 15.0)] {
            let mut s = 0.0;
            for (xi, wi) in x.iter().zip(&w) {
                let t = 0.5 * (xi + 1.0);
                s += wi * 0.5 * t.powi(deg as i32);
            }
            assert!((s - exact).abs() < 1e-15, "degree {deg}");
        }
    }

    #[test]
    fn interval_guards() {
        let cfg = RsConfig::default();
        assert_eq!(integrate(HardyFn::Z, 100.0, 100.0, &cfg).unwrap(), 0.0);
        assert!(matches!(
            integrate(HardyFn::Z, 100.0, 99.0, &cfg),
            Err(Error::InvalidInterval { .. })
        ));
        assert!(matches!(
            integrate(HardyFn::Z, 100.0, 120.0, &cfg),
            Err(Error::InvalidInterval { .. })
        ));
        assert!(matches!(
            integrate(HardyFn::Z, 40.0, 41.0, &cfg),
            Err(Error::BelowValidityFloor { .. })
        ));
    }

    #[test]
    fn panel_order_does_not_change_the_integral() {
        let coarse = RsConfig {
            quad_order: 8,
            ..RsConfig::default()
        };
        let fine = RsConfig {
            quad_order: 32,
            ..RsConfig::default()
        };
        let a = integrate(HardyFn::Z, 1e4, 1e4 + 0.5, &coarse).unwrap();
        let b = integrate(HardyFn::Z, 1e4, 1e4 + 0.5, &fine).unwrap();
        assert!(
            (a - b).abs() < 1e-10,
            "order 8 gives {a}, order 32 gives {b}"
        );
    }

    #[test]
    fn mean_value_stays_inside_sampled_range() {
        let cfg = RsConfig::default();
        let (a, b) = (10_000.0, 10_000.5);
        let integral = integrate(HardyFn::Z, a, b, &cfg).unwrap();
        let mean = integral / (b - a);
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..=64 {
            let t = a + (b - a) * i as f64 / 64.0;
            let v = z(t, &cfg).unwrap();
            lo = lo.min(v);
            hi = hi.max(v);
        }
        assert!(
            mean >= lo - 1e-9 && mean <= hi + 1e-9,
            "mean {mean} not in [{lo}, {hi}]"
        );
    }
}
