//! Hardy's Z function and its derivative on the critical line.
//!
//! Z(t)  =  2 sum_{n <= rho(t)} n^{-1/2} cos(theta(t) - t ln n)  + correction,
//! Z'(t) = -2 sum_{n <= rho(t)} n^{-1/2} ln(rho(t)/n) sin(theta(t) - t ln n),
//!
//! with rho(t) = sqrt(t / 2pi).  The optional correction is the leading
//! remainder term (-1)^(N-1) (t/2pi)^(-1/4) Psi(p), p = rho - N.

use std::cell::RefCell;

use crate::config::RsConfig;
use crate::error::{Error, Result};
use crate::kahan::KahanSum;
use crate::theta::theta;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

thread_local! {
    // ln n and 1/sqrt(n), grown on demand; entry n lives at index n.
    static TABLES: RefCell<(Vec<f64>, Vec<f64>)> = RefCell::new((vec![0.0], vec![0.0]));
}

fn with_tables<R>(n_max: usize, f: impl FnOnce(&[f64], &[f64]) -> R) -> R {
    TABLES.with(|cell| {
        let mut tabs = cell.borrow_mut();
        let (ln, inv_sqrt) = &mut *tabs;
        for n in ln.len()..=n_max {
            ln.push((n as f64).ln());
            inv_sqrt.push(1.0 / (n as f64).sqrt());
        }
        f(ln, inv_sqrt)
    })
}

/// Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p).
///
/// The zeros of the denominator at p = 1/4, 3/4 are removable; inside a
/// narrow strip around them the expression is rewritten in terms of
/// u = p - p0, where both sine arguments are small and no cancellation
/// occurs: Psi = sin(pi u (1 -+ 2u)) / sin(2 pi u), limit 1/2.
pub(crate) fn psi(p: f64) -> f64 {
    let den = (TWO_PI * p).cos();
    if den.abs() >= 1e-3 {
        return (TWO_PI * (p * p - p - 0.0625)).cos() / den;
    }
    let p0 = if (p - 0.25).abs() < (p - 0.75).abs() {
        0.25
    } else {
        0.75
    };
    let u = p - p0;
    if u == 0.0 {
        return 0.5;
    }
    let num = if p0 == 0.25 {
        (std::f64::consts::PI * u * (1.0 - 2.0 * u)).sin()
    } else {
        (std::f64::consts::PI * u * (1.0 + 2.0 * u)).sin()
    };
    num / (TWO_PI * u).sin()
}

fn check_floor(t: f64, cfg: &RsConfig) -> Result<()> {
    cfg.validate()?;
    if !(t >= cfg.min_t) {
        return Err(Error::BelowValidityFloor {
            value: t,
            floor: cfg.min_t,
        });
    }
    Ok(())
}

/// Z(t) via the Riemann-Siegel main sum plus the configured correction.
pub fn z(t: f64, cfg: &RsConfig) -> Result<f64> {
    check_floor(t, cfg)?;
    let rho = (t / TWO_PI).sqrt();
    let n_max = rho.floor() as usize;
    let th = theta(t, cfg)?.theta;
    let mut sum = with_tables(n_max, |ln, inv_sqrt| {
        let mut acc = KahanSum::new();
        for n in 1..=n_max {
            acc.add(inv_sqrt[n] * (th - t * ln[n]).cos());
        }
        2.0 * acc.value()
    });
    if cfg.correction_order >= 1 {
        let p = rho - n_max as f64;
        let sign = if n_max % 2 == 1 { 1.0 } else { -1.0 }; // (-1)^(N-1)
        sum += sign * (t / TWO_PI).powf(-0.25) * psi(p);
    }
    Ok(sum)
}

/// Z'(t) via the Riemann-Siegel-type main sum (no correction term).
pub fn z_prime(t: f64, cfg: &RsConfig) -> Result<f64> {
    check_floor(t, cfg)?;
    let rho = (t / TWO_PI).sqrt();
    let ln_rho = rho.ln();
    let n_max = rho.floor() as usize;
    let th = theta(t, cfg)?.theta;
    let sum = with_tables(n_max, |ln, inv_sqrt| {
        let mut acc = KahanSum::new();
        for n in 1..=n_max {
            acc.add(inv_sqrt[n] * (ln_rho - ln[n]) * (th - t * ln[n]).sin());
        }
        acc.value()
    });
    Ok(-2.0 * sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domain_guard() {
        let cfg = RsConfig::default();
        assert!(matches!(
            z(49.0, &cfg),
            Err(Error::BelowValidityFloor { .. })
        ));
        assert!(matches!(
            z_prime(49.0, &cfg),
            Err(Error::BelowValidityFloor { .. })
        ));
        assert!(z(50.0, &cfg).is_ok());
    }

    #[test]
    fn psi_is_continuous_across_removable_singularities() {
        for &p0 in &[0.25_f64, 0.75] {
            let inside = psi(p0 + 1e-6);
            let at = psi(p0);
            let outside = psi(p0 + 2e-4); // still inside the guarded strip
            let far = psi(p0 + 5e-3); // direct formula
            assert_eq!(at, 0.5);
            assert!((inside - at).abs() < 1e-4, "p0={p0} inside={inside}");
            assert!((outside - inside).abs() < 1e-2);
            assert!((far - at).abs() < 0.1, "p0={p0} far={far}");
        }
    }

    #[test]
    fn psi_direct_and_taylor_agree_at_strip_edge() {
        // both branches must agree where the guard switches over
        for &p0 in &[0.25_f64, 0.75] {
            for sgn in [-1.0, 1.0] {
                // |cos(2 pi p)| = 1e-3 at |u| ~ 1e-3 / (2 pi)
                let u = sgn * 1.58e-4;
                let p: f64 = p0 + u;
                let direct = (TWO_PI * (p * p - p - 0.0625)).cos() / (TWO_PI * p).cos();
                let guarded = psi(p);
                assert!(
                    (direct - guarded).abs() < 1e-9,
                    "p={p} direct={direct} guarded={guarded}"
                );
            }
        }
    }

    #[test]
    fn z_known_value_at_t_1000() {
        // high-precision reference value for Z(1000)
        let cfg = RsConfig::default();
        let v = z(1000.0, &cfg).unwrap();
        assert!(
            (v - 0.9977946375215866).abs() < 2e-4,
            "Z(1000) = {v}, correction-order-1 truncation should be ~1e-5"
        );
    }

    #[test]
    fn correction_term_shrinks_the_error() {
        // against the same reference, order 1 must beat order 0 at t = 1000
        let c0 = RsConfig {
            correction_order: 0,
            ..RsConfig::default()
        };
        let c1 = RsConfig {
            correction_order: 1,
            ..RsConfig::default()
        };
        let reference = 0.9977946375215866;
        let e0 = (z(1000.0, &c0).unwrap() - reference).abs();
        let e1 = (z(1000.0, &c1).unwrap() - reference).abs();
        assert!(
            e1 < e0 / 100.0,
            "order-1 error {e1} not well below order-0 error {e0}"
        );
        assert!(e1 < 2e-4); // next-order term is ~5e-3 * (t/2pi)^(-3/4)
    }
}
