//! The phase function theta(t) and its derivative.
//!
//! theta(t) = (t/2) ln(t/2pi) - t/2 - pi/8 + 1/(48t) + 7/(5760 t^3)
//!
//! The five-term asymptotic expansion is below 1e-10 absolute error for
//! t >= 21 and below 1.3e-12 for t >= 50.  The leading product is carried in
//! double-double so that phase residuals remain meaningful at t ~ 1e8 where
//! theta itself is ~1e9.

use crate::config::RsConfig;
use crate::dd::{self, Dd};
use crate::error::{Error, Result};

/// Hard floor for phase evaluation.  Below this the asymptotic series is no
/// longer trustworthy at the solver tolerance.  The Z / Z' evaluators use the
/// stricter `RsConfig::min_t`; the phase alone stays accurate much lower,
/// which is what makes the first Gram points reachable.
pub const THETA_T_MIN: f64 = 10.0;

/// Value and derivative of the phase function at one abscissa.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseValue {
    /// theta(t), radians.
    pub theta: f64,
    /// d theta / dt, strictly positive on the admissible range.
    pub theta_prime: f64,
}

/// Phase in double-double, with the abscissa itself split as `hi + lo`.
/// Internal workhorse of the node solver.
pub(crate) fn theta_dd_split(t_hi: f64, t_lo: f64) -> Dd {
    let t = Dd { hi: t_hi, lo: t_lo };
    let x = t / dd::TWO_PI;
    let half_t = t.scale2(-1);
    let th = half_t * x.ln() - half_t - dd::PI_OVER_8;
    // Small tail corrections: f64 precision suffices (both < 2.1e-3 here).
    let tt = t_hi + t_lo;
    let t2 = tt * tt;
    th + (1.0 / (48.0 * tt) + 7.0 / (5760.0 * tt * t2))
}

/// theta(t) as a double-double, for callers that need sub-ulp phase accuracy.
pub fn theta_split(t: f64, cfg: &RsConfig) -> Result<Dd> {
    cfg.validate()?;
    if !(t >= THETA_T_MIN) {
        return Err(Error::BelowValidityFloor {
            value: t,
            floor: THETA_T_MIN,
        });
    }
    Ok(theta_dd_split(t, 0.0))
}

pub(crate) fn theta_prime_raw(t: f64) -> f64 {
    let t2 = t * t;
    0.5 * (t / (2.0 * std::f64::consts::PI)).ln() - 1.0 / (48.0 * t2) - 7.0 / (1920.0 * t2 * t2)
}

/// Evaluate theta(t) and theta'(t).
pub fn theta(t: f64, cfg: &RsConfig) -> Result<PhaseValue> {
    let th = theta_split(t, cfg)?;
    Ok(PhaseValue {
        theta: th.to_f64(),
        theta_prime: theta_prime_raw(t),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_below_floor() {
        let cfg = RsConfig::default();
        assert!(matches!(
            theta(9.0, &cfg),
            Err(Error::BelowValidityFloor { .. })
        ));
        assert!(theta(10.0, &cfg).is_ok());
    }

    #[test]
    fn theta_prime_main_term_identity() {
        // at t = 2 pi e^2 the main term of theta' is exactly 1
        let cfg = RsConfig::default();
        let t = 2.0 * std::f64::consts::PI * std::f64::consts::E.powi(2);
        let pv = theta(t, &cfg).unwrap();
        assert!(
            (pv.theta_prime - 1.0).abs() < 1e-4,
            "theta' = {}",
            pv.theta_prime
        );
    }

    #[test]
    fn monotone_increasing() {
        let cfg = RsConfig::default();
        let mut prev = theta(50.0, &cfg).unwrap().theta;
        for i in 1..200 {
            let t = 50.0 + (i as f64) * 37.7;
            let cur = theta(t, &cfg).unwrap().theta;
            assert!(cur > prev, "theta not increasing at t = {t}");
            prev = cur;
        }
    }

    #[test]
    fn derivative_is_positive_from_floor_up() {
        let cfg = RsConfig::default();
        for i in 0..500 {
            let t = THETA_T_MIN + i as f64 * 20.0;
            assert!(theta(t, &cfg).unwrap().theta_prime > 0.0);
        }
    }

    #[test]
    fn central_difference_matches_derivative_at_h_squared_rate() {
        // The offset rides in the low word so t +- h is exact, and the
        // difference is evaluated in double-double; otherwise argument
        // rounding (~ulp(t) * theta') buries the O(h^2) signal.
        let t = 1000.0;
        let dt = theta_prime_raw(t);
        let mut errs = Vec::new();
        for &h in &[1e-3, 1e-4] {
            let d = theta_dd_split(t, h) - theta_dd_split(t, -h);
            let cd = d.to_f64() / (2.0 * h);
            errs.push((cd - dt).abs());
        }
        // pure h^2 behaviour gives exactly 100; allow slack for higher orders
        let ratio = errs[0] / errs[1];
        assert!(
            (80.0..120.0).contains(&ratio),
            "err(1e-3) = {:e}, err(1e-4) = {:e}, ratio = {ratio}",
            errs[0],
            errs[1]
        );
        // and the derivative itself is consistent with the phase
        assert!(errs[0] < 1e-12);
    }
}
