//! The shifted node grid: solutions of theta(t_nu(tau)) = pi*nu + tau.

use rayon::prelude::*;

use crate::config::RsConfig;
use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::lambert::lambert_w0;
use crate::theta::{theta_dd_split, theta_prime_raw, theta_split, THETA_T_MIN};

/// One grid point: index nu, phase offset tau, solved abscissa.
///
/// The abscissa is kept as an unevaluated pair `t + t_tail` so the defining
/// equation can hold to `newton_tol` even where one ulp of t moves the phase
/// by more than the tolerance (t >~ 3e5).  `t` alone is the correctly
/// rounded f64 abscissa and is what all Z evaluations consume.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Node {
    pub nu: i64,
    pub tau: f64,
    pub t: f64,
    /// Sub-ulp correction to `t`; |t_tail| <= ulp(t)/2.
    pub t_tail: f64,
}

impl Node {
    /// Signed phase residual theta(t_nu(tau)) - (pi*nu + tau), evaluated in
    /// double-double on the split abscissa.
    pub fn phase_residual(&self) -> f64 {
        let target = Dd::pi_times(self.nu) + self.tau;
        (theta_dd_split(self.t, self.t_tail) - target).to_f64()
    }
}

/// Parity filter on the node index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    All,
    Even,
    Odd,
}

impl Parity {
    fn admits(self, nu: i64) -> bool {
        match self {
            Parity::All => true,
            Parity::Even => nu % 2 == 0,
            Parity::Odd => nu % 2 != 0,
        }
    }
}

/// A verification range [T, T+H].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    /// Lower edge (>= 1e3).
    pub t_lo: f64,
    /// Length (> 0).
    pub h: f64,
}

impl Window {
    pub fn new(t_lo: f64, h: f64) -> Result<Self> {
        if !(t_lo >= 1e3 && t_lo.is_finite()) {
            return Err(Error::InvalidWindow(format!(
                "lower edge T = {t_lo} must be >= 1e3"
            )));
        }
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::InvalidWindow(format!(
                "length H = {h} must be positive"
            )));
        }
        Ok(Window { t_lo, h })
    }

    pub fn t_hi(&self) -> f64 {
        self.t_lo + self.h
    }

    /// The reference bound H1 = T^(1/6 + epsilon).
    pub fn h1_bound(&self, epsilon: f64) -> f64 {
        self.t_lo.powf(1.0 / 6.0 + epsilon)
    }

    /// True when H exceeds H1; callers are expected to warn, not fail.
    pub fn exceeds_h1(&self, epsilon: f64) -> bool {
        self.h > self.h1_bound(epsilon)
    }

    /// H * ln(T / 2pi), the scale of every main term.
    pub fn main_scale(&self) -> f64 {
        self.h * (self.t_lo / (2.0 * std::f64::consts::PI)).ln()
    }
}

fn check_tau(tau: f64) -> Result<()> {
    if !(tau.abs() <= std::f64::consts::PI) {
        return Err(Error::TauOutOfRange(tau));
    }
    Ok(())
}

/// Initial guess by inverting the main term of the phase equation,
/// t ~ 2 pi c / W(c/e) with c = nu + tau/pi + 7/8.
fn initial_guess(nu: i64, tau: f64) -> f64 {
    let c = nu as f64 + tau / std::f64::consts::PI + 0.875;
    if c < 0.05 {
        // Lambert form degenerates as c -> 0; any point near the bottom of
        // the admissible range serves, Newton contracts from there.
        return 12.0;
    }
    let w = lambert_w0(c / std::f64::consts::E);
    2.0 * std::f64::consts::PI * c / w
}

const SOLVER_MAX_ITERS: u32 = 50;
// Trial abscissae may temporarily wander slightly below the public floor.
const SOLVER_T_FLOOR: f64 = 8.0;

fn newton_refine(mut t: Dd, target: Dd, tol: f64) -> (Dd, f64, u32) {
    let mut resid = f64::INFINITY;
    for iter in 0..SOLVER_MAX_ITERS {
        resid = (theta_dd_split(t.hi, t.lo) - target).to_f64();
        if resid.abs() <= tol {
            return (t, resid, iter);
        }
        let step = resid / theta_prime_raw(t.hi);
        let mut next = t - step;
        if next.hi < SOLVER_T_FLOOR {
            next = Dd::from_f64(SOLVER_T_FLOOR);
        }
        t = next;
    }
    (t, resid, SOLVER_MAX_ITERS)
}

/// Bisection fallback: expand a bracket around the guess, then halve.
fn bisect_fallback(guess: f64, target: Dd, tol: f64) -> Option<Dd> {
    let phase = |t: f64| (theta_dd_split(t, 0.0) - target).to_f64();
    let mut lo = (guess * 0.5).max(SOLVER_T_FLOOR);
    let mut hi = guess * 2.0 + 10.0;
    for _ in 0..64 {
        if phase(lo) <= 0.0 {
            break;
        }
        lo = (lo * 0.5).max(SOLVER_T_FLOOR);
        if lo <= SOLVER_T_FLOOR {
            break;
        }
    }
    for _ in 0..64 {
        if phase(hi) >= 0.0 {
            break;
        }
        hi *= 2.0;
    }
    if !(phase(lo) <= 0.0 && phase(hi) >= 0.0) {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // f64 exhausted
        }
        if phase(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // polish the tail in double-double
    let (t, resid, _) = newton_refine(Dd::from_f64(hi), target, tol);
    if resid.abs() <= tol {
        Some(t)
    } else {
        None
    }
}

/// Solve theta(t) = pi*nu + tau for the shifted node t_nu(tau).
pub fn solve_node(nu: i64, tau: f64, cfg: &RsConfig) -> Result<Node> {
    cfg.validate()?;
    check_tau(tau)?;
    if nu < 0 {
        return Err(Error::NodeIndexOutOfRange(nu));
    }
    let target = Dd::pi_times(nu) + tau;
    let guess = initial_guess(nu, tau);
    let (t, resid, iters) = newton_refine(Dd::from_f64(guess), target, cfg.newton_tol);
    let t = if resid.abs() <= cfg.newton_tol {
        t
    } else {
        bisect_fallback(guess, target, cfg.newton_tol).ok_or(Error::NonConvergence {
            nu,
            tau,
            tol: cfg.newton_tol,
            iters,
            residual: resid,
        })?
    };
    if t.hi < THETA_T_MIN {
        return Err(Error::BelowValidityFloor {
            value: t.hi,
            floor: THETA_T_MIN,
        });
    }
    Ok(Node {
        nu,
        tau,
        t: t.hi,
        t_tail: t.lo,
    })
}

/// Inclusive index range of nodes whose tau = 0 abscissa lies in the window.
pub fn nu_range(w: &Window, cfg: &RsConfig) -> Result<(i64, i64)> {
    let lo = theta_split(w.t_lo, cfg)?.to_f64() / std::f64::consts::PI;
    let hi = theta_split(w.t_hi(), cfg)?.to_f64() / std::f64::consts::PI;
    Ok(((lo.ceil() as i64).max(0), hi.floor() as i64))
}

/// All nodes with t_nu(0) in [T, T+H], each solved at the requested tau,
/// filtered by index parity, in ascending nu order.
///
/// Membership is judged at tau = 0, matching the summation condition of the
/// verified formulas.  Solving runs in parallel; output order and values are
/// independent of the thread schedule.
pub fn enumerate_nodes(w: &Window, tau: f64, parity: Parity, cfg: &RsConfig) -> Result<Vec<Node>> {
    check_tau(tau)?;
    let (nu_lo, nu_hi) = nu_range(w, cfg)?;
    let indices: Vec<i64> = (nu_lo..=nu_hi).filter(|&nu| parity.admits(nu)).collect();
    let solved: Vec<Result<Node>> = indices
        .par_iter()
        .map(|&nu| solve_node(nu, tau, cfg))
        .collect();
    solved.into_iter().collect()
}
