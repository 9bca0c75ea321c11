//! The verifiable claims: each operation computes a sum or integral over the
//! node grid, the predicted main term, and the residual scale.
//!
//! Reductions are Kahan-compensated in ascending index order over values that
//! are computed independently per node, so every report is reproducible
//! bit-for-bit for a fixed configuration regardless of thread count.

use rayon::prelude::*;

use crate::config::RsConfig;
use crate::error::{Error, Result};
use crate::grid::{enumerate_nodes, solve_node, Node, Parity, Window};
use crate::hardy::z;
use crate::kahan::KahanSum;
use crate::quad::{integrate, HardyFn};
use crate::report::{ClaimId, VerificationReport};
use crate::segment::{build_set, SetKind};

/// Threshold on |Z[t(tau)] - Z[t]| below which the difference is treated as
/// numerically zero for membership purposes.
pub const W_NU_THRESHOLD: f64 = 1e-8;

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta <= 1.0 / 6.0) {
        return Err(Error::DeltaOutOfRange(delta));
    }
    Ok(())
}

/// The residual scale T^delta ln T.
pub fn residual_scale(t: f64, delta: f64) -> f64 {
    t.powf(delta) * t.ln()
}

fn z_at_nodes(nodes: &[Node], cfg: &RsConfig) -> Result<Vec<f64>> {
    let vals: Vec<Result<f64>> = nodes.par_iter().map(|n| z(n.t, cfg)).collect();
    vals.into_iter().collect()
}

fn alternating_sign(nu: i64) -> f64 {
    if nu % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// F(tau, T, H): plain sum of Z over the shifted nodes of the window.
pub fn sum_f(tau: f64, w: &Window, cfg: &RsConfig) -> Result<f64> {
    let nodes = enumerate_nodes(w, tau, Parity::All, cfg)?;
    let vals = z_at_nodes(&nodes, cfg)?;
    Ok(KahanSum::sum_iter(vals))
}

/// Shift invariance: lhs = F(tau) - F(0), expected O(T^delta ln T).
pub fn verify_theorem1(
    tau: f64,
    w: &Window,
    delta: f64,
    cfg: &RsConfig,
) -> Result<VerificationReport> {
    check_delta(delta)?;
    let nodes = enumerate_nodes(w, tau, Parity::All, cfg)?;
    let shifted = KahanSum::sum_iter(z_at_nodes(&nodes, cfg)?);
    let base_nodes = enumerate_nodes(w, 0.0, Parity::All, cfg)?;
    let base = KahanSum::sum_iter(z_at_nodes(&base_nodes, cfg)?);
    Ok(VerificationReport::new(
        ClaimId::T1,
        w.t_lo,
        w.h,
        tau,
        shifted - base,
        0.0,
        residual_scale(w.t_lo, delta),
        nodes.len() as u64,
    ))
}

/// The three alternating-sum claims.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AltVariant {
    /// sum (-1)^nu Z(t_nu); main term (1/pi) H ln(T/2pi).
    Alt31,
    /// sum (-1)^nu Z[t_nu(tau)]; main term (1/pi) H ln(T/2pi) cos(tau).
    Alt32,
    /// sum (-1)^nu {Z[t_nu(tau)] - Z(t_nu)}; main -(2/pi) H ln(T/2pi) sin^2(tau/2).
    Alt33,
}

/// Alternating sums over all nodes of the window.  For `Alt31` the shift
/// tau only labels the report.  `Alt33` is summed per-node over the same
/// values that feed `Alt32` and `Alt31`, so the identity
/// ALT33 = ALT32 - ALT31 holds to compensated-summation accuracy.
pub fn verify_alternating(
    variant: AltVariant,
    tau: f64,
    w: &Window,
    delta: f64,
    cfg: &RsConfig,
) -> Result<VerificationReport> {
    check_delta(delta)?;
    let scale = w.main_scale() / std::f64::consts::PI;

    let (claim, lhs, main, count) = match variant {
        AltVariant::Alt31 => {
            let nodes = enumerate_nodes(w, 0.0, Parity::All, cfg)?;
            let vals = z_at_nodes(&nodes, cfg)?;
            let s = KahanSum::sum_iter(
                nodes
                    .iter()
                    .zip(&vals)
                    .map(|(n, v)| alternating_sign(n.nu) * v),
            );
            (ClaimId::Alt31, s, scale, nodes.len())
        }
        AltVariant::Alt32 => {
            let nodes = enumerate_nodes(w, tau, Parity::All, cfg)?;
            let vals = z_at_nodes(&nodes, cfg)?;
            let s = KahanSum::sum_iter(
                nodes
                    .iter()
                    .zip(&vals)
                    .map(|(n, v)| alternating_sign(n.nu) * v),
            );
            (ClaimId::Alt32, s, scale * tau.cos(), nodes.len())
        }
        AltVariant::Alt33 => {
            let base_nodes = enumerate_nodes(w, 0.0, Parity::All, cfg)?;
            let base_vals = z_at_nodes(&base_nodes, cfg)?;
            let nodes = enumerate_nodes(w, tau, Parity::All, cfg)?;
            let vals = z_at_nodes(&nodes, cfg)?;
            let s = KahanSum::sum_iter(
                nodes
                    .iter()
                    .zip(&vals)
                    .zip(&base_vals)
                    .map(|((n, v), b)| alternating_sign(n.nu) * (v - b)),
            );
            let half = 0.5 * tau;
            (
                ClaimId::Alt33,
                s,
                -2.0 * scale * half.sin() * half.sin(),
                nodes.len(),
            )
        }
    };
    Ok(VerificationReport::new(
        claim,
        w.t_lo,
        w.h,
        tau,
        lhs,
        main,
        residual_scale(w.t_lo, delta),
        count as u64,
    ))
}

/// Sum of Z[t(tau)] - Z[t] over one parity class of node indices.
///
/// Main terms: -(1/pi) H ln(T/2pi) sin^2(tau/2) for the even class and the
/// exact negative for the odd class.  Together with the all-index claims this
/// satisfies the parity partition identity, which pins the summands as plain
/// (unweighted) sums over each class.
pub fn verify_theorem2(
    parity: Parity,
    tau: f64,
    w: &Window,
    delta: f64,
    cfg: &RsConfig,
) -> Result<VerificationReport> {
    check_delta(delta)?;
    let (claim, sign) = match parity {
        Parity::Even => (ClaimId::T2Even, -1.0),
        Parity::Odd => (ClaimId::T2Odd, 1.0),
        Parity::All => {
            return Err(Error::InvalidConfig(
                "theorem-2 sums are defined per parity class (even or odd)".into(),
            ))
        }
    };
    let base_nodes = enumerate_nodes(w, 0.0, parity, cfg)?;
    let base_vals = z_at_nodes(&base_nodes, cfg)?;
    let nodes = enumerate_nodes(w, tau, parity, cfg)?;
    let vals = z_at_nodes(&nodes, cfg)?;
    let lhs = KahanSum::sum_iter(vals.iter().zip(&base_vals).map(|(v, b)| v - b));
    let half = 0.5 * tau;
    let main = sign * w.main_scale() / std::f64::consts::PI * half.sin() * half.sin();
    Ok(VerificationReport::new(
        claim,
        w.t_lo,
        w.h,
        tau,
        lhs,
        main,
        residual_scale(w.t_lo, delta),
        nodes.len() as u64,
    ))
}

/// The mean value of Z over (t_nu(-offset), t_nu(offset)) for the node's
/// index: integral divided by interval length.
pub fn xi_mean(node: &Node, offset: f64, cfg: &RsConfig) -> Result<f64> {
    if !(offset > 0.0 && offset <= std::f64::consts::FRAC_PI_2) {
        return Err(Error::OffsetOutOfRange(offset));
    }
    let lo = solve_node(node.nu, -offset, cfg)?;
    let hi = solve_node(node.nu, offset, cfg)?;
    Ok(integrate(HardyFn::Z, lo.t, hi.t, cfg)? / (hi.t - lo.t))
}

/// Sum of interval means minus node values over one parity class.
///
/// Main terms: -(1/2pi)(1 - sin x / x) H ln(T/2pi) for the even class, the
/// exact negative for the odd class.
pub fn verify_theorem3(
    parity: Parity,
    offset: f64,
    w: &Window,
    delta: f64,
    cfg: &RsConfig,
) -> Result<VerificationReport> {
    check_delta(delta)?;
    let (claim, sign) = match parity {
        Parity::Even => (ClaimId::T3Even, -1.0),
        Parity::Odd => (ClaimId::T3Odd, 1.0),
        Parity::All => {
            return Err(Error::InvalidConfig(
                "theorem-3 sums are defined per parity class (even or odd)".into(),
            ))
        }
    };
    if !(offset > 0.0 && offset <= std::f64::consts::FRAC_PI_2) {
        return Err(Error::OffsetOutOfRange(offset));
    }
    let nodes = enumerate_nodes(w, 0.0, parity, cfg)?;
    let diffs: Vec<Result<f64>> = nodes
        .par_iter()
        .map(|node| Ok(xi_mean(node, offset, cfg)? - z(node.t, cfg)?))
        .collect();
    let diffs = diffs.into_iter().collect::<Result<Vec<_>>>()?;
    let lhs = KahanSum::sum_iter(diffs);
    let main = sign * w.main_scale() / (2.0 * std::f64::consts::PI) * (1.0 - offset.sin() / offset);
    Ok(VerificationReport::new(
        claim,
        w.t_lo,
        w.h,
        offset,
        lhs,
        main,
        residual_scale(w.t_lo, delta),
        nodes.len() as u64,
    ))
}

/// Normalized integral of Z over the disconnected set G1 or G2; the claim is
/// a pure ratio, so the normalizer is 1.
pub fn verify_mean_value(
    kind: SetKind,
    offset: f64,
    w: &Window,
    cfg: &RsConfig,
) -> Result<VerificationReport> {
    let set = build_set(kind, offset, w, cfg)?;
    if set.is_empty() {
        return Err(Error::InvalidWindow(format!(
            "window [{}, {}] holds no nodes of the requested parity",
            w.t_lo,
            w.t_hi()
        )));
    }
    let parts: Vec<Result<f64>> = set
        .segments()
        .par_iter()
        .map(|&(lo, hi)| integrate(HardyFn::Z, lo, hi, cfg))
        .collect();
    let parts = parts.into_iter().collect::<Result<Vec<_>>>()?;
    let lhs = KahanSum::sum_iter(parts) / set.measure();
    let (claim, sign) = match kind {
        SetKind::G1 => (ClaimId::MvG1, 1.0),
        SetKind::G2 => (ClaimId::MvG2, -1.0),
    };
    let main = sign * 2.0 * offset.sin() / offset;
    Ok(VerificationReport::new(
        claim,
        w.t_lo,
        w.h,
        offset,
        lhs,
        main,
        1.0,
        set.len() as u64,
    ))
}

/// Newton-Leibniz consistency at a single node: |integral of Z' between t_nu
/// and t_nu(tau)| against |Z[t_nu(tau)] - Z(t_nu)|.
pub fn newton_leibniz_check(nu: i64, tau: f64, cfg: &RsConfig) -> Result<VerificationReport> {
    if !(tau > 0.0 && tau <= std::f64::consts::PI) {
        return Err(Error::TauOutOfRange(tau));
    }
    let base = solve_node(nu, 0.0, cfg)?;
    let shifted = solve_node(nu, tau, cfg)?;
    let lhs = integrate(HardyFn::ZPrime, base.t, shifted.t, cfg)?.abs();
    let main = (z(shifted.t, cfg)? - z(base.t, cfg)?).abs();
    Ok(VerificationReport::new(
        ClaimId::Nl73,
        base.t,
        shifted.t - base.t,
        tau,
        lhs,
        main,
        main.max(1e-12),
        1,
    ))
}

/// Membership test for the set w_nu = { tau : Z[t_nu(tau)] != Z(t_nu) }.
///
/// The strict inequality is not numerically decidable; lhs is the observed
/// |difference| and the residual against `W_NU_THRESHOLD` flags membership
/// (positive residual = member).
pub fn verify_w_nu(nu: i64, tau: f64, cfg: &RsConfig) -> Result<VerificationReport> {
    if !(tau > 0.0 && tau <= std::f64::consts::PI) {
        return Err(Error::TauOutOfRange(tau));
    }
    let base = solve_node(nu, 0.0, cfg)?;
    let shifted = solve_node(nu, tau, cfg)?;
    let diff = (z(shifted.t, cfg)? - z(base.t, cfg)?).abs();
    Ok(VerificationReport::new(
        ClaimId::Wnu,
        base.t,
        shifted.t - base.t,
        tau,
        diff,
        W_NU_THRESHOLD,
        1.0,
        1,
    ))
}

/// True when tau is classified as a member of w_nu.
pub fn w_nu_member(nu: i64, tau: f64, cfg: &RsConfig) -> Result<bool> {
    Ok(verify_w_nu(nu, tau, cfg)?.residual > 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CFG: RsConfig = RsConfig {
        min_t: 50.0,
        correction_order: 1,
        newton_tol: 1e-10,
        quad_order: 16,
    };

    fn small_window() -> Window {
        Window::new(1e4, 30.0).unwrap()
    }

    #[test]
    fn theorem1_is_exactly_zero_at_tau_zero() {
        let r = verify_theorem1(0.0, &small_window(), 1.0 / 6.0, &CFG).unwrap();
        assert_eq!(r.lhs, 0.0);
        assert_eq!(r.residual, r.lhs);
        assert_eq!(r.main_term, 0.0);
    }

    #[test]
    fn sum_f_empty_window_is_zero() {
        // squeeze the window into the gap right after a node
        let g = solve_node(1000, 0.0, &CFG).unwrap();
        let next = solve_node(1001, 0.0, &CFG).unwrap();
        let w = Window::new(g.t + 0.05 * (next.t - g.t), 0.02 * (next.t - g.t)).unwrap();
        assert_eq!(sum_f(0.3, &w, &CFG).unwrap(), 0.0);
    }

    #[test]
    fn alternating_identity_chain() {
        let w = small_window();
        let tau = 1.1;
        let a31 = verify_alternating(AltVariant::Alt31, tau, &w, 1.0 / 6.0, &CFG).unwrap();
        let a32 = verify_alternating(AltVariant::Alt32, tau, &w, 1.0 / 6.0, &CFG).unwrap();
        let a33 = verify_alternating(AltVariant::Alt33, tau, &w, 1.0 / 6.0, &CFG).unwrap();
        let scale = a31.lhs.abs() + a32.lhs.abs();
        assert!(
            (a33.lhs - (a32.lhs - a31.lhs)).abs() <= 1e-9 * scale.max(1.0),
            "chain broken: {} vs {}",
            a33.lhs,
            a32.lhs - a31.lhs
        );
        // tau = 0 collapses ALT33 exactly
        let a33z = verify_alternating(AltVariant::Alt33, 0.0, &w, 1.0 / 6.0, &CFG).unwrap();
        assert_eq!(a33z.lhs, 0.0);
        assert_eq!(a33z.main_term, 0.0);
    }

    #[test]
    fn theorem2_parity_structure() {
        let w = small_window();
        let tau = std::f64::consts::PI;
        let even = verify_theorem2(Parity::Even, tau, &w, 1.0 / 6.0, &CFG).unwrap();
        let odd = verify_theorem2(Parity::Odd, tau, &w, 1.0 / 6.0, &CFG).unwrap();
        assert_eq!(even.main_term, -odd.main_term);
        assert!(even.main_term < 0.0);
        // tau = 0 collapses exactly
        let z0 = verify_theorem2(Parity::Even, 0.0, &w, 1.0 / 6.0, &CFG).unwrap();
        assert_eq!(z0.lhs, 0.0);
        assert_eq!(z0.main_term, 0.0);
        assert!(verify_theorem2(Parity::All, tau, &w, 1.0 / 6.0, &CFG).is_err());
    }

    #[test]
    fn theorem3_main_term_symmetry_and_limit() {
        let w = small_window();
        let even = verify_theorem3(Parity::Even, 0.8, &w, 1.0 / 6.0, &CFG).unwrap();
        let odd = verify_theorem3(Parity::Odd, 0.8, &w, 1.0 / 6.0, &CFG).unwrap();
        assert_eq!(even.main_term, -odd.main_term);
        // 1 - sin(x)/x -> 0 as the offset shrinks (x^2/6 for small x)
        let tiny = verify_theorem3(Parity::Even, 1e-3, &w, 1.0 / 6.0, &CFG).unwrap();
        assert!(tiny.main_term.abs() < 2e-6 * even.main_term.abs());
        assert!(verify_theorem3(Parity::Even, 0.0, &w, 1.0 / 6.0, &CFG).is_err());
        assert!(verify_theorem3(Parity::Even, 2.0, &w, 1.0 / 6.0, &CFG).is_err());
    }

    #[test]
    fn xi_mean_continuity_toward_zero_offset() {
        let node = solve_node(5000, 0.0, &CFG).unwrap();
        let m = xi_mean(&node, 0.01, &CFG).unwrap();
        let v = z(node.t, &CFG).unwrap();
        assert!((m - v).abs() < 1e-4, "xi_mean = {m}, z = {v}");
    }

    #[test]
    fn newton_leibniz_small_tau_degenerates() {
        let r = newton_leibniz_check(5000, 0.01, &CFG).unwrap();
        assert!((r.lhs - r.main_term).abs() < 1e-6);
        assert!(newton_leibniz_check(5000, 0.0, &CFG).is_err());
        assert!(newton_leibniz_check(5000, -0.5, &CFG).is_err());
    }

    #[test]
    fn w_nu_membership_flags() {
        // a generic shift changes Z; tau large at a random node is a member
        assert!(w_nu_member(5000, 1.0, &CFG).unwrap());
    }

    #[test]
    fn delta_domain() {
        let w = small_window();
        assert!(verify_theorem1(0.3, &w, 0.0, &CFG).is_err());
        assert!(verify_theorem1(0.3, &w, 0.2, &CFG).is_err());
    }
}
