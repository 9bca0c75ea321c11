//! Independent high-precision references for the zgram evaluators.
//!
//! Nothing here shares algorithms with the code under test: zeta comes from
//! Euler-Maclaurin summation (not Riemann-Siegel), the phase function from
//! the complex Stirling series (not the real asymptotic expansion), and Gram
//! points from sign bisection on that phase.

mod em;
mod hp;
mod tf;

pub use em::{Complex, ZetaOracle};
pub use hp::{gram_point_ref, ln_gamma_quarter, theta_ref, theta_ref_big, Cx, Hp, PREC};
