//! Riemann-Siegel evaluation of Hardy's Z function, its derivative, the
//! shifted Gram-point grid t_nu(tau), and numerical verifiers for a family of
//! sum and mean-value identities over windows [T, T+H].
//!
//! Everything is a pure function of the abscissa and an [`RsConfig`]; all
//! operations are safe to call concurrently, and grid-level reductions are
//! ordered and compensated so results do not depend on thread scheduling.

// Domain guards use the `!(x >= y)` form on purpose: it rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod dd;
pub mod error;
pub mod grid;
pub mod hardy;
pub mod kahan;
pub mod lambert;
pub mod quad;
pub mod report;
pub mod segment;
pub mod theta;
pub mod trig;
pub mod verify;

pub use config::RsConfig;
pub use error::{Error, Result};
pub use grid::{enumerate_nodes, nu_range, solve_node, Node, Parity, Window};
pub use hardy::{z, z_prime};
pub use kahan::KahanSum;
pub use quad::{integrate, HardyFn};
pub use report::{ClaimId, VerificationReport};
pub use segment::{build_set, SegmentSet, SetKind};
pub use theta::{theta, theta_split, PhaseValue, THETA_T_MIN};
pub use trig::{trig_sum, TrigSumEstimate};
pub use verify::{
    newton_leibniz_check, residual_scale, sum_f, verify_alternating, verify_mean_value,
    verify_theorem1, verify_theorem2, verify_theorem3, verify_w_nu, w_nu_member, xi_mean,
    AltVariant, W_NU_THRESHOLD,
};
