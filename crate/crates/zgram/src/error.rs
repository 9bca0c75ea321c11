use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("abscissa {value} below validity floor {floor}")]
    BelowValidityFloor { value: f64, floor: f64 },

    #[error("tau = {0} outside [-pi, pi]")]
    TauOutOfRange(f64),

    #[error("offset = {0} outside (0, pi/2]")]
    OffsetOutOfRange(f64),

    #[error("node index {0} below the smallest admissible index 0")]
    NodeIndexOutOfRange(i64),

    #[error(
        "phase solver stalled at residual {residual:e} (tolerance {tol:e}) \
         after {iters} iterations for (nu={nu}, tau={tau})"
    )]
    NonConvergence {
        nu: i64,
        tau: f64,
        tol: f64,
        iters: u32,
        residual: f64,
    },

    #[error("invalid window: {0}")]
    InvalidWindow(String),

    #[error("invalid quadrature interval [{a}, {b}]: {reason}")]
    InvalidInterval { a: f64, b: f64, reason: String },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(
        "trig sum precondition violated (need 1 <= a <= b <= 2a and b <= sqrt(t/2pi)): \
         a={a}, b={b}, t={t}"
    )]
    TrigSumPrecondition { a: u64, b: u64, t: f64 },

    #[error("delta = {0} outside (0, 1/6]")]
    DeltaOutOfRange(f64),
}
