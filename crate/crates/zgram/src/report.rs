//! Verification reports: one computed claim instance per record.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The verifiable claims.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClaimId {
    /// Shift invariance of the plain node sum: F(tau) - F(0) stays O(T^d ln T).
    T1,
    /// Sum of Z[t(tau)] - Z[t] over even-indexed nodes.
    #[serde(rename = "T2_even")]
    T2Even,
    /// Same over odd-indexed nodes.
    #[serde(rename = "T2_odd")]
    T2Odd,
    /// Sum of interval means minus node values, even-indexed.
    #[serde(rename = "T3_even")]
    T3Even,
    /// Same, odd-indexed.
    #[serde(rename = "T3_odd")]
    T3Odd,
    /// Normalized integral of Z over G1 vs 2 sin(x)/x.
    #[serde(rename = "MV_G1")]
    MvG1,
    /// Normalized integral of Z over G2 vs -2 sin(y)/y.
    #[serde(rename = "MV_G2")]
    MvG2,
    /// Alternating sum of Z at unshifted nodes.
    #[serde(rename = "ALT31")]
    Alt31,
    /// Alternating sum of Z at shifted nodes.
    #[serde(rename = "ALT32")]
    Alt32,
    /// Alternating sum of the differences.
    #[serde(rename = "ALT33")]
    Alt33,
    /// Newton-Leibniz identity between the Z' integral and the Z difference.
    #[serde(rename = "NL73")]
    Nl73,
    /// Membership of tau in the set where Z[t(tau)] differs from Z[t].
    #[serde(rename = "WNU")]
    Wnu,
}

impl ClaimId {
    pub const ALL: [ClaimId; 12] = [
        ClaimId::T1,
        ClaimId::T2Even,
        ClaimId::T2Odd,
        ClaimId::T3Even,
        ClaimId::T3Odd,
        ClaimId::MvG1,
        ClaimId::MvG2,
        ClaimId::Alt31,
        ClaimId::Alt32,
        ClaimId::Alt33,
        ClaimId::Nl73,
        ClaimId::Wnu,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ClaimId::T1 => "T1",
            ClaimId::T2Even => "T2_even",
            ClaimId::T2Odd => "T2_odd",
            ClaimId::T3Even => "T3_even",
            ClaimId::T3Odd => "T3_odd",
            ClaimId::MvG1 => "MV_G1",
            ClaimId::MvG2 => "MV_G2",
            ClaimId::Alt31 => "ALT31",
            ClaimId::Alt32 => "ALT32",
            ClaimId::Alt33 => "ALT33",
            ClaimId::Nl73 => "NL73",
            ClaimId::Wnu => "WNU",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClaimId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ClaimId::ALL
            .iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .copied()
            .ok_or_else(|| format!("unknown claim id: {s}"))
    }
}

/// Computed left-hand side, predicted main term and residual scaling for one
/// (claim, window, parameter) cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim_id: ClaimId,
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(rename = "H")]
    pub h: f64,
    /// tau, x or y, whichever the claim consumes.
    pub parameter: f64,
    pub lhs: f64,
    pub main_term: f64,
    /// Always lhs - main_term.
    pub residual: f64,
    /// Error scale of the claim (e.g. T^delta ln T); strictly positive.
    pub normalizer: f64,
    pub node_count: u64,
}

impl VerificationReport {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        claim_id: ClaimId,
        t: f64,
        h: f64,
        parameter: f64,
        lhs: f64,
        main_term: f64,
        normalizer: f64,
        node_count: u64,
    ) -> Self {
        debug_assert!(normalizer > 0.0);
        VerificationReport {
            claim_id,
            t,
            h,
            parameter,
            lhs,
            main_term,
            residual: lhs - main_term,
            normalizer,
            node_count,
        }
    }

    pub fn normalized_residual(&self) -> f64 {
        self.residual / self.normalizer
    }
}
