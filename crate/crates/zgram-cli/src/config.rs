//! Run configuration: which claims, which windows, which grids.

use std::str::FromStr;

use serde::{Deserialize, Serialize};
use zgram::{ClaimId, RsConfig};

pub const DEFAULT_DELTA: f64 = 1.0 / 6.0;
pub const DEFAULT_EPSILON: f64 = 0.05;

/// How the window length H is derived from the ladder point T.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HRule {
    /// Constant H.
    Fixed(f64),
    /// H = T^delta ln T (the regime where the alternating sums are asymptotic).
    DeltaLn,
    /// H = T^(1/6 + epsilon) (the widest admissible window).
    SixthEps,
}

impl HRule {
    pub fn h_for(&self, t: f64, delta: f64, epsilon: f64) -> f64 {
        match *self {
            HRule::Fixed(h) => h,
            HRule::DeltaLn => t.powf(delta) * t.ln(),
            HRule::SixthEps => t.powf(1.0 / 6.0 + epsilon),
        }
    }
}

impl FromStr for HRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "delta-ln" | "delta_ln" => Ok(HRule::DeltaLn),
            "sixth-eps" | "sixth_eps" => Ok(HRule::SixthEps),
            other => {
                if let Some(v) = other.strip_prefix("fixed:") {
                    let h: f64 = v.parse().map_err(|_| format!("bad fixed H: {v}"))?;
                    Ok(HRule::Fixed(h))
                } else {
                    Err(format!(
                        "unknown h-rule '{other}' (expected fixed:<H>, delta-ln or sixth-eps)"
                    ))
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format '{other}' (expected csv or json)")),
        }
    }
}

/// Full description of a run; the JSON config file mirrors this struct.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub claims: Vec<ClaimId>,
    #[serde(rename = "T_ladder")]
    pub t_ladder: Vec<f64>,
    pub h_rule: HRule,
    pub tau_grid: Vec<f64>,
    pub offset_grid: Vec<f64>,
    /// Exponent of the residual scale T^delta ln T.
    pub delta: f64,
    /// Epsilon of the H1 = T^(1/6+eps) window bound.
    pub epsilon: f64,
    pub rs: RsConfig,
    /// Worker threads; 0 picks the machine default.
    pub threads: usize,
    pub output: OutputFormat,
    pub out_path: String,
}

impl Default for RunConfig {
    fn default() -> Self {
        use std::f64::consts::PI;
        RunConfig {
            claims: vec![
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
            ],
            t_ladder: vec![1e6, 1e7, 1e8],
            h_rule: HRule::DeltaLn,
            tau_grid: vec![0.0, PI / 4.0, PI / 2.0, 3.0 * PI / 4.0, PI],
            offset_grid: vec![0.3, 0.8, PI / 2.0],
            delta: DEFAULT_DELTA,
            epsilon: DEFAULT_EPSILON,
            rs: RsConfig::default(),
            threads: 0,
            output: OutputFormat::Csv,
            out_path: "reports.csv".into(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        self.rs.validate().map_err(|e| e.to_string())?;
        if self.t_ladder.is_empty() {
            return Err("T_ladder must not be empty".into());
        }
        for pair in self.t_ladder.windows(2) {
            if !(pair[0] < pair[1]) {
                return Err(format!(
                    "T_ladder must be strictly increasing ({} !< {})",
                    pair[0], pair[1]
                ));
            }
        }
        for &t in &self.t_ladder {
            if !(t >= 1e3 && t.is_finite()) {
                return Err(format!("ladder point T = {t} must be >= 1e3"));
            }
        }
        for &tau in &self.tau_grid {
            if !(tau.abs() <= std::f64::consts::PI) {
                return Err(format!("tau = {tau} outside [-pi, pi]"));
            }
        }
        for &x in &self.offset_grid {
            if !(x > 0.0 && x <= std::f64::consts::FRAC_PI_2) {
                return Err(format!("offset = {x} outside (0, pi/2]"));
            }
        }
        if !(self.delta > 0.0 && self.delta <= 1.0 / 6.0) {
            return Err(format!("delta = {} outside (0, 1/6]", self.delta));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(format!("epsilon = {} outside (0, 1)", self.epsilon));
        }
        if let HRule::Fixed(h) = self.h_rule {
            if !(h > 0.0 && h.is_finite()) {
                return Err(format!("fixed H = {h} must be positive"));
            }
        }
        Ok(())
    }
}
