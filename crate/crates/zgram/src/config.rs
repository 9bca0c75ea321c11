use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Evaluation policy for the Riemann-Siegel machinery: truncation floor,
/// number of correction terms, solver tolerance and quadrature order.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RsConfig {
    /// Validity floor for the Z / Z' evaluators and quadrature (>= 50).
    pub min_t: f64,
    /// Correction terms beyond the main sum: 0 (none) or 1 (the C0 term).
    pub correction_order: u8,
    /// Absolute phase tolerance of the node solver.
    pub newton_tol: f64,
    /// Gauss-Legendre points per quadrature panel (>= 8).
    pub quad_order: usize,
}

impl Default for RsConfig {
    fn default() -> Self {
        RsConfig {
            min_t: 50.0,
            correction_order: 1,
            newton_tol: 1e-10,
            quad_order: 16,
        }
    }
}

impl RsConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.min_t >= 50.0) {
            return Err(Error::InvalidConfig(format!(
                "min_t = {} must be >= 50",
                self.min_t
            )));
        }
        if self.correction_order > 1 {
            return Err(Error::InvalidConfig(format!(
                "correction_order = {} must be 0 or 1",
                self.correction_order
            )));
        }
        if !(self.newton_tol > 0.0 && self.newton_tol.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "newton_tol = {} must be positive and finite",
                self.newton_tol
            )));
        }
        if self.quad_order < 8 || self.quad_order > 128 {
            return Err(Error::InvalidConfig(format!(
                "quad_order = {} must lie in [8, 128]",
                self.quad_order
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_valid() {
        RsConfig::default().validate().unwrap();
    }

    #[test]
    fn rejects_out_of_range_fields() {
        let mut c = RsConfig {
            min_t: 10.0,
            ..RsConfig::default()
        };
        assert!(c.validate().is_err());
        c = RsConfig {
            correction_order: 2,
            ..RsConfig::default()
        };
        assert!(c.validate().is_err());
        c = RsConfig {
            newton_tol: 0.0,
            ..RsConfig::default()
        };
        assert!(c.validate().is_err());
        c = RsConfig {
            quad_order: 4,
            ..RsConfig::default()
        };
        assert!(c.validate().is_err());
    }
}
