use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Path-length constant `C` with the lengths derived from it:
/// `ell = ceil((C/ε) ln(1/ε))` and `t0 = ceil((15/ε²) ln(1/ε))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CalibrationConfig {
    #[serde(rename = "C")]
    pub c: f64,
    pub epsilon: f64,
    pub ell: usize,
    pub t0: usize,
}

impl CalibrationConfig {
    pub fn new(c: f64, epsilon: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::config(
                "C",
                format!("path constant {c} must be positive"),
            ));
        }
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::config(
                "epsilon",
                format!("epsilon = {epsilon} must lie in (0, 1)"),
            ));
        }
        let log = (1.0 / epsilon).ln();
        Ok(CalibrationConfig {
            c,
            epsilon,
            ell: ((c / epsilon) * log).ceil().max(1.0) as usize,
            t0: ((15.0 / (epsilon * epsilon)) * log).ceil() as usize,
        })
    }
}
