use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Chernoff bound `Pr[X >= (1+a) mean] < exp(-a² mean / 3)` for `0 < a < 3/2`.
pub fn chernoff_upper_tail(mean: f64, a: f64) -> Result<f64> {
    if !(mean > 0.0 && mean.is_finite()) {
        return Err(Error::Domain(format!("mean = {mean} must be positive")));
    }
    if !(a > 0.0 && a < 1.5) {
        return Err(Error::Domain(format!("a = {a} must lie in (0, 3/2)")));
    }
    Ok((-a * a * mean / 3.0).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MartingaleTolerance {
    /// `C alpha sqrt(n² p)`.
    pub deviation: f64,
    /// `2 exp(-alpha² / 4)`.
    pub bound: f64,
}

/// Edge-exposure martingale tolerance for a variable that changes by at most
/// `c` when one edge changes.
pub fn martingale_tolerance(c: f64, alpha: f64, n: u64, p: f64) -> Result<MartingaleTolerance> {
    if c.is_nan() || c <= 0.0 {
        return Err(Error::Domain(format!("C = {c} must be positive")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("p = {p} must lie in [0, 1]")));
    }
    let scale = ((n as f64) * (n as f64) * p).sqrt();
    if !(alpha > 0.0 && alpha < 2.0 * scale) {
        return Err(Error::Domain(format!(
            "alpha = {alpha} must lie in (0, 2 sqrt(n² p)) = (0, {})",
            2.0 * scale
        )));
    }
    Ok(MartingaleTolerance {
        deviation: c * alpha * scale,
        bound: 2.0 * (-alpha * alpha / 4.0).exp(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chernoff_examples() {
        assert!((chernoff_upper_tail(50.0, 0.5).unwrap() - (-25.0f64 / 6.0).exp()).abs() < 1e-15);
        assert!((chernoff_upper_tail(50.0, 0.5).unwrap() - 0.01550).abs() < 1e-5);
        assert!(chernoff_upper_tail(0.0, 0.5).is_err());
        assert!(chernoff_upper_tail(1.0, 1.4999).is_ok());
        assert!(chernoff_upper_tail(1.0, 1.5).is_err());
    }

    #[test]
    fn martingale_examples() {
        let m = martingale_tolerance(1.0, 2.0, 100, 0.01).unwrap();
        assert!((m.deviation - 20.0).abs() < 1e-12);
        assert!((m.bound - 2.0 * (-1.0f64).exp()).abs() < 1e-15);
        let tiny = martingale_tolerance(1.0, 1e-9, 100, 0.01).unwrap();
        assert!(tiny.deviation < 1e-7 && (tiny.bound - 2.0).abs() < 1e-12);
        assert!(martingale_tolerance(1.0, 20.0, 100, 0.01).is_err());
    }
}
