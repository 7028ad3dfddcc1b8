use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper end of the ε range the asymptotic statements are applied to.
pub const DEFAULT_EPSILON_THRESHOLD: f64 = 0.2;

/// The subcritical partner `μ < 1` of `1 + ε`: `μ e^{-μ} = (1+ε) e^{-(1+ε)}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualParameter {
    pub epsilon: f64,
    pub mu: f64,
    pub residual: f64,
}

/// Solves for `μ` by bisection on `(0, 1)`.
///
/// The search runs over `δ = 1 - μ` on the log form
/// `ln(1 - δ) + δ = ln(1 + ε) - ε`, which stays well conditioned as `ε → 0`
/// where `x e^{-x}` flattens out.
pub fn solve_dual_mu(epsilon: f64) -> Result<DualParameter> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::Domain(format!(
            "epsilon = {epsilon} must be positive"
        )));
    }
    let target = (1.0 + epsilon) * (-(1.0 + epsilon)).exp();
    let g = |x: f64| x * (-x).exp();
    let rhs = epsilon.ln_1p() - epsilon;
    // Decreasing in δ.
    let h = |d: f64| (-d).ln_1p() + d - rhs;
    let (mut lo, mut hi) = (1e-15_f64, 1.0 - 1e-15);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if h(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let delta = if h(lo).abs() <= h(hi).abs() { lo } else { hi };
    let mu = 1.0 - delta;
    let residual = (g(mu) - target).abs();
    if residual > 1e-12 {
        return Err(Error::Contract(format!(
            "dual parameter residual {residual:e} exceeds 1e-12 at epsilon = {epsilon}"
        )));
    }
    if epsilon <= DEFAULT_EPSILON_THRESHOLD && delta < epsilon / 2.0 {
        return Err(Error::Contract(format!(
            "mu = {mu} exceeds 1 - epsilon/2 at epsilon = {epsilon}"
        )));
    }
    Ok(DualParameter {
        epsilon,
        mu,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        // Roots from a 50-digit solver.
        assert!((solve_dual_mu(1.0).unwrap().mu - 0.406_375_739_959_96).abs() < 1e-11);
        assert!((solve_dual_mu(0.1).unwrap().mu - 0.906_252_442_005_009).abs() < 1e-11);
        assert!((solve_dual_mu(0.05).unwrap().mu - 0.951_613_071_073_453).abs() < 1e-11);
        assert!((1.0 - solve_dual_mu(1e-9).unwrap().mu).abs() < 1e-3);
    }

    #[test]
    fn decreasing_in_epsilon() {
        let grid: Vec<f64> = (1..=40).map(|i| i as f64 * 0.05).collect();
        let mus: Vec<f64> = grid.iter().map(|&e| solve_dual_mu(e).unwrap().mu).collect();
        assert!(mus.windows(2).all(|w| w[1] < w[0]));
        for (e, d) in grid.iter().map(|&e| (e, solve_dual_mu(e).unwrap())) {
            let target = (1.0 + e) * (-(1.0 + e)).exp();
            assert!((d.mu * (-d.mu).exp() - target).abs() <= 1e-12);
        }
    }

    #[test]
    fn rejects_non_positive() {
        assert!(matches!(solve_dual_mu(0.0), Err(Error::Domain(_))));
        assert!(solve_dual_mu(-1.0).is_err());
        assert!(solve_dual_mu(f64::NAN).is_err());
    }
}
