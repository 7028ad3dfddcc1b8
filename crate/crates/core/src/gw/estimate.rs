use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::tree::{sample_gw_tree, sample_uniform_labeled_tree};
use super::z_quantile;
use crate::error::{Error, Result};
use crate::rng::{derive_seed, rng_from_seed};
use crate::structure::tree_diameter;

/// A Bernoulli frequency with its 99% normal-approximation half-width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityEstimate {
    pub estimate: f64,
    pub ci_halfwidth: f64,
    pub successes: u64,
    pub trials: u64,
}

impl ProbabilityEstimate {
    pub(crate) fn from_counts(successes: u64, trials: u64) -> Self {
        let p = successes as f64 / trials as f64;
        ProbabilityEstimate {
            estimate: p,
            ci_halfwidth: z_quantile(0.995) * (p * (1.0 - p) / trials as f64).sqrt(),
            successes,
            trials,
        }
    }

    pub(crate) fn exact(value: f64, trials: u64) -> Self {
        ProbabilityEstimate {
            estimate: value,
            ci_halfwidth: 0.0,
            successes: (value * trials as f64).round() as u64,
            trials,
        }
    }
}

/// Monte Carlo estimate of `p_{t, ell}`, the fraction of labeled trees on `t`
/// vertices with a path of length at least `ell`. Trial `i` uses the seed
/// `derive_seed(seed, i)`.
pub fn estimate_p_t_ell(
    t: usize,
    ell: usize,
    trials: u64,
    seed: u64,
) -> Result<ProbabilityEstimate> {
    if t == 0 || ell > t {
        return Err(Error::Domain(format!(
            "need 0 <= ell <= t and t >= 1, got t = {t}, ell = {ell}"
        )));
    }
    if trials == 0 {
        return Err(Error::Domain("at least one trial is required".into()));
    }
    // Every tree has a path of length 0 and none has one of length t.
    if ell == 0 {
        return Ok(ProbabilityEstimate::exact(1.0, trials));
    }
    if ell == t {
        return Ok(ProbabilityEstimate::exact(0.0, trials));
    }
    let successes = (0..trials)
        .into_par_iter()
        .map(|i| -> Result<u64> {
            let mut rng = rng_from_seed(derive_seed(seed, i));
            let tree = sample_uniform_labeled_tree(t, false, &mut rng)?;
            Ok(u64::from(tree_diameter(&tree.adjacency()) >= ell))
        })
        .collect::<Result<Vec<u64>>>()?
        .into_iter()
        .sum();
    Ok(ProbabilityEstimate::from_counts(successes, trials))
}

/// Sample moments of `T_ell`: the size of a Poisson(`mu`) Galton-Watson tree
/// when it contains a path of length at least `ceil(ell / 3)`, else 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TEllStatistic {
    pub mu: f64,
    pub ell: usize,
    pub threshold: usize,
    pub trials: u64,
    /// Samples that hit the size cap; they are excluded from the moments.
    pub rejected: u64,
    pub mean: f64,
    pub variance: f64,
    pub std_error: f64,
    /// Two-sided 99% half-width.
    pub ci_halfwidth: f64,
    /// One-sided 99% upper confidence bound on the mean.
    pub upper_99: f64,
}

pub fn t_ell_statistic(mu: f64, ell: usize, trials: u64, seed: u64) -> Result<TEllStatistic> {
    if !(mu > 0.0 && mu < 1.0) {
        return Err(Error::Domain(format!("mu = {mu} must lie in (0, 1)")));
    }
    if ell < 3 {
        return Err(Error::Domain(format!("ell = {ell} must be at least 3")));
    }
    if trials == 0 {
        return Err(Error::Domain("at least one trial is required".into()));
    }
    let threshold = ell.div_ceil(3);
    let samples: Vec<Option<u64>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_from_seed(derive_seed(seed, i));
            match sample_gw_tree(mu, &mut rng) {
                Ok(tree) => {
                    let t = tree.t();
                    let long = t > threshold
                        && (tree.height() >= threshold
                            || tree_diameter(&tree.adjacency()) >= threshold);
                    Some(if long { t as u64 } else { 0 })
                }
                Err(_) => None,
            }
        })
        .collect();

    let rejected = samples.iter().filter(|s| s.is_none()).count() as u64;
    let accepted = trials - rejected;
    let (sum, sum_sq) = samples.iter().flatten().fold((0u128, 0u128), |(s, q), &x| {
        (s + x as u128, q + (x as u128) * (x as u128))
    });
    let (mean, variance) = if accepted == 0 {
        (0.0, 0.0)
    } else {
        let m = accepted as f64;
        let mean = sum as f64 / m;
        let variance = if accepted > 1 {
            ((sum_sq as f64) - m * mean * mean).max(0.0) / (m - 1.0)
        } else {
            0.0
        };
        (mean, variance)
    };
    let std_error = if accepted == 0 {
        0.0
    } else {
        (variance / accepted as f64).sqrt()
    };
    Ok(TEllStatistic {
        mu,
        ell,
        threshold,
        trials,
        rejected,
        mean,
        variance,
        std_error,
        ci_halfwidth: z_quantile(0.995) * std_error,
        upper_99: mean + z_quantile(0.99) * std_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_trees_are_exact() {
        assert_eq!(estimate_p_t_ell(2, 1, 50, 1).unwrap().estimate, 1.0);
        assert_eq!(estimate_p_t_ell(3, 2, 50, 1).unwrap().estimate, 1.0);
        assert_eq!(estimate_p_t_ell(9, 0, 5, 1).unwrap().estimate, 1.0);
        assert_eq!(estimate_p_t_ell(9, 9, 5, 1).unwrap().estimate, 0.0);
        assert!(estimate_p_t_ell(3, 4, 5, 1).is_err());
    }

    #[test]
    fn four_vertex_paths() {
        let e = estimate_p_t_ell(4, 3, 20_000, 5).unwrap();
        assert!((e.estimate - 0.75).abs() < 0.02);
        assert!(e.ci_halfwidth > 0.0);
    }

    #[test]
    fn t_ell_closed_form_at_small_threshold() {
        let s = t_ell_statistic(0.5, 3, 40_000, 2).unwrap();
        let want = 2.0 - (-0.5f64).exp();
        assert!(
            (s.mean - want).abs() < 4.0 * s.std_error + 1e-9,
            "{} vs {want}",
            s.mean
        );
        assert_eq!(s.rejected, 0);
    }

    #[test]
    fn huge_threshold_gives_zero() {
        let s = t_ell_statistic(0.3, 3000, 2000, 2).unwrap();
        assert_eq!((s.mean, s.variance), (0.0, 0.0));
    }

    #[test]
    fn deterministic_under_seed() {
        let a = t_ell_statistic(0.8, 9, 3000, 11).unwrap();
        let b = t_ell_statistic(0.8, 9, 3000, 11).unwrap();
        assert_eq!(a, b);
    }
}
