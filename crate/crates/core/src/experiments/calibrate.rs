use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{Beta, ContinuousCDF};

use crate::error::{Error, Result};
use crate::gw::{exact_long_path_sums, sample_uniform_labeled_tree, CalibrationConfig};
use crate::rng::{derive_seed, rng_from_seed};
use crate::structure::tree_diameter;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "method")]
pub enum CalibrationMethod {
    /// Exact counts of labeled trees by diameter.
    Exact,
    /// Uniform `t` in `[ell, t0]`, one uniform labeled tree per trial.
    MonteCarlo { trials: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationEntry {
    #[serde(rename = "C")]
    pub c: f64,
    pub ell: usize,
    pub t0: usize,
    /// Estimate of `sum_{ell <= t <= t0} p_{t, ell}`.
    pub sum: f64,
    /// 99% one-sided upper bound (exact: `sum` plus rounding allowance).
    pub upper: f64,
    pub passes: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationReport {
    pub epsilon: f64,
    /// `ε³`.
    pub target: f64,
    pub method: CalibrationMethod,
    pub entries: Vec<CalibrationEntry>,
    /// Smallest passing grid value; `None` reports a calibration failure.
    #[serde(rename = "chosen_C")]
    pub chosen: Option<f64>,
    /// Whether the estimated sums are non-increasing along the grid.
    pub monotone: bool,
}

/// Smallest `C` on `grid` with `sum_{ell <= t <= t0} p_{t, ell} <= ε³` at
/// 99% confidence, where `ell` and `t0` come from [`CalibrationConfig`].
pub fn calibrate_constant(
    epsilon: f64,
    grid: &[f64],
    method: CalibrationMethod,
    seed: u64,
) -> Result<CalibrationReport> {
    if grid.is_empty() {
        return Err(Error::Domain("the C grid is empty".into()));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain(
            "the C grid must be strictly increasing".into(),
        ));
    }
    let configs: Vec<CalibrationConfig> = grid
        .iter()
        .map(|&c| CalibrationConfig::new(c, epsilon))
        .collect::<Result<_>>()?;
    let target = epsilon.powi(3);

    let entries: Vec<CalibrationEntry> = match method {
        CalibrationMethod::Exact => {
            let t0 = configs[0].t0;
            let ells: Vec<usize> = configs.iter().map(|c| c.ell).collect();
            exact_long_path_sums(&ells, t0)?
                .into_iter()
                .zip(&configs)
                .map(|(s, cfg)| CalibrationEntry {
                    c: cfg.c,
                    ell: cfg.ell,
                    t0,
                    sum: s.sum,
                    upper: s.upper(),
                    passes: s.upper() <= target,
                })
                .collect()
        }
        CalibrationMethod::MonteCarlo { trials } => {
            if trials == 0 {
                return Err(Error::Domain("at least one trial is required".into()));
            }
            configs
                .iter()
                .enumerate()
                .map(|(k, cfg)| monte_carlo_entry(cfg, trials, derive_seed(seed, k as u64), target))
                .collect::<Result<_>>()?
        }
    };

    let monotone = entries.windows(2).all(|w| w[1].sum <= w[0].sum);
    let chosen = entries.iter().find(|e| e.passes).map(|e| e.c);
    Ok(CalibrationReport {
        epsilon,
        target,
        method,
        entries,
        chosen,
        monotone,
    })
}

fn monte_carlo_entry(
    cfg: &CalibrationConfig,
    trials: u64,
    seed: u64,
    target: f64,
) -> Result<CalibrationEntry> {
    let (ell, t0) = (cfg.ell, cfg.t0);
    if ell > t0 {
        return Ok(CalibrationEntry {
            c: cfg.c,
            ell,
            t0,
            sum: 0.0,
            upper: 0.0,
            passes: true,
        });
    }
    let range = (t0 - ell + 1) as f64;
    let hits: u64 = (0..trials)
        .into_par_iter()
        .map(|i| -> Result<u64> {
            let mut rng = rng_from_seed(derive_seed(seed, i));
            let t = rng.random_range(ell..=t0);
            let tree = sample_uniform_labeled_tree(t, false, &mut rng)?;
            Ok(u64::from(tree_diameter(&tree.adjacency()) >= ell))
        })
        .collect::<Result<Vec<u64>>>()?
        .into_iter()
        .sum();
    // Clopper-Pearson one-sided upper limit on the mean of p_{t, ell}.
    let upper_fraction = if hits == trials {
        1.0
    } else {
        Beta::new(hits as f64 + 1.0, (trials - hits) as f64)
            .map_err(|e| Error::Domain(e.to_string()))?
            .inverse_cdf(0.99)
    };
    let upper = range * upper_fraction;
    Ok(CalibrationEntry {
        c: cfg.c,
        ell,
        t0,
        sum: range * hits as f64 / trials as f64,
        upper,
        passes: upper <= target,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_validation() {
        assert!(calibrate_constant(0.1, &[], CalibrationMethod::Exact, 0).is_err());
        assert!(calibrate_constant(0.1, &[2.0, 1.0], CalibrationMethod::Exact, 0).is_err());
    }

    #[test]
    fn empty_sums_pass_at_the_smallest_c() {
        // At eps = 0.5, t0 = 42 while C = 20 gives ell = 28 and C = 40 gives 56.
        let r = calibrate_constant(0.5, &[40.0, 80.0], CalibrationMethod::Exact, 0).unwrap();
        assert_eq!(r.entries[0].sum, 0.0);
        assert_eq!(r.chosen, Some(40.0));
    }

    #[test]
    fn exact_calibration_at_eps_tenth() {
        let r = calibrate_constant(
            0.1,
            &[1.0, 2.0, 4.0, 8.0, 16.0],
            CalibrationMethod::Exact,
            0,
        )
        .unwrap();
        assert_eq!(r.chosen, Some(16.0));
        assert!(r.monotone);
        let sums: Vec<f64> = r.entries.iter().map(|e| e.sum).collect();
        assert!((sums[3] - 400.0).abs() < 5.0, "{sums:?}");
        assert!(sums[4] > 1e-4 && sums[4] < 1e-3, "{sums:?}");
    }

    #[test]
    fn monte_carlo_agrees_with_exact_on_a_mid_grid_value() {
        let exact = calibrate_constant(0.3, &[2.0], CalibrationMethod::Exact, 0).unwrap();
        let mc = calibrate_constant(
            0.3,
            &[2.0],
            CalibrationMethod::MonteCarlo { trials: 4000 },
            3,
        )
        .unwrap();
        let (e, m) = (&exact.entries[0], &mc.entries[0]);
        let range = (e.t0 - e.ell + 1) as f64;
        let sd = range * (0.25 / 4000.0f64).sqrt();
        assert!(
            (e.sum - m.sum).abs() < 4.0 * sd,
            "exact {} vs mc {}",
            e.sum,
            m.sum
        );
    }
}
