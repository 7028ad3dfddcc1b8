use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{LazyOracle, OracleConfig, Vertex};
use crate::pathfind::dfs_long_path;
use crate::rng::derive_seed;

/// One `ε` cell of the DFS query-count study.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingRow {
    pub n: usize,
    pub epsilon: f64,
    pub p: f64,
    /// `floor(ε² n / 5)`.
    pub ell: usize,
    pub trials: u64,
    pub successes: u64,
    pub success_rate: f64,
    pub mean_queries: f64,
    /// `ell / (p ε)`.
    pub law: f64,
    /// `mean_queries / law` (0 when `ell = 0`).
    pub ratio: f64,
}

/// Runs the depth-first search on `G(n, (1+ε)/n)` for every `ε` and trial.
/// Trial `j` of cell `k` uses oracle seed `derive_seed(derive_seed(seed, k), j)`.
pub fn dfs_scaling_study(
    n: usize,
    eps_list: &[f64],
    trials: u64,
    seed: u64,
    query_budget: Option<u64>,
) -> Result<Vec<ScalingRow>> {
    if trials == 0 {
        return Err(Error::config("trials", "at least one trial is required"));
    }
    let order: Vec<Vertex> = (0..n).collect();
    eps_list
        .iter()
        .enumerate()
        .map(|(k, &eps)| {
            if !(eps > 0.0 && eps < 1.0) {
                return Err(Error::config(
                    "epsilon",
                    format!("epsilon = {eps} must lie in (0, 1)"),
                ));
            }
            let p = (1.0 + eps) / n as f64;
            let ell = (eps * eps * n as f64 / 5.0).floor() as usize;
            let cell_seed = derive_seed(seed, k as u64);
            let outcomes: Vec<(bool, u64)> = (0..trials)
                .into_par_iter()
                .map(|j| -> Result<(bool, u64)> {
                    let mut oracle =
                        LazyOracle::new(OracleConfig::new(n, p, derive_seed(cell_seed, j))?)?;
                    let out = dfs_long_path(&mut oracle, &order, ell, query_budget)?;
                    Ok((out.succeeded, out.queries_used))
                })
                .collect::<Result<_>>()?;
            let successes = outcomes.iter().filter(|o| o.0).count() as u64;
            let mean_queries = outcomes.iter().map(|o| o.1 as f64).sum::<f64>() / trials as f64;
            let law = ell as f64 / (p * eps);
            Ok(ScalingRow {
                n,
                epsilon: eps,
                p,
                ell,
                trials,
                successes,
                success_rate: successes as f64 / trials as f64,
                mean_queries,
                law,
                ratio: if ell == 0 { 0.0 } else { mean_queries / law },
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_target_row() {
        let rows = dfs_scaling_study(100, &[0.1], 3, 1, None).unwrap();
        assert_eq!(rows[0].ell, 0);
        assert_eq!(rows[0].mean_queries, 0.0);
        assert_eq!(rows[0].success_rate, 1.0);
    }

    #[test]
    fn small_study_is_reproducible() {
        let a = dfs_scaling_study(2000, &[0.2, 0.3], 4, 9, None).unwrap();
        assert_eq!(a, dfs_scaling_study(2000, &[0.2, 0.3], 4, 9, None).unwrap());
        assert_eq!(a[0].ell, 16);
        assert!(a.iter().all(|r| r.successes > 0));
    }
}
