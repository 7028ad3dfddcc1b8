use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gw::{map_union_bound, sample_uniform_labeled_tree, MapUnionBound, ProbabilityEstimate};
use crate::rng::{derive_seed, rng_from_seed};
use crate::structure::{forest_max_path_count, Forest};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreePathsEstimate {
    pub t: usize,
    pub a: usize,
    pub b: usize,
    pub estimate: ProbabilityEstimate,
    /// Random-map union bound for comparison; absent when `(a+1) b > t`.
    pub bound: Option<MapUnionBound>,
}

/// Probability that a uniform labeled tree on `t` vertices has `b`
/// vertex-disjoint paths of length at least `a`. Trial `i` uses seed
/// `derive_seed(seed, i)` whatever `a` and `b` are, so estimates on a grid
/// share their trees.
pub fn tree_paths_probability(
    t: usize,
    a: usize,
    b: usize,
    trials: u64,
    seed: u64,
) -> Result<TreePathsEstimate> {
    if t == 0 || a == 0 || b == 0 {
        return Err(Error::Domain("t, a and b must be at least 1".into()));
    }
    if trials == 0 {
        return Err(Error::Domain("at least one trial is required".into()));
    }
    // b disjoint paths of a edges need (a+1) b vertices.
    if (a + 1).saturating_mul(b) > t {
        return Ok(TreePathsEstimate {
            t,
            a,
            b,
            estimate: ProbabilityEstimate::exact(0.0, trials),
            bound: None,
        });
    }
    let hits: u64 = (0..trials)
        .into_par_iter()
        .map(|i| -> Result<u64> {
            let mut rng = rng_from_seed(derive_seed(seed, i));
            let tree = sample_uniform_labeled_tree(t, false, &mut rng)?;
            let forest = Forest::from_edges(t, tree.edges())?;
            Ok(u64::from(
                forest_max_path_count(&forest, a)?.path_count() >= b,
            ))
        })
        .collect::<Result<Vec<u64>>>()?
        .into_iter()
        .sum();
    Ok(TreePathsEstimate {
        t,
        a,
        b,
        estimate: ProbabilityEstimate::from_counts(hits, trials),
        bound: Some(map_union_bound(t as u64, a as u64, b as u64)?),
    })
}
