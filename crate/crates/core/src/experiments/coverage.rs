use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use super::gnp::gnp_graph;
use crate::error::{Error, Result};
use crate::structure::{
    connected_components, forest_max_path_cover, longest_path_in_component, two_core, Forest,
    SimpleGraph,
};

/// Long-path coverage of one supercritical random graph, split the way the
/// upper bound is argued: `X` (small components with a long path), the 2-core
/// of the giant component, and `Z` (path packing in the giant component minus
/// its core edges).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub seed: u64,
    pub n: usize,
    pub epsilon: f64,
    pub ell: usize,
    pub x_ell: usize,
    pub c1_size: usize,
    pub second_size: usize,
    pub core_size: usize,
    pub z_ell: usize,
    /// Minimum path length used for `z_ell`: `ceil(ell / 3)`.
    pub z_min_length: usize,
    /// `x_ell + 6 core_size + 6 z_ell`.
    pub surrogate: usize,
    /// `13 ε² n`.
    pub ceiling: f64,
    /// `ceil((20/ε²) ln n)`.
    pub small_component_threshold: usize,
    /// Small components whose longest path was only bounded from below; they
    /// are counted in `x_ell`.
    pub inexact_components: usize,
}

impl CoverageReport {
    pub fn below_ceiling(&self) -> bool {
        (self.surrogate as f64) < self.ceiling
    }
}

/// Draws one `G(n, p)` with the given seed and measures it.
pub fn coverage_verify(config: &ExperimentConfig, seed: u64) -> Result<CoverageReport> {
    config.validate()?;
    let g = gnp_graph(config.n, config.p(), seed)?;
    coverage_verify_graph(&g, config, seed)
}

/// [`coverage_verify`] for every trial of `config`, in trial order.
pub fn coverage_verify_trials(config: &ExperimentConfig) -> Result<Vec<CoverageReport>> {
    config.validate()?;
    (0..config.trials)
        .into_par_iter()
        .map(|i| coverage_verify(config, config.trial_seed(i)))
        .collect()
}

/// Measures a given graph; `config.n` is ignored in favour of `g.n()`.
pub fn coverage_verify_graph(
    g: &SimpleGraph,
    config: &ExperimentConfig,
    seed: u64,
) -> Result<CoverageReport> {
    let n = g.n();
    let eps = config.epsilon;
    let ell = config.calibration()?.ell;
    let small_threshold = ((20.0 / (eps * eps)) * (n.max(2) as f64).ln()).ceil() as usize;
    let z_min_length = ell.div_ceil(3);

    let summary = connected_components(g);
    let c1: &[usize] = summary.largest();

    let mut x_ell = 0;
    let mut inexact_components = 0;
    for comp in summary.components.iter().skip(1) {
        // A path of length ell needs ell + 1 vertices.
        if comp.len() <= ell || comp.len() > small_threshold {
            continue;
        }
        let longest = longest_path_in_component(g, comp, config.spanning_tree_cap)?;
        if !longest.exact {
            inexact_components += 1;
            x_ell += comp.len();
        } else if longest.length >= ell {
            x_ell += comp.len();
        }
    }

    // Giant component with its core edges removed.
    let mut in_c1 = vec![false; n];
    for &v in c1 {
        in_c1[v] = true;
    }
    let c1_graph = g.filter_edges(|u, v| in_c1[u] && in_c1[v]);
    let core = two_core(&c1_graph);
    let mut in_core = vec![false; n];
    for &v in &core.core_vertices {
        in_core[v] = true;
    }
    let pendant = c1_graph.filter_edges(|u, v| !(in_core[u] && in_core[v]));
    if !pendant.is_acyclic() {
        return Err(Error::Contract(
            "giant component minus its core edges is not a forest".into(),
        ));
    }
    let z_ell = forest_max_path_cover(&Forest::new(pendant)?, z_min_length)?.covered_vertices;

    let core_size = core.size();
    Ok(CoverageReport {
        seed,
        n,
        epsilon: eps,
        ell,
        x_ell,
        c1_size: c1.len(),
        second_size: summary.second_largest_size(),
        core_size,
        z_ell,
        z_min_length,
        surrogate: x_ell + 6 * core_size + 6 * z_ell,
        ceiling: 13.0 * eps * eps * n as f64,
        small_component_threshold: small_threshold,
        inexact_components,
    })
}
