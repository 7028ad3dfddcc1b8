//! Random-tree toolkit: subcritical Poisson Galton-Watson trees, the Borel
//! size law, uniform labeled trees, and the exact and Monte Carlo estimates of
//! long-path probabilities built on them.

mod borel;
mod calibration;
mod diameter;
mod dual;
mod estimate;
mod maps;
mod tree;

pub use borel::{borel_log_pmf, borel_pmf};
pub use calibration::CalibrationConfig;
pub use diameter::{diameter_at_most_fractions, exact_long_path_sums, ExactPathSum};
pub use dual::{solve_dual_mu, DualParameter, DEFAULT_EPSILON_THRESHOLD};
pub use estimate::{estimate_p_t_ell, t_ell_statistic, ProbabilityEstimate, TEllStatistic};
pub use maps::{map_union_bound, MapUnionBound};
pub use tree::{
    joyal_tree_from_map, prufer_decode, sample_gw_tree, sample_poisson,
    sample_uniform_labeled_tree, tree_metrics, RootedTree, TreeStatRecord, GW_SIZE_CAP,
};

use statrs::distribution::{ContinuousCDF, Normal};

/// Standard normal quantile.
pub(crate) fn z_quantile(p: f64) -> f64 {
    Normal::standard().inverse_cdf(p)
}

/// `ln t! - (t ln t - t + ln(2 pi t) / 2)`, the Stirling remainder, for `t >= 1`.
pub(crate) fn stirling_remainder(t: f64) -> f64 {
    if t < 20.0 {
        return statrs::function::gamma::ln_gamma(t + 1.0)
            - (t * t.ln() - t + 0.5 * (2.0 * std::f64::consts::PI * t).ln());
    }
    let r = 1.0 / t;
    let r2 = r * r;
    r * (1.0 / 12.0 - r2 * (1.0 / 360.0 - r2 * (1.0 / 1260.0 - r2 * (1.0 / 1680.0 - r2 / 1188.0))))
}
