//! Seeded, reproducible experiments built from the lower-level modules.
//!
//! Every experiment is a pure function of its configuration and master seed.
//! Trials run in parallel, each with its own seed from
//! [`derive_seed`](crate::rng::derive_seed), and results are collected in trial
//! order.

mod bounds;
mod calibrate;
mod config;
mod coverage;
mod gnp;
mod reduction;
mod scaling;
mod tree_paths;

pub use bounds::{chernoff_upper_tail, martingale_tolerance, MartingaleTolerance};
pub use calibrate::{calibrate_constant, CalibrationEntry, CalibrationMethod, CalibrationReport};
pub use config::ExperimentConfig;
pub use coverage::{
    coverage_verify, coverage_verify_graph, coverage_verify_trials, CoverageReport,
};
pub use gnp::{gnp_edges, gnp_graph};
pub use reduction::{
    audit_transcript, default_round_budget, reduction_run, AdaptiveAlgorithm, DfsAlgorithm,
    NeverSucceeds, ReductionParameters, ReductionTranscript, RoundOracle, RoundRecord,
};
pub use scaling::{dfs_scaling_study, ScalingRow};
pub use tree_paths::{tree_paths_probability, TreePathsEstimate};
