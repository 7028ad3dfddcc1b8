//! Exact structural analysis of fully revealed graphs.

mod brute;
mod components;
mod cover;
mod edgelist;
mod graph;
mod longest;
mod split;

pub use brute::{brute_force_path_cover, BRUTE_FORCE_MAX_VERTICES};
pub use components::{connected_components, two_core, ComponentSummary, CoreResult};
pub use cover::{forest_max_path_count, forest_max_path_cover, CoverObjective, PathCoverResult};
pub use edgelist::{read_edge_list, write_edge_list};
pub use graph::{Forest, SimpleGraph};
pub(crate) use longest::tree_diameter;
pub use longest::{longest_path_in_component, LongestPath, DEFAULT_SPANNING_TREE_CAP};
pub use split::{split_min_length, split_path};
