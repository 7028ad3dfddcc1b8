use std::path::Path;

use lazypath_core::experiments::ExperimentConfig;

use crate::args::ExperimentArgs;
use crate::error::{CliError, CliResult};

/// Reads a flat JSON object of [`ExperimentConfig`] keys. Unknown keys are
/// rejected and optional keys take their defaults.
pub fn load_config(path: &Path) -> CliResult<ExperimentConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let config: ExperimentConfig = serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    config.validate()?;
    Ok(config)
}

/// The config file (if any) with flag values layered on top.
pub fn resolve(args: &ExperimentArgs) -> CliResult<ExperimentConfig> {
    let mut config = match &args.config {
        Some(path) => load_config(path)?,
        None => {
            let n = args.n.ok_or_else(|| {
                CliError::Config("missing required flag --n (or --config)".into())
            })?;
            let eps = args.eps.ok_or_else(|| {
                CliError::Config("missing required flag --eps (or --config)".into())
            })?;
            ExperimentConfig::new(n, eps)
        }
    };
    if let Some(n) = args.n {
        config.n = n;
    }
    if let Some(eps) = args.eps {
        config.epsilon = eps;
    }
    if let Some(q) = args.q {
        config.q = q;
    }
    if let Some(c) = args.c {
        config.c = c;
    }
    if let Some(trials) = args.trials {
        config.trials = trials;
    }
    if let Some(seed) = args.seed {
        config.master_seed = seed;
    }
    if let Some(cap) = args.spanning_tree_cap {
        config.spanning_tree_cap = cap;
    }
    config.validate()?;
    for note in config.warnings() {
        eprintln!("warning: {note}");
    }
    Ok(config)
}
