use std::io::BufReader;

use lazypath_core::experiments::{
    audit_transcript, calibrate_constant, coverage_verify_graph, coverage_verify_trials,
    dfs_scaling_study, reduction_run, tree_paths_probability, AdaptiveAlgorithm, CalibrationMethod,
    CoverageReport, DfsAlgorithm, NeverSucceeds, ReductionTranscript,
};
use lazypath_core::gw::{
    map_union_bound, sample_gw_tree, sample_uniform_labeled_tree, solve_dual_mu, tree_metrics,
};
use lazypath_core::pathfind::dfs_long_path;
use lazypath_core::rng::{derive_seed, rng_from_seed};
use lazypath_core::structure::read_edge_list;
use lazypath_core::{LazyOracle, OracleConfig, Vertex};
use serde::Serialize;

use crate::args::*;
use crate::config::resolve;
use crate::error::{CliError, CliResult};
use crate::output::{check, emit};

/// Share of trials that must meet a per-trial threshold under `--check`.
const CHECK_FRACTION: f64 = 0.95;

fn fraction(hits: usize, total: usize) -> f64 {
    if total == 0 {
        0.0
    } else {
        hits as f64 / total as f64
    }
}

#[derive(Serialize)]
struct DfsRow {
    trial: u64,
    seed: u64,
    n: usize,
    p: f64,
    target: usize,
    succeeded: bool,
    path_length: usize,
    queries: u64,
    positives: u64,
}

pub fn dfs_run(args: &DfsRunArgs) -> CliResult<()> {
    let p = (1.0 + args.eps) / args.n as f64;
    let target = args
        .target
        .unwrap_or((args.eps * args.eps * args.n as f64 / 5.0).floor() as usize);
    let order: Vec<Vertex> = (0..args.n).collect();
    let mut rows = Vec::new();
    for trial in 0..args.trials {
        let seed = derive_seed(args.seed, trial);
        let mut oracle = LazyOracle::new(OracleConfig::new(args.n, p, seed)?)?;
        let out = dfs_long_path(&mut oracle, &order, target, args.budget)?;
        rows.push(DfsRow {
            trial,
            seed,
            n: args.n,
            p,
            target,
            succeeded: out.succeeded,
            path_length: out.path_length(),
            queries: out.queries_used,
            positives: out.positives_used,
        });
    }
    let config = serde_json::json!({
        "n": args.n, "eps": args.eps, "target": target,
        "trials": args.trials, "budget": args.budget,
    });
    emit(&args.output, "dfs-run", &config, args.seed, &rows)?;
    let wins = rows.iter().filter(|r| r.succeeded).count();
    check(
        &args.output,
        fraction(wins, rows.len()) >= CHECK_FRACTION,
        || format!("{wins}/{} searches reached length {target}", rows.len()),
    )
}

pub fn coverage_verify(args: &CoverageArgs) -> CliResult<()> {
    let config = resolve(&args.experiment)?;
    let reports: Vec<CoverageReport> = match &args.graph {
        Some(path) => {
            let file = std::fs::File::open(path).map_err(|e| CliError::io(path, e))?;
            let g = read_edge_list(BufReader::new(file), None)?;
            vec![coverage_verify_graph(&g, &config, config.master_seed)?]
        }
        None => coverage_verify_trials(&config)?,
    };
    emit(
        &args.output,
        "coverage-verify",
        &config,
        config.master_seed,
        &reports,
    )?;
    let below = reports.iter().filter(|r| r.below_ceiling()).count();
    check(
        &args.output,
        fraction(below, reports.len()) >= CHECK_FRACTION,
        || format!("{below}/{} surrogates below 13 eps^2 n", reports.len()),
    )
}

#[derive(Serialize)]
struct ReductionRow {
    trial: u64,
    seed: u64,
    n: usize,
    n_prime: usize,
    s: usize,
    ell: usize,
    per_round_budget: u64,
    successes: usize,
    i_size: usize,
    coverage_in_h: usize,
    ceiling: f64,
    final_alive: usize,
    h_edges: usize,
    queried_pairs: usize,
    audit_passed: bool,
}

pub fn reduction_sim(args: &ReductionArgs) -> CliResult<()> {
    let config = resolve(&args.experiment)?;
    let alg: &dyn AdaptiveAlgorithm = match args.alg {
        AlgorithmChoice::Dfs => &DfsAlgorithm,
        AlgorithmChoice::Never => &NeverSucceeds,
    };
    let mut rows = Vec::new();
    for trial in 0..config.trials {
        let seed = config.trial_seed(trial);
        let t: ReductionTranscript = reduction_run(&config.with_seed(seed), alg, args.budget)?;
        let audit_passed = match audit_transcript(&t) {
            Ok(()) => true,
            Err(e) => {
                eprintln!("trial {trial}: {e}");
                false
            }
        };
        if trial == 0 {
            if let Some(path) = &args.transcript {
                let file = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
                serde_json::to_writer(file, &t)?;
            }
        }
        rows.push(ReductionRow {
            trial,
            seed,
            n: t.params.n,
            n_prime: t.params.n_prime,
            s: t.params.s,
            ell: t.params.ell,
            per_round_budget: t.params.per_round_budget,
            successes: t.successes(),
            i_size: t.i_size,
            coverage_in_h: t.coverage_in_h,
            ceiling: t.params.ceiling,
            final_alive: t.final_alive,
            h_edges: t.h.positive_edges.len(),
            queried_pairs: t.h.queried_pairs.len(),
            audit_passed,
        });
    }
    emit(
        &args.output,
        "reduction-sim",
        &config,
        config.master_seed,
        &rows,
    )?;
    let audited = rows.iter().all(|r| r.audit_passed);
    let below = rows
        .iter()
        .filter(|r| (r.coverage_in_h as f64) < r.ceiling)
        .count();
    check(
        &args.output,
        audited && fraction(below, rows.len()) >= CHECK_FRACTION,
        || {
            format!(
                "audits passed: {audited}; {below}/{} coverages below the ceiling",
                rows.len()
            )
        },
    )
}

#[derive(Serialize)]
struct TreeRow {
    trial: u64,
    t: usize,
    height: usize,
    diameter: usize,
}

pub fn gw_sample(args: &GwSampleArgs) -> CliResult<()> {
    let mu = match (args.mu, args.eps, args.size) {
        (Some(mu), None, None) => Some(mu),
        (None, Some(eps), None) => Some(solve_dual_mu(eps)?.mu),
        (None, None, Some(_)) => None,
        _ => {
            return Err(CliError::Config(
                "pass exactly one of --mu, --eps or --size".into(),
            ))
        }
    };
    let mut rows = Vec::new();
    let mut rejected = 0u64;
    for trial in 0..args.trials {
        let mut rng = rng_from_seed(derive_seed(args.seed, trial));
        let tree = match (mu, args.size) {
            (Some(mu), _) => match sample_gw_tree(mu, &mut rng) {
                Ok(tree) => tree,
                Err(lazypath_core::Error::CapExceeded { .. }) => {
                    rejected += 1;
                    continue;
                }
                Err(e) => return Err(e.into()),
            },
            (None, Some(t)) => sample_uniform_labeled_tree(t, true, &mut rng)?,
            (None, None) => unreachable!("validated above"),
        };
        let m = tree_metrics(&tree, 0);
        rows.push(TreeRow {
            trial,
            t: m.t,
            height: m.height,
            diameter: m.diameter,
        });
    }
    if rejected > 0 {
        eprintln!("{rejected} samples exceeded the size cap and were dropped");
    }
    let config = serde_json::json!({
        "mu": mu, "eps": args.eps, "size": args.size, "trials": args.trials,
    });
    emit(&args.output, "gw-sample", &config, args.seed, &rows)
}

#[derive(Serialize)]
struct CalibrationRow {
    #[serde(rename = "C")]
    c: f64,
    epsilon: f64,
    ell: usize,
    t0: usize,
    sum: f64,
    upper: f64,
    target: f64,
    passes: bool,
}

pub fn calibrate_c(args: &CalibrateArgs) -> CliResult<()> {
    let method = match args.method {
        MethodChoice::Exact => CalibrationMethod::Exact,
        MethodChoice::MonteCarlo => CalibrationMethod::MonteCarlo {
            trials: args.trials,
        },
    };
    let report = calibrate_constant(args.eps, &args.grid, method, args.seed)?;
    let rows: Vec<CalibrationRow> = report
        .entries
        .iter()
        .map(|e| CalibrationRow {
            c: e.c,
            epsilon: report.epsilon,
            ell: e.ell,
            t0: e.t0,
            sum: e.sum,
            upper: e.upper,
            target: report.target,
            passes: e.passes,
        })
        .collect();
    let config = serde_json::json!({
        "eps": args.eps, "grid": args.grid, "method": method,
    });
    emit(&args.output, "calibrate-c", &config, args.seed, &rows)?;
    match report.chosen {
        Some(c) => eprintln!("chosen C = {c}"),
        None => eprintln!("calibration failure: no grid value passes"),
    }
    if !report.monotone {
        eprintln!("warning: estimated sums are not monotone along the grid");
    }
    check(&args.output, report.chosen.is_some(), || {
        format!("calibration at eps = {}", args.eps)
    })
}

pub fn map_bound(args: &MapBoundArgs) -> CliResult<()> {
    let m = map_union_bound(args.t, args.a, args.b)?;
    println!("exact_term={}", m.exact_term);
    println!("exponential_bound={}", m.exponential_bound);
    println!("ln_exact_factorial={}", m.ln_exact_factorial);
    println!("ln_exact_product={}", m.ln_exact_product);
    Ok(())
}

pub fn tree_paths(args: &TreePathsArgs) -> CliResult<()> {
    let e = tree_paths_probability(args.t, args.a, args.b, args.trials, args.seed)?;
    println!("estimate={}", e.estimate.estimate);
    println!("ci_halfwidth={}", e.estimate.ci_halfwidth);
    println!("successes={}", e.estimate.successes);
    println!("trials={}", e.estimate.trials);
    if let Some(b) = e.bound {
        println!("exact_term={}", b.exact_term);
        println!("exponential_bound={}", b.exponential_bound);
    }
    Ok(())
}

pub fn scaling_study(args: &ScalingArgs) -> CliResult<()> {
    let rows = dfs_scaling_study(args.n, &args.eps_list, args.trials, args.seed, args.budget)?;
    let config = serde_json::json!({
        "n": args.n, "eps_list": args.eps_list, "trials": args.trials, "budget": args.budget,
    });
    emit(&args.output, "scaling-study", &config, args.seed, &rows)?;
    let ratios: Vec<f64> = rows.iter().filter(|r| r.ell > 0).map(|r| r.ratio).collect();
    let spread = ratios.iter().copied().fold(0.0, f64::max)
        / ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let reliable = rows.iter().all(|r| r.success_rate >= CHECK_FRACTION);
    check(
        &args.output,
        reliable && (ratios.is_empty() || spread <= 3.0),
        || format!("success rates >= {CHECK_FRACTION}: {reliable}; ratio spread {spread:.3}"),
    )
}
