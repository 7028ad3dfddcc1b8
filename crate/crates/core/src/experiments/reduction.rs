//! Amplification harness: runs an adaptive long-path algorithm for `s` rounds
//! on shrinking vertex sets of one lazily revealed random graph on `[n']`,
//! and assembles the graph `H` of pairs answered positively at their first
//! query.
//!
//! Every pair's answer is fixed by the pair-keyed oracle, so a pair asked in
//! several rounds is Bernoulli-sampled once; the ledger records the first and
//! latest round in which each pair was asked.

use rand::seq::SliceRandom;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use crate::error::{Error, Result};
use crate::oracle::{
    pair_key, AdjacencyOracle, Edge, LazyOracle, OracleConfig, RevealedGraph, Vertex,
};
use crate::pathfind::{dfs_long_path, Path};
use crate::rng::{derive_seed, rng_from_seed};
use crate::structure::{split_min_length, split_path};

/// An algorithm that looks for a path of `target_length` edges using at most
/// `budget` distinct queries to `oracle`, whose vertex set is `order`.
pub trait AdaptiveAlgorithm: Sync {
    fn name(&self) -> String;

    fn find_path(
        &self,
        order: &[Vertex],
        oracle: &mut dyn AdjacencyOracle,
        target_length: usize,
        budget: u64,
    ) -> Result<Option<Path>>;
}

/// The depth-first search of [`dfs_long_path`], stopped by the budget.
#[derive(Debug, Clone, Copy, Default)]
pub struct DfsAlgorithm;

impl AdaptiveAlgorithm for DfsAlgorithm {
    fn name(&self) -> String {
        "dfs".into()
    }

    fn find_path(
        &self,
        order: &[Vertex],
        oracle: &mut dyn AdjacencyOracle,
        target_length: usize,
        budget: u64,
    ) -> Result<Option<Path>> {
        let out = dfs_long_path(oracle, order, target_length, Some(budget))?;
        Ok(if out.succeeded { out.path } else { None })
    }
}

/// Gives up immediately.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeverSucceeds;

impl AdaptiveAlgorithm for NeverSucceeds {
    fn name(&self) -> String {
        "never".into()
    }

    fn find_path(
        &self,
        _: &[Vertex],
        _: &mut dyn AdjacencyOracle,
        _: usize,
        _: u64,
    ) -> Result<Option<Path>> {
        Ok(None)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReductionParameters {
    pub n: usize,
    /// `ceil((1 + 720 ε²/q) n)`.
    pub n_prime: usize,
    /// `floor(720 ε² n / (q (ell + 1)))`; the floor keeps `n' - s (ell+1) >= n`.
    pub s: usize,
    /// `ceil((3C/ε) ln(1/ε))`.
    pub ell: usize,
    /// `ε / (3C ln(1/ε))`.
    pub alpha: f64,
    pub split_min_length: usize,
    /// `(1+ε)/n`, used on every round's vertex set.
    pub p: f64,
    pub per_round_budget: u64,
    /// `13 (2ε)² n'`.
    pub ceiling: f64,
}

/// `floor(q ell / (8640 C p ε ln(1/ε)))`.
pub fn default_round_budget(config: &ExperimentConfig, ell: usize) -> u64 {
    let eps = config.epsilon;
    let denom = 8640.0 * config.c * config.p() * eps * (1.0 / eps).ln();
    (config.q * ell as f64 / denom).floor() as u64
}

impl ReductionParameters {
    pub fn new(config: &ExperimentConfig, per_round_budget: Option<u64>) -> Result<Self> {
        config.validate()?;
        let (eps, q, c, n) = (config.epsilon, config.q, config.c, config.n);
        let log = (1.0 / eps).ln();
        let ell = ((3.0 * c / eps) * log).ceil() as usize;
        let alpha = eps / (3.0 * c * log);
        let inflation = 720.0 * eps * eps / q;
        let n_prime = ((1.0 + inflation) * n as f64).ceil() as usize;
        let s = (inflation * n as f64 / (ell + 1) as f64).floor() as usize;
        if n_prime > u32::MAX as usize {
            return Err(Error::config(
                "n",
                format!("n' = {n_prime} does not fit in 32 bits"),
            ));
        }
        Ok(ReductionParameters {
            n,
            n_prime,
            s,
            ell,
            alpha,
            split_min_length: split_min_length(alpha),
            p: config.p(),
            per_round_budget: per_round_budget.unwrap_or_else(|| default_round_budget(config, ell)),
            ceiling: 13.0 * (2.0 * eps) * (2.0 * eps) * n_prime as f64,
        })
    }
}

#[derive(Debug, Clone, Copy)]
struct PairStamp {
    first_round: u32,
    last_round: u32,
    present: bool,
}

/// The view one round's algorithm gets: only live vertices, a hard query
/// budget, and per-round accounting of distinct pairs.
pub struct RoundOracle<'a> {
    global: &'a mut LazyOracle,
    ledger: &'a mut FxHashMap<u64, PairStamp>,
    alive: &'a [bool],
    alive_count: usize,
    round: u32,
    budget: u64,
    queries: u64,
    positives: u64,
}

impl RoundOracle<'_> {
    fn violation(&self, reason: String) -> Error {
        Error::ProtocolViolation {
            round: self.round as usize,
            reason,
        }
    }

    /// Answer for a pair already asked in this round.
    fn asked_this_round(&self, u: Vertex, v: Vertex) -> Option<bool> {
        self.ledger
            .get(&pair_key(u, v))
            .filter(|s| s.last_round == self.round)
            .map(|s| s.present)
    }
}

impl AdjacencyOracle for RoundOracle<'_> {
    fn vertex_count(&self) -> usize {
        self.alive_count
    }

    fn contains(&self, v: Vertex) -> bool {
        self.alive.get(v).copied().unwrap_or(false)
    }

    fn query(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        if !self.contains(u) || !self.contains(v) {
            return Err(self.violation(format!("query {{{u}, {v}}} touches a removed vertex")));
        }
        if let Some(answer) = self.asked_this_round(u, v) {
            return Ok(answer);
        }
        if self.queries >= self.budget {
            return Err(self.violation(format!("query budget of {} exhausted", self.budget)));
        }
        let present = self.global.query(u, v)?;
        let round = self.round;
        self.ledger
            .entry(pair_key(u, v))
            .and_modify(|s| s.last_round = round)
            .or_insert(PairStamp {
                first_round: round,
                last_round: round,
                present,
            });
        self.queries += 1;
        if present {
            self.positives += 1;
        }
        Ok(present)
    }

    fn queries(&self) -> u64 {
        self.queries
    }

    fn positives(&self) -> u64 {
        self.positives
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundRecord {
    /// 1-based.
    pub round: usize,
    pub permutation_seed: u64,
    pub alive_before: usize,
    /// Distinct pairs asked this round, `|L_i|`.
    pub queries: u64,
    /// Positive answers among them, `|K_i|`.
    pub positives: u64,
    pub success: bool,
    /// The returned path trimmed to exactly `ell` edges.
    pub path: Option<Vec<Vertex>>,
    /// Path edges first revealed in an earlier round.
    pub bad_edges: usize,
    pub in_i: bool,
    /// Vertices covered by the split pieces (0 unless `in_i`).
    pub covered: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionTranscript {
    pub algorithm: String,
    pub master_seed: u64,
    pub params: ReductionParameters,
    pub rounds: Vec<RoundRecord>,
    /// `H` and every pair asked in any round.
    pub h: RevealedGraph,
    /// Bernoulli draws made by the global oracle.
    pub global_samples: u64,
    pub i_size: usize,
    pub coverage_in_h: usize,
    pub final_alive: usize,
}

impl ReductionTranscript {
    pub fn successes(&self) -> usize {
        self.rounds.iter().filter(|r| r.success).count()
    }

    pub fn below_ceiling(&self) -> bool {
        (self.coverage_in_h as f64) < self.params.ceiling
    }
}

pub fn reduction_run(
    config: &ExperimentConfig,
    alg: &dyn AdaptiveAlgorithm,
    per_round_budget: Option<u64>,
) -> Result<ReductionTranscript> {
    let params = ReductionParameters::new(config, per_round_budget)?;
    let master = config.master_seed;
    let mut global = LazyOracle::new(OracleConfig::new(
        params.n_prime,
        params.p,
        derive_seed(master, u64::MAX),
    )?)?;
    let mut ledger: FxHashMap<u64, PairStamp> = FxHashMap::default();
    let mut alive = vec![true; params.n_prime];
    let mut alive_count = params.n_prime;
    let mut rounds = Vec::with_capacity(params.s);
    let mut coverage_in_h = 0;
    let mut i_size = 0;

    for round in 1..=params.s {
        let permutation_seed = derive_seed(master, round as u64);
        let mut order: Vec<Vertex> = (0..params.n_prime).filter(|&v| alive[v]).collect();
        order.shuffle(&mut rng_from_seed(permutation_seed));

        let mut oracle = RoundOracle {
            global: &mut global,
            ledger: &mut ledger,
            alive: &alive,
            alive_count,
            round: round as u32,
            budget: params.per_round_budget,
            queries: 0,
            positives: 0,
        };
        let found = alg.find_path(&order, &mut oracle, params.ell, params.per_round_budget)?;
        let (queries, positives) = (oracle.queries, oracle.positives);

        let mut record = RoundRecord {
            round,
            permutation_seed,
            alive_before: alive_count,
            queries,
            positives,
            success: false,
            path: None,
            bad_edges: 0,
            in_i: false,
            covered: 0,
        };
        if let Some(path) = found {
            let violation = |reason: String| Error::ProtocolViolation { round, reason };
            if path.length() < params.ell {
                return Err(violation(format!(
                    "returned a path of length {} < {}",
                    path.length(),
                    params.ell
                )));
            }
            let path = path.truncated(params.ell);
            if let Some(&v) = path
                .vertices()
                .iter()
                .find(|&&v| !alive.get(v).copied().unwrap_or(false))
            {
                return Err(violation(format!("path uses removed vertex {v}")));
            }
            let mut bad: Vec<Edge> = Vec::new();
            for (u, v) in path.edges() {
                match ledger.get(&pair_key(u, v)) {
                    Some(s) if s.last_round == round as u32 && s.present => {
                        if s.first_round < round as u32 {
                            bad.push((u, v));
                        }
                    }
                    _ => {
                        return Err(violation(format!(
                            "path edge {{{u}, {v}}} was not confirmed this round"
                        )))
                    }
                }
            }
            for &v in path.vertices() {
                alive[v] = false;
            }
            alive_count -= path.size();
            record.success = true;
            record.bad_edges = bad.len();
            if (bad.len() as f64) <= params.alpha * params.ell as f64 + 1e-9 {
                record.in_i = true;
                i_size += 1;
                let pieces = split_path(&path, &bad, params.alpha)?;
                record.covered = pieces.iter().map(Path::size).sum();
                coverage_in_h += record.covered;
            }
            record.path = Some(path.vertices().to_vec());
        }
        rounds.push(record);
    }

    Ok(ReductionTranscript {
        algorithm: alg.name(),
        master_seed: master,
        params,
        rounds,
        h: global.snapshot(),
        global_samples: global.queries(),
        i_size,
        coverage_in_h,
        final_alive: alive_count,
    })
}

/// Re-checks the bookkeeping of a transcript: vertex conservation, `|V_s| >=
/// n`, one Bernoulli draw per pair, and that extracted paths live in `H`.
pub fn audit_transcript(t: &ReductionTranscript) -> Result<()> {
    let fail = |reason: String| Err(Error::Contract(reason));
    let p = &t.params;
    let mut alive = p.n_prime;
    let mut removed = 0;
    for r in &t.rounds {
        if r.alive_before != alive {
            return fail(format!(
                "round {} starts with {} live vertices, expected {alive}",
                r.round, r.alive_before
            ));
        }
        if r.success {
            let size = r.path.as_ref().map_or(0, Vec::len);
            if size != p.ell + 1 {
                return fail(format!(
                    "round {} removed {size} vertices, expected {}",
                    r.round,
                    p.ell + 1
                ));
            }
            alive -= size;
            removed += size;
        } else if r.path.is_some() || r.covered != 0 {
            return fail(format!("failed round {} carries a path", r.round));
        }
    }
    if alive != t.final_alive || removed != t.successes() * (p.ell + 1) {
        return fail("live-vertex count does not add up".into());
    }
    if t.final_alive < p.n {
        return fail(format!(
            "only {} vertices left, fewer than n = {}",
            t.final_alive, p.n
        ));
    }
    if t.global_samples != t.h.queried_pairs.len() as u64 {
        return fail(format!(
            "{} Bernoulli draws for {} distinct pairs",
            t.global_samples,
            t.h.queried_pairs.len()
        ));
    }
    let asked: u64 = t.rounds.iter().map(|r| r.queries).sum();
    if asked < t.global_samples {
        return fail("rounds asked fewer pairs than were sampled".into());
    }
    if let Some(e) =
        t.h.positive_edges
            .iter()
            .find(|e| t.h.queried_pairs.binary_search(e).is_err())
    {
        return fail(format!("H edge {e:?} was never queried"));
    }
    for r in &t.rounds {
        if let Some(path) = &r.path {
            for w in path.windows(2) {
                let e = (w[0].min(w[1]), w[0].max(w[1]));
                if t.h.positive_edges.binary_search(&e).is_err() {
                    return fail(format!("round {} path edge {e:?} is not in H", r.round));
                }
            }
        }
    }
    if t.coverage_in_h != t.rounds.iter().map(|r| r.covered).sum::<usize>()
        || t.i_size != t.rounds.iter().filter(|r| r.in_i).count()
    {
        return fail("coverage or |I| does not match the rounds".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config(seed: u64) -> ExperimentConfig {
        // n = 400, eps = 0.2, C = 1: ell = 25, n' = 23440, s = 886.
        ExperimentConfig::new(400, 0.2).with_c(1.0).with_seed(seed)
    }

    #[test]
    fn parameters() {
        let p = ReductionParameters::new(&ExperimentConfig::new(20_000, 0.1), None).unwrap();
        assert_eq!(p.ell, 1106);
        assert_eq!(p.n_prime, 308_000);
        assert_eq!(p.s, 260);
        assert_eq!(p.per_round_budget, 315);
        assert!(p.n_prime - p.s * (p.ell + 1) >= p.n);
    }

    #[test]
    fn never_succeeding_algorithm() {
        let t = reduction_run(&small_config(1), &NeverSucceeds, None).unwrap();
        assert_eq!(t.i_size, 0);
        assert_eq!(t.coverage_in_h, 0);
        assert!(t.rounds.iter().all(|r| r.alive_before == t.params.n_prime));
        audit_transcript(&t).unwrap();
    }

    #[test]
    fn dfs_with_a_generous_budget() {
        let config = small_config(7);
        let t = reduction_run(&config, &DfsAlgorithm, Some(2_000_000)).unwrap();
        audit_transcript(&t).unwrap();
        assert!(t.successes() > 0);
        assert_eq!(
            t,
            reduction_run(&config, &DfsAlgorithm, Some(2_000_000)).unwrap()
        );
    }

    struct Cheater;
    impl AdaptiveAlgorithm for Cheater {
        fn name(&self) -> String {
            "cheater".into()
        }
        fn find_path(
            &self,
            order: &[Vertex],
            _: &mut dyn AdjacencyOracle,
            target: usize,
            _: u64,
        ) -> Result<Option<Path>> {
            Ok(Some(Path::new(order[..=target].to_vec())?))
        }
    }

    struct Greedy;
    impl AdaptiveAlgorithm for Greedy {
        fn name(&self) -> String {
            "greedy".into()
        }
        fn find_path(
            &self,
            order: &[Vertex],
            oracle: &mut dyn AdjacencyOracle,
            _: usize,
            _: u64,
        ) -> Result<Option<Path>> {
            for w in order.windows(2) {
                oracle.query(w[0], w[1])?;
            }
            Ok(None)
        }
    }

    struct Trespasser;
    impl AdaptiveAlgorithm for Trespasser {
        fn name(&self) -> String {
            "trespasser".into()
        }
        fn find_path(
            &self,
            order: &[Vertex],
            oracle: &mut dyn AdjacencyOracle,
            _: usize,
            _: u64,
        ) -> Result<Option<Path>> {
            let outside = (0..).find(|v| !order.contains(v)).unwrap_or(usize::MAX);
            oracle.query(order[0], outside)?;
            Ok(None)
        }
    }

    #[test]
    fn protocol_violations_are_errors() {
        let config = small_config(2);
        for alg in [&Cheater as &dyn AdaptiveAlgorithm, &Greedy, &Trespasser] {
            assert!(
                matches!(
                    reduction_run(&config, alg, Some(10)),
                    Err(Error::ProtocolViolation { .. })
                ),
                "{} was not caught",
                alg.name()
            );
        }
    }
}
