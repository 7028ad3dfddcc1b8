//! The adaptive query model: a `G(n, p)` instance whose edges are decided
//! lazily, one Bernoulli draw per unordered pair, at the first query.
//!
//! The draw for `{u, v}` is a pure function of `(seed, min(u, v), max(u, v))`
//! passed through [`mix64`](crate::rng::mix64), so the answer a pair receives
//! does not depend on when (or whether) other pairs were asked. Repeated
//! queries hit the cache and are not charged again.

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{mix64, unit_f64};

/// Vertices are 0-based indices into `[n]`.
pub type Vertex = usize;

/// An unordered vertex pair, always stored as `(min, max)`.
pub type Edge = (Vertex, Vertex);

#[inline]
pub fn normalize(u: Vertex, v: Vertex) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[inline]
pub(crate) fn pair_key(u: Vertex, v: Vertex) -> u64 {
    let (a, b) = normalize(u, v);
    ((a as u64) << 32) | b as u64
}

#[inline]
fn key_pair(key: u64) -> Edge {
    ((key >> 32) as Vertex, (key & 0xFFFF_FFFF) as Vertex)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

impl OracleConfig {
    pub fn new(n: usize, p: f64, seed: u64) -> Result<Self> {
        let config = OracleConfig { n, p, seed };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::config("n", "vertex count must be positive"));
        }
        if self.n > u32::MAX as usize {
            return Err(Error::config("n", "vertex count must fit in 32 bits"));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::config(
                "p",
                format!("edge probability {} is outside [0, 1]", self.p),
            ));
        }
        Ok(())
    }

    /// The Bernoulli outcome for `{u, v}`; independent of query history.
    #[inline]
    pub fn edge_present(&self, u: Vertex, v: Vertex) -> bool {
        let word = mix64(mix64(self.seed ^ 0xA076_1D64_78BD_642F) ^ pair_key(u, v));
        unit_f64(word) < self.p
    }
}

/// Anything an adaptive algorithm can interrogate with "is `{u, v}` an edge?".
///
/// `queries` counts distinct pairs charged so far; it is the quantity every
/// budget in the crate is measured against.
pub trait AdjacencyOracle {
    /// Number of vertices the algorithm may touch.
    fn vertex_count(&self) -> usize;
    fn contains(&self, v: Vertex) -> bool;
    fn query(&mut self, u: Vertex, v: Vertex) -> Result<bool>;
    fn queries(&self) -> u64;
    fn positives(&self) -> u64;
}

/// The pair of graphs revealed so far: `K` (present edges) inside `L`
/// (all queried pairs). Both lists are sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RevealedGraph {
    pub n: usize,
    pub positive_edges: Vec<Edge>,
    pub queried_pairs: Vec<Edge>,
}

#[derive(Debug, Clone)]
pub struct LazyOracle {
    config: OracleConfig,
    revealed: FxHashMap<u64, bool>,
    queries: u64,
    positives: u64,
}

impl LazyOracle {
    pub fn new(config: OracleConfig) -> Result<Self> {
        config.validate()?;
        Ok(LazyOracle {
            config,
            revealed: FxHashMap::default(),
            queries: 0,
            positives: 0,
        })
    }

    pub fn config(&self) -> &OracleConfig {
        &self.config
    }

    pub fn n(&self) -> usize {
        self.config.n
    }

    /// Cached answer for `{u, v}` if the pair has been queried.
    pub fn revealed(&self, u: Vertex, v: Vertex) -> Option<bool> {
        self.revealed.get(&pair_key(u, v)).copied()
    }

    fn check_pair(&self, u: Vertex, v: Vertex) -> Result<()> {
        let n = self.config.n;
        if u == v {
            return Err(Error::InvalidQuery {
                u,
                v,
                reason: "loops are not queryable".into(),
            });
        }
        if u >= n || v >= n {
            return Err(Error::InvalidQuery {
                u,
                v,
                reason: format!("vertex out of range for n = {n}"),
            });
        }
        Ok(())
    }

    pub fn snapshot(&self) -> RevealedGraph {
        let mut queried_pairs: Vec<Edge> = self.revealed.keys().map(|&k| key_pair(k)).collect();
        queried_pairs.sort_unstable();
        let mut positive_edges: Vec<Edge> = self
            .revealed
            .iter()
            .filter(|(_, &present)| present)
            .map(|(&k, _)| key_pair(k))
            .collect();
        positive_edges.sort_unstable();
        RevealedGraph {
            n: self.config.n,
            positive_edges,
            queried_pairs,
        }
    }
}

impl AdjacencyOracle for LazyOracle {
    fn vertex_count(&self) -> usize {
        self.config.n
    }

    fn contains(&self, v: Vertex) -> bool {
        v < self.config.n
    }

    fn query(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        self.check_pair(u, v)?;
        let key = pair_key(u, v);
        if let Some(&answer) = self.revealed.get(&key) {
            return Ok(answer);
        }
        let answer = self.config.edge_present(u, v);
        self.revealed.insert(key, answer);
        self.queries += 1;
        if answer {
            self.positives += 1;
        }
        Ok(answer)
    }

    fn queries(&self) -> u64 {
        self.queries
    }

    fn positives(&self) -> u64 {
        self.positives
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oracle(n: usize, p: f64, seed: u64) -> LazyOracle {
        LazyOracle::new(OracleConfig::new(n, p, seed).unwrap()).unwrap()
    }

    #[test]
    fn fresh_oracle_is_empty() {
        let o = oracle(10, 0.5, 7);
        assert_eq!(o.queries(), 0);
        assert_eq!(o.positives(), 0);
        let snap = o.snapshot();
        assert!(snap.positive_edges.is_empty());
        assert!(snap.queried_pairs.is_empty());
    }

    #[test]
    fn single_vertex_is_valid() {
        let mut o = oracle(1, 1.0, 0);
        assert!(o.query(0, 0).is_err());
        assert!(o.query(0, 1).is_err());
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(matches!(
            OracleConfig::new(10, 1.5, 0),
            Err(Error::Config { ref key, .. }) if key == "p"
        ));
        assert!(OracleConfig::new(10, -0.1, 0).is_err());
        assert!(OracleConfig::new(0, 0.5, 0).is_err());
    }

    #[test]
    fn repeat_queries_are_free() {
        let mut o = oracle(10, 0.5, 3);
        let a = o.query(2, 5).unwrap();
        let b = o.query(5, 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(o.queries(), 1);
    }

    #[test]
    fn extreme_probabilities() {
        assert!(oracle(2, 1.0, 9).query(0, 1).unwrap());
        assert!(!oracle(2, 0.0, 9).query(0, 1).unwrap());
    }

    #[test]
    fn snapshot_after_positive_query() {
        let mut o = oracle(3, 1.0, 0);
        o.query(1, 2).unwrap();
        let snap = o.snapshot();
        assert_eq!(snap.positive_edges, vec![(1, 2)]);
        assert_eq!(snap.queried_pairs, vec![(1, 2)]);
    }

    #[test]
    fn snapshot_counts_match_ledger() {
        let mut o = oracle(30, 0.3, 11);
        for u in 0..10 {
            for v in (u + 1)..30 {
                o.query(u, v).unwrap();
            }
        }
        let snap = o.snapshot();
        assert_eq!(snap.queried_pairs.len() as u64, o.queries());
        assert_eq!(snap.positive_edges.len() as u64, o.positives());
        assert!(snap
            .positive_edges
            .iter()
            .all(|e| snap.queried_pairs.binary_search(e).is_ok()));
    }

    #[test]
    fn answers_are_order_independent() {
        let mut forward = oracle(50, 0.4, 5);
        let mut backward = oracle(50, 0.4, 5);
        let pairs: Vec<Edge> = (0..49).map(|u| (u, u + 1)).collect();
        let a: Vec<bool> = pairs
            .iter()
            .map(|&(u, v)| forward.query(u, v).unwrap())
            .collect();
        let mut b: Vec<bool> = pairs
            .iter()
            .rev()
            .map(|&(u, v)| backward.query(v, u).unwrap())
            .collect();
        b.reverse();
        assert_eq!(a, b);
    }
}
