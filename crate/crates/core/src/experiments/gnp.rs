use rand::Rng;

use crate::error::Result;
use crate::oracle::Edge;
use crate::rng::rng_from_seed;
use crate::structure::SimpleGraph;

/// All edges of one `G(n, p)` draw, in the order `(w, v)` with `w < v`, by
/// geometric skipping over the pair sequence (expected `O(n + m)` time).
pub fn gnp_edges(n: usize, p: f64, seed: u64) -> Vec<Edge> {
    let mut edges = Vec::new();
    if n < 2 || p <= 0.0 {
        return edges;
    }
    let mut rng = rng_from_seed(seed);
    let log_q = (-p).ln_1p();
    let (mut v, mut w): (usize, i64) = (1, -1);
    while v < n {
        let r: f64 = rng.random();
        let skip = if p >= 1.0 {
            0
        } else {
            ((-r).ln_1p() / log_q).floor() as i64
        };
        w += 1 + skip;
        while w >= v as i64 && v < n {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            edges.push((w as usize, v));
        }
    }
    edges
}

pub fn gnp_graph(n: usize, p: f64, seed: u64) -> Result<SimpleGraph> {
    SimpleGraph::from_edges(n, gnp_edges(n, p, seed))
}
