use crate::error::{Error, Result};
use crate::oracle::{normalize, Edge};
use crate::pathfind::Path;

const TOLERANCE: f64 = 1e-9;

/// Shortest piece kept by [`split_path`]: the least integer `>= 1/(3 alpha)`.
pub fn split_min_length(alpha: f64) -> usize {
    (1.0 / (3.0 * alpha) - TOLERANCE).ceil().max(0.0) as usize
}

/// Removes the edges `bad_edges` from `path` and keeps the pieces of length at
/// least `1/(3 alpha)`.
///
/// Requires `bad_edges` to be edges of the path, `|bad_edges| <= alpha * len`
/// and `alpha >= 1/len`. The pieces are disjoint and together cover at least
/// `(1/3 - alpha) * len` vertices.
pub fn split_path(path: &Path, bad_edges: &[Edge], alpha: f64) -> Result<Vec<Path>> {
    let len = path.length();
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::InvalidInput(format!(
            "alpha = {alpha} must be positive"
        )));
    }
    if len == 0 || alpha * (len as f64) < 1.0 - TOLERANCE {
        return Err(Error::InvalidInput(format!(
            "alpha = {alpha} is below 1/length for a path of length {len}"
        )));
    }

    let path_edges: Vec<Edge> = path.edges().collect();
    let mut cut = vec![false; len];
    let mut distinct = 0usize;
    for &(u, v) in bad_edges {
        let e = normalize(u, v);
        let Some(i) = path_edges.iter().position(|&f| f == e) else {
            return Err(Error::InvalidInput(format!(
                "edge {{{}, {}}} is not on the path",
                e.0, e.1
            )));
        };
        if !cut[i] {
            cut[i] = true;
            distinct += 1;
        }
    }
    if (distinct as f64) > alpha * (len as f64) + TOLERANCE {
        return Err(Error::InvalidInput(format!(
            "{distinct} bad edges exceed alpha * length = {}",
            alpha * len as f64
        )));
    }

    let min_len = split_min_length(alpha);
    let vertices = path.vertices();
    let mut pieces = Vec::new();
    let mut start = 0;
    for i in 0..=len {
        if i == len || cut[i] {
            if i - start >= min_len {
                pieces.push(Path::new_unchecked(vertices[start..=i].to_vec()));
            }
            start = i + 1;
        }
    }

    let covered: usize = pieces.iter().map(Path::size).sum();
    if (covered as f64) < (1.0 / 3.0 - alpha) * len as f64 - TOLERANCE {
        return Err(Error::Contract(format!(
            "split pieces cover {covered} vertices, below (1/3 - {alpha}) * {len}"
        )));
    }
    Ok(pieces)
}
