//! Exhaustive path packing for small graphs; the reference the forest DP is
//! checked against.

use super::{CoverObjective, PathCoverResult, SimpleGraph};
use crate::error::{Error, Result};
use crate::pathfind::Path;

pub const BRUTE_FORCE_MAX_VERTICES: usize = 14;

/// Optimal vertex-disjoint packing of paths with at least `min_length` edges,
/// by exhaustive search over vertex subsets.
pub fn brute_force_path_cover(
    g: &SimpleGraph,
    min_length: usize,
    objective: CoverObjective,
) -> Result<PathCoverResult> {
    let n = g.n();
    if n > BRUTE_FORCE_MAX_VERTICES {
        return Err(Error::TooLarge {
            size: n,
            limit: BRUTE_FORCE_MAX_VERTICES,
        });
    }
    if min_length == 0 {
        return Err(Error::InvalidInput(
            "minimum path length must be at least 1".into(),
        ));
    }
    let full = (1usize << n) - 1;
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();

    // ends[mask]: vertices at which some Hamiltonian path of G[mask] ends.
    let mut ends = vec![0u32; full + 1];
    for v in 0..n {
        ends[1 << v] = 1 << v;
    }
    for mask in 1..=full {
        let e = ends[mask];
        if e == 0 {
            continue;
        }
        let outside = !(mask as u32) & full as u32;
        for (v, &nbrs) in adj.iter().enumerate() {
            if e >> v & 1 == 1 {
                let mut ext = nbrs & outside;
                while ext != 0 {
                    let w = ext.trailing_zeros() as usize;
                    ext &= ext - 1;
                    ends[mask | 1 << w] |= 1 << w;
                }
            }
        }
    }

    let weight = |mask: usize| -> i64 {
        match objective {
            CoverObjective::MaxCoverage => mask.count_ones() as i64,
            CoverObjective::MaxCount => 1,
        }
    };
    let usable = |mask: usize| ends[mask] != 0 && mask.count_ones() as usize > min_length;

    // best[rem]: optimum using only vertices of `rem`; choice[rem]: path taken
    // through the lowest vertex of `rem` (0 = leave it uncovered).
    let mut best = vec![0i64; full + 1];
    let mut choice = vec![0usize; full + 1];
    for rem in 1..=full {
        let low = rem & rem.wrapping_neg();
        let rest = rem ^ low;
        best[rem] = best[rest];
        let mut sub = rest;
        loop {
            let s = sub | low;
            if usable(s) {
                let cand = weight(s) + best[rem ^ s];
                if cand > best[rem] {
                    best[rem] = cand;
                    choice[rem] = s;
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }

    let mut paths = Vec::new();
    let mut rem = full;
    while rem != 0 {
        let s = choice[rem];
        if s == 0 {
            rem &= rem - 1;
        } else {
            paths.push(hamiltonian_path(s, &ends, &adj));
            rem ^= s;
        }
    }
    paths.sort_by(|a, b| a.vertices().cmp(b.vertices()));
    Ok(PathCoverResult::from_paths(objective, min_length, paths))
}

fn hamiltonian_path(mask: usize, ends: &[u32], adj: &[u32]) -> Path {
    let mut order = Vec::new();
    let mut mask = mask;
    let mut end = ends[mask].trailing_zeros() as usize;
    loop {
        order.push(end);
        mask ^= 1 << end;
        if mask == 0 {
            break;
        }
        let prev = ends[mask] & adj[end];
        end = prev.trailing_zeros() as usize;
    }
    Path::new_unchecked(order)
}
