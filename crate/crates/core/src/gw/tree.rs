use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::Vertex;
use crate::structure::tree_diameter;

/// Galton-Watson samples larger than this are abandoned.
pub const GW_SIZE_CAP: usize = 10_000_000;

/// A rooted tree on `0..t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootedTree {
    t: usize,
    root: Vertex,
    parent: Vec<Option<Vertex>>,
    depth: Vec<usize>,
}

impl RootedTree {
    /// Validates the parent links (one root, no cycles) and computes depths.
    pub fn from_parents(parent: Vec<Option<Vertex>>) -> Result<Self> {
        let t = parent.len();
        let roots: Vec<Vertex> = (0..t).filter(|&v| parent[v].is_none()).collect();
        if roots.len() != 1 {
            return Err(Error::InvalidInput(format!(
                "a rooted tree needs exactly one root, found {}",
                roots.len()
            )));
        }
        let root = roots[0];
        let mut children = vec![Vec::new(); t];
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                if p >= t {
                    return Err(Error::InvalidInput(format!("parent {p} out of range")));
                }
                children[p].push(v);
            }
        }
        let mut depth = vec![usize::MAX; t];
        depth[root] = 0;
        let mut queue = vec![root];
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for &c in &children[u] {
                depth[c] = depth[u] + 1;
                queue.push(c);
            }
        }
        if queue.len() != t {
            return Err(Error::InvalidInput("parent links contain a cycle".into()));
        }
        Ok(RootedTree {
            t,
            root,
            parent,
            depth,
        })
    }

    /// Builds the tree on `0..t` from undirected edges, rooted at `root`.
    pub fn from_edges(t: usize, edges: &[(Vertex, Vertex)], root: Vertex) -> Result<Self> {
        if root >= t || edges.len() + 1 != t {
            return Err(Error::InvalidInput(format!(
                "{} edges and root {root} cannot form a tree on {t} vertices",
                edges.len()
            )));
        }
        let mut adjacency = vec![Vec::new(); t];
        for &(u, v) in edges {
            if u >= t || v >= t {
                return Err(Error::InvalidInput(format!("edge ({u}, {v}) out of range")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let mut parent = vec![None; t];
        let mut seen = vec![false; t];
        seen[root] = true;
        let mut stack = vec![root];
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &w in &adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        if reached != t {
            return Err(Error::InvalidInput(
                "edges do not form a spanning tree".into(),
            ));
        }
        RootedTree::from_parents(parent)
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn parent(&self) -> &[Option<Vertex>] {
        &self.parent
    }

    pub fn depth(&self) -> &[usize] {
        &self.depth
    }

    pub fn height(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    /// Edges as `(min, max)`, sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut edges: Vec<(Vertex, Vertex)> = self
            .parent
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (v.min(p), v.max(p))))
            .collect();
        edges.sort_unstable();
        edges
    }

    pub fn adjacency(&self) -> Vec<Vec<Vertex>> {
        let mut adjacency = vec![Vec::new(); self.t];
        for (v, p) in self.parent.iter().enumerate() {
            if let Some(p) = *p {
                adjacency[v].push(p);
                adjacency[p].push(v);
            }
        }
        adjacency
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeStatRecord {
    pub t: usize,
    pub height: usize,
    pub diameter: usize,
    /// `diameter >= ell` for the threshold passed to [`tree_metrics`].
    pub has_path_geq: bool,
}

pub fn tree_metrics(tree: &RootedTree, ell: usize) -> TreeStatRecord {
    let height = tree.height();
    let diameter = tree_diameter(&tree.adjacency());
    TreeStatRecord {
        t: tree.t,
        height,
        diameter,
        has_path_geq: diameter >= ell,
    }
}

/// Poisson(`mean`) by sequential inversion; intended for small means.
pub fn sample_poisson<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> usize {
    let u: f64 = rng.random();
    let mut k = 0usize;
    let mut p = (-mean).exp();
    let mut cdf = p;
    while u > cdf && p > 0.0 {
        k += 1;
        p *= mean / k as f64;
        cdf += p;
    }
    k
}

/// Poisson(`mu`) Galton-Watson tree generated breadth first. Vertex ids are
/// the BFS order, so the root is 0.
pub fn sample_gw_tree<R: Rng + ?Sized>(mu: f64, rng: &mut R) -> Result<RootedTree> {
    sample_gw_tree_capped(mu, rng, GW_SIZE_CAP)
}

pub(crate) fn sample_gw_tree_capped<R: Rng + ?Sized>(
    mu: f64,
    rng: &mut R,
    cap: usize,
) -> Result<RootedTree> {
    if !(mu > 0.0 && mu < 1.0) {
        return Err(Error::Domain(format!("mu = {mu} must lie in (0, 1)")));
    }
    let mut parent: Vec<Option<Vertex>> = vec![None];
    let mut depth = vec![0usize];
    let mut head = 0;
    while head < parent.len() {
        let kids = sample_poisson(mu, rng);
        if parent.len() + kids > cap {
            return Err(Error::CapExceeded { cap });
        }
        for _ in 0..kids {
            parent.push(Some(head));
            depth.push(depth[head] + 1);
        }
        head += 1;
    }
    Ok(RootedTree {
        t: parent.len(),
        root: 0,
        parent,
        depth,
    })
}

/// Edges of the labeled tree on `0..t` with Prüfer code `code` (length `t - 2`).
pub fn prufer_decode(code: &[Vertex]) -> Result<Vec<(Vertex, Vertex)>> {
    let t = code.len() + 2;
    if let Some(&bad) = code.iter().find(|&&c| c >= t) {
        return Err(Error::InvalidInput(format!(
            "Prüfer symbol {bad} out of range for t = {t}"
        )));
    }
    let mut degree = vec![1usize; t];
    for &c in code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(t - 1);
    // Linear-time decoding: `ptr` scans for the smallest leaf, `leaf` may
    // jump back when a freshly exposed leaf is smaller.
    let mut ptr = degree
        .iter()
        .position(|&d| d == 1)
        .expect("a tree has leaves");
    let mut leaf = ptr;
    for &c in code {
        edges.push((leaf.min(c), leaf.max(c)));
        degree[c] -= 1;
        if degree[c] == 1 && c < ptr {
            leaf = c;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    let last = t - 1;
    edges.push((leaf.min(last), leaf.max(last)));
    Ok(edges)
}

/// Uniform labeled tree on `0..t` via a uniform Prüfer code. The root is
/// uniform when `rooted`, otherwise vertex 0.
pub fn sample_uniform_labeled_tree<R: Rng + ?Sized>(
    t: usize,
    rooted: bool,
    rng: &mut R,
) -> Result<RootedTree> {
    if t == 0 {
        return Err(Error::Domain("a tree needs at least one vertex".into()));
    }
    let root = if rooted { rng.random_range(0..t) } else { 0 };
    if t == 1 {
        return RootedTree::from_parents(vec![None]);
    }
    let code: Vec<Vertex> = (0..t - 2).map(|_| rng.random_range(0..t)).collect();
    let edges = prufer_decode(&code)?;
    RootedTree::from_edges(t, &edges, root)
}

/// Joyal's construction: the map `f` on `0..t` becomes a tree whose spine is
/// `f(i_1), ..., f(i_m)` for the cyclic points `i_1 < ... < i_m`; every other
/// vertex hangs from `f(i)`. Rooted at `f(i_m)`.
pub fn joyal_tree_from_map(f: &[Vertex]) -> Result<RootedTree> {
    let t = f.len();
    if t == 0 {
        return Err(Error::InvalidInput("the map has an empty domain".into()));
    }
    if let Some(i) = f.iter().position(|&y| y >= t) {
        return Err(Error::InvalidInput(format!(
            "f({i}) = {} is outside 0..{t}",
            f[i]
        )));
    }
    // Vertices that survive repeated removal of in-degree-0 vertices are
    // exactly the cyclic points.
    let mut indegree = vec![0usize; t];
    for &y in f {
        indegree[y] += 1;
    }
    let mut on_cycle = vec![true; t];
    let mut stack: Vec<Vertex> = (0..t).filter(|&v| indegree[v] == 0).collect();
    while let Some(v) = stack.pop() {
        on_cycle[v] = false;
        let y = f[v];
        indegree[y] -= 1;
        if indegree[y] == 0 {
            stack.push(y);
        }
    }
    let cyclic: Vec<Vertex> = (0..t).filter(|&v| on_cycle[v]).collect();

    let mut parent: Vec<Option<Vertex>> = (0..t).map(|i| Some(f[i])).collect();
    for w in cyclic.windows(2) {
        parent[f[w[0]]] = Some(f[w[1]]);
    }
    let last = *cyclic.last().expect("every finite map has a cycle");
    parent[f[last]] = None;
    RootedTree::from_parents(parent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;
    use std::collections::BTreeMap;

    #[test]
    fn metrics_examples() {
        let path = RootedTree::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)], 0).unwrap();
        let m = tree_metrics(&path, 4);
        assert_eq!((m.height, m.diameter, m.has_path_geq), (4, 4, true));

        let star = RootedTree::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)], 0).unwrap();
        let m = tree_metrics(&star, 3);
        assert_eq!((m.height, m.diameter, m.has_path_geq), (1, 2, false));
    }

    #[test]
    fn from_parents_rejects_garbage() {
        assert!(RootedTree::from_parents(vec![None, None]).is_err());
        assert!(RootedTree::from_parents(vec![None, Some(2), Some(1)]).is_err());
        assert!(RootedTree::from_parents(vec![Some(0)]).is_err());
    }

    #[test]
    fn prufer_known_code() {
        // Code (3, 3, 3, 4) on 6 vertices.
        let edges = prufer_decode(&[3, 3, 3, 4]).unwrap();
        let mut sorted = edges.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![(0, 3), (1, 3), (2, 3), (3, 4), (4, 5)]);
    }

    #[test]
    fn prufer_is_a_bijection_at_five() {
        let mut trees = std::collections::BTreeSet::new();
        for code in 0..125usize {
            let c = [code % 5, code / 5 % 5, code / 25];
            let mut e = prufer_decode(&c).unwrap();
            e.sort_unstable();
            RootedTree::from_edges(5, &e, 0).unwrap();
            trees.insert(e);
        }
        assert_eq!(trees.len(), 125);
    }

    #[test]
    fn tiny_uniform_trees() {
        let mut rng = rng_from_seed(1);
        assert_eq!(
            sample_uniform_labeled_tree(1, true, &mut rng).unwrap().t(),
            1
        );
        let mut roots = [0usize; 2];
        for _ in 0..200 {
            let tr = sample_uniform_labeled_tree(2, true, &mut rng).unwrap();
            assert_eq!(tr.edges(), vec![(0, 1)]);
            roots[tr.root()] += 1;
        }
        assert!(roots[0] > 50 && roots[1] > 50);
        assert!(sample_uniform_labeled_tree(0, false, &mut rng).is_err());
    }

    fn joyal_counts(t: usize) -> BTreeMap<Vec<(usize, usize)>, usize> {
        let mut counts = BTreeMap::new();
        for code in 0..t.pow(t as u32) {
            let f: Vec<usize> = (0..t).map(|i| code / t.pow(i as u32) % t).collect();
            *counts
                .entry(joyal_tree_from_map(&f).unwrap().edges())
                .or_insert(0) += 1;
        }
        counts
    }

    #[test]
    fn joyal_is_uniform_on_small_t() {
        assert_eq!(joyal_tree_from_map(&[0]).unwrap().t(), 1);
        let c3 = joyal_counts(3);
        assert_eq!(c3.len(), 3);
        assert!(c3.values().all(|&c| c == 9));
        let c4 = joyal_counts(4);
        assert_eq!(c4.len(), 16);
        assert!(c4.values().all(|&c| c == 16));
        assert!(joyal_tree_from_map(&[0, 2]).is_err());
    }

    #[test]
    fn gw_single_vertex_frequency() {
        let mut rng = rng_from_seed(9);
        let n = 20_000;
        let singles = (0..n)
            .filter(|_| sample_gw_tree(0.5, &mut rng).unwrap().t() == 1)
            .count();
        assert!((singles as f64 / n as f64 - (-0.5f64).exp()).abs() < 0.015);
    }

    #[test]
    fn gw_cap_is_enforced() {
        let mut rng = rng_from_seed(3);
        let mut hit = false;
        for _ in 0..200 {
            if let Err(Error::CapExceeded { cap: 3 }) = sample_gw_tree_capped(0.99, &mut rng, 3) {
                hit = true;
            }
        }
        assert!(hit);
        assert!(sample_gw_tree(1.0, &mut rng).is_err());
    }
}
