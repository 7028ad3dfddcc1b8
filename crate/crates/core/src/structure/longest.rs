use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::SimpleGraph;
use crate::error::{Error, Result};
use crate::oracle::Vertex;

pub const DEFAULT_SPANNING_TREE_CAP: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LongestPath {
    pub length: usize,
    /// False when spanning-tree enumeration hit its cap; `length` is then a
    /// lower bound.
    pub exact: bool,
}

/// Local adjacency of the subgraph induced by one component.
struct Induced {
    adjacency: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

fn induce(g: &SimpleGraph, component: &[Vertex]) -> Result<Induced> {
    let local: FxHashMap<Vertex, usize> =
        component.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    if local.len() != component.len() {
        return Err(Error::InvalidInput("component lists a vertex twice".into()));
    }
    let mut adjacency = vec![Vec::new(); component.len()];
    let mut edges = Vec::new();
    for (i, &v) in component.iter().enumerate() {
        if v >= g.n() {
            return Err(Error::InvalidInput(format!("vertex {v} out of range")));
        }
        for w in g.neighbors(v) {
            if let Some(&j) = local.get(w) {
                adjacency[i].push(j);
                if i < j {
                    edges.push((i, j));
                }
            }
        }
    }
    Ok(Induced { adjacency, edges })
}

/// BFS from `source`; returns (farthest vertex, its distance, visited count).
fn farthest(adjacency: &[Vec<usize>], source: usize, dist: &mut [usize]) -> (usize, usize, usize) {
    dist.fill(usize::MAX);
    dist[source] = 0;
    let mut queue = vec![source];
    let mut head = 0;
    let mut best = (source, 0);
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        if dist[u] > best.1 {
            best = (u, dist[u]);
        }
        for &w in &adjacency[u] {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push(w);
            }
        }
    }
    (best.0, best.1, queue.len())
}

/// Diameter of a tree given as adjacency lists (double sweep).
pub(crate) fn tree_diameter(adjacency: &[Vec<usize>]) -> usize {
    if adjacency.is_empty() {
        return 0;
    }
    let mut dist = vec![0; adjacency.len()];
    let (far, _, _) = farthest(adjacency, 0, &mut dist);
    farthest(adjacency, far, &mut dist).1
}

/// Longest simple path in a connected component of `g`.
///
/// Trees are solved by a double sweep. Otherwise every spanning tree is
/// enumerated: each simple path extends to some spanning tree, so the largest
/// spanning-tree diameter is the answer.
pub fn longest_path_in_component(
    g: &SimpleGraph,
    component: &[Vertex],
    spanning_tree_cap: usize,
) -> Result<LongestPath> {
    if component.is_empty() {
        return Err(Error::InvalidInput("empty component".into()));
    }
    let induced = induce(g, component)?;
    let k = component.len();
    let mut dist = vec![0; k];
    if farthest(&induced.adjacency, 0, &mut dist).2 != k {
        return Err(Error::InvalidInput("component is not connected".into()));
    }
    if induced.edges.len() == k - 1 {
        return Ok(LongestPath {
            length: tree_diameter(&induced.adjacency),
            exact: true,
        });
    }

    // Edges outside the 2-core of the component lie in every spanning tree.
    let mut degree: Vec<usize> = induced.adjacency.iter().map(Vec::len).collect();
    let mut peeled = vec![false; k];
    let mut stack: Vec<usize> = (0..k).filter(|&v| degree[v] <= 1).collect();
    for &v in &stack {
        peeled[v] = true;
    }
    while let Some(v) = stack.pop() {
        for &w in &induced.adjacency[v] {
            if !peeled[w] {
                degree[w] -= 1;
                if degree[w] <= 1 {
                    peeled[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    let (free, forced): (Vec<_>, Vec<_>) = induced
        .edges
        .iter()
        .copied()
        .partition(|&(u, v)| !peeled[u] && !peeled[v]);

    let mut search = SpanningTrees {
        k,
        edges: &free,
        chosen: forced,
        cap: spanning_tree_cap,
        found: 0,
        best: 0,
        truncated: false,
    };
    search.enumerate(0);
    Ok(LongestPath {
        length: search.best,
        exact: !search.truncated,
    })
}

struct SpanningTrees<'a> {
    k: usize,
    edges: &'a [(usize, usize)],
    chosen: Vec<(usize, usize)>,
    cap: usize,
    found: usize,
    best: usize,
    truncated: bool,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl SpanningTrees<'_> {
    fn connected_in(&self, edges: impl Iterator<Item = (usize, usize)>) -> bool {
        let mut parent: Vec<usize> = (0..self.k).collect();
        let mut parts = self.k;
        for (u, v) in edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
                parts -= 1;
            }
        }
        parts == 1
    }

    fn joins_new_parts(&self, u: usize, v: usize) -> bool {
        let mut parent: Vec<usize> = (0..self.k).collect();
        for &(a, b) in &self.chosen {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        find(&mut parent, u) != find(&mut parent, v)
    }

    fn enumerate(&mut self, idx: usize) {
        if self.truncated {
            return;
        }
        if self.chosen.len() == self.k - 1 {
            if self.found == self.cap {
                self.truncated = true;
                return;
            }
            self.found += 1;
            let mut adjacency = vec![Vec::new(); self.k];
            for &(u, v) in &self.chosen {
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
            self.best = self.best.max(tree_diameter(&adjacency));
            return;
        }
        if idx == self.edges.len() {
            return;
        }
        let (u, v) = self.edges[idx];
        if self.joins_new_parts(u, v) {
            self.chosen.push((u, v));
            self.enumerate(idx + 1);
            self.chosen.pop();
        }
        let rest = self
            .chosen
            .iter()
            .copied()
            .chain(self.edges[idx + 1..].iter().copied());
        if self.connected_in(rest) {
            self.enumerate(idx + 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn longest(n: usize, edges: &[(usize, usize)]) -> LongestPath {
        let g = SimpleGraph::from_edges(n, edges.iter().copied()).unwrap();
        let all: Vec<Vertex> = (0..n).collect();
        longest_path_in_component(&g, &all, DEFAULT_SPANNING_TREE_CAP).unwrap()
    }

    #[test]
    fn examples() {
        let p5 = longest(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        assert_eq!(
            p5,
            LongestPath {
                length: 4,
                exact: true
            }
        );

        let tri = longest(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(
            tri,
            LongestPath {
                length: 2,
                exact: true
            }
        );

        // C4 plus a pendant vertex: the pendant, then all the way round.
        let c4p = longest(5, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 4)]);
        assert_eq!(
            c4p,
            LongestPath {
                length: 4,
                exact: true
            }
        );
    }

    #[test]
    fn complete_graph_is_hamiltonian() {
        let mut edges = Vec::new();
        for u in 0..6 {
            for v in u + 1..6 {
                edges.push((u, v));
            }
        }
        assert_eq!(
            longest(6, &edges),
            LongestPath {
                length: 5,
                exact: true
            }
        );
    }

    #[test]
    fn cap_marks_inexact() {
        let mut edges = Vec::new();
        for u in 0..6 {
            for v in u + 1..6 {
                edges.push((u, v));
            }
        }
        let g = SimpleGraph::from_edges(6, edges).unwrap();
        let all: Vec<Vertex> = (0..6).collect();
        // K6 has 6^4 = 1296 spanning trees.
        let r = longest_path_in_component(&g, &all, 10).unwrap();
        assert!(!r.exact);
        assert!(r.length <= 5);
    }

    #[test]
    fn disconnected_component_is_an_error() {
        let g = SimpleGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(longest_path_in_component(&g, &[0, 1, 2, 3], 10).is_err());
        assert!(longest_path_in_component(&g, &[2, 3], 10).is_ok());
    }
}
