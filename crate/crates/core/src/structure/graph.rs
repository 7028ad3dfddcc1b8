use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{normalize, Edge, Vertex};

/// Undirected simple graph on `[n]` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleGraph {
    n: usize,
    adjacency: Vec<Vec<Vertex>>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        SimpleGraph {
            n,
            adjacency: vec![Vec::new(); n],
        }
    }

    /// Builds a graph, rejecting loops, out-of-range endpoints and repeated pairs.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidInput(format!("loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!(
                    "edge {{{u}, {v}}} out of range for n = {n}"
                )));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidInput(format!(
                    "duplicate edge {{{u}, {}}}",
                    w[0]
                )));
            }
        }
        Ok(SimpleGraph { n, adjacency })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Same vertex set, keeping only the edges accepted by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(Vertex, Vertex) -> bool) -> SimpleGraph {
        let edges: Vec<Edge> = self.edges().filter(|&(u, v)| keep(u, v)).collect();
        SimpleGraph::from_edges(self.n, edges).expect("a subgraph of a simple graph is simple")
    }

    pub fn is_acyclic(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (u, v) in self.edges() {
            let (a, b) = (root(&mut parent, u), root(&mut parent, v));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
        true
    }
}

/// An acyclic [`SimpleGraph`]. Each tree is rooted at its minimum-id vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Forest {
    graph: SimpleGraph,
}

impl Forest {
    pub fn new(graph: SimpleGraph) -> Result<Self> {
        if !graph.is_acyclic() {
            return Err(Error::InvalidInput("forest input contains a cycle".into()));
        }
        Ok(Forest { graph })
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        Forest::new(SimpleGraph::from_edges(n, edges)?)
    }

    /// Tree given by parent links (`None` marks the root).
    pub fn from_parents(parents: &[Option<Vertex>]) -> Result<Self> {
        let edges = parents
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| normalize(v, p)));
        Forest::from_edges(parents.len(), edges)
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }
}
