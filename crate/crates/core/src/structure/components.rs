use serde::{Deserialize, Serialize};

use super::SimpleGraph;
use crate::oracle::{Edge, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSummary {
    /// Vertex sets (each sorted) by decreasing size; ties broken by the
    /// smallest contained vertex.
    pub components: Vec<Vec<Vertex>>,
}

impl ComponentSummary {
    /// `C1`; empty only for the graph on zero vertices.
    pub fn largest(&self) -> &[Vertex] {
        self.components.first().map_or(&[], Vec::as_slice)
    }

    pub fn second_largest_size(&self) -> usize {
        self.components.get(1).map_or(0, Vec::len)
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.components.iter().map(Vec::len).collect()
    }
}

pub fn connected_components(g: &SimpleGraph) -> ComponentSummary {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    let mut queue = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        queue.clear();
        queue.push(s);
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push(w);
                }
            }
        }
        let mut comp = queue.clone();
        comp.sort_unstable();
        components.push(comp);
    }
    // Components were discovered in order of their smallest vertex, so a
    // stable sort by size keeps that tie-break.
    components.sort_by_key(|c| std::cmp::Reverse(c.len()));
    ComponentSummary { components }
}

/// Maximal induced subgraph of minimum degree at least 2.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CoreResult {
    pub core_vertices: Vec<Vertex>,
    pub core_edges: Vec<Edge>,
}

impl CoreResult {
    pub fn size(&self) -> usize {
        self.core_vertices.len()
    }
}

/// Peels vertices of degree at most one until none remain.
pub fn two_core(g: &SimpleGraph) -> CoreResult {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut stack: Vec<Vertex> = (0..n).filter(|&v| degree[v] <= 1).collect();
    for &v in &stack {
        removed[v] = true;
    }
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if !removed[w] {
                degree[w] -= 1;
                if degree[w] <= 1 {
                    removed[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    let core_vertices: Vec<Vertex> = (0..n).filter(|&v| !removed[v]).collect();
    let core_edges = g
        .edges()
        .filter(|&(u, v)| !removed[u] && !removed[v])
        .collect();
    CoreResult {
        core_vertices,
        core_edges,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[Edge]) -> SimpleGraph {
        SimpleGraph::from_edges(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn component_examples() {
        let tri = graph(4, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(connected_components(&tri).sizes(), vec![3, 1]);

        let empty = SimpleGraph::empty(5);
        let summary = connected_components(&empty);
        assert_eq!(summary.sizes(), vec![1; 5]);
        assert_eq!(summary.components[0], vec![0]);

        let path = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]);
        let summary = connected_components(&path);
        assert_eq!(summary.sizes(), vec![6]);
        assert_eq!(summary.second_largest_size(), 0);
    }

    #[test]
    fn ties_break_by_smallest_vertex() {
        let g = graph(6, &[(4, 5), (0, 3)]);
        let summary = connected_components(&g);
        assert_eq!(summary.components[0], vec![0, 3]);
        assert_eq!(summary.components[1], vec![4, 5]);
        assert_eq!(summary.components[2], vec![1]);
    }

    #[test]
    fn core_examples() {
        let tree = graph(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]);
        assert_eq!(two_core(&tree), CoreResult::default());

        let c5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        let core = two_core(&c5);
        assert_eq!(core.core_vertices, vec![0, 1, 2, 3, 4]);
        assert_eq!(core.core_edges.len(), 5);

        let lollipop = graph(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5)]);
        let core = two_core(&lollipop);
        assert_eq!(core.core_vertices, vec![0, 1, 2]);
        assert_eq!(core.core_edges, vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn core_is_idempotent() {
        let g = graph(
            8,
            &[
                (0, 1),
                (1, 2),
                (2, 0),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 3),
                (6, 7),
            ],
        );
        let core = two_core(&g);
        let again = two_core(&graph(8, &core.core_edges));
        assert_eq!(core, again);
    }
}
