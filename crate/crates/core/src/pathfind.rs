//! Adaptive algorithms that learn the graph only through an oracle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{normalize, AdjacencyOracle, Edge, LazyOracle, Vertex};

/// An ordered sequence of distinct vertices. `length` counts edges, `size`
/// counts vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Path {
    vertices: Vec<Vertex>,
}

impl Path {
    pub fn new(vertices: Vec<Vertex>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidInput(
                "a path needs at least one vertex".into(),
            ));
        }
        let mut sorted = vertices.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("path vertices must be distinct".into()));
        }
        Ok(Path { vertices })
    }

    pub(crate) fn new_unchecked(vertices: Vec<Vertex>) -> Self {
        debug_assert!(!vertices.is_empty());
        Path { vertices }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn length(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    /// Consecutive pairs, normalized.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.vertices.windows(2).map(|w| normalize(w[0], w[1]))
    }

    /// First `length + 1` vertices.
    pub fn truncated(&self, length: usize) -> Path {
        Path::new_unchecked(self.vertices[..=length.min(self.length())].to_vec())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub path: Option<Path>,
    pub queries_used: u64,
    pub positives_used: u64,
    pub succeeded: bool,
}

impl SearchOutcome {
    pub fn path_length(&self) -> usize {
        self.path.as_ref().map_or(0, Path::length)
    }
}

/// Smallest free slot at or after a position, with path compression. Slot
/// `len` is a permanent sentinel.
pub(crate) struct NextFree {
    next: Vec<u32>,
}

impl NextFree {
    pub(crate) fn new(len: usize) -> Self {
        NextFree {
            next: (0..=len as u32).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut i: usize) -> usize {
        let mut root = i;
        while self.next[root] as usize != root {
            root = self.next[root] as usize;
        }
        while self.next[i] as usize != root {
            let up = self.next[i] as usize;
            self.next[i] = root as u32;
            i = up;
        }
        root
    }

    pub(crate) fn remove(&mut self, i: usize) {
        self.next[i] = (i + 1) as u32;
    }
}

fn validate_order<O: AdjacencyOracle + ?Sized>(oracle: &O, order: &[Vertex]) -> Result<()> {
    if order.len() != oracle.vertex_count() {
        return Err(Error::InvalidInput(format!(
            "vertex order has {} entries but the oracle has {} vertices",
            order.len(),
            oracle.vertex_count()
        )));
    }
    if let Some(&v) = order.iter().find(|&&v| !oracle.contains(v)) {
        return Err(Error::InvalidInput(format!(
            "vertex {v} is not in the oracle's vertex set"
        )));
    }
    let mut seen = vec![false; order.iter().copied().max().map_or(0, |m| m + 1)];
    for &v in order {
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidInput(format!(
                "vertex {v} repeats in the order"
            )));
        }
    }
    Ok(())
}

/// Depth-first search whose stack is always a path.
///
/// From the top of the stack the unvisited vertices are probed in
/// `vertex_order`; a positive answer pushes the neighbour, exhaustion pops the
/// top for good. When the stack empties the next unvisited vertex in order
/// becomes a new root. The search stops as soon as the stack spans
/// `target_length` edges, when every vertex is explored, or when the oracle's
/// query counter has advanced by `query_budget`.
pub fn dfs_long_path<O: AdjacencyOracle + ?Sized>(
    oracle: &mut O,
    vertex_order: &[Vertex],
    target_length: usize,
    query_budget: Option<u64>,
) -> Result<SearchOutcome> {
    dfs_long_path_observed(oracle, vertex_order, target_length, query_budget, |_| {})
}

/// [`dfs_long_path`] with a hook called with the stack after every push.
pub fn dfs_long_path_observed<O, F>(
    oracle: &mut O,
    vertex_order: &[Vertex],
    target_length: usize,
    query_budget: Option<u64>,
    mut on_push: F,
) -> Result<SearchOutcome>
where
    O: AdjacencyOracle + ?Sized,
    F: FnMut(&[Vertex]),
{
    validate_order(oracle, vertex_order)?;
    let start_queries = oracle.queries();
    let start_positives = oracle.positives();
    let m = vertex_order.len();

    let mut unvisited = NextFree::new(m);
    // (position in vertex_order, probe cursor)
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut path_buf: Vec<Vertex> = Vec::new();
    let mut best: Vec<Vertex> = Vec::new();

    loop {
        if stack.is_empty() {
            let root = unvisited.find(0);
            if root == m {
                break;
            }
            unvisited.remove(root);
            stack.push((root, 0));
            path_buf.push(vertex_order[root]);
            on_push(&path_buf);
            if path_buf.len() > best.len() {
                best.clone_from(&path_buf);
            }
        }
        if path_buf.len() > target_length {
            break;
        }
        let top = stack.len() - 1;
        let candidate = unvisited.find(stack[top].1);
        if candidate == m {
            stack.pop();
            path_buf.pop();
            continue;
        }
        if let Some(budget) = query_budget {
            if oracle.queries() - start_queries >= budget {
                break;
            }
        }
        stack[top].1 = candidate + 1;
        let u = vertex_order[stack[top].0];
        let w = vertex_order[candidate];
        if oracle.query(u, w)? {
            unvisited.remove(candidate);
            stack.push((candidate, 0));
            path_buf.push(w);
            on_push(&path_buf);
            if path_buf.len() > best.len() {
                best.clone_from(&path_buf);
            }
        }
    }

    let succeeded = !best.is_empty() && best.len() > target_length;
    Ok(SearchOutcome {
        path: (!best.is_empty()).then(|| Path::new_unchecked(best)),
        queries_used: oracle.queries() - start_queries,
        positives_used: oracle.positives() - start_positives,
        succeeded,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDiscovery {
    pub tree: Vec<Edge>,
    /// Sorted vertex set of the discovered tree.
    pub component: Vec<Vertex>,
    pub queries_used: u64,
    /// False when the budget ran out before the component was closed.
    pub complete: bool,
}

/// Grows a spanning tree from `start` by querying pairs that leave the tree.
///
/// Tree vertices are processed in insertion order; each scans the vertices
/// still outside the tree in increasing id.
pub fn discover_component(
    oracle: &mut LazyOracle,
    start: Vertex,
    query_budget: Option<u64>,
) -> Result<ComponentDiscovery> {
    let n = oracle.n();
    if start >= n {
        return Err(Error::InvalidInput(format!(
            "start vertex {start} out of range for n = {n}"
        )));
    }
    let start_queries = oracle.queries();
    let mut outside = NextFree::new(n);
    outside.remove(start);
    let mut order = vec![start];
    let mut tree = Vec::new();
    let mut complete = true;

    let mut head = 0;
    'grow: while head < order.len() {
        let u = order[head];
        let mut w = outside.find(0);
        while w < n {
            if let Some(budget) = query_budget {
                if oracle.queries() - start_queries >= budget {
                    complete = false;
                    break 'grow;
                }
            }
            if oracle.query(u, w)? {
                outside.remove(w);
                tree.push(normalize(u, w));
                order.push(w);
            }
            w = outside.find(w + 1);
        }
        head += 1;
    }

    order.sort_unstable();
    Ok(ComponentDiscovery {
        tree,
        component: order,
        queries_used: oracle.queries() - start_queries,
        complete,
    })
}
