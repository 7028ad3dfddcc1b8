//! Maximum vertex-disjoint long-path packings in forests.
//!
//! The dynamic program roots every tree at its minimum vertex and keeps, for
//! each vertex `v`, the best value of its subtree when
//!
//! * `v` is not the top of an unfinished path (`closed`), or
//! * `v` is the top end of a *dangling* segment of `d` edges that will be
//!   continued through the parent (`open[d]`).
//!
//! Dangling lengths are bounded. For coverage any path longer than `2l`
//! splits at an interior edge into two paths of length at least `l` covering
//! the same vertices, so segments never need more than `2l` edges. For the
//! path count a path longer than `l` can be trimmed to exactly `l`, so `l`
//! edges suffice. Children are merged one at a time in increasing id; at most
//! two child segments meet at a vertex to close a path through it.

use serde::{Deserialize, Serialize};

use super::Forest;
use crate::error::{Error, Result};
use crate::oracle::Vertex;
use crate::pathfind::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverObjective {
    /// Maximise the number of covered vertices.
    MaxCoverage,
    /// Maximise the number of paths.
    MaxCount,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathCoverResult {
    pub objective: CoverObjective,
    pub min_length: usize,
    pub covered_vertices: usize,
    pub paths: Vec<Path>,
}

impl PathCoverResult {
    pub fn path_count(&self) -> usize {
        self.paths.len()
    }

    /// The optimised quantity.
    pub fn value(&self) -> usize {
        match self.objective {
            CoverObjective::MaxCoverage => self.covered_vertices,
            CoverObjective::MaxCount => self.paths.len(),
        }
    }

    pub(crate) fn from_paths(
        objective: CoverObjective,
        min_length: usize,
        paths: Vec<Path>,
    ) -> Self {
        PathCoverResult {
            objective,
            min_length,
            covered_vertices: paths.iter().map(Path::size).sum(),
            paths,
        }
    }
}

const NEG: i64 = i64::MIN / 4;

#[inline]
fn valid(x: i64) -> bool {
    x > NEG / 2
}

#[derive(Clone, Copy)]
struct Params {
    objective: CoverObjective,
    min_length: usize,
    cap: usize,
}

impl Params {
    /// Value of a finished path with `length` edges.
    #[inline]
    fn weight(&self, length: usize) -> i64 {
        match self.objective {
            CoverObjective::MaxCoverage => length as i64 + 1,
            CoverObjective::MaxCount => 1,
        }
    }

    /// Share of a joined path's weight carried by the upper half (`d` edges).
    #[inline]
    fn half_bonus(&self, d: usize) -> i64 {
        match self.objective {
            CoverObjective::MaxCoverage => d as i64,
            CoverObjective::MaxCount => 0,
        }
    }

    /// The rest of the weight once the lower half has `d2` edges:
    /// `weight(d1 + d2 + 1) - half_bonus(d1)`.
    #[inline]
    fn join_bonus(&self, d2: usize) -> i64 {
        match self.objective {
            CoverObjective::MaxCoverage => d2 as i64 + 2,
            CoverObjective::MaxCount => 1,
        }
    }
}

#[derive(Clone)]
struct Table {
    closed: i64,
    open: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum MergeState {
    Zero,
    One(usize),
    Two,
}

struct StepTrace {
    /// `one[d]` after this child came from `zero + open_child[d - 1]`.
    one_from_zero: Vec<bool>,
    /// The child closed a path through the vertex, joining `one[d1]` with its
    /// own segment of length `d2`.
    join: Option<(usize, usize)>,
}

struct Merged {
    table: Table,
    /// Merge state that produced `table.closed`.
    closed_from: MergeState,
}

fn merge(params: Params, children: &[&Table], mut trace: Option<&mut Vec<StepTrace>>) -> Merged {
    let cap = params.cap;
    let l = params.min_length;
    let mut zero: i64 = 0;
    let mut one = vec![NEG; cap + 1];
    let mut two: i64 = NEG;
    let mut suffix = vec![(NEG, 0usize); cap + 2];

    for child in children {
        let k = child.closed;
        let open = &child.open;

        // Best `one[d1] + bonus(d1)` over d1 >= i.
        suffix[cap + 1] = (NEG, 0);
        for d in (1..=cap).rev() {
            let cand = if valid(one[d]) {
                one[d] + params.half_bonus(d)
            } else {
                NEG
            };
            suffix[d] = if cand > suffix[d + 1].0 {
                (cand, d)
            } else {
                suffix[d + 1]
            };
        }
        suffix[0] = suffix[1];

        let mut new_two = if valid(two) { two + k } else { NEG };
        let mut join = None;
        for (d2, &o) in open.iter().enumerate() {
            if !valid(o) {
                continue;
            }
            let need = l.saturating_sub(d2 + 1).max(1);
            if need > cap {
                continue;
            }
            let (best, d1) = suffix[need];
            if !valid(best) {
                continue;
            }
            // segment(d1) + edge + segment(d2) is a path of d1 + d2 + 1 edges.
            let cand = best + o + params.join_bonus(d2);
            if cand > new_two {
                new_two = cand;
                join = Some((d1, d2));
            }
        }

        let mut step = trace.as_ref().map(|_| StepTrace {
            one_from_zero: vec![false; cap + 1],
            join,
        });
        for d in (1..=cap).rev() {
            let carried = if valid(one[d]) { one[d] + k } else { NEG };
            let extended = open
                .get(d - 1)
                .copied()
                .filter(|&o| valid(o))
                .map_or(NEG, |o| zero + o);
            if extended > carried {
                one[d] = extended;
                if let Some(s) = step.as_mut() {
                    s.one_from_zero[d] = true;
                }
            } else {
                one[d] = carried;
            }
        }
        two = new_two;
        zero += k;
        if let (Some(t), Some(s)) = (trace.as_mut(), step) {
            t.push(s);
        }
    }

    let mut closed = zero;
    let mut closed_from = MergeState::Zero;
    if two > closed {
        closed = two;
        closed_from = MergeState::Two;
    }
    for (d, &value) in one.iter().enumerate().take(cap + 1).skip(l.max(1)) {
        if valid(value) {
            let cand = value + params.weight(d);
            if cand > closed {
                closed = cand;
                closed_from = MergeState::One(d);
            }
        }
    }

    let mut open = Vec::with_capacity(cap + 1);
    open.push(zero);
    open.extend_from_slice(&one[1..]);
    while open.len() > 1 && !valid(*open.last().unwrap()) {
        open.pop();
    }
    Merged {
        table: Table { closed, open },
        closed_from,
    }
}

struct Rooted {
    /// BFS order, roots first within each tree.
    order: Vec<Vertex>,
    children: Vec<Vec<Vertex>>,
    roots: Vec<Vertex>,
}

fn root_forest(f: &Forest) -> Rooted {
    let g = f.graph();
    let n = g.n();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut children = vec![Vec::new(); n];
    let mut roots = Vec::new();
    for r in 0..n {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        roots.push(r);
        let start = order.len();
        order.push(r);
        let mut head = start;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    children[u].push(w);
                    order.push(w);
                }
            }
        }
    }
    Rooted {
        order,
        children,
        roots,
    }
}

fn solve(f: &Forest, objective: CoverObjective, min_length: usize) -> Result<PathCoverResult> {
    if min_length == 0 {
        return Err(Error::InvalidInput(
            "minimum path length must be at least 1".into(),
        ));
    }
    let cap = match objective {
        CoverObjective::MaxCoverage => 2 * min_length,
        CoverObjective::MaxCount => min_length,
    };
    let params = Params {
        objective,
        min_length,
        cap,
    };
    let n = f.n();
    let rooted = root_forest(f);

    let mut tables: Vec<Option<Table>> = vec![None; n];
    for &v in rooted.order.iter().rev() {
        let kids: Vec<&Table> = rooted.children[v]
            .iter()
            .map(|&c| tables[c].as_ref().expect("children are solved first"))
            .collect();
        let merged = merge(params, &kids, None);
        tables[v] = Some(merged.table);
    }

    // Top-down reconstruction of one optimal packing.
    #[derive(Clone, Copy)]
    enum Want {
        Closed,
        Open(usize),
    }
    let mut link_up = vec![false; n];
    let mut stack: Vec<(Vertex, Want)> = rooted.roots.iter().map(|&r| (r, Want::Closed)).collect();
    let mut trace = Vec::new();
    while let Some((v, want)) = stack.pop() {
        let kids: Vec<&Table> = rooted.children[v]
            .iter()
            .map(|&c| tables[c].as_ref().unwrap())
            .collect();
        trace.clear();
        let merged = merge(params, &kids, Some(&mut trace));
        let mut state = match want {
            Want::Closed => merged.closed_from,
            Want::Open(0) => MergeState::Zero,
            Want::Open(d) => MergeState::One(d),
        };
        for (j, &c) in rooted.children[v].iter().enumerate().rev() {
            let step = &trace[j];
            let child_want = match state {
                MergeState::Zero => Want::Closed,
                MergeState::One(d) => {
                    if step.one_from_zero[d] {
                        state = MergeState::Zero;
                        link_up[c] = true;
                        Want::Open(d - 1)
                    } else {
                        Want::Closed
                    }
                }
                MergeState::Two => match step.join {
                    Some((d1, d2)) => {
                        state = MergeState::One(d1);
                        link_up[c] = true;
                        Want::Open(d2)
                    }
                    None => Want::Closed,
                },
            };
            stack.push((c, child_want));
        }
        debug_assert_eq!(state, MergeState::Zero);
    }

    let mut path_adj: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for &v in &rooted.order {
        for &c in &rooted.children[v] {
            if link_up[c] {
                path_adj[v].push(c);
                path_adj[c].push(v);
            }
        }
    }
    let mut used = vec![false; n];
    let mut paths = Vec::new();
    for s in 0..n {
        if used[s] || path_adj[s].len() != 1 {
            continue;
        }
        let mut walk = vec![s];
        used[s] = true;
        let mut prev = s;
        let mut cur = path_adj[s][0];
        loop {
            walk.push(cur);
            used[cur] = true;
            match path_adj[cur].iter().find(|&&w| w != prev) {
                Some(&next) => {
                    prev = cur;
                    cur = next;
                }
                None => break,
            }
        }
        paths.push(Path::new_unchecked(walk));
    }
    paths.sort_by(|a, b| a.vertices().cmp(b.vertices()));

    let result = PathCoverResult::from_paths(objective, min_length, paths);
    let optimum: i64 = rooted
        .roots
        .iter()
        .map(|&r| tables[r].as_ref().unwrap().closed)
        .sum();
    if result.value() as i64 != optimum || result.paths.iter().any(|p| p.length() < min_length) {
        return Err(Error::Contract(format!(
            "path cover witness (value {}) disagrees with the optimum {optimum}",
            result.value()
        )));
    }
    Ok(result)
}

/// Maximum number of vertices covered by vertex-disjoint paths of length at
/// least `min_length`, with a witnessing packing.
pub fn forest_max_path_cover(f: &Forest, min_length: usize) -> Result<PathCoverResult> {
    solve(f, CoverObjective::MaxCoverage, min_length)
}

/// Maximum number of vertex-disjoint paths of length at least `min_length`.
pub fn forest_max_path_count(f: &Forest, min_length: usize) -> Result<PathCoverResult> {
    solve(f, CoverObjective::MaxCount, min_length)
}
