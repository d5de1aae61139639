//! Immutable simple undirected graphs on vertex set `0..n`.

use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0} is not allowed")]
    Loop(usize),
    #[error("parallel edge {0}-{1}")]
    ParallelEdge(usize, usize),
    #[error("vertex sets must be strictly increasing, got {0} after {1}")]
    Unsorted(usize, usize),
    #[error("blocks do not partition the vertex set: vertex {0} covered {1} times")]
    BadPartition(usize, usize),
    #[error("partition side is not independent: edge {0}-{1} inside a part")]
    NotIndependent(usize, usize),
    #[error("{0}")]
    Parse(String),
}

/// A sorted, duplicate-free set of vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSet(members)
    }

    /// Wraps a vector that is already strictly increasing.
    pub fn from_sorted(members: Vec<usize>) -> Result<Self, GraphError> {
        for w in members.windows(2) {
            if w[0] >= w[1] {
                return Err(GraphError::Unsorted(w[1], w[0]));
            }
        }
        Ok(VertexSet(members))
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl std::ops::Deref for VertexSet {
    type Target = [usize];
    fn deref(&self) -> &[usize] {
        &self.0
    }
}

/// An unordered edge stored as `(min, max)`.
pub type Edge = (usize, usize);

/// Canonical form of an edge.
pub fn edge(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A sorted, duplicate-free list of canonical edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeSet(Vec<Edge>);

impl EdgeSet {
    pub fn new(mut members: Vec<Edge>) -> Self {
        for e in members.iter_mut() {
            *e = edge(e.0, e.1);
        }
        members.sort_unstable();
        members.dedup();
        EdgeSet(members)
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.0.binary_search(&edge(u, v)).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Edge] {
        &self.0
    }
}

/// Immutable simple graph: no loops, no parallel edges, adjacency lists
/// sorted ascending.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={}, edges={:?})", self.n(), self.edge_count(), self.edges())
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Graph {
        Graph { adj: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            for w in list.windows(2) {
                if w[0] == w[1] {
                    return Err(GraphError::ParallelEdge(v.min(w[0]), v.max(w[0])));
                }
            }
        }
        Ok(Graph { adj })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|l| l.len()).sum::<usize>() / 2
    }

    /// Edges as canonical pairs `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Arcs as ordered pairs of adjacent vertices, sorted.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(2 * self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                out.push((u, v));
            }
        }
        out
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|l| l.len()).max().unwrap_or(0)
    }

    /// `Some(d)` if every vertex has degree `d`.
    pub fn regularity(&self) -> Option<usize> {
        let d = self.adj.first()?.len();
        if self.adj.iter().all(|l| l.len() == d) {
            Some(d)
        } else {
            None
        }
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`. `perm` must be a
    /// bijection on `0..n`.
    pub fn relabelled(&self, perm: &[usize]) -> Graph {
        let n = self.n();
        assert_eq!(perm.len(), n, "relabelling has wrong length");
        let mut adj = vec![Vec::new(); n];
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                adj[perm[u]].push(perm[v]);
            }
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        Graph { adj }
    }

    /// BFS order of the component of `start` followed by remaining vertices
    /// in increasing order (each further component explored by BFS as well).
    pub fn bfs_order(&self, start: usize) -> Vec<usize> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::new();
        let mut next_root = start;
        loop {
            seen[next_root] = true;
            queue.push_back(next_root);
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            match (0..n).find(|&v| !seen[v]) {
                Some(v) => next_root = v,
                None => break,
            }
        }
        order
    }

    /// BFS distances from `start`; unreachable vertices get `usize::MAX`.
    pub fn distances(&self, start: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        self.distances(0).iter().all(|&d| d != usize::MAX)
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for v in 0..n {
            if comp[v] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![v];
            comp[v] = id;
            let mut queue = VecDeque::from([v]);
            while let Some(x) = queue.pop_front() {
                for &w in &self.adj[x] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Length of a shortest cycle, or `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n();
        let mut best: Option<usize> = None;
        for root in 0..n {
            // BFS from root; a non-tree edge between v (being expanded) and a
            // seen vertex w closes a cycle of length dist[v] + dist[w] + 1
            // through root. The minimum over all roots is the girth.
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                if let Some(b) = best {
                    if dist[v] * 2 >= b {
                        break;
                    }
                }
                for &w in &self.adj[v] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    } else if parent[v] != w {
                        let len = dist[v] + dist[w] + 1;
                        if best.map_or(true, |b| len < b) {
                            best = Some(len);
                        }
                    }
                }
            }
        }
        best
    }

    /// Proper 2-colouring sides if the graph is bipartite (side of vertex 0's
    /// component is the one containing its smallest vertex).
    pub fn bipartition(&self) -> Option<(VertexSet, VertexSet)> {
        let n = self.n();
        let mut side = vec![u8::MAX; n];
        for root in 0..n {
            if side[root] != u8::MAX {
                continue;
            }
            side[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[v];
                        queue.push_back(w);
                    } else if side[w] == side[v] {
                        return None;
                    }
                }
            }
        }
        let a = (0..n).filter(|&v| side[v] == 0).collect();
        let b = (0..n).filter(|&v| side[v] == 1).collect();
        Some((VertexSet::new(a), VertexSet::new(b)))
    }

    /// Checks the structural invariants; used by tests and debug assertions.
    pub fn check_invariants(&self) -> Result<(), GraphError> {
        let n = self.n();
        for (v, list) in self.adj.iter().enumerate() {
            for w in list.windows(2) {
                if w[0] >= w[1] {
                    return Err(GraphError::Unsorted(w[1], w[0]));
                }
            }
            for &u in list {
                if u >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: u, n });
                }
                if u == v {
                    return Err(GraphError::Loop(v));
                }
                if !self.has_edge(u, v) || !self.adj[u].contains(&v) {
                    return Err(GraphError::Parse(format!("asymmetric adjacency {u}-{v}")));
                }
            }
        }
        Ok(())
    }
}
