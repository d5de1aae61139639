//! Vertex and edge connectivity predicates.

use crate::graph::Graph;
use itertools::Itertools;

/// `g` is k-connected if it has more than `k` vertices and stays connected
/// after deleting any set of fewer than `k` vertices.
///
/// Uses exhaustive cut enumeration for small graphs and a max-flow check for
/// larger ones; the two agree on their overlap (tested).
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    if g.n() <= k || !g.is_connected() {
        return false;
    }
    if g.n() <= 64 {
        is_k_connected_exhaustive(g, k)
    } else {
        is_k_connected_flow(g, k)
    }
}

/// Direct check of the definition: no vertex set of size < k disconnects.
pub fn is_k_connected_exhaustive(g: &Graph, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    if g.n() <= k || !g.is_connected() {
        return false;
    }
    let n = g.n();
    for size in 1..k {
        for cut in (0..n).combinations(size) {
            let mut removed = vec![false; n];
            for &v in &cut {
                removed[v] = true;
            }
            if !connected_avoiding(g, &removed) {
                return false;
            }
        }
    }
    true
}

/// Max-flow based check: vertex connectivity >= k iff every non-adjacent
/// pair has k internally disjoint paths.
pub fn is_k_connected_flow(g: &Graph, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    let n = g.n();
    if n <= k || !g.is_connected() {
        return false;
    }
    if g.regularity() == Some(n - 1) {
        // complete graph: (n-1)-connected, handled by the n > k guard
        return true;
    }
    for s in 0..n {
        for t in s + 1..n {
            if !g.has_edge(s, t) && vertex_max_flow(g, s, t) < k {
                return false;
            }
        }
    }
    true
}

fn connected_avoiding(g: &Graph, removed: &[bool]) -> bool {
    let n = g.n();
    let start = match (0..n).find(|&v| !removed[v]) {
        Some(v) => v,
        None => return true,
    };
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut stack = vec![start];
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in g.neighbours(v) {
            if !removed[w] && !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == (0..n).filter(|&v| !removed[v]).count()
}

/// Number of internally vertex-disjoint s-t paths (s, t non-adjacent), via
/// unit-capacity max flow on the split graph: each vertex v becomes
/// v_in = 2v, v_out = 2v+1.
fn vertex_max_flow(g: &Graph, s: usize, t: usize) -> usize {
    let n = g.n();
    let mut cap = std::collections::HashMap::new();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); 2 * n];
    let add = |cap: &mut std::collections::HashMap<(usize, usize), i32>,
                   adj: &mut Vec<Vec<usize>>,
                   a: usize,
                   b: usize,
                   c: i32| {
        cap.insert((a, b), c);
        cap.entry((b, a)).or_insert(0);
        adj[a].push(b);
        adj[b].push(a);
    };
    for v in 0..n {
        let c = if v == s || v == t { i32::MAX / 2 } else { 1 };
        add(&mut cap, &mut adj, 2 * v, 2 * v + 1, c);
    }
    for (u, v) in g.edges() {
        add(&mut cap, &mut adj, 2 * u + 1, 2 * v, 1);
        add(&mut cap, &mut adj, 2 * v + 1, 2 * u, 1);
    }
    let (source, sink) = (2 * s + 1, 2 * t);
    let mut flow = 0;
    loop {
        // BFS augmenting path
        let mut prev = vec![usize::MAX; 2 * n];
        prev[source] = source;
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            if v == sink {
                break;
            }
            for &w in &adj[v] {
                if prev[w] == usize::MAX && cap[&(v, w)] > 0 {
                    prev[w] = v;
                    queue.push_back(w);
                }
            }
        }
        if prev[sink] == usize::MAX {
            return flow;
        }
        let mut v = sink;
        while v != source {
            let u = prev[v];
            *cap.get_mut(&(u, v)).unwrap() -= 1;
            *cap.get_mut(&(v, u)).unwrap() += 1;
            v = u;
        }
        flow += 1;
    }
}

/// Connected with at least 2 vertices and no bridges.
pub fn is_2_edge_connected(g: &Graph) -> bool {
    g.n() >= 2 && g.is_connected() && bridges(g).is_empty()
}

/// All bridges, found by the lowpoint DFS.
pub fn bridges(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut out = Vec::new();
    let mut timer = 0;
    // iterative DFS: (vertex, parent-edge-endpoint, neighbour index)
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            if *idx < g.degree(v) {
                let w = g.neighbours(v)[*idx];
                *idx += 1;
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, v, 0));
                } else if w != parent {
                    low[v] = low[v].min(disc[w]);
                }
                // a doubled parent edge cannot occur in a simple graph, so
                // skipping exactly the tree-parent is sound
            } else {
                stack.pop();
                if let Some(&mut (u, _, _)) = stack.last_mut() {
                    low[u] = low[u].min(low[v]);
                    if low[v] > disc[u] {
                        out.push((u.min(v), u.max(v)));
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}
