//! Graph operators: line graph, products, bipartite complement, vertex
//! deletion and partition contraction.
//!
//! All operators document their vertex relabelling so that colourings and
//! certificates can be carried across.

use crate::graph::{edge, Edge, Graph, GraphError, VertexSet};

/// Line graph of `g` together with the correspondence `vertex of L(g) ->
/// edge of g`. Vertex `i` of the line graph is `edges[i]` in the canonical
/// (lexicographic) edge order of `g`.
pub fn line_graph(g: &Graph) -> (Graph, Vec<Edge>) {
    let edges = g.edges();
    let m = edges.len();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(i);
        incident[v].push(i);
    }
    let mut pairs = Vec::new();
    for list in &incident {
        for (a, &i) in list.iter().enumerate() {
            for &j in &list[a + 1..] {
                pairs.push((i.min(j), i.max(j)));
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    let lg = Graph::from_edges(m, &pairs).expect("line graph construction is simple");
    (lg, edges)
}

/// Cartesian product; vertex `(u, v)` of `g x h` is numbered `u * h.n() + v`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Graph {
    product(g, h, |gu_adj, hv_adj, same_u, same_v| (same_u && hv_adj) || (gu_adj && same_v))
}

/// Tensor (categorical) product, row-major numbering.
pub fn tensor_product(g: &Graph, h: &Graph) -> Graph {
    product(g, h, |gu_adj, hv_adj, _, _| gu_adj && hv_adj)
}

/// Lexicographic product `g[h]`, row-major numbering.
pub fn lexicographic_product(g: &Graph, h: &Graph) -> Graph {
    product(g, h, |gu_adj, hv_adj, same_u, _| gu_adj || (same_u && hv_adj))
}

fn product<F>(g: &Graph, h: &Graph, rule: F) -> Graph
where
    F: Fn(bool, bool, bool, bool) -> bool,
{
    let (ng, nh) = (g.n(), h.n());
    let n = ng * nh;
    let mut edges = Vec::new();
    for u1 in 0..ng {
        for v1 in 0..nh {
            let a = u1 * nh + v1;
            for u2 in u1..ng {
                for v2 in 0..nh {
                    let b = u2 * nh + v2;
                    if b <= a {
                        continue;
                    }
                    let gu = g.has_edge(u1, u2);
                    let hv = h.has_edge(v1, v2);
                    if rule(gu, hv, u1 == u2, v1 == v2) {
                        edges.push((a, b));
                    }
                }
            }
        }
    }
    Graph::from_edges(n, &edges).expect("product construction is simple")
}

/// Complements the edges between the two sides of a bipartition while
/// keeping each side independent. `side_a` must be one side of a proper
/// 2-colouring of `g`.
pub fn bipartite_complement(g: &Graph, side_a: &VertexSet) -> Result<Graph, GraphError> {
    let n = g.n();
    let in_a: Vec<bool> = (0..n).map(|v| side_a.contains(v)).collect();
    for (u, v) in g.edges() {
        if in_a[u] == in_a[v] {
            return Err(GraphError::NotIndependent(u, v));
        }
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if in_a[u] != in_a[v] && !g.has_edge(u, v) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Induced subgraph on `V \ remove`. Returns the graph and the map from new
/// vertex ids to old ones (order-preserving: kept vertices keep their
/// relative order).
pub fn delete_vertices(g: &Graph, remove: &VertexSet) -> (Graph, Vec<usize>) {
    let keep: Vec<usize> = (0..g.n()).filter(|&v| !remove.contains(v)).collect();
    (induced_subgraph(g, &keep), keep)
}

/// Induced subgraph on the given (sorted) vertex list; new vertex `i` is
/// `keep[i]`.
pub fn induced_subgraph(g: &Graph, keep: &[usize]) -> Graph {
    let mut new_id = vec![usize::MAX; g.n()];
    for (i, &v) in keep.iter().enumerate() {
        new_id[v] = i;
    }
    let mut edges = Vec::new();
    for &v in keep {
        for &w in g.neighbours(v) {
            if v < w && new_id[w] != usize::MAX {
                edges.push((new_id[v], new_id[w]));
            }
        }
    }
    Graph::from_edges(keep.len(), &edges).expect("induced subgraph is simple")
}

/// Quotient of `g` by a partition into blocks: block `i` becomes vertex `i`,
/// loops and edge multiplicities are dropped.
pub fn contract_partition(g: &Graph, blocks: &[Vec<usize>]) -> Result<Graph, GraphError> {
    let n = g.n();
    let mut block_of = vec![usize::MAX; n];
    for (i, block) in blocks.iter().enumerate() {
        for &v in block {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if block_of[v] != usize::MAX {
                return Err(GraphError::BadPartition(v, 2));
            }
            block_of[v] = i;
        }
    }
    if let Some(v) = (0..n).find(|&v| block_of[v] == usize::MAX) {
        return Err(GraphError::BadPartition(v, 0));
    }
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        let (a, b) = (block_of[u], block_of[v]);
        if a != b {
            edges.push(edge(a, b));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Graph::from_edges(blocks.len(), &edges)
}
