//! Deterministic generators for named graphs and families: wreath graphs,
//! cycles of K33 blocks, cages, products, circulants and Cayley graphs.

use crate::graph::{Graph, VertexSet};
use crate::operators::{bipartite_complement, cartesian_product, tensor_product};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("connection set must be symmetric: missing inverse of {0}")]
    NotSymmetric(String),
    #[error("invalid group table: {0}")]
    BadGroupTable(String),
    #[error("unknown family or graph name: {0}")]
    UnknownName(String),
}

pub fn complete(n: usize) -> Graph {
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            e.push((u, v));
        }
    }
    Graph::from_edges(n, &e).expect("complete graph")
}

/// K_{a,b} with the first part on vertices 0..a.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut e = Vec::new();
    for u in 0..a {
        for v in a..a + b {
            e.push((u, v));
        }
    }
    Graph::from_edges(a + b, &e).expect("complete bipartite graph")
}

pub fn cycle(n: usize) -> Result<Graph, ConstructionError> {
    if n < 3 {
        return Err(ConstructionError::Parameter(format!("cycle needs n >= 3, got {n}")));
    }
    Ok(Graph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
        .expect("cycle"))
}

pub fn path(n: usize) -> Graph {
    if n == 0 {
        return Graph::empty(0);
    }
    Graph::from_edges(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>()).expect("path")
}

/// d-dimensional hypercube on bitmask vertices.
pub fn hypercube(d: usize) -> Graph {
    let n = 1usize << d;
    let mut e = Vec::new();
    for v in 0..n {
        for b in 0..d {
            let w = v ^ (1 << b);
            if v < w {
                e.push((v, w));
            }
        }
    }
    Graph::from_edges(n, &e).expect("hypercube")
}

/// Petersen graph as the Kneser graph on 2-subsets of a 5-set, subsets in
/// lexicographic order.
pub fn petersen() -> Graph {
    let subsets: Vec<(usize, usize)> = (0..5)
        .flat_map(|a| (a + 1..5).map(move |b| (a, b)))
        .collect();
    let mut e = Vec::new();
    for i in 0..10 {
        for j in i + 1..10 {
            let (a, b) = subsets[i];
            let (c, d) = subsets[j];
            if a != c && a != d && b != c && b != d {
                e.push((i, j));
            }
        }
    }
    Graph::from_edges(10, &e).expect("petersen")
}

/// Kneser graph on k-subsets of an n-set (lexicographic subset order);
/// `kneser(5, 2)` is the Petersen graph, `kneser(7, 3)` the odd graph O4.
pub fn kneser(n: usize, k: usize) -> Result<Graph, ConstructionError> {
    if k == 0 || k * 2 > n {
        return Err(ConstructionError::Parameter(format!("kneser needs 0 < k <= n/2, got ({n}, {k})")));
    }
    let mut subsets: Vec<u32> = (0..1u32 << n).filter(|s| s.count_ones() as usize == k).collect();
    // lexicographic order on the sorted element lists
    subsets.sort_by_key(|&s| {
        let mut key = Vec::new();
        for b in 0..n {
            if s >> b & 1 == 1 {
                key.push(b);
            }
        }
        key
    });
    let mut e = Vec::new();
    for i in 0..subsets.len() {
        for j in i + 1..subsets.len() {
            if subsets[i] & subsets[j] == 0 {
                e.push((i, j));
            }
        }
    }
    Ok(Graph::from_edges(subsets.len(), &e).expect("kneser"))
}

/// Heawood graph: incidence graph of the Fano plane with points 0..6 and
/// line i = {i, i+1, i+3} mod 7 as vertex 7+i.
pub fn heawood() -> Graph {
    let mut e = Vec::new();
    for i in 0..7 {
        for d in [0, 1, 3] {
            e.push(((i + d) % 7, 7 + i));
        }
    }
    Graph::from_edges(14, &e).expect("heawood")
}

/// Bipartite complement of the Heawood graph (4-regular on 14 vertices).
pub fn heawood_bipcomp() -> Graph {
    let h = heawood();
    let points = VertexSet::new((0..7).collect());
    bipartite_complement(&h, &points).expect("heawood is bipartite with points on one side")
}

/// Incidence graph of the projective plane of order 3: the unique
/// 4-regular girth-6 graph on 26 vertices. Points and lines are normalized
/// homogeneous coordinate triples over GF(3) in lexicographic order; point i
/// is vertex i, line j is vertex 13 + j.
pub fn cage46() -> Graph {
    let triples = normalized_triples_gf3();
    let mut e = Vec::new();
    for (p, pt) in triples.iter().enumerate() {
        for (l, ln) in triples.iter().enumerate() {
            let dot = pt[0] * ln[0] + pt[1] * ln[1] + pt[2] * ln[2];
            if dot % 3 == 0 {
                e.push((p, 13 + l));
            }
        }
    }
    Graph::from_edges(26, &e).expect("cage46")
}

fn normalized_triples_gf3() -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in 0..3u32 {
        for b in 0..3u32 {
            for c in 0..3u32 {
                if (a, b, c) == (0, 0, 0) {
                    continue;
                }
                let first = [a, b, c].into_iter().find(|&x| x != 0).unwrap();
                if first == 1 {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out.sort_unstable();
    debug_assert_eq!(out.len(), 13);
    out
}

pub fn k3_box_k3() -> Graph {
    cartesian_product(&complete(3), &complete(3))
}

pub fn k4_box_k2() -> Graph {
    cartesian_product(&complete(4), &complete(2))
}

pub fn k5_tensor_k2() -> Graph {
    tensor_product(&complete(5), &complete(2))
}

/// Wreath graph on 2n vertices: fibre i = {2i, 2i+1}, consecutive fibres
/// joined completely. Equals the lexicographic product of an n-cycle with
/// two isolated vertices.
pub fn wreath(n: usize) -> Result<Graph, ConstructionError> {
    if n < 3 {
        return Err(ConstructionError::Parameter(format!("wreath needs n >= 3, got {n}")));
    }
    let mut e = Vec::new();
    for i in 0..n {
        let j = (i + 1) % n;
        for a in 0..2 {
            for b in 0..2 {
                e.push((2 * i + a, 2 * j + b));
            }
        }
    }
    Ok(Graph::from_edges(2 * n, &e).expect("wreath"))
}

/// n disjoint K33 blocks joined in a cycle by perfect matchings. Block i
/// occupies vertices 6i..6i+5 with X_i = {6i, 6i+1, 6i+2} and
/// Y_i = {6i+3, 6i+4, 6i+5}; the matching pairs X_i with Y_{i+1} by equal
/// within-part index.
pub fn cycle_of_k33(n: usize) -> Result<Graph, ConstructionError> {
    if n < 2 {
        return Err(ConstructionError::Parameter(format!("cycle_of_k33 needs n >= 2, got {n}")));
    }
    let mut e = Vec::new();
    for i in 0..n {
        for x in 0..3 {
            for y in 3..6 {
                e.push((6 * i + x, 6 * i + y));
            }
        }
        let j = (i + 1) % n;
        for k in 0..3 {
            e.push((6 * i + k, 6 * j + 3 + k));
        }
    }
    Ok(Graph::from_edges(6 * n, &e).expect("cycle of k33"))
}

/// n disjoint cube blocks joined in a cycle: copy i occupies 8i..8i+7 with
/// cube adjacency on the low 3 bits; every even-weight vertex x of copy i is
/// matched to the antipodal vertex of copy i+1.
pub fn cycle_of_q3(n: usize) -> Result<Graph, ConstructionError> {
    if n < 3 {
        return Err(ConstructionError::Parameter(format!("cycle_of_q3 needs n >= 3, got {n}")));
    }
    let mut e = Vec::new();
    for i in 0..n {
        for x in 0..8usize {
            for b in 0..3 {
                let y = x ^ (1 << b);
                if x < y {
                    e.push((8 * i + x, 8 * i + y));
                }
            }
            if x.count_ones() % 2 == 0 {
                e.push((8 * i + x, 8 * ((i + 1) % n) + (x ^ 7)));
            }
        }
    }
    Ok(Graph::from_edges(8 * n, &e).expect("cycle of q3"))
}

/// Quadrilateral expansion of the wreath graph: one vertex per wreath edge,
/// the four edges at each wreath vertex forming a 4-cycle whose opposite
/// pairs go to the same adjacent fibre. Vertex (i, s, t), for the wreath
/// edge from (fibre i, vertex s) to (fibre i+1, vertex t), has id
/// 4i + 2s + t and is adjacent to (i+1, t, u) for u in {0, 1}.
pub fn doubled_wreath(n: usize) -> Result<Graph, ConstructionError> {
    if n < 3 {
        return Err(ConstructionError::Parameter(format!("doubled_wreath needs n >= 3, got {n}")));
    }
    let id = |i: usize, s: usize, t: usize| 4 * (i % n) + 2 * s + t;
    let mut e = Vec::new();
    for i in 0..n {
        for s in 0..2 {
            for t in 0..2 {
                for u in 0..2 {
                    e.push((id(i, s, t), id(i + 1, t, u)));
                }
            }
        }
    }
    Ok(Graph::from_edges(4 * n, &e).expect("doubled wreath"))
}

/// Arc graph of a 4-regular graph: one vertex per arc of `h`, the out-star
/// of every vertex forming a K4, with each arc matched to its reversal.
/// Vertex i corresponds to the i-th arc in the canonical arc order of `h`.
pub fn arc_graph(h: &Graph) -> Result<Graph, ConstructionError> {
    if h.regularity() != Some(4) {
        return Err(ConstructionError::Parameter("arc graph needs a 4-regular base".into()));
    }
    let arcs = h.arcs();
    let index: std::collections::BTreeMap<(usize, usize), usize> =
        arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut e = Vec::new();
    for (i, &(u, v)) in arcs.iter().enumerate() {
        for &w in h.neighbours(u) {
            if w != v && i < index[&(u, w)] {
                e.push((i, index[&(u, w)]));
            }
        }
        if i < index[&(v, u)] {
            e.push((i, index[&(v, u)]));
        }
    }
    Graph::from_edges(arcs.len(), &e).map_err(|err| ConstructionError::Parameter(err.to_string()))
}

/// Gray graph: incidence graph of the 27 points of a 3x3x3 grid with its 27
/// axis-parallel lines. Cubic, edge- but not vertex-transitive.
pub fn gray() -> Graph {
    let point = |x: usize, y: usize, z: usize| x * 9 + y * 3 + z;
    let line = |d: usize, a: usize, b: usize| 27 + d * 9 + a * 3 + b;
    let mut e = Vec::new();
    for x in 0..3 {
        for y in 0..3 {
            for z in 0..3 {
                e.push((point(x, y, z), line(0, y, z)));
                e.push((point(x, y, z), line(1, x, z)));
                e.push((point(x, y, z), line(2, x, y)));
            }
        }
    }
    Graph::from_edges(54, &e).expect("gray graph")
}

/// The 27-vertex Doyle-Holt graph: vertices (x, y) in Z9 x Z3 numbered
/// 9y + x, with (x, y) adjacent to (x +- 4^y, y + 1).
pub fn holt() -> Graph {
    let pow4 = [1usize, 4, 7];
    let mut e = Vec::new();
    for y in 0..3usize {
        for x in 0..9usize {
            for d in [pow4[y], 9 - pow4[y]] {
                e.push((9 * y + x, 9 * ((y + 1) % 3) + (x + d) % 9));
            }
        }
    }
    Graph::from_edges(27, &e).expect("holt")
}

/// Circulant graph on Z_n with symmetric connection set `steps`
/// (residues mod n; for each s the set must also contain n - s).
pub fn circulant(n: usize, steps: &[usize]) -> Result<Graph, ConstructionError> {
    if n < 1 {
        return Err(ConstructionError::Parameter("circulant needs n >= 1".into()));
    }
    let mut set: Vec<usize> = steps.iter().map(|&s| s % n).collect();
    set.sort_unstable();
    set.dedup();
    if set.contains(&0) {
        return Err(ConstructionError::Parameter("connection set contains 0".into()));
    }
    for &s in &set {
        if !set.contains(&((n - s) % n)) {
            return Err(ConstructionError::NotSymmetric(s.to_string()));
        }
    }
    let mut e = Vec::new();
    for v in 0..n {
        for &s in &set {
            let w = (v + s) % n;
            if v < w {
                e.push((v, w));
            }
        }
    }
    Graph::from_edges(n, &e).map_err(|err| ConstructionError::Parameter(err.to_string()))
}

/// Multiplication table of a finite group; element 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTable {
    pub mul: Vec<Vec<usize>>,
}

impl GroupTable {
    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn validate(&self) -> Result<(), ConstructionError> {
        let n = self.mul.len();
        let bad = |m: String| Err(ConstructionError::BadGroupTable(m));
        if self.mul.iter().any(|row| row.len() != n) {
            return bad("table is not square".into());
        }
        for x in 0..n {
            if self.mul[0][x] != x || self.mul[x][0] != x {
                return bad("element 0 is not an identity".into());
            }
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for y in 0..n {
                let r = self.mul[x][y];
                let c = self.mul[y][x];
                if r >= n || seen_row[r] || c >= n || seen_col[c] {
                    return bad(format!("row/column {x} is not a permutation"));
                }
                seen_row[r] = true;
                seen_col[c] = true;
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul[self.mul[a][b]][c] != self.mul[a][self.mul[b][c]] {
                        return bad(format!("associativity fails at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn inverse(&self, x: usize) -> usize {
        (0..self.order()).find(|&y| self.mul[x][y] == 0).expect("group element has an inverse")
    }

    pub fn cyclic(n: usize) -> GroupTable {
        GroupTable { mul: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect() }
    }

    /// Dihedral group of order 2n; element b*n + a represents r^a s^b.
    pub fn dihedral(n: usize) -> GroupTable {
        let order = 2 * n;
        let mut mul = vec![vec![0; order]; order];
        for b1 in 0..2 {
            for a1 in 0..n {
                for b2 in 0..2 {
                    for a2 in 0..n {
                        // (r^a1 s^b1)(r^a2 s^b2) = r^(a1 + a2*(-1)^b1) s^(b1+b2)
                        let a = if b1 == 1 { (a1 + n - a2 % n) % n } else { (a1 + a2) % n };
                        let b = (b1 + b2) % 2;
                        mul[b1 * n + a1][b2 * n + a2] = b * n + a;
                    }
                }
            }
        }
        GroupTable { mul }
    }

    /// Group table from the closure of permutation generators; elements are
    /// indexed by sorted image vector with the identity first.
    fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> GroupTable {
        let mut elements = std::collections::BTreeSet::new();
        let identity: Vec<usize> = (0..degree).collect();
        elements.insert(identity.clone());
        let mut queue = vec![identity];
        while let Some(p) = queue.pop() {
            for g in gens {
                let q: Vec<usize> = p.iter().map(|&x| g[x]).collect();
                if elements.insert(q.clone()) {
                    queue.push(q);
                }
            }
        }
        let elements: Vec<Vec<usize>> = elements.into_iter().collect();
        let index: std::collections::BTreeMap<&Vec<usize>, usize> =
            elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let n = elements.len();
        let mut mul = vec![vec![0; n]; n];
        for (i, p) in elements.iter().enumerate() {
            for (j, q) in elements.iter().enumerate() {
                // apply p first, then q
                let r: Vec<usize> = p.iter().map(|&x| q[x]).collect();
                mul[i][j] = index[&r];
            }
        }
        GroupTable { mul }
    }

    /// Direct product; element (a, b) has id b * |A| + a.
    pub fn direct_product(a: &GroupTable, b: &GroupTable) -> GroupTable {
        let (na, nb) = (a.order(), b.order());
        let mut mul = vec![vec![0; na * nb]; na * nb];
        for b1 in 0..nb {
            for a1 in 0..na {
                for b2 in 0..nb {
                    for a2 in 0..na {
                        mul[b1 * na + a1][b2 * na + a2] =
                            b.mul[b1][b2] * na + a.mul[a1][a2];
                    }
                }
            }
        }
        GroupTable { mul }
    }

    /// Alternating group A4 (order 12).
    pub fn a4() -> GroupTable {
        GroupTable::from_permutations(4, &[vec![1, 2, 0, 3], vec![0, 2, 3, 1]])
    }

    /// Symmetric group S4 (order 24).
    pub fn s4() -> GroupTable {
        GroupTable::from_permutations(4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]])
    }
}

/// Cayley graph of the group with the given connection set (right
/// multiplication). `s` must be identity-free and closed under inverses.
pub fn cayley(table: &GroupTable, s: &[usize]) -> Result<Graph, ConstructionError> {
    table.validate()?;
    let n = table.order();
    let mut set: Vec<usize> = s.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.iter().any(|&x| x >= n) {
        return Err(ConstructionError::Parameter("connection set element out of range".into()));
    }
    if set.contains(&0) {
        return Err(ConstructionError::Parameter("connection set contains the identity".into()));
    }
    for &x in &set {
        if !set.contains(&table.inverse(x)) {
            return Err(ConstructionError::NotSymmetric(x.to_string()));
        }
    }
    let mut e = Vec::new();
    for g in 0..n {
        for &x in &set {
            let h = table.mul[g][x];
            if g < h {
                e.push((g, h));
            }
        }
    }
    Graph::from_edges(n, &e).map_err(|err| ConstructionError::Parameter(err.to_string()))
}

/// A named family instance, as exposed by the CLI `generate` command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "family")]
pub enum FamilySpec {
    Wreath { n: usize },
    CycleOfK33 { n: usize },
    Complete { n: usize },
    CompleteBipartite { a: usize, b: usize },
    Cycle { n: usize },
    Hypercube { d: usize },
    Petersen,
    Heawood,
    HeawoodBipcomp,
    Cage46,
    K3BoxK3,
    K4BoxK2,
    K5TensorK2,
    Circulant { n: usize, steps: Vec<usize> },
    Cayley { group: String, connection: Vec<usize> },
}

/// Bundled group tables addressable by name: `zN`, `dN` (dihedral of order
/// 2N), `a4`, `s4`, and direct products of cyclic groups like `z6xz3`.
pub fn group_by_name(name: &str) -> Result<GroupTable, ConstructionError> {
    let lower = name.to_ascii_lowercase();
    if let Some((left, right)) = lower.split_once('x') {
        let a = group_by_name(left)?;
        let b = group_by_name(right)?;
        return Ok(GroupTable::direct_product(&a, &b));
    }
    if let Some(rest) = lower.strip_prefix('z') {
        let n: usize = rest
            .parse()
            .map_err(|_| ConstructionError::UnknownName(name.into()))?;
        if n == 0 {
            return Err(ConstructionError::Parameter("z0 is not a group".into()));
        }
        return Ok(GroupTable::cyclic(n));
    }
    if let Some(rest) = lower.strip_prefix('d') {
        let n: usize = rest
            .parse()
            .map_err(|_| ConstructionError::UnknownName(name.into()))?;
        if n < 3 {
            return Err(ConstructionError::Parameter("dihedral needs n >= 3".into()));
        }
        return Ok(GroupTable::dihedral(n));
    }
    match lower.as_str() {
        "a4" => Ok(GroupTable::a4()),
        "s4" => Ok(GroupTable::s4()),
        _ => Err(ConstructionError::UnknownName(name.into())),
    }
}

impl FamilySpec {
    pub fn build(&self) -> Result<Graph, ConstructionError> {
        match self {
            FamilySpec::Wreath { n } => wreath(*n),
            FamilySpec::CycleOfK33 { n } => cycle_of_k33(*n),
            FamilySpec::Complete { n } => Ok(complete(*n)),
            FamilySpec::CompleteBipartite { a, b } => Ok(complete_bipartite(*a, *b)),
            FamilySpec::Cycle { n } => cycle(*n),
            FamilySpec::Hypercube { d } => Ok(hypercube(*d)),
            FamilySpec::Petersen => Ok(petersen()),
            FamilySpec::Heawood => Ok(heawood()),
            FamilySpec::HeawoodBipcomp => Ok(heawood_bipcomp()),
            FamilySpec::Cage46 => Ok(cage46()),
            FamilySpec::K3BoxK3 => Ok(k3_box_k3()),
            FamilySpec::K4BoxK2 => Ok(k4_box_k2()),
            FamilySpec::K5TensorK2 => Ok(k5_tensor_k2()),
            FamilySpec::Circulant { n, steps } => circulant(*n, steps),
            FamilySpec::Cayley { group, connection } => {
                let table = group_by_name(group)?;
                cayley(&table, connection)
            }
        }
    }

    /// Parses `family param...` as used by the CLI.
    pub fn parse(family: &str, params: &[String]) -> Result<FamilySpec, ConstructionError> {
        let nat = |i: usize| -> Result<usize, ConstructionError> {
            params
                .get(i)
                .ok_or_else(|| ConstructionError::Parameter(format!("missing parameter {i}")))?
                .parse()
                .map_err(|e| ConstructionError::Parameter(format!("parameter {i}: {e}")))
        };
        match family.to_ascii_lowercase().as_str() {
            "wreath" => Ok(FamilySpec::Wreath { n: nat(0)? }),
            "cycle_of_k33" => Ok(FamilySpec::CycleOfK33 { n: nat(0)? }),
            "complete" => Ok(FamilySpec::Complete { n: nat(0)? }),
            "complete_bipartite" => {
                Ok(FamilySpec::CompleteBipartite { a: nat(0)?, b: nat(1)? })
            }
            "cycle" => Ok(FamilySpec::Cycle { n: nat(0)? }),
            "hypercube" => Ok(FamilySpec::Hypercube { d: nat(0)? }),
            "petersen" => Ok(FamilySpec::Petersen),
            "heawood" => Ok(FamilySpec::Heawood),
            "heawood_bipcomp" => Ok(FamilySpec::HeawoodBipcomp),
            "cage46" => Ok(FamilySpec::Cage46),
            "k3_box_k3" => Ok(FamilySpec::K3BoxK3),
            "k4_box_k2" => Ok(FamilySpec::K4BoxK2),
            "k5_tensor_k2" => Ok(FamilySpec::K5TensorK2),
            "circulant" => {
                let n = nat(0)?;
                let steps: Result<Vec<usize>, _> = params[1..].iter().map(|p| p.parse()).collect();
                let steps =
                    steps.map_err(|e| ConstructionError::Parameter(format!("steps: {e}")))?;
                if steps.is_empty() {
                    return Err(ConstructionError::Parameter("circulant needs steps".into()));
                }
                // accept a one-sided set; symmetrize
                let mut sym = steps.clone();
                for &s in &steps {
                    sym.push((n - s % n) % n);
                }
                Ok(FamilySpec::Circulant { n, steps: sym })
            }
            "cayley" => {
                let group = params
                    .first()
                    .ok_or_else(|| ConstructionError::Parameter("missing group name".into()))?
                    .clone();
                let connection: Result<Vec<usize>, _> =
                    params[1..].iter().map(|p| p.parse()).collect();
                let connection = connection
                    .map_err(|e| ConstructionError::Parameter(format!("connection: {e}")))?;
                Ok(FamilySpec::Cayley { group, connection })
            }
            other => Err(ConstructionError::UnknownName(other.into())),
        }
    }
}

/// Fixed named graphs (no parameters).
pub fn named(name: &str) -> Result<Graph, ConstructionError> {
    match name.to_ascii_lowercase().as_str() {
        "petersen" => Ok(petersen()),
        "heawood" => Ok(heawood()),
        "heawood_bipcomp" => Ok(heawood_bipcomp()),
        "cage46" => Ok(cage46()),
        "k3_box_k3" => Ok(k3_box_k3()),
        "k4_box_k2" => Ok(k4_box_k2()),
        "k5_tensor_k2" => Ok(k5_tensor_k2()),
        "holt" => Ok(holt()),
        other => Err(ConstructionError::UnknownName(other.into())),
    }
}
