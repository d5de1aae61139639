//! Symmetry predicates: transitivity levels, local groups, edge types and
//! straight/crooked 2-arcs.

use crate::canon::automorphism_group;
use crate::graph::{edge, Edge, Graph};
use crate::group::PermGroup;
use crate::perm::Perm;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

/// Hard cap for the s-arc transitivity search; hitting it is an error, never
/// a silent truncation. Only degree-2 graphs can get near it.
pub const MAX_S_ARC: usize = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph is not vertex-transitive")]
    NotVertexTransitive,
    #[error("s-arc transitivity search reached the cap s = {0}")]
    SCapReached(usize),
    #[error("local group at vertex {0} is not dihedral of order 8")]
    NotLocallyDihedral(usize),
    #[error("{0:?} is not a 2-arc")]
    NotTwoArc([usize; 3]),
    #[error("edge type disagreement on {0}-{1}: {2} vs {3}")]
    TypeDisagreement(usize, usize, usize, usize),
}

/// Transitivity levels of the automorphism action.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitivityProfile {
    pub vertex_transitive: bool,
    pub edge_transitive: bool,
    pub arc_transitive: bool,
    /// Largest s with a transitive action on s-arcs (0 = vertices). Only
    /// meaningful when `vertex_transitive`.
    pub max_s: usize,
    /// Set when the action on `max_s`-arcs is regular.
    pub s_arc_regular_at: Option<usize>,
}

/// Counts non-backtracking walks of length s.
fn count_s_arcs(g: &Graph, s: usize) -> u128 {
    if s == 0 {
        return g.n() as u128;
    }
    // walks[(u, v)] = number of s-arcs ending with the arc u -> v
    let mut walks: BTreeMap<(usize, usize), u128> = BTreeMap::new();
    for (u, v) in g.arcs() {
        walks.insert((u, v), 1);
    }
    for _ in 1..s {
        let mut next: BTreeMap<(usize, usize), u128> = BTreeMap::new();
        for (&(u, v), &c) in &walks {
            for &w in g.neighbours(v) {
                if w != u {
                    *next.entry((v, w)).or_insert(0) += c;
                }
            }
        }
        walks = next;
    }
    walks.values().sum()
}

/// Lexicographically least s-arc, if any.
fn first_s_arc(g: &Graph, s: usize) -> Option<Vec<usize>> {
    fn extend(g: &Graph, walk: &mut Vec<usize>, s: usize) -> bool {
        if walk.len() == s + 1 {
            return true;
        }
        let v = *walk.last().unwrap();
        let back = if walk.len() >= 2 { walk[walk.len() - 2] } else { usize::MAX };
        for &w in g.neighbours(v) {
            if w != back {
                walk.push(w);
                if extend(g, walk, s) {
                    return true;
                }
                walk.pop();
            }
        }
        false
    }
    for v in 0..g.n() {
        let mut walk = vec![v];
        if extend(g, &mut walk, s) {
            return Some(walk);
        }
    }
    None
}

/// Orbit size of an s-arc under the group.
fn s_arc_orbit_size(_g: &Graph, group: &PermGroup, start: &[usize]) -> u128 {
    let mut seen = std::collections::BTreeSet::new();
    seen.insert(start.to_vec());
    let mut queue = vec![start.to_vec()];
    while let Some(t) = queue.pop() {
        for p in group.generators() {
            let img: Vec<usize> = t.iter().map(|&v| p.apply(v)).collect();
            if seen.insert(img.clone()) {
                queue.push(img);
            }
        }
    }
    seen.len() as u128
}

fn is_s_arc_transitive(g: &Graph, group: &PermGroup, s: usize) -> bool {
    let total = count_s_arcs(g, s);
    if total == 0 || group.order() < total {
        return false;
    }
    let rep = match first_s_arc(g, s) {
        Some(r) => r,
        None => return false,
    };
    s_arc_orbit_size(g, group, &rep) == total
}

/// Computes the transitivity profile. Requires a connected graph.
pub fn transitivity_profile(g: &Graph) -> Result<TransitivityProfile, SymmetryError> {
    let group = automorphism_group(g);
    transitivity_profile_with_group(g, &group)
}

pub fn transitivity_profile_with_group(
    g: &Graph,
    group: &PermGroup,
) -> Result<TransitivityProfile, SymmetryError> {
    if !g.is_connected() {
        return Err(SymmetryError::NotConnected);
    }
    let vertex_transitive = group.is_transitive();
    let edges = g.edges();
    let edge_transitive = !edges.is_empty() && group.edge_orbits(&edges).len() == 1;
    let arcs = g.arcs();
    let arc_transitive = !arcs.is_empty() && group.arc_orbits(&arcs).len() == 1;

    let mut max_s = 0;
    if vertex_transitive {
        loop {
            if max_s + 1 > MAX_S_ARC {
                return Err(SymmetryError::SCapReached(MAX_S_ARC));
            }
            if is_s_arc_transitive(g, group, max_s + 1) {
                max_s += 1;
            } else {
                break;
            }
        }
    }
    let s_arc_regular_at = if vertex_transitive && count_s_arcs(g, max_s) == group.order() {
        Some(max_s)
    } else {
        None
    };
    Ok(TransitivityProfile {
        vertex_transitive,
        edge_transitive,
        arc_transitive,
        max_s,
        s_arc_regular_at,
    })
}

/// Isomorphism label of the local group, matched by order, cycle types and
/// transitivity of the 4-point action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LocalGroupLabel {
    Trivial,
    C2,
    C2xC2,
    C4,
    V4,
    D4,
    A4,
    S4,
    Other,
}

/// The vertex stabilizer acting on a vertex neighbourhood.
#[derive(Debug, Clone)]
pub struct LocalGroupInfo {
    pub vertex: usize,
    pub neighbourhood: Vec<usize>,
    /// Induced action on positions `0..deg(v)` of the sorted neighbourhood.
    pub group: PermGroup,
    pub iso_label: LocalGroupLabel,
    /// The unique 2+2 imprimitivity system when the action is dihedral of
    /// order 8, as pairs of vertex ids.
    pub blocks: Option<[(usize, usize); 2]>,
}

fn classify_local_action(group: &PermGroup) -> LocalGroupLabel {
    if group.degree() != 4 {
        return LocalGroupLabel::Other;
    }
    let order = group.order();
    let transitive = group.is_transitive();
    match order {
        1 => LocalGroupLabel::Trivial,
        2 => LocalGroupLabel::C2,
        4 if !transitive => LocalGroupLabel::C2xC2,
        4 => {
            // transitive order-4 subgroups of S4: C4 contains a 4-cycle, the
            // regular Klein group only double transpositions
            if element_with_cycle_type(group, &[4]) {
                LocalGroupLabel::C4
            } else {
                LocalGroupLabel::V4
            }
        }
        8 if transitive => LocalGroupLabel::D4,
        12 if transitive => LocalGroupLabel::A4,
        24 => LocalGroupLabel::S4,
        _ => LocalGroupLabel::Other,
    }
}

/// Exhaustive scan for an element of the given cycle type (only used on
/// groups of degree <= 4).
fn element_with_cycle_type(group: &PermGroup, ct: &[usize]) -> bool {
    all_elements(group).iter().any(|p| p.cycle_type() == ct)
}

/// All elements of a small group by closure of the generators.
pub fn all_elements(group: &PermGroup) -> Vec<Perm> {
    let mut seen = std::collections::BTreeSet::new();
    seen.insert(Perm::identity(group.degree()));
    let mut queue = vec![Perm::identity(group.degree())];
    while let Some(p) = queue.pop() {
        for g in group.generators() {
            let q = p.then(g);
            if seen.insert(q.clone()) {
                queue.push(q);
            }
        }
    }
    seen.into_iter().collect()
}

/// Local group at `v`: the action of the vertex stabilizer on the sorted
/// neighbourhood of `v`.
pub fn local_group(g: &Graph, v: usize) -> LocalGroupInfo {
    let group = automorphism_group(g);
    local_group_with_group(g, &group, v)
}

pub fn local_group_with_group(g: &Graph, group: &PermGroup, v: usize) -> LocalGroupInfo {
    let stab = group.pointwise_stabilizer(&[v]);
    let nbrs: Vec<usize> = g.neighbours(v).to_vec();
    let index: BTreeMap<usize, usize> = nbrs.iter().enumerate().map(|(i, &w)| (w, i)).collect();
    let induced: Vec<Perm> = stab
        .generators()
        .iter()
        .map(|p| {
            let image: Vec<usize> = nbrs.iter().map(|&w| index[&p.apply(w)]).collect();
            Perm::from_image(image).expect("stabilizer permutes the neighbourhood")
        })
        .collect();
    let action = PermGroup::from_generators(nbrs.len(), induced).expect("induced action");
    let iso_label = classify_local_action(&action);
    let blocks = if iso_label == LocalGroupLabel::D4 {
        let b = imprimitivity_blocks(&action).expect("dihedral action has a 2+2 block system");
        Some([(nbrs[b[0].0], nbrs[b[0].1]), (nbrs[b[1].0], nbrs[b[1].1])])
    } else {
        None
    };
    LocalGroupInfo { vertex: v, neighbourhood: nbrs, group: action, iso_label, blocks }
}

/// The unique invariant 2+2 pairing of a transitive 4-point action, if one
/// exists.
fn imprimitivity_blocks(action: &PermGroup) -> Option<[(usize, usize); 2]> {
    let pairings = [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]];
    let mut found = None;
    for pairing in pairings {
        let partner = |x: usize| -> usize {
            for &(a, b) in &pairing {
                if x == a {
                    return b;
                }
                if x == b {
                    return a;
                }
            }
            unreachable!()
        };
        let invariant = action
            .generators()
            .iter()
            .all(|p| (0..4).all(|x| p.apply(partner(x)) == partner(p.apply(x))));
        if invariant {
            if found.is_some() {
                return None; // not a unique system
            }
            found = Some(pairing);
        }
    }
    found
}

/// Per-edge types and the common per-vertex degree partition.
///
/// The type of an edge uv is the orbit size of u under the local group at v;
/// it is computed from both endpoints and checked to agree, and the multiset
/// of types at a vertex is checked to be identical for every vertex.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeTypeReport {
    pub type_of_edge: BTreeMap<Edge, usize>,
    /// Sorted descending; a partition of the valency.
    pub vertex_partition: Vec<usize>,
}

impl EdgeTypeReport {
    pub fn has_type(&self, t: usize) -> bool {
        self.vertex_partition.contains(&t)
    }

    /// Edges of the given type, sorted.
    pub fn edges_of_type(&self, t: usize) -> Vec<Edge> {
        self.type_of_edge.iter().filter(|&(_, &x)| x == t).map(|(&e, _)| e).collect()
    }
}

pub fn edge_types(g: &Graph) -> Result<EdgeTypeReport, SymmetryError> {
    let group = automorphism_group(g);
    edge_types_with_group(g, &group)
}

pub fn edge_types_with_group(
    g: &Graph,
    group: &PermGroup,
) -> Result<EdgeTypeReport, SymmetryError> {
    if g.n() == 0 || !group.is_transitive() {
        return Err(SymmetryError::NotVertexTransitive);
    }
    let orbit_size_at = |v: usize, u: usize| -> usize {
        group.pointwise_stabilizer(&[v]).orbit_of_vertex(u).len()
    };
    let mut type_of_edge: BTreeMap<Edge, usize> = BTreeMap::new();
    for orbit in group.edge_orbits(&g.edges()) {
        let &(u, v) = orbit.first().expect("orbits are non-empty");
        let t_from_v = orbit_size_at(v, u);
        let t_from_u = orbit_size_at(u, v);
        if t_from_u != t_from_v {
            return Err(SymmetryError::TypeDisagreement(u, v, t_from_u, t_from_v));
        }
        for e in orbit {
            type_of_edge.insert(e, t_from_v);
        }
    }
    // the per-vertex partition of the valency: a type-t local orbit accounts
    // for t incident edges, so a type seen c times contributes c/t parts
    let partition_at = |v: usize| -> Vec<usize> {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &w in g.neighbours(v) {
            *counts.entry(type_of_edge[&edge(v, w)]).or_insert(0) += 1;
        }
        let mut p = Vec::new();
        for (t, c) in counts {
            debug_assert_eq!(c % t, 0, "incident type counts must be multiples of the type");
            for _ in 0..c / t {
                p.push(t);
            }
        }
        p.sort_unstable_by(|a, b| b.cmp(a));
        p
    };
    let vertex_partition = partition_at(0);
    for v in 1..g.n() {
        let p = partition_at(v);
        if p != vertex_partition {
            return Err(SymmetryError::TypeDisagreement(0, v, vertex_partition[0], p[0]));
        }
    }
    Ok(EdgeTypeReport { type_of_edge, vertex_partition })
}

/// Classification of a 2-arc in a locally dihedral graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TwoArcKind {
    Straight,
    Crooked,
}

/// A 2-arc (v0, v1, v2) is straight when {v0, v2} is a block of the local
/// dihedral group at v1.
pub fn classify_two_arc(g: &Graph, arc: [usize; 3]) -> Result<TwoArcKind, SymmetryError> {
    let group = automorphism_group(g);
    classify_two_arc_with_group(g, &group, arc)
}

pub fn classify_two_arc_with_group(
    g: &Graph,
    group: &PermGroup,
    arc: [usize; 3],
) -> Result<TwoArcKind, SymmetryError> {
    let [v0, v1, v2] = arc;
    if v0 == v2 || !g.has_edge(v0, v1) || !g.has_edge(v1, v2) {
        return Err(SymmetryError::NotTwoArc(arc));
    }
    let info = local_group_with_group(g, group, v1);
    let blocks = match info.blocks {
        Some(b) => b,
        None => return Err(SymmetryError::NotLocallyDihedral(v1)),
    };
    let is_block =
        blocks.iter().any(|&(a, b)| (a == v0 && b == v2) || (a == v2 && b == v0));
    Ok(if is_block { TwoArcKind::Straight } else { TwoArcKind::Crooked })
}
