//! Permutation groups backed by a deterministic stabilizer chain
//! (Schreier-Sims with a prescribed base order).

use crate::perm::{Perm, PermError};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// One level of a stabilizer chain: the orbit of `base` under the group
/// generated by this level's generators and all deeper levels' generators,
/// with a transversal `u_p` satisfying `u_p(base) = p`.
#[derive(Debug, Clone)]
pub struct ChainLevel {
    base: usize,
    gens: Vec<Perm>,
    orbit: Vec<usize>,
    transversal: Vec<Option<Perm>>,
}

impl ChainLevel {
    fn new(base: usize, n: usize) -> Self {
        ChainLevel { base, gens: Vec::new(), orbit: vec![base], transversal: {
            let mut t = vec![None; n];
            t[base] = Some(Perm::identity(n));
            t
        } }
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn orbit(&self) -> &[usize] {
        &self.orbit
    }

    pub fn transversal(&self, point: usize) -> Option<&Perm> {
        self.transversal[point].as_ref()
    }
}

/// Stabilizer chain over a prescribed ordering of all points. Level `i`
/// stabilizes the first `i` points of the base order; the generators stored
/// at levels `>= i` generate that stabilizer.
#[derive(Debug, Clone)]
pub struct StabChain {
    n: usize,
    base_order: Vec<usize>,
    levels: Vec<ChainLevel>,
}

impl StabChain {
    /// Builds a chain for the group generated by `gens`, using `base_order`
    /// (a permutation of `0..n`) as the prescribed base. Deterministic.
    pub fn build(n: usize, gens: &[Perm], base_order: Vec<usize>) -> StabChain {
        debug_assert_eq!(base_order.len(), n);
        let mut chain = StabChain { n, base_order, levels: Vec::new() };
        for g in gens {
            if !g.is_identity() {
                chain.store(g.clone(), 0);
            }
        }
        chain.complete();
        chain
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, i: usize) -> &ChainLevel {
        &self.levels[i]
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Strong generators fixing the first `k` base points pointwise.
    pub fn stabilizer_generators(&self, k: usize) -> Vec<Perm> {
        self.levels.iter().skip(k).flat_map(|l| l.gens.iter().cloned()).collect()
    }

    pub fn base_point(&self, i: usize) -> usize {
        self.base_order[i]
    }

    /// Sifts `g` through levels `from..`; returns the residue and the level
    /// at which sifting stopped.
    pub fn sift_from(&self, mut g: Perm, from: usize) -> (Perm, usize) {
        for i in from..self.levels.len() {
            let p = g.apply(self.levels[i].base);
            match self.levels[i].transversal[p].as_ref() {
                None => return (g, i),
                Some(u) => g = g.then(&u.inverse()),
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        let (residue, _) = self.sift_from(g.clone(), 0);
        residue.is_identity()
    }

    /// Stores `g` at the first level (at or after `from`) whose base point it
    /// moves, creating intermediate levels as needed.
    fn store(&mut self, g: Perm, from: usize) {
        let mut j = from;
        loop {
            if j >= self.levels.len() {
                let base = self.base_order[self.levels.len()];
                self.levels.push(ChainLevel::new(base, self.n));
            }
            if g.apply(self.levels[j].base) != self.levels[j].base {
                break;
            }
            j += 1;
            assert!(j < self.n, "non-identity permutation fixing every base point");
        }
        self.levels[j].gens.push(g);
    }

    fn gens_at(&self, level: usize) -> Vec<Perm> {
        self.levels[level..].iter().flat_map(|l| l.gens.iter().cloned()).collect()
    }

    fn recompute_orbit(&mut self, level: usize) {
        let gens = self.gens_at(level);
        let base = self.levels[level].base;
        let mut orbit = vec![base];
        let mut transversal: Vec<Option<Perm>> = vec![None; self.n];
        transversal[base] = Some(Perm::identity(self.n));
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            for s in &gens {
                let q = s.apply(p);
                if transversal[q].is_none() {
                    let u = transversal[p].as_ref().unwrap().then(s);
                    transversal[q] = Some(u);
                    orbit.push(q);
                }
            }
        }
        self.levels[level].orbit = orbit;
        self.levels[level].transversal = transversal;
    }

    /// Verifies levels from the deepest upward: every Schreier generator must
    /// sift to the identity through the deeper levels. Violating residues are
    /// stored and the affected levels are re-verified.
    fn complete(&mut self) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() - 1;
        loop {
            self.recompute_orbit(i);
            if let Some((residue, level)) = self.find_violation(i) {
                self.store(residue, level);
                i = level;
                continue;
            }
            if i == 0 {
                break;
            }
            i -= 1;
        }
    }

    fn find_violation(&self, level: usize) -> Option<(Perm, usize)> {
        let gens = self.gens_at(level);
        let lvl = &self.levels[level];
        for &b in &lvl.orbit {
            let u_b = lvl.transversal[b].as_ref().unwrap();
            for s in &gens {
                let sb = s.apply(b);
                let u_sb = lvl.transversal[sb].as_ref().unwrap();
                let schreier = u_b.then(s).then(&u_sb.inverse());
                if schreier.is_identity() {
                    continue;
                }
                let (residue, stop) = self.sift_from(schreier, level + 1);
                if !residue.is_identity() {
                    return Some((residue, stop.max(level + 1)));
                }
            }
        }
        None
    }
}

/// A permutation group given by generators, with a stabilizer chain for
/// order, membership and stabilizer queries.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(into = "PermGroupSerde", try_from = "PermGroupSerde")]
pub struct PermGroup {
    n: usize,
    gens: Vec<Perm>,
    chain: StabChain,
}

#[derive(Serialize, Deserialize)]
struct PermGroupSerde {
    degree: usize,
    generators: Vec<Perm>,
}

impl From<PermGroup> for PermGroupSerde {
    fn from(g: PermGroup) -> Self {
        PermGroupSerde { degree: g.n, generators: g.gens }
    }
}

impl TryFrom<PermGroupSerde> for PermGroup {
    type Error = PermError;
    fn try_from(s: PermGroupSerde) -> Result<Self, PermError> {
        PermGroup::from_generators(s.degree, s.generators)
    }
}

fn natural_base(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// Base order starting with `prefix` (duplicates dropped), then the
/// remaining points ascending.
fn base_with_prefix(n: usize, prefix: &[usize]) -> Vec<usize> {
    let mut order = Vec::with_capacity(n);
    let mut used = vec![false; n];
    for &p in prefix {
        if !used[p] {
            used[p] = true;
            order.push(p);
        }
    }
    for v in 0..n {
        if !used[v] {
            order.push(v);
        }
    }
    order
}

impl PermGroup {
    pub fn from_generators(n: usize, gens: Vec<Perm>) -> Result<PermGroup, PermError> {
        let mut clean = Vec::new();
        for g in gens {
            if g.degree() != n {
                return Err(PermError::DegreeMismatch(g.degree(), n));
            }
            if !g.is_identity() && !clean.contains(&g) {
                clean.push(g);
            }
        }
        let chain = StabChain::build(n, &clean, natural_base(n));
        Ok(PermGroup { n, gens: clean, chain })
    }

    pub fn trivial(n: usize) -> PermGroup {
        PermGroup::from_generators(n, Vec::new()).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn order(&self) -> u128 {
        self.chain.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.n && self.chain.contains(g)
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    /// Chain whose base starts with the given points.
    pub fn chain_with_base(&self, prefix: &[usize]) -> StabChain {
        StabChain::build(self.n, &self.gens, base_with_prefix(self.n, prefix))
    }

    /// Subgroup fixing every vertex of `points` pointwise.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> PermGroup {
        let mut dedup = Vec::new();
        for &p in points {
            if !dedup.contains(&p) {
                dedup.push(p);
            }
        }
        let chain = self.chain_with_base(&dedup);
        let gens = chain.stabilizer_generators(dedup.len());
        PermGroup::from_generators(self.n, gens).expect("stabilizer generators are valid")
    }

    /// Some element mapping `a` to `b`, if one exists.
    pub fn transporter(&self, a: usize, b: usize) -> Option<Perm> {
        if a == b {
            return Some(Perm::identity(self.n));
        }
        let chain = self.chain_with_base(&[a]);
        if chain.num_levels() == 0 {
            return None;
        }
        chain.level(0).transversal(b).cloned()
    }

    pub fn orbit_of_vertex(&self, v: usize) -> Vec<usize> {
        let mut orbit = vec![v];
        let mut seen = vec![false; self.n];
        seen[v] = true;
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            for g in &self.gens {
                let q = g.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
        }
        orbit.sort_unstable();
        orbit
    }

    /// Orbit partition on vertices, ordered by smallest member.
    pub fn vertex_orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for v in 0..self.n {
            if seen[v] {
                continue;
            }
            let orbit = self.orbit_of_vertex(v);
            for &p in &orbit {
                seen[p] = true;
            }
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.n <= 1 || self.orbit_of_vertex(0).len() == self.n
    }

    /// Orbit partition of the given items under an induced action.
    pub fn orbits_of_items<T, F>(&self, items: &[T], act: F) -> Vec<Vec<T>>
    where
        T: Ord + Clone,
        F: Fn(&Perm, &T) -> T,
    {
        let index: BTreeMap<T, usize> =
            items.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect();
        let mut seen = vec![false; items.len()];
        let mut out = Vec::new();
        for start in 0..items.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![items[start].clone()];
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head].clone();
                head += 1;
                for g in &self.gens {
                    let y = act(g, &x);
                    let i = *index
                        .get(&y)
                        .expect("action must stay within the item set");
                    if !seen[i] {
                        seen[i] = true;
                        orbit.push(y);
                    }
                }
            }
            orbit.sort();
            out.push(orbit);
        }
        out.sort();
        out
    }

    /// Orbits on unordered edges.
    pub fn edge_orbits(&self, edges: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
        self.orbits_of_items(edges, |g, &(u, v)| {
            let (a, b) = (g.apply(u), g.apply(v));
            (a.min(b), a.max(b))
        })
    }

    /// Orbits on ordered arcs.
    pub fn arc_orbits(&self, arcs: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
        self.orbits_of_items(arcs, |g, &(u, v)| (g.apply(u), g.apply(v)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(img: &[usize]) -> Perm {
        Perm::from_image(img.to_vec()).unwrap()
    }

    #[test]
    fn symmetric_group_order() {
        // S4 = <(0 1), (0 1 2 3)>
        let g = PermGroup::from_generators(
            4,
            vec![perm(&[1, 0, 2, 3]), perm(&[1, 2, 3, 0])],
        )
        .unwrap();
        assert_eq!(g.order(), 24);
        assert!(g.contains(&perm(&[3, 2, 1, 0])));
        assert!(g.is_transitive());
    }

    #[test]
    fn dihedral_group_and_stabilizer() {
        // D6 acting on a hexagon: rotation + reflection
        let rot = perm(&[1, 2, 3, 4, 5, 0]);
        let refl = perm(&[0, 5, 4, 3, 2, 1]);
        let g = PermGroup::from_generators(6, vec![rot, refl]).unwrap();
        assert_eq!(g.order(), 12);
        let stab = g.pointwise_stabilizer(&[0]);
        assert_eq!(stab.order(), 2);
        let stab2 = g.pointwise_stabilizer(&[0, 1]);
        assert_eq!(stab2.order(), 1);
        assert!(stab2.is_trivial());
    }

    #[test]
    fn orbit_stabilizer_identity() {
        let rot = perm(&[1, 2, 3, 4, 0, 5]);
        let g = PermGroup::from_generators(6, vec![rot]).unwrap();
        assert_eq!(g.order(), 5);
        assert_eq!(g.orbit_of_vertex(5), vec![5]);
        assert_eq!(g.orbit_of_vertex(2).len(), 5);
        for v in 0..6 {
            let orbit = g.orbit_of_vertex(v).len() as u128;
            let stab = g.pointwise_stabilizer(&[v]).order();
            assert_eq!(orbit * stab, g.order());
        }
    }

    #[test]
    fn transporter_finds_mapping_element() {
        let rot = perm(&[1, 2, 3, 4, 5, 0]);
        let g = PermGroup::from_generators(6, vec![rot]).unwrap();
        let t = g.transporter(1, 4).unwrap();
        assert_eq!(t.apply(1), 4);
        assert!(g.contains(&t));
        let h = PermGroup::trivial(6);
        assert!(h.transporter(1, 4).is_none());
    }

    #[test]
    fn edge_orbits_of_cyclic_group() {
        let rot = perm(&[1, 2, 3, 0]);
        let g = PermGroup::from_generators(4, vec![rot]).unwrap();
        let edges = vec![(0, 1), (1, 2), (2, 3), (0, 3), (0, 2), (1, 3)];
        let orbits = g.edge_orbits(&edges);
        assert_eq!(orbits.len(), 2);
        assert_eq!(orbits[0].len(), 4); // the 4-cycle edges
        assert_eq!(orbits[1].len(), 2); // the diagonals
    }
}
