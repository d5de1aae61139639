//! Automorphism groups, canonical forms and isomorphism testing via
//! partition-refinement backtracking.
//!
//! The search refines ordered partitions to equitability, individualizes
//! vertices of the first smallest non-singleton cell, and walks the tree
//! depth first. Automorphisms are discovered when two discrete leaves yield
//! the same relabelled graph; each discovery allows a sound jump back to the
//! deepest common ancestor with the matching path. Root children are also
//! pruned by the orbits of the automorphisms found so far.

use crate::graph::Graph;
use crate::group::PermGroup;
use crate::perm::Perm;

/// Ordered partition of `0..n` with stable cell ids. `order` lists live cell
/// ids in display order; splitting a cell keeps the first fragment under the
/// old id and appends the rest.
#[derive(Clone, Debug)]
struct Partition {
    cells: Vec<Vec<usize>>,
    cell_of: Vec<usize>,
    order: Vec<usize>,
}

impl Partition {
    fn unit(n: usize) -> Partition {
        Partition { cells: vec![(0..n).collect()], cell_of: vec![0; n], order: vec![0] }
    }

    fn is_discrete(&self) -> bool {
        self.cells.iter().all(|c| c.len() <= 1)
    }

    /// First (in display order) smallest cell with at least two members.
    fn target_cell(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None; // (size, position)
        for (pos, &id) in self.order.iter().enumerate() {
            let len = self.cells[id].len();
            if len >= 2 && best.map_or(true, |(s, _)| len < s) {
                best = Some((len, pos));
            }
        }
        best.map(|(_, pos)| self.order[pos])
    }

    /// Splits cell `id` into groups keyed by `key`, ordered by ascending key.
    /// Returns the ids of all resulting cells if a split happened.
    fn split_by_key(&mut self, id: usize, key: &dyn Fn(usize) -> u64) -> Option<Vec<usize>> {
        let members = &self.cells[id];
        if members.len() <= 1 {
            return None;
        }
        let mut keyed: Vec<(u64, usize)> = members.iter().map(|&v| (key(v), v)).collect();
        keyed.sort_unstable();
        if keyed.first().unwrap().0 == keyed.last().unwrap().0 {
            return None;
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut cur_key = keyed[0].0;
        let mut cur = Vec::new();
        for (k, v) in keyed {
            if k != cur_key {
                groups.push(std::mem::take(&mut cur));
                cur_key = k;
            }
            cur.push(v);
        }
        groups.push(cur);

        let pos = self.order.iter().position(|&x| x == id).expect("cell id in order");
        let mut ids = vec![id];
        self.cells[id] = groups[0].clone();
        for g in &groups[1..] {
            let new_id = self.cells.len();
            for &v in g {
                self.cell_of[v] = new_id;
            }
            self.cells.push(g.clone());
            ids.push(new_id);
        }
        self.order.splice(pos..=pos, ids.iter().copied());
        Some(ids)
    }

    /// Individualizes `v`: its cell becomes `[{v}, rest]`.
    fn individualize(&mut self, v: usize) -> Vec<usize> {
        let id = self.cell_of[v];
        self.split_by_key(id, &|u| if u == v { 0 } else { 1 })
            .expect("individualizing a non-singleton cell splits it")
    }

    /// Refines to the coarsest equitable partition (counting neighbours in
    /// splitter cells). `touched` seeds the splitter worklist; pass the live
    /// cell ids for a full refinement.
    fn refine(&mut self, g: &Graph, touched: Vec<usize>) {
        let mut queue: std::collections::VecDeque<usize> = touched.into();
        while let Some(splitter) = queue.pop_front() {
            if self.cells[splitter].is_empty() {
                continue;
            }
            let mut count = vec![0u64; g.n()];
            let mut affected: Vec<usize> = Vec::new();
            for &v in &self.cells[splitter] {
                for &w in g.neighbours(v) {
                    if count[w] == 0 {
                        affected.push(self.cell_of[w]);
                    }
                    count[w] += 1;
                }
            }
            affected.sort_unstable();
            affected.dedup();
            // order by display position for determinism
            affected.sort_by_key(|id| self.order.iter().position(|x| x == id).unwrap());
            for id in affected {
                if let Some(new_ids) = self.split_by_key(id, &|v| count[v]) {
                    for ni in new_ids {
                        queue.push_back(ni);
                    }
                }
            }
        }
    }

    /// Labelling of a discrete partition: vertex in position `i` maps to `i`.
    fn labelling(&self) -> Perm {
        let mut image = vec![0; self.cell_of.len()];
        for (i, &id) in self.order.iter().enumerate() {
            image[self.cells[id][0]] = i;
        }
        Perm::from_image(image).expect("discrete partition defines a bijection")
    }
}

/// Adjacency bitset of a relabelled graph, used to compare leaves.
fn leaf_image(g: &Graph, lab: &Perm) -> Vec<u64> {
    let n = g.n();
    let words = n.div_ceil(64);
    let mut bits = vec![0u64; n * words];
    for v in 0..n {
        let lv = lab.apply(v);
        for &w in g.neighbours(v) {
            let lw = lab.apply(w);
            bits[lv * words + lw / 64] |= 1 << (lw % 64);
        }
    }
    bits
}

struct DisjointSet {
    parent: Vec<usize>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet { parent: (0..n).collect() }
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
        }
        self.parent[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

struct SearchNode {
    partition: Partition,
    children: Vec<usize>, // unexplored target-cell vertices, ascending
    next_child: usize,
}

struct Leaf {
    image: Vec<u64>,
    labelling: Perm,
    path: Vec<usize>,
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Perm>,
    orbits: DisjointSet,
}

enum LeafOutcome {
    Continue,
    JumpTo(usize), // keep stack depths 0..=k
}

impl<'a> Search<'a> {
    fn run(g: &'a Graph) -> (Vec<Perm>, Perm) {
        let n = g.n();
        if n == 0 {
            return (Vec::new(), Perm::identity(0));
        }
        let mut search =
            Search { g, first: None, best: None, generators: Vec::new(), orbits: DisjointSet::new(n) };

        let mut root = Partition::unit(n);
        root.refine(g, vec![0]);
        let mut stack: Vec<SearchNode> = vec![search.make_node(root)];
        let mut path: Vec<usize> = Vec::new();

        while !stack.is_empty() {
            let depth = stack.len() - 1;
            let top = stack.last_mut().expect("stack is non-empty");
            if top.partition.is_discrete() && top.next_child == 0 && top.children.is_empty() {
                let outcome = search.handle_leaf(&top.partition, &path);
                match outcome {
                    LeafOutcome::Continue => {
                        stack.pop();
                        path.pop();
                    }
                    LeafOutcome::JumpTo(k) => {
                        stack.truncate(k + 1);
                        path.truncate(k);
                    }
                }
                continue;
            }
            // pick next child, with orbit pruning at the root
            let mut chosen = None;
            while top.next_child < top.children.len() {
                let v = top.children[top.next_child];
                top.next_child += 1;
                if depth == 0 {
                    let explored = &top.children[..top.next_child - 1];
                    let rv = search.orbits.find(v);
                    if explored.iter().any(|&u| search.orbits.find(u) == rv) {
                        continue;
                    }
                }
                chosen = Some(v);
                break;
            }
            match chosen {
                Some(v) => {
                    let mut part = top.partition.clone();
                    let new_ids = part.individualize(v);
                    part.refine(g, new_ids);
                    path.push(v);
                    let node = search.make_node(part);
                    stack.push(node);
                }
                None => {
                    stack.pop();
                    path.pop();
                }
            }
        }

        let canon_lab = search
            .best
            .as_ref()
            .map(|l| l.labelling.clone())
            .unwrap_or_else(|| Perm::identity(n));
        (search.generators, canon_lab)
    }

    fn make_node(&mut self, partition: Partition) -> SearchNode {
        let children = match partition.target_cell() {
            Some(id) => {
                let mut c = partition.cells[id].clone();
                c.sort_unstable();
                c
            }
            None => Vec::new(),
        };
        SearchNode { partition, children, next_child: 0 }
    }

    fn record_automorphism(&mut self, gamma: Perm) {
        debug_assert!(crate::canon::is_automorphism(self.g, &gamma));
        for v in 0..gamma.degree() {
            self.orbits.union(v, gamma.apply(v));
        }
        self.generators.push(gamma);
    }

    fn handle_leaf(&mut self, partition: &Partition, path: &[usize]) -> LeafOutcome {
        let lab = partition.labelling();
        let image = leaf_image(self.g, &lab);

        if self.first.is_none() {
            let leaf = Leaf { image: image.clone(), labelling: lab.clone(), path: path.to_vec() };
            self.best = Some(Leaf { image, labelling: lab, path: path.to_vec() });
            self.first = Some(leaf);
            return LeafOutcome::Continue;
        }

        let first = self.first.as_ref().unwrap();
        if image == first.image {
            // lab and first.labelling relabel g identically, so
            // lab . first^-1 is an automorphism
            let gamma = lab.then(&first.labelling.inverse());
            let outcome = jump_target(&gamma, path, &first.path);
            if !gamma.is_identity() {
                self.record_automorphism(gamma);
            }
            return outcome;
        }

        let best = self.best.as_ref().unwrap();
        if image == best.image {
            let gamma = lab.then(&best.labelling.inverse());
            let outcome = jump_target(&gamma, path, &best.path);
            if !gamma.is_identity() {
                self.record_automorphism(gamma);
            }
            return outcome;
        }
        if image > best.image {
            self.best = Some(Leaf { image, labelling: lab, path: path.to_vec() });
        }
        LeafOutcome::Continue
    }
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b.iter()).take_while(|(x, y)| x == y).count()
}

/// The subtree below the deepest common ancestor of the two leaf paths may
/// be skipped when the discovered automorphism maps one path onto the other
/// pointwise (the standard condition for the backjump); otherwise fall back
/// to a plain backtrack, which is always sound.
fn jump_target(gamma: &Perm, path: &[usize], other: &[usize]) -> LeafOutcome {
    let aligned = path.len() == other.len()
        && path.iter().zip(other.iter()).all(|(&a, &b)| gamma.apply(a) == b);
    if aligned {
        LeafOutcome::JumpTo(common_prefix(path, other))
    } else {
        LeafOutcome::Continue
    }
}

pub fn is_automorphism(g: &Graph, p: &Perm) -> bool {
    g.n() == p.degree()
        && g.edges().iter().all(|&(u, v)| g.has_edge(p.apply(u), p.apply(v)))
}

/// Full automorphism group of `g`.
pub fn automorphism_group(g: &Graph) -> PermGroup {
    let (gens, _) = Search::run(g);
    PermGroup::from_generators(g.n(), gens).expect("search yields valid permutations")
}

/// Canonical form: a relabelled copy of `g` that is identical for all graphs
/// isomorphic to `g`, together with the relabelling that produces it.
pub fn canonical_form(g: &Graph) -> (Graph, Perm) {
    let (_, lab) = Search::run(g);
    (g.relabelled(lab.image()), lab)
}

/// An isomorphism `g -> h` (vertex map), if the graphs are isomorphic.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> Option<Perm> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return None;
    }
    let mut gd: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut hd: Vec<usize> = (0..h.n()).map(|v| h.degree(v)).collect();
    gd.sort_unstable();
    hd.sort_unstable();
    if gd != hd {
        return None;
    }
    let (cg, lg) = canonical_form(g);
    let (ch, lh) = canonical_form(h);
    if cg != ch {
        return None;
    }
    let map = lg.then(&lh.inverse());
    debug_assert!(g.edges().iter().all(|&(u, v)| h.has_edge(map.apply(u), map.apply(v))));
    Some(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::from_edges(n, &e).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    fn petersen() -> Graph {
        Graph::from_edges(
            10,
            &[
                (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
                (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
            ],
        )
        .unwrap()
    }

    /// Brute force: all automorphisms by backtracking over images with
    /// partial adjacency checks. Independent of the refinement machinery.
    pub(crate) fn brute_force_aut_count(g: &Graph) -> u128 {
        fn extend(g: &Graph, image: &mut Vec<usize>, used: &mut Vec<bool>, count: &mut u128) {
            let v = image.len();
            if v == g.n() {
                *count += 1;
                return;
            }
            'cand: for w in 0..g.n() {
                if used[w] || g.degree(w) != g.degree(v) {
                    continue;
                }
                for u in 0..v {
                    if g.has_edge(u, v) != g.has_edge(image[u], w) {
                        continue 'cand;
                    }
                }
                image.push(w);
                used[w] = true;
                extend(g, image, used, count);
                image.pop();
                used[w] = false;
            }
        }
        let mut count = 0;
        extend(g, &mut Vec::new(), &mut vec![false; g.n()], &mut count);
        count
    }

    #[test]
    fn k5_has_order_120() {
        assert_eq!(automorphism_group(&complete(5)).order(), 120);
    }

    #[test]
    fn petersen_has_order_120() {
        let g = automorphism_group(&petersen());
        assert_eq!(g.order(), 120);
        assert_eq!(g.order(), brute_force_aut_count(&petersen()));
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        let graphs: Vec<Graph> = vec![
            cycle(6),
            complete(4),
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]).unwrap(),
            Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5), (5, 6)]).unwrap(),
            Graph::from_edges(8, &(0..8).map(|i| (i, (i + 1) % 8)).chain([(0, 4), (1, 5), (2, 6), (3, 7)]).collect::<Vec<_>>()).unwrap(),
            Graph::empty(5),
        ];
        for g in &graphs {
            assert_eq!(
                automorphism_group(g).order(),
                brute_force_aut_count(g),
                "group order mismatch on {g:?}"
            );
        }
    }

    #[test]
    fn canonical_form_identifies_isomorphs() {
        let c5a = cycle(5);
        let c5b = Graph::from_edges(5, &[(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)]).unwrap();
        let map = is_isomorphic(&c5a, &c5b).unwrap();
        for (u, v) in c5a.edges() {
            assert!(c5b.has_edge(map.apply(u), map.apply(v)));
        }
        assert!(is_isomorphic(&complete(4), &cycle(4)).is_none());
    }

    #[test]
    fn generators_are_automorphisms() {
        for g in [petersen(), cycle(7), complete(6)] {
            let group = automorphism_group(&g);
            for p in group.generators() {
                assert!(is_automorphism(&g, p));
            }
        }
    }
}
