//! Distinguishing colourings: verification, and exact computation of the
//! distinguishing number and index by pruned exhaustive search.

use crate::canon::automorphism_group;
use crate::graph::{edge, Graph};
use crate::group::{PermGroup, StabChain};
use crate::operators::line_graph;
use crate::perm::Perm;
use crate::symmetry::all_elements;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DistinguishingError {
    #[error("graph is not connected")]
    NotConnected,
    #[error("no distinguishing colouring with at most {k_max} colours")]
    KMaxExceeded { k_max: usize },
    #[error("search budget of {limit} nodes exhausted")]
    BudgetExceeded { limit: u64 },
    #[error("colouring has {got} entries but the target has {want}")]
    WrongLength { got: usize, want: usize },
    #[error("colour index {0} out of range for {1} colours")]
    ColourOutOfRange(usize, usize),
}

/// What a colouring colours.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColourTarget {
    Vertices,
    Edges,
}

/// A total colouring of the vertices or edges of a graph. Edge colours are
/// indexed by the canonical edge order of the graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Colouring {
    pub target: ColourTarget,
    pub colours: Vec<usize>,
    pub k: usize,
}

impl Colouring {
    pub fn vertices(g: &Graph, colours: Vec<usize>, k: usize) -> Result<Self, DistinguishingError> {
        if colours.len() != g.n() {
            return Err(DistinguishingError::WrongLength { got: colours.len(), want: g.n() });
        }
        if let Some(&c) = colours.iter().find(|&&c| c >= k) {
            return Err(DistinguishingError::ColourOutOfRange(c, k));
        }
        Ok(Colouring { target: ColourTarget::Vertices, colours, k })
    }

    pub fn edges(g: &Graph, colours: Vec<usize>, k: usize) -> Result<Self, DistinguishingError> {
        if colours.len() != g.edge_count() {
            return Err(DistinguishingError::WrongLength {
                got: colours.len(),
                want: g.edge_count(),
            });
        }
        if let Some(&c) = colours.iter().find(|&&c| c >= k) {
            return Err(DistinguishingError::ColourOutOfRange(c, k));
        }
        Ok(Colouring { target: ColourTarget::Edges, colours, k })
    }

    /// 2-colouring with the given vertices black (colour 1), the rest white.
    pub fn from_blacks(g: &Graph, blacks: &[usize]) -> Self {
        let mut colours = vec![0; g.n()];
        for &v in blacks {
            colours[v] = 1;
        }
        Colouring { target: ColourTarget::Vertices, colours, k: 2 }
    }

    pub fn blacks(&self) -> Vec<usize> {
        self.colours
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == 1)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Node budget for the colouring searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchLimits {
    pub node_budget: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { node_budget: 100_000_000 }
    }
}

impl SearchLimits {
    pub fn with_budget(node_budget: u64) -> Self {
        SearchLimits { node_budget }
    }
}

/// Result of a distinguishing check; `witness` is a non-identity
/// colour-preserving automorphism when the colouring is not distinguishing.
#[derive(Debug, Clone)]
pub struct DistinguishingCheck {
    pub distinguishing: bool,
    pub witness: Option<Perm>,
}

/// Depth-first search over the elements of a stabilizer chain. `prune`
/// receives (level, image of that level's base point, partial product) and
/// may reject the branch; `found` inspects full non-identity elements and
/// stops the search by returning true.
fn element_search<P, F>(n: usize, chain: &StabChain, prune: &mut P, found: &mut F) -> Option<Perm>
where
    P: FnMut(usize, usize, &Perm) -> bool,
    F: FnMut(&Perm) -> bool,
{
    fn rec<P, F>(
        chain: &StabChain,
        level: usize,
        partial: &Perm,
        prune: &mut P,
        found: &mut F,
    ) -> Option<Perm>
    where
        P: FnMut(usize, usize, &Perm) -> bool,
        F: FnMut(&Perm) -> bool,
    {
        if level == chain.num_levels() {
            if !partial.is_identity() && found(partial) {
                return Some(partial.clone());
            }
            return None;
        }
        let lvl = chain.level(level);
        let mut orbit: Vec<usize> = lvl.orbit().to_vec();
        orbit.sort_unstable();
        for x in orbit {
            let image = partial.apply(x);
            let u = lvl.transversal(x).expect("orbit point has a transversal");
            let next = u.then(partial);
            if !prune(level, image, &next) {
                continue;
            }
            if let Some(hit) = rec(chain, level + 1, &next, prune, found) {
                return Some(hit);
            }
        }
        None
    }
    rec(chain, 0, &Perm::identity(n), prune, found)
}

/// True iff the only colour-preserving automorphism is the identity;
/// otherwise a witness is returned. Searches inside the automorphism group
/// restricted to the colour classes.
pub fn is_distinguishing(
    g: &Graph,
    c: &Colouring,
) -> Result<DistinguishingCheck, DistinguishingError> {
    let group = automorphism_group(g);
    is_distinguishing_with_group(g, &group, c)
}

/// Witness search for a vertex colouring over a prebuilt chain: checks the
/// generators first, then backtracks through the chain with colour pruning.
fn vertex_colour_witness(
    n: usize,
    generators: &[Perm],
    chain: &StabChain,
    colours: &[usize],
) -> Option<Perm> {
    for p in generators {
        if !p.is_identity() && (0..n).all(|v| colours[p.apply(v)] == colours[v]) {
            return Some(p.clone());
        }
    }
    element_search(
        n,
        chain,
        &mut |level, image, _| colours[image] == colours[chain.level(level).base()],
        &mut |p| (0..n).all(|v| colours[p.apply(v)] == colours[v]),
    )
}

pub fn is_distinguishing_with_group(
    g: &Graph,
    group: &PermGroup,
    c: &Colouring,
) -> Result<DistinguishingCheck, DistinguishingError> {
    let want = match c.target {
        ColourTarget::Vertices => g.n(),
        ColourTarget::Edges => g.edge_count(),
    };
    if c.colours.len() != want {
        return Err(DistinguishingError::WrongLength { got: c.colours.len(), want });
    }
    if group.is_trivial() {
        return Ok(DistinguishingCheck { distinguishing: true, witness: None });
    }
    let order = if g.n() == 0 { vec![] } else { g.bfs_order(0) };
    let witness = match c.target {
        ColourTarget::Vertices => {
            let chain = group.chain_with_base(&order);
            vertex_colour_witness(g.n(), group.generators(), &chain, &c.colours)
        }
        ColourTarget::Edges => {
            let chain = group.chain_with_base(&order);
            let edge_colour: BTreeMap<(usize, usize), usize> =
                g.edges().into_iter().zip(c.colours.iter().copied()).collect();
            let bases: Vec<usize> =
                (0..chain.num_levels()).map(|i| chain.level(i).base()).collect();
            element_search(
                g.n(),
                &chain,
                &mut |level, _image, partial| {
                    // edges between already-placed base points must keep
                    // their colour
                    let b = bases[level];
                    for &a in &bases[..=level] {
                        if g.has_edge(a, b) {
                            let img = edge(partial.apply(a), partial.apply(b));
                            if edge_colour[&img] != edge_colour[&edge(a, b)] {
                                return false;
                            }
                        }
                    }
                    true
                },
                &mut |p| {
                    g.edges().iter().all(|&(u, v)| {
                        edge_colour[&edge(p.apply(u), p.apply(v))] == edge_colour[&(u, v)]
                    })
                },
            )
        }
    };
    Ok(DistinguishingCheck { distinguishing: witness.is_none(), witness })
}

/// Reference check iterating every group element; oracle for the
/// backtracking path, usable on small groups.
pub fn is_distinguishing_brute(g: &Graph, group: &PermGroup, c: &Colouring) -> bool {
    let edge_colour: BTreeMap<(usize, usize), usize> = match c.target {
        ColourTarget::Edges => g.edges().into_iter().zip(c.colours.iter().copied()).collect(),
        ColourTarget::Vertices => BTreeMap::new(),
    };
    for p in all_elements(group) {
        if p.is_identity() {
            continue;
        }
        let preserves = match c.target {
            ColourTarget::Vertices => (0..g.n()).all(|v| c.colours[p.apply(v)] == c.colours[v]),
            ColourTarget::Edges => g.edges().iter().all(|&(u, v)| {
                edge_colour[&edge(p.apply(u), p.apply(v))] == edge_colour[&(u, v)]
            }),
        };
        if preserves {
            return false;
        }
    }
    true
}

/// Is there a group element mapping the coloured BFS prefix to a
/// lexicographically smaller colour sequence? Sound pruning test for the
/// canonical-first colouring enumeration: only mappings whose first `filled`
/// positions all land inside the coloured prefix count. Gives up (returning
/// false, which merely disables the prune) once the step budget is spent, so
/// a single test can never dominate the search.
fn has_smaller_image(
    chain: &StabChain,
    bfs: &[usize],
    position_of: &[usize],
    colour: &[usize], // usize::MAX when uncoloured
    filled: usize,
) -> bool {
    // a monochromatic prefix can only map to itself
    let first = colour[bfs[0]];
    if bfs[..filled].iter().all(|&v| colour[v] == first) {
        return false;
    }
    fn rec(
        chain: &StabChain,
        bfs: &[usize],
        position_of: &[usize],
        colour: &[usize],
        filled: usize,
        level: usize,
        partial: &Perm,
        steps: &mut u32,
    ) -> bool {
        if level >= filled {
            return false; // whole prefix mapped with equal colours
        }
        if level >= chain.num_levels() {
            // element fully determined; compare the remaining positions
            for pos in level..filled {
                let y = partial.apply(bfs[pos]);
                if position_of[y] >= filled {
                    return false;
                }
                let (cy, cb) = (colour[y], colour[bfs[pos]]);
                if cy != cb {
                    return cy < cb;
                }
            }
            return false;
        }
        let lvl = chain.level(level);
        let b = lvl.base();
        debug_assert_eq!(b, bfs[level]);
        let mut orbit: Vec<usize> = lvl.orbit().to_vec();
        orbit.sort_unstable();
        for x in orbit {
            if *steps == 0 {
                return false;
            }
            *steps -= 1;
            let y = partial.apply(x);
            if position_of[y] >= filled {
                continue; // image escapes the coloured prefix
            }
            let (cy, cb) = (colour[y], colour[b]);
            if cy > cb {
                continue;
            }
            if cy < cb {
                return true;
            }
            let u = lvl.transversal(x).expect("orbit point has a transversal");
            let next = u.then(partial);
            if rec(chain, bfs, position_of, colour, filled, level + 1, &next, steps) {
                return true;
            }
        }
        false
    }
    let mut steps: u32 = 5_000;
    rec(
        chain,
        bfs,
        position_of,
        colour,
        filled,
        0,
        &Perm::identity(colour.len()),
        &mut steps,
    )
}

/// Exact distinguishing number with one optimal colouring (the
/// lexicographically least over the BFS-from-0 vertex order).
///
/// Colourings are enumerated in BFS order and pruned to orbit
/// representatives: a partial colouring is skipped when some automorphism
/// maps it to a lexicographically smaller one. Never returns a wrong answer
/// under budget pressure; it errors instead.
pub fn distinguishing_number(
    g: &Graph,
    k_max: usize,
    limits: SearchLimits,
) -> Result<(usize, Colouring), DistinguishingError> {
    if !g.is_connected() {
        return Err(DistinguishingError::NotConnected);
    }
    let group = automorphism_group(g);
    distinguishing_number_with_group(g, &group, k_max, limits)
}

pub fn distinguishing_number_with_group(
    g: &Graph,
    group: &PermGroup,
    k_max: usize,
    limits: SearchLimits,
) -> Result<(usize, Colouring), DistinguishingError> {
    let n = g.n();
    if n == 0 {
        return Ok((1, Colouring { target: ColourTarget::Vertices, colours: vec![], k: 1 }));
    }
    let bfs = g.bfs_order(0);
    let mut position_of = vec![usize::MAX; n];
    for (i, &v) in bfs.iter().enumerate() {
        position_of[v] = i;
    }
    let chain = group.chain_with_base(&bfs);
    // pointwise stabilizers of the uncoloured tails: a non-trivial element
    // fixing bfs[t..] that also preserves the coloured prefix survives every
    // extension of that prefix, so the whole subtree can be pruned
    let tail_stabs: Vec<PermGroup> = (0..=n)
        .map(|t| {
            if t == n {
                group.clone()
            } else {
                group.pointwise_stabilizer(&bfs[t..])
            }
        })
        .collect();
    let mut budget = limits.node_budget;

    for k in 1..=k_max {
        let mut colour = vec![usize::MAX; n];
        let found = try_k(
            TryK {
                group,
                chain: &chain,
                tail_stabs: &tail_stabs,
                bfs: &bfs,
                position_of: &position_of,
                k,
                limit: limits.node_budget,
            },
            &mut colour,
            &mut budget,
        )?;
        if let Some(found) = found {
            return Ok((k, found));
        }
    }
    Err(DistinguishingError::KMaxExceeded { k_max })
}

struct TryK<'a> {
    group: &'a PermGroup,
    chain: &'a StabChain,
    tail_stabs: &'a [PermGroup],
    bfs: &'a [usize],
    position_of: &'a [usize],
    k: usize,
    limit: u64,
}

fn try_k(
    ctx: TryK<'_>,
    colour: &mut Vec<usize>,
    budget: &mut u64,
) -> Result<Option<Colouring>, DistinguishingError> {
    fn rec(
        ctx: &TryK<'_>,
        colour: &mut Vec<usize>,
        depth: usize,
        budget: &mut u64,
    ) -> Result<Option<Colouring>, DistinguishingError> {
        let n = ctx.bfs.len();
        if depth == n {
            let c = Colouring {
                target: ColourTarget::Vertices,
                colours: colour.clone(),
                k: ctx.k,
            };
            let witness =
                vertex_colour_witness(n, ctx.group.generators(), ctx.chain, &c.colours);
            return Ok(if witness.is_none() { Some(c) } else { None });
        }
        for col in 0..ctx.k {
            if *budget == 0 {
                return Err(DistinguishingError::BudgetExceeded { limit: ctx.limit });
            }
            *budget -= 1;
            colour[ctx.bfs[depth]] = col;
            if !has_smaller_image(ctx.chain, ctx.bfs, ctx.position_of, colour, depth + 1)
                && !tail_fixed_witness(ctx, colour, depth + 1)
            {
                if let Some(found) = rec(ctx, colour, depth + 1, budget)? {
                    return Ok(Some(found));
                }
            }
            colour[ctx.bfs[depth]] = usize::MAX;
        }
        Ok(None)
    }
    rec(&ctx, colour, 0, budget)
}

/// Does some non-identity element fixing every uncoloured vertex preserve
/// the coloured prefix? Such an element preserves every extension, so no
/// extension of the prefix can be distinguishing.
fn tail_fixed_witness(ctx: &TryK<'_>, colour: &[usize], filled: usize) -> bool {
    let stab = &ctx.tail_stabs[filled];
    if stab.is_trivial() {
        return false;
    }
    // tail vertices are fixed by the subgroup, so their colours are
    // irrelevant; fill them with 0 for the witness search
    let full: Vec<usize> =
        colour.iter().map(|&c| if c == usize::MAX { 0 } else { c }).collect();
    vertex_colour_witness(ctx.bfs.len(), stab.generators(), stab.chain(), &full).is_some()
}

/// Unpruned reference search: iterates every colour vector in BFS order and
/// checks each against the whole group. Exponential; for cross-checks on
/// small graphs only.
pub fn distinguishing_number_unpruned(
    g: &Graph,
    k_max: usize,
    limits: SearchLimits,
) -> Result<(usize, Colouring), DistinguishingError> {
    if !g.is_connected() {
        return Err(DistinguishingError::NotConnected);
    }
    let group = automorphism_group(g);
    let elements: Vec<Perm> =
        all_elements(&group).into_iter().filter(|p| !p.is_identity()).collect();
    let n = g.n();
    let bfs = g.bfs_order(0);
    let mut budget = limits.node_budget;
    for k in 1..=k_max {
        let mut digits = vec![0usize; n];
        'colourings: loop {
            if budget == 0 {
                return Err(DistinguishingError::BudgetExceeded { limit: limits.node_budget });
            }
            budget -= 1;
            let mut colours = vec![0; n];
            for (i, &v) in bfs.iter().enumerate() {
                colours[v] = digits[i];
            }
            let preserved = elements
                .iter()
                .any(|p| (0..n).all(|v| colours[p.apply(v)] == colours[v]));
            if !preserved {
                let c = Colouring { target: ColourTarget::Vertices, colours, k };
                return Ok((k, c));
            }
            // next vector in base k, last position fastest
            let mut i = n;
            loop {
                if i == 0 {
                    break 'colourings;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < k {
                    break;
                }
                digits[i] = 0;
            }
        }
    }
    Err(DistinguishingError::KMaxExceeded { k_max })
}

/// Exact distinguishing index result. `degenerate` is set for the
/// single-edge graph, where every edge colouring is vacuously distinguishing
/// and the index is reported as 1 by convention.
#[derive(Debug, Clone)]
pub struct IndexResult {
    pub value: usize,
    pub colouring: Colouring,
    pub degenerate: bool,
}

/// Exact distinguishing index. For graphs on at least 5 vertices this is the
/// distinguishing number of the line graph, whose automorphisms are exactly
/// the induced edge actions; smaller graphs get a direct edge search.
pub fn distinguishing_index(
    g: &Graph,
    k_max: usize,
    limits: SearchLimits,
) -> Result<IndexResult, DistinguishingError> {
    if !g.is_connected() {
        return Err(DistinguishingError::NotConnected);
    }
    let m = g.edge_count();
    if g.n() == 2 && m == 1 {
        return Ok(IndexResult {
            value: 1,
            colouring: Colouring { target: ColourTarget::Edges, colours: vec![0], k: 1 },
            degenerate: true,
        });
    }
    if m == 0 {
        return Ok(IndexResult {
            value: 1,
            colouring: Colouring { target: ColourTarget::Edges, colours: vec![], k: 1 },
            degenerate: false,
        });
    }
    if g.n() >= 5 {
        let (lg, _) = line_graph(g);
        let (value, vc) = distinguishing_number(&lg, k_max, limits)?;
        let colouring = Colouring { target: ColourTarget::Edges, colours: vc.colours, k: vc.k };
        return Ok(IndexResult { value, colouring, degenerate: false });
    }
    // direct edge search on tiny graphs
    let group = automorphism_group(g);
    let mut budget = limits.node_budget;
    for k in 1..=k_max {
        let mut digits = vec![0usize; m];
        'colourings: loop {
            if budget == 0 {
                return Err(DistinguishingError::BudgetExceeded { limit: limits.node_budget });
            }
            budget -= 1;
            let c = Colouring { target: ColourTarget::Edges, colours: digits.clone(), k };
            if is_distinguishing_brute(g, &group, &c) {
                return Ok(IndexResult { value: k, colouring: c, degenerate: false });
            }
            let mut i = m;
            loop {
                if i == 0 {
                    break 'colourings;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < k {
                    break;
                }
                digits[i] = 0;
            }
        }
    }
    Err(DistinguishingError::KMaxExceeded { k_max })
}
