//! Constructive distinguishing 2-colourings of connected 4-valent
//! vertex-transitive graphs.
//!
//! One constructor per classification rule, each emitting a colouring that
//! is machine-verified before being returned, plus the master dispatcher
//! that either produces a verified 2-colouring or recognizes the graph as a
//! member of an exceptional family.

use crate::canon::{automorphism_group, is_isomorphic};
use crate::connectivity::is_2_edge_connected;
use crate::constructions;
use crate::distinguishing::{
    distinguishing_number_with_group, is_distinguishing_with_group, Colouring,
    DistinguishingError, SearchLimits,
};
use crate::graph::{Graph, GraphError, VertexSet};
use crate::group::PermGroup;
use crate::operators::{contract_partition, delete_vertices, induced_subgraph, line_graph};
use crate::symmetry::{
    edge_types_with_group, local_group_with_group, transitivity_profile_with_group,
    EdgeTypeReport, LocalGroupLabel, SymmetryError, TransitivityProfile, TwoArcKind, MAX_S_ARC,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ColouringError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Search(#[from] DistinguishingError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn pre(msg: impl Into<String>) -> ColouringError {
    ColouringError::Precondition(msg.into())
}

fn internal(msg: impl Into<String>) -> ColouringError {
    ColouringError::Internal(msg.into())
}

/// Exceptional 4-valent vertex-transitive graphs: every member has
/// distinguishing number 3, except K5 and the wreath graph on 4 fibres
/// (the complete bipartite K44), which have distinguishing number 5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "family", content = "n")]
pub enum ExceptionalFamily {
    K5,
    K3BoxK3,
    K4BoxK2,
    K5TensorK2,
    Wreath(usize),
}

impl ExceptionalFamily {
    /// Distinguishing number of the family member.
    pub fn expected_d(&self) -> usize {
        match self {
            ExceptionalFamily::K5 | ExceptionalFamily::Wreath(4) => 5,
            _ => 3,
        }
    }

    pub fn display_name(&self) -> String {
        match self {
            ExceptionalFamily::K5 => "K5".into(),
            ExceptionalFamily::K3BoxK3 => "K3[]K3".into(),
            ExceptionalFamily::K4BoxK2 => "K4[]K2".into(),
            ExceptionalFamily::K5TensorK2 => "K5xK2".into(),
            ExceptionalFamily::Wreath(4) => "W4=K4,4".into(),
            ExceptionalFamily::Wreath(n) => format!("W{n}"),
        }
    }
}

/// Which constructor produced the result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    WreathRecognized,
    Type1All,
    Type1TwoSingletonsSingleCycle,
    Type1TwoSingletonsMultiCycle,
    Type1ComponentDistinguishing,
    Type1ComponentFigure,
    Type1UniqueEdges,
    Type1K33Cycle,
    Type1K4BoxK2,
    HalfArc,
    SweepSingleCycle,
    Sweep,
    TriangleOrbits,
    TriangleOrbitsK4,
    TriangleOrbitsK33,
    Girth3K5,
    Girth3K3BoxK3,
    Girth3LineGraph,
    CageFigure,
    Girth5Tree,
    ManyCommonK5xK2,
    TwoArcGirth4,
    ArcRegular,
    CrookedPath,
    StraightRecursion,
}

/// One applied rule in a construction.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceStep {
    pub rule: String,
    pub detail: String,
}

/// Audit trail of a construction; `verified` is true exactly when the final
/// colouring passed the distinguishing check or, for exceptional outcomes,
/// when family membership was confirmed by isomorphism.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstructionTrace {
    pub branch: Branch,
    pub steps: Vec<TraceStep>,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inner: Option<Box<ConstructionTrace>>,
}

impl ConstructionTrace {
    fn new(branch: Branch) -> Self {
        ConstructionTrace { branch, steps: Vec::new(), verified: false, inner: None }
    }

    fn step(&mut self, rule: &str, detail: impl Into<String>) {
        self.steps.push(TraceStep { rule: rule.into(), detail: detail.into() });
    }
}

/// Result of the master dispatcher.
#[derive(Debug, Clone)]
pub enum Outcome {
    Coloured { colouring: Colouring, trace: ConstructionTrace },
    Exceptional { family: ExceptionalFamily, trace: ConstructionTrace },
}

impl Outcome {
    pub fn trace(&self) -> &ConstructionTrace {
        match self {
            Outcome::Coloured { trace, .. } => trace,
            Outcome::Exceptional { trace, .. } => trace,
        }
    }

    pub fn colouring(&self) -> Option<&Colouring> {
        match self {
            Outcome::Coloured { colouring, .. } => Some(colouring),
            Outcome::Exceptional { .. } => None,
        }
    }
}

/// Precomputed symmetry data shared by the constructors.
pub struct GraphCtx {
    pub group: PermGroup,
    pub report: EdgeTypeReport,
    pub profile: TransitivityProfile,
    pub limits: SearchLimits,
}

impl GraphCtx {
    pub fn new(g: &Graph, limits: SearchLimits) -> Result<GraphCtx, ColouringError> {
        if !g.is_connected() {
            return Err(pre("graph is not connected"));
        }
        if g.regularity() != Some(4) {
            return Err(pre("graph is not 4-valent"));
        }
        let group = automorphism_group(g);
        if !group.is_transitive() {
            return Err(pre("graph is not vertex-transitive"));
        }
        let report = edge_types_with_group(g, &group)?;
        let profile = transitivity_profile_with_group(g, &group)?;
        Ok(GraphCtx { group, report, profile, limits })
    }
}

/// Verification gate: a constructor may not return an unverified colouring.
fn verified(
    g: &Graph,
    group: &PermGroup,
    colouring: Colouring,
    mut trace: ConstructionTrace,
) -> Result<Outcome, ColouringError> {
    let check = is_distinguishing_with_group(g, group, &colouring)?;
    if !check.distinguishing {
        return Err(internal(format!(
            "constructed colouring is not distinguishing (branch {:?})",
            trace.branch
        )));
    }
    trace.verified = true;
    Ok(Outcome::Coloured { colouring, trace })
}

fn exceptional(family: ExceptionalFamily, mut trace: ConstructionTrace) -> Outcome {
    trace.verified = true;
    Outcome::Exceptional { family, trace }
}

// ---------------------------------------------------------------------------
// figure colourings

/// Named explicit colourings with a reference graph and, where a rule needs
/// it, an anchored vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureCase {
    Cage46,
    CycleOfK33(usize),
    Q3Anchored,
    PetersenAnchored,
}

#[derive(Debug, Clone)]
pub struct FigureColouring {
    pub graph: Graph,
    pub colouring: Colouring,
    /// Vertex whose colour-preserving stabilizer must be trivial, for the
    /// component-anchoring rule.
    pub anchor: Option<usize>,
}

/// The explicit colourings: the girth-6 cage, the cycles of K33 blocks, and
/// the anchored cube and Petersen colourings.
pub fn figure_colouring(case: FigureCase) -> Result<FigureColouring, ColouringError> {
    match case {
        FigureCase::Cage46 => figure_cage46(),
        FigureCase::CycleOfK33(n) => figure_cycle_of_k33(n),
        FigureCase::Q3Anchored => {
            // prism drawing of the cube: outer square 0..3, inner 4..7
            let mut edges = vec![];
            for i in 0..4 {
                edges.push((i, (i + 1) % 4));
                edges.push((4 + i, 4 + (i + 1) % 4));
                edges.push((i, 4 + i));
            }
            let graph = Graph::from_edges(8, &edges)?;
            let colouring = Colouring::from_blacks(&graph, &[0, 1, 4, 5, 6, 7]);
            Ok(FigureColouring { graph, colouring, anchor: Some(1) })
        }
        FigureCase::PetersenAnchored => {
            // outer 5-cycle 0..4, spokes, inner pentagram 5..9
            let mut edges = vec![];
            for i in 0..5 {
                edges.push((i, (i + 1) % 5));
                edges.push((i, 5 + i));
                edges.push((5 + i, 5 + (i + 2) % 5));
            }
            let graph = Graph::from_edges(10, &edges)?;
            let colouring = Colouring::from_blacks(&graph, &[4, 5, 6, 7, 8, 9]);
            Ok(FigureColouring { graph, colouring, anchor: Some(1) })
        }
    }
}

fn figure_cage46() -> Result<FigureColouring, ColouringError> {
    let graph = constructions::cage46();
    let v = 0usize;
    let level1: Vec<usize> = graph.neighbours(v).to_vec();
    let mut blacks: Vec<usize> = level1.clone();
    let mut level2: Vec<Vec<usize>> = Vec::new();
    for (i, &vi) in level1.iter().enumerate() {
        let children: Vec<usize> =
            graph.neighbours(vi).iter().copied().filter(|&w| w != v).collect();
        if children.len() != 3 {
            return Err(internal("cage level-2 fan is not a 3-set"));
        }
        for (j, &w) in children.iter().enumerate() {
            // the i-th neighbour's j-th child is black below the diagonal,
            // giving the neighbours 0, 1, 2, 3 black children respectively
            if i > j {
                blacks.push(w);
            }
        }
        level2.push(children);
    }
    // two distinguished distance-3 vertices: the unique common neighbours of
    // two same-side pairs in the second level
    let common = |a: usize, b: usize| -> Result<usize, ColouringError> {
        let hits: Vec<usize> = graph
            .neighbours(a)
            .iter()
            .copied()
            .filter(|w| graph.neighbours(b).contains(w))
            .collect();
        match hits.as_slice() {
            [w] => Ok(*w),
            other => Err(internal(format!(
                "same-side vertices {a},{b} have {} common neighbours",
                other.len()
            ))),
        }
    };
    let w1 = common(level2[1][1], level2[2][1])?;
    let w2 = common(level2[1][1], level2[2][2])?;
    if w1 == w2 {
        return Err(internal("distance-3 markers coincide"));
    }
    blacks.push(w1);
    blacks.push(w2);
    let colouring = Colouring::from_blacks(&graph, &blacks);
    Ok(FigureColouring { graph, colouring, anchor: None })
}

fn figure_cycle_of_k33(n: usize) -> Result<FigureColouring, ColouringError> {
    let graph =
        constructions::cycle_of_k33(n).map_err(|e| pre(format!("cycle of K33 blocks: {e}")))?;
    // X_i gets (black, white, black); Y_i gets (white, black, black), except
    // the block receiving the matching from X_0, which gets (white, white,
    // black), creating the unique all-white matching edge
    let special = 1 % n;
    let mut blacks = Vec::new();
    for i in 0..n {
        blacks.push(6 * i);
        blacks.push(6 * i + 2);
        blacks.push(6 * i + 5);
        if i != special {
            blacks.push(6 * i + 4);
        }
    }
    let colouring = Colouring::from_blacks(&graph, &blacks);
    Ok(FigureColouring { graph, colouring, anchor: None })
}

// ---------------------------------------------------------------------------
// shared helpers

/// Components of the spanning subgraph keeping only edges of type >= 2.
fn higher_type_components(g: &Graph, report: &EdgeTypeReport) -> (Graph, Vec<Vec<usize>>) {
    let keep: Vec<(usize, usize)> = report
        .type_of_edge
        .iter()
        .filter(|&(_, &t)| t >= 2)
        .map(|(&e, _)| e)
        .collect();
    let sub = Graph::from_edges(g.n(), &keep).expect("edge subset of a simple graph");
    let comps = sub.components();
    (sub, comps)
}

/// Decomposes a 2-regular spanning subgraph into cycles, each listed in
/// rotation order starting from its least vertex.
fn cycles_of(sub: &Graph) -> Result<Vec<Vec<usize>>, ColouringError> {
    if sub.regularity() != Some(2) {
        return Err(internal("expected a 2-regular subgraph"));
    }
    let mut seen = vec![false; sub.n()];
    let mut out = Vec::new();
    for start in 0..sub.n() {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut prev = start;
        let mut cur = sub.neighbours(start)[0];
        while cur != start {
            seen[cur] = true;
            cycle.push(cur);
            let next = sub
                .neighbours(cur)
                .iter()
                .copied()
                .find(|&w| w != prev)
                .expect("2-regular vertex has another neighbour");
            prev = cur;
            cur = next;
        }
        out.push(cycle);
    }
    Ok(out)
}

/// Blacks for the standard distinguishing 2-colouring of a cycle of length
/// at least 6 given in rotation order: positions 0, 1 and 3.
fn long_cycle_blacks(cycle: &[usize]) -> Vec<usize> {
    vec![cycle[0], cycle[1], cycle[3]]
}

/// Checks that the only automorphism of `ref_graph` fixing `anchor` and
/// preserving `c` is the identity.
fn anchored_stabilizer_is_trivial(
    ref_graph: &Graph,
    ref_group: &PermGroup,
    c: &Colouring,
    anchor: usize,
) -> Result<bool, ColouringError> {
    let stab = ref_group.pointwise_stabilizer(&[anchor]);
    let check = is_distinguishing_with_group(ref_graph, &stab, c)?;
    Ok(check.distinguishing)
}

/// The unique common vertex of two vertex sets, if there is exactly one.
fn single_shared_vertex(a: &[usize], b: &[usize]) -> Option<usize> {
    let mut shared = a.iter().filter(|x| b.contains(x));
    match (shared.next(), shared.next()) {
        (Some(&x), None) => Some(x),
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// type-1 pipeline

/// Rule for graphs in which every vertex lies on exactly one type-1 edge,
/// the higher-type subgraph is disconnected, and component pairs are joined
/// by at most one type-1 edge: contract the components, 2-colour via a
/// distinguishing colouring of the quotient, and encode quotient colours as
/// black-counts inside the components.
pub fn colour_type1_unique(g: &Graph, ctx: &GraphCtx) -> Result<Outcome, ColouringError> {
    let mut trace = ConstructionTrace::new(Branch::Type1UniqueEdges);
    let t1 = ctx.report.edges_of_type(1);
    let mut incident = vec![0usize; g.n()];
    for &(u, v) in &t1 {
        incident[u] += 1;
        incident[v] += 1;
    }
    if incident.iter().any(|&c| c != 1) {
        return Err(pre("some vertex is not on exactly one type-1 edge"));
    }
    let (_, comps) = higher_type_components(g, &ctx.report);
    if comps.len() < 2 {
        return Err(pre("higher-type subgraph is connected"));
    }
    let mut comp_of = vec![0usize; g.n()];
    for (i, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_of[v] = i;
        }
    }
    let mut pair_count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &(u, v) in &t1 {
        let key = (comp_of[u].min(comp_of[v]), comp_of[u].max(comp_of[v]));
        *pair_count.entry(key).or_insert(0) += 1;
    }
    if pair_count.values().any(|&c| c > 1) {
        return Err(pre("two components are joined by more than one type-1 edge"));
    }
    let k = comps[0].len();
    let quotient = contract_partition(g, &comps)?;
    trace.step(
        "contract-components",
        format!("{} components of size {k}; quotient on {} vertices", comps.len(), quotient.n()),
    );
    let (dq, qc) = distinguishing_number_with_group(
        &quotient,
        &automorphism_group(&quotient),
        k + 1,
        ctx.limits,
    )?;
    trace.step("quotient-colouring", format!("distinguishing number {dq} on the quotient"));
    // the quotient colour of each component becomes its number of blacks
    let mut blacks = Vec::new();
    for (i, comp) in comps.iter().enumerate() {
        let count = qc.colours[i];
        blacks.extend(comp.iter().copied().take(count));
    }
    trace.step("black-counts", format!("{} black vertices", blacks.len()));
    verified(g, &ctx.group, Colouring::from_blacks(g, &blacks), trace)
}

/// Rule colouring one component with a single black vertex and transporting
/// a reference colouring into every other component, anchored at the entry
/// vertices of shortest paths back to the black vertex.
///
/// The reference colouring must leave no non-trivial automorphism of the
/// reference graph that fixes the anchor; a plain distinguishing colouring
/// satisfies this for any anchor.
pub fn colour_via_component(
    g: &Graph,
    ctx: &GraphCtx,
    figure: &FigureColouring,
    branch: Branch,
) -> Result<Outcome, ColouringError> {
    let mut trace = ConstructionTrace::new(branch);
    let (sub, comps) = higher_type_components(g, &ctx.report);
    let ref_graph = &figure.graph;
    let ref_group = automorphism_group(ref_graph);
    let anchor = figure.anchor.unwrap_or(0);
    let mut ref_colouring = figure.colouring.clone();

    if !anchored_stabilizer_is_trivial(ref_graph, &ref_group, &ref_colouring, anchor)? {
        return Err(pre("reference colouring has a non-trivial anchored stabilizer"));
    }

    if comps.len() == 1 {
        // the higher-type subgraph spans the graph; a distinguishing
        // colouring of it is also distinguishing for the whole graph
        if figure.anchor.is_some() {
            return Err(internal("anchored component rule requires several components"));
        }
        let full = is_distinguishing_with_group(ref_graph, &ref_group, &ref_colouring)?;
        if !full.distinguishing {
            return Err(pre("single-component rule needs a distinguishing reference colouring"));
        }
        let phi = is_isomorphic(ref_graph, &sub)
            .ok_or_else(|| pre("reference graph does not match the component"))?;
        let blacks: Vec<usize> = ref_colouring.blacks().iter().map(|&x| phi.apply(x)).collect();
        trace.step("single-component", "transported distinguishing colouring");
        return verified(g, &ctx.group, Colouring::from_blacks(g, &blacks), trace);
    }

    // keep the number of blacks away from exactly one
    if ref_colouring.blacks().len() == 1 {
        let mut colours = ref_colouring.colours.clone();
        colours[anchor] = 1 - colours[anchor];
        ref_colouring = Colouring::vertices(ref_graph, colours, 2)?;
        trace.step("flip-anchor", "reference colouring had exactly one black vertex");
    }

    // the component containing the least vertex hosts the unique black marker
    let v1 = 0usize;
    let h1_index =
        comps.iter().position(|c| c.contains(&v1)).expect("vertex 0 lies in some component");
    let h1 = VertexSet::new(comps[h1_index].clone());

    // distances from v1 in (G - H1) + v1
    let keep: Vec<usize> = (0..g.n()).filter(|&v| v == v1 || !h1.contains(v)).collect();
    let reduced = induced_subgraph(g, &keep);
    let v1_local = keep.binary_search(&v1).expect("v1 kept");
    let dist_local = reduced.distances(v1_local);
    let mut dist = vec![usize::MAX; g.n()];
    for (local, &global) in keep.iter().enumerate() {
        dist[global] = dist_local[local];
    }

    let mut blacks = vec![v1];
    for (i, comp) in comps.iter().enumerate() {
        if i == h1_index {
            continue;
        }
        let entry = comp
            .iter()
            .copied()
            .min_by_key(|&x| (dist[x], x))
            .expect("components are non-empty");
        if dist[entry] == usize::MAX {
            return Err(internal("component unreachable from the marked vertex"));
        }
        // isomorphism from the reference onto this component (as a subgraph
        // of the higher-type graph) mapping the anchor to the entry vertex
        let comp_graph = induced_subgraph(&sub, comp);
        let phi = is_isomorphic(ref_graph, &comp_graph)
            .ok_or_else(|| pre("component does not match the reference graph"))?;
        let entry_local = comp.binary_search(&entry).expect("entry in component");
        let comp_group = automorphism_group(&comp_graph);
        let tau = comp_group
            .transporter(phi.apply(anchor), entry_local)
            .ok_or_else(|| internal("component is not vertex-transitive"))?;
        for x in ref_colouring.blacks() {
            blacks.push(comp[tau.apply(phi.apply(x))]);
        }
        trace.step(
            "anchor-component",
            format!("component {i} entered at vertex {entry} (distance {})", dist[entry]),
        );
    }
    verified(g, &ctx.group, Colouring::from_blacks(g, &blacks), trace)
}

/// Dispatcher for graphs with at least one type-1 edge.
pub fn colour_type1(g: &Graph, ctx: &GraphCtx) -> Result<Outcome, ColouringError> {
    let partition = &ctx.report.vertex_partition;
    if !partition.contains(&1) {
        return Err(pre("no type-1 edges"));
    }
    if partition == &vec![1, 1, 1, 1] {
        // trivial vertex stabilizer: one black vertex suffices
        let mut trace = ConstructionTrace::new(Branch::Type1All);
        trace.step("single-black", "trivial vertex stabilizer");
        return verified(g, &ctx.group, Colouring::from_blacks(g, &[0]), trace);
    }
    if partition == &vec![2, 1, 1] {
        return colour_type1_two_singletons(g, ctx);
    }
    if partition == &vec![3, 1] {
        return colour_type1_triple(g, ctx);
    }
    Err(internal(format!("unexpected type partition {partition:?}")))
}

/// (2,1,1): the type-2 edges form disjoint cycles.
fn colour_type1_two_singletons(g: &Graph, ctx: &GraphCtx) -> Result<Outcome, ColouringError> {
    let keep = ctx.report.edges_of_type(2);
    let sub = Graph::from_edges(g.n(), &keep)?;
    let cycles = cycles_of(&sub)?;
    if cycles.len() == 1 {
        // a single spanning cycle; no vertex-transitive graph actually
        // realizes this subcase, but the rule stands for completeness
        let mut trace = ConstructionTrace::new(Branch::Type1TwoSingletonsSingleCycle);
        let cycle = &cycles[0];
        if cycle.len() < 6 {
            return Err(internal("single higher-type cycle shorter than 6"));
        }
        trace.step("cycle-colouring", format!("single cycle of length {}", cycle.len()));
        return verified(
            g,
            &ctx.group,
            Colouring::from_blacks(g, &long_cycle_blacks(cycle)),
            trace,
        );
    }
    let m = cycles[0].len();
    if cycles.iter().any(|c| c.len() != m) {
        return Err(internal("type-2 cycles have unequal lengths"));
    }
    let ref_graph = constructions::cycle(m).map_err(|e| internal(e.to_string()))?;
    let figure = FigureColouring {
        colouring: Colouring::from_blacks(&ref_graph, &[0, 1]),
        graph: ref_graph,
        anchor: Some(0),
    };
    colour_via_component(g, ctx, &figure, Branch::Type1TwoSingletonsMultiCycle)
}

/// (3,1): the higher-type components are cubic arc-transitive graphs.
fn colour_type1_triple(g: &Graph, ctx: &GraphCtx) -> Result<Outcome, ColouringError> {
    let (sub, comps) = higher_type_components(g, &ctx.report);
    let comp_graph = induced_subgraph(&sub, &comps[0]);
    let comp_group = automorphism_group(&comp_graph);

    // 2-distinguishable components: transport a found colouring
    match distinguishing_number_with_group(&comp_graph, &comp_group, 2, ctx.limits) {
        Ok((_, c)) => {
            let figure = FigureColouring { graph: comp_graph, colouring: c, anchor: None };
            return colour_via_component(g, ctx, &figure, Branch::Type1ComponentDistinguishing);
        }
        Err(DistinguishingError::KMaxExceeded { .. }) => {}
        Err(e) => return Err(e.into()),
    }

    // otherwise the component is one of the exceptional cubic graphs
    if comps.len() == 1 {
        return Err(internal(
            "connected higher-type subgraph with a non-2-distinguishable component",
        ));
    }
    if is_isomorphic(&comp_graph, &constructions::hypercube(3)).is_some() {
        let figure = figure_colouring(FigureCase::Q3Anchored)?;
        return colour_via_component(g, ctx, &figure, Branch::Type1ComponentFigure);
    }
    if is_isomorphic(&comp_graph, &constructions::petersen()).is_some() {
        let figure = figure_colouring(FigureCase::PetersenAnchored)?;
        return colour_via_component(g, ctx, &figure, Branch::Type1ComponentFigure);
    }

    let is_k4 = is_isomorphic(&comp_graph, &constructions::complete(4)).is_some();
    let is_k33 = is_isomorphic(&comp_graph, &constructions::complete_bipartite(3, 3)).is_some();
    if !is_k4 && !is_k33 {
        return Err(internal("cubic component outside the exceptional list fails 2-colouring"));
    }
    // sparse connections: the unique-edge contraction rule applies
    if colourable_by_unique_rule(g, ctx) {
        return colour_type1_unique(g, ctx);
    }
    if is_k4 {
        let mut trace = ConstructionTrace::new(Branch::Type1K4BoxK2);
        if is_isomorphic(g, &constructions::k4_box_k2()).is_none() {
            return Err(internal("K4 components densely joined but the graph is not K4[]K2"));
        }
        trace.step("recognized", "K4 components joined by parallel matchings");
        return Ok(exceptional(ExceptionalFamily::K4BoxK2, trace));
    }
    // K33 components densely joined: the graph is a cycle of K33 blocks
    let n_blocks = comps.len();
    let figure = figure_colouring(FigureCase::CycleOfK33(n_blocks))?;
    let phi = is_isomorphic(&figure.graph, g)
        .ok_or_else(|| internal("K33 components densely joined but not a K33 cycle"))?;
    let blacks: Vec<usize> = figure.colouring.blacks().iter().map(|&x| phi.apply(x)).collect();
    let mut trace = ConstructionTrace::new(Branch::Type1K33Cycle);
    trace.step("figure", format!("matched the {n_blocks}-block K33 cycle"));
    verified(g, &ctx.group, Colouring::from_blacks(g, &blacks), trace)
}

fn colourable_by_unique_rule(g: &Graph, ctx: &GraphCtx) -> bool {
    let t1 = ctx.report.edges_of_type(1);
    let mut incident = vec![0usize; g.n()];
    for &(u, v) in &t1 {
        incident[u] += 1;
        incident[v] += 1;
    }
    if incident.iter().any(|&c| c != 1) {
        return false;
    }
    let (_, comps) = higher_type_components(g, &ctx.report);
    if comps.len() < 2 {
        return false;
    }
    let mut comp_of = vec![0usize; g.n()];
    for (i, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_of[v] = i;
        }
    }
    let mut pair_count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &(u, v) in &t1 {
        let key = (comp_of[u].min(comp_of[v]), comp_of[u].max(comp_of[v]));
        *pair_count.entry(key).or_insert(0) += 1;
    }
    pair_count.values().all(|&c| c <= 1)
}

// ---------------------------------------------------------------------------
// type-2 pipeline

/// Half-arc-transitive rule: orient one arc orbit, find the level at which
/// the group acts regularly on directed walks, and blacken one such walk
/// with no closing arc.
pub fn colour_half_arc_transitive(g: &Graph, ctx: &GraphCtx) -> Result<Outcome, ColouringError> {
    if !ctx.profile.edge_transitive {
        return Err(pre("graph is not edge-transitive"));
    }
    if ctx.profile.arc_transitive {
        return Err(pre("graph is arc-transitive"));
    }
    if ctx.report.vertex_partition != vec![2, 2] {
        return Err(pre("edge type partition is not two pairs"));
    }
    let mut trace = ConstructionTrace::new(Branch::HalfArc);
    let arcs = g.arcs();
    let orbits = ctx.group.arc_orbits(&arcs);
    if orbits.len() != 2 {
        return Err(internal(format!("expected 2 arc orbits, found {}", orbits.len())));
    }
    let oriented: &Vec<(usize, usize)> = &orbits[0];
    let has_arc = |u: usize, v: usize| oriented.binary_search(&(u, v)).is_ok();
    let mut out_nbrs: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    let mut in_deg = vec![0usize; g.n()];
    for &(u, v) in oriented {
        out_nbrs[u].push(v);
        in_deg[v] += 1;
    }
    if out_nbrs.iter().any(|o| o.len() != 2) || in_deg.iter().any(|&d| d != 2) {
        return Err(internal("orientation is not 2-in 2-out"));
    }
    for &(u, v) in oriented {
        if has_arc(v, u) {
            return Err(internal("arc orbit contains an arc and its reverse"));
        }
    }
    trace.step("orient", format!("{} directed arcs", oriented.len()));

    // regularity level: the group order must equal the directed walk count
    let order = ctx.group.order();
    let mut s = None;
    for cand in 1..=MAX_S_ARC {
        let count = (g.n() as u128) << cand;
        if count == order && directed_walks_transitive(g, ctx, &out_nbrs, cand) {
            s = Some(cand);
            break;
        }
        if count > order {
            break;
        }
    }
    let s = s.ok_or(SymmetryError::SCapReached(MAX_S_ARC))?;
    trace.step("regular-level", format!("group acts regularly on directed {s}-walks"));

    // first directed s-walk with no closing arc and a unique source
    let mut walk = Vec::new();
    for v0 in 0..g.n() {
        walk.clear();
        walk.push(v0);
        if let Some(p) = find_open_walk(&out_nbrs, &mut walk, s, &has_arc) {
            let mut blacks = p.clone();
            blacks.sort_unstable();
            blacks.dedup();
            // the start must be the unique black vertex without a black
            // in-neighbour
            let black = |x: usize| blacks.binary_search(&x).is_ok();
            let sourceless: Vec<usize> = blacks
                .iter()
                .copied()
                .filter(|&x| !(0..g.n()).any(|u| black(u) && has_arc(u, x)))
                .collect();
            if sourceless != vec![p[0]] {
                continue;
            }
            trace.step("walk", format!("blackened open directed walk {p:?}"));
            return verified(g, &ctx.group, Colouring::from_blacks(g, &blacks), trace);
        }
    }
    Err(internal(
        "every directed walk closes up: the orientation is a directed wreath, contradicting \
         edge- but not arc-transitivity",
    ))
}

fn directed_walks_transitive(
    g: &Graph,
    ctx: &GraphCtx,
    out_nbrs: &[Vec<usize>],
    s: usize,
) -> bool {
    let mut first = vec![0usize];
    while first.len() < s + 1 {
        let v = *first.last().unwrap();
        first.push(out_nbrs[v][0]);
    }
    let total = (g.n() as u128) << s;
    let mut seen = std::collections::BTreeSet::new();
    seen.insert(first.clone());
    let mut queue = vec![first];
    while let Some(t) = queue.pop() {
        for p in ctx.group.generators() {
            let img: Vec<usize> = t.iter().map(|&v| p.apply(v)).collect();
            if seen.insert(img.clone()) {
                queue.push(img);
            }
        }
    }
    seen.len() as u128 == total
}

fn find_open_walk(
    out_nbrs: &[Vec<usize>],
    walk: &mut Vec<usize>,
    s: usize,
    has_arc: &dyn Fn(usize, usize) -> bool,
) -> Option<Vec<usize>> {
    if walk.len() == s + 1 {
        if !has_arc(walk[s], walk[0]) {
            return Some(walk.clone());
        }
        return None;
    }
    let v = *walk.last().unwrap();
    let mut nbrs = out_nbrs[v].clone();
    nbrs.sort_unstable();
    for w in nbrs {
        walk.push(w);
        if let Some(found) = find_open_walk(out_nbrs, walk, s, has_arc) {
            return Some(found);
        }
        walk.pop();
    }
    None
}

/// Case tag of one induction step over the uncoloured cycles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwinCase {
    NoTwin,
    TwinOnCycle,
    TwinOffCycle,
}

/// Output of one induction step: the second cycle (possibly the same as the
/// input cycle) and the vertices to blacken.
#[derive(Debug, Clone)]
pub struct InductionStep {
    pub case: TwinCase,
    pub second_cycle: Vec<usize>,
    pub blacks: Vec<usize>,
}

/// One step of the inductive sweep: given the already-fixed vertex set
/// `v_fixed` and a cycle containing a neighbour `v` of that set, produce a
/// partial colouring after which any automorphism fixing `v_fixed` pointwise
/// and preserving the colours fixes the touched cycles pointwise too.
pub fn cycle_colour_induction_step(
    g: &Graph,
    ctx: &GraphCtx,
    cycles: &[Vec<usize>],
    v_fixed: &[usize],
    c_index: usize,
    v: usize,
) -> Result<InductionStep, ColouringError> {
    let c = &cycles[c_index];
    if !c.contains(&v) {
        return Err(pre("chosen vertex does not lie on the chosen cycle"));
    }
    if c.iter().any(|x| v_fixed.contains(x)) {
        return Err(pre("cycle is not disjoint from the fixed set"));
    }
    if !g.neighbours(v).iter().any(|w| v_fixed.contains(w)) {
        return Err(pre("chosen vertex has no neighbour in the fixed set"));
    }
    let stab = ctx.group.pointwise_stabilizer(v_fixed);
    let orbit = stab.orbit_of_vertex(v);
    let twins: Vec<usize> = orbit.iter().copied().filter(|&u| u != v).collect();
    if twins.len() > 1 {
        return Err(internal(format!("vertex {v} has {} twins", twins.len())));
    }
    let pos = c.iter().position(|&x| x == v).expect("v on c");
    let m = c.len();
    let cycle_nbrs = [c[(pos + m - 1) % m], c[(pos + 1) % m]];
    let least_nbr = cycle_nbrs[0].min(cycle_nbrs[1]);

    let step = match twins.first() {
        None => InductionStep {
            case: TwinCase::NoTwin,
            second_cycle: c.clone(),
            blacks: vec![v, least_nbr],
        },
        Some(&u) if c.contains(&u) => {
            let good = cycle_nbrs
                .iter()
                .copied()
                .filter(|&w| w != u)
                .min()
                .expect("some cycle neighbour is not the twin");
            InductionStep {
                case: TwinCase::TwinOnCycle,
                second_cycle: c.clone(),
                blacks: vec![v, good],
            }
        }
        Some(&u) => {
            let d = cycles
                .iter()
                .find(|cy| cy.contains(&u))
                .ok_or_else(|| internal("twin lies on no cycle"))?;
            if d.iter().any(|x| v_fixed.contains(x)) {
                return Err(internal("twin cycle meets the fixed set"));
            }
            let dpos = d.iter().position(|&x| x == u).expect("u on d");
            let dm = d.len();
            let u_nbr = d[(dpos + dm - 1) % dm].min(d[(dpos + 1) % dm]);
            InductionStep {
                case: TwinCase::TwinOffCycle,
                second_cycle: d.clone(),
                blacks: vec![v, least_nbr, u_nbr],
            }
        }
    };

    // postcondition: no element fixing the set pointwise preserves the new
    // partial colouring while moving a coloured vertex
    let mut domain: Vec<usize> = v_fixed.to_vec();
    domain.extend(c.iter().copied());
    if step.second_cycle != *c {
        domain.extend(step.second_cycle.iter().copied());
    }
    domain.sort_unstable();
    domain.dedup();
    let colour_of = |x: usize| -> Option<usize> {
        if domain.binary_search(&x).is_err() {
            return None;
        }
        Some(usize::from(step.blacks.contains(&x) || v_fixed.contains(&x)))
    };
    for p in crate::symmetry::all_elements(&stab) {
        if p.is_identity() {
            continue;
        }
        let respects = domain.iter().all(|&x| colour_of(p.apply(x)) == colour_of(x));
        if respects && domain.iter().any(|&x| p.apply(x) != x) {
            return Err(internal("induction step postcondition failed"));
        }
    }
    Ok(step)
}

/// Rule for vertex- but not edge-transitive graphs whose edges all have
/// type 2: the two edge orbits decompose into cycles, coloured by an
/// inductive sweep, a single long-cycle pattern, or through the
/// triangle-sharing quotient when both orbits consist of triangles.
pub fn colour_type2_not_edge_transitive(
    g: &Graph,
    ctx: &GraphCtx,
) -> Result<Outcome, ColouringError> {
    if ctx.profile.edge_transitive {
        return Err(pre("graph is edge-transitive"));
    }
    if ctx.report.vertex_partition != vec![2, 2] {
        return Err(pre("edge type partition is not two pairs"));
    }
    let orbits = ctx.group.edge_orbits(&g.edges());
    if orbits.len() != 2 {
        return Err(internal(format!("expected 2 edge orbits, found {}", orbits.len())));
    }
    let sub_a = Graph::from_edges(g.n(), &orbits[0])?;
    let sub_b = Graph::from_edges(g.n(), &orbits[1])?;
    let cycles_a = cycles_of(&sub_a)?;
    let cycles_b = cycles_of(&sub_b)?;
    let la = cycles_a[0].len();
    let lb = cycles_b[0].len();
    if cycles_a.iter().any(|c| c.len() != la) || cycles_b.iter().any(|c| c.len() != lb) {
        return Err(internal("cycles within an edge orbit have unequal lengths"));
    }
    // the sweep works on the longer cycles; ties go to the orbit holding the
    // least edge
    let (g1_cycles, g2_sub, l1) = if la > lb || (la == lb && orbits[0][0] < orbits[1][0]) {
        (cycles_a, sub_b, la)
    } else {
        (cycles_b, sub_a, lb)
    };

    if g1_cycles.len() == 1 {
        let mut trace = ConstructionTrace::new(Branch::SweepSingleCycle);
        let cycle = &g1_cycles[0];
        if cycle.len() < 6 {
            return Err(internal("single long cycle shorter than 6"));
        }
        trace.step("long-cycle", format!("single cycle of length {}", cycle.len()));
        return verified(
            g,
            &ctx.group,
            Colouring::from_blacks(g, &long_cycle_blacks(cycle)),
            trace,
        );
    }

    if l1 >= 4 {
        return sweep(g, ctx, &g1_cycles, &g2_sub);
    }
    triangle_orbit_rule(g, ctx, &g1_cycles, &g2_sub)
}

fn sweep(
    g: &Graph,
    ctx: &GraphCtx,
    g1_cycles: &[Vec<usize>],
    g2_sub: &Graph,
) -> Result<Outcome, ColouringError> {
    let mut trace = ConstructionTrace::new(Branch::Sweep);
    let mut cycle_index = vec![usize::MAX; g.n()];
    for (i, c) in g1_cycles.iter().enumerate() {
        for &x in c {
            cycle_index[x] = i;
        }
    }
    // anchor: least vertex with a cross-orbit neighbour off its own cycle
    let v1 = (0..g.n())
        .find(|&v| g2_sub.neighbours(v).iter().any(|&w| cycle_index[w] != cycle_index[v]))
        .ok_or_else(|| internal("no vertex leads out of its own cycle"))?;
    let c1_index = cycle_index[v1];
    trace.step("anchor", format!("vertex {v1} on cycle {c1_index}"));

    let mut fixed: Vec<usize> = vec![v1];
    let mut done = vec![false; g1_cycles.len()];
    done[c1_index] = true;
    let mut blacks: Vec<usize> = Vec::new();

    loop {
        let candidate = (0..g.n())
            .filter(|&v| {
                !done[cycle_index[v]]
                    && g.neighbours(v).iter().any(|w| fixed.binary_search(w).is_ok())
            })
            .min();
        let v = match candidate {
            Some(v) => v,
            None => break,
        };
        let c_index = cycle_index[v];
        let step = cycle_colour_induction_step(g, ctx, g1_cycles, &fixed, c_index, v)?;
        trace.step(
            "induction-step",
            format!("cycle {c_index} at vertex {v}, case {:?}", step.case),
        );
        blacks.extend(step.blacks.iter().copied());
        fixed.extend(g1_cycles[c_index].iter().copied());
        done[c_index] = true;
        if step.second_cycle != g1_cycles[c_index] {
            let d_index = cycle_index[step.second_cycle[0]];
            fixed.extend(step.second_cycle.iter().copied());
            done[d_index] = true;
        }
        fixed.sort_unstable();
        fixed.dedup();
    }
    if done.iter().any(|&d| !d) {
        return Err(internal("sweep did not reach every cycle"));
    }

    // finish the anchor cycle: v1 and both its cycle neighbours black
    let c1 = &g1_cycles[c1_index];
    let pos = c1.iter().position(|&x| x == v1).expect("anchor on its cycle");
    let m = c1.len();
    let (left, right) = (c1[(pos + m - 1) % m], c1[(pos + 1) % m]);
    if g2_sub.neighbours(left) == g2_sub.neighbours(right) {
        return Err(internal("anchor cycle neighbours share their cross-orbit neighbourhood"));
    }
    blacks.push(v1);
    blacks.push(left);
    blacks.push(right);
    trace.step("anchor-cycle", format!("triple {left},{v1},{right} blackened"));
    verified(g, &ctx.group, Colouring::from_blacks(g, &blacks), trace)
}

fn triangle_orbit_rule(
    g: &Graph,
    ctx: &GraphCtx,
    g1_cycles: &[Vec<usize>],
    g2_sub: &Graph,
) -> Result<Outcome, ColouringError> {
    let g2_cycles = cycles_of(g2_sub)?;
    if g1_cycles[0].len() != 3 || g2_cycles[0].len() != 3 {
        return Err(internal("triangle rule invoked without two triangle orbits"));
    }
    // quotient: one vertex per triangle, adjacent when they share a vertex
    let mut tris: Vec<Vec<usize>> = Vec::new();
    for c in g1_cycles.iter().chain(g2_cycles.iter()) {
        let mut t = c.clone();
        t.sort_unstable();
        tris.push(t);
    }
    let mut edges = Vec::new();
    for i in 0..tris.len() {
        for j in i + 1..tris.len() {
            if single_shared_vertex(&tris[i], &tris[j]).is_some() {
                edges.push((i, j));
            }
        }
    }
    let quotient = Graph::from_edges(tris.len(), &edges)?;
    if quotient.regularity() != Some(3) {
        return Err(internal("triangle quotient is not cubic"));
    }
    if is_isomorphic(&quotient, &constructions::complete(4)).is_some() {
        let mut trace = ConstructionTrace::new(Branch::TriangleOrbitsK4);
        if is_isomorphic(g, &constructions::wreath(3).unwrap()).is_none() {
            return Err(internal("K4 quotient but the graph is not the 3-fibre wreath"));
        }
        trace.step("quotient", "triangle quotient is K4");
        return Ok(exceptional(ExceptionalFamily::Wreath(3), trace));
    }
    if is_isomorphic(&quotient, &constructions::complete_bipartite(3, 3)).is_some() {
        let mut trace = ConstructionTrace::new(Branch::TriangleOrbitsK33);
        if is_isomorphic(g, &constructions::k3_box_k3()).is_none() {
            return Err(internal("K33 quotient but the graph is not K3[]K3"));
        }
        trace.step("quotient", "triangle quotient is K33");
        return Ok(exceptional(ExceptionalFamily::K3BoxK3, trace));
    }
    // the quotient's distinguishing index is at most 2, so a distinguishing
    // 2-colouring of g exists; find the least one
    let mut trace = ConstructionTrace::new(Branch::TriangleOrbits);
    let (d, c) = distinguishing_number_with_group(g, &ctx.group, 2, ctx.limits)?;
    trace.step("search", format!("line graph of a cubic quotient, found k={d}"));
    verified(g, &ctx.group, c, trace)
}

// ---------------------------------------------------------------------------
// arc-transitive pipeline

/// A girth cycle whose removal leaves a 2-edge-connected graph. Requires
/// girth at least 5.
pub fn find_good_girth_cycle(g: &Graph) -> Result<Vec<usize>, ColouringError> {
    let girth = g.girth().ok_or_else(|| pre("graph is acyclic"))?;
    if girth < 5 {
        return Err(pre(format!("girth {girth} is below 5")));
    }
    let mut cycles = enumerate_girth_cycles(g, girth);
    cycles.sort();
    for cycle in &cycles {
        let removed = VertexSet::new(cycle.clone());
        let (rest, _) = delete_vertices(g, &removed);
        if is_2_edge_connected(&rest) {
            return Ok(cycle.clone());
        }
    }
    Err(internal("no girth cycle has a 2-edge-connected complement"))
}

/// All girth cycles in canonical form: starting at their least vertex,
/// second entry smaller than the last.
fn enumerate_girth_cycles(g: &Graph, girth: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    for v in 0..g.n() {
        path.push(v);
        extend_cycle(g, girth, v, &mut path, &mut out);
        path.pop();
    }
    out
}

fn extend_cycle(
    g: &Graph,
    girth: usize,
    root: usize,
    path: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if path.len() == girth {
        let last = *path.last().unwrap();
        if g.has_edge(last, root) && path[1] < last {
            out.push(path.clone());
        }
        return;
    }
    let v = *path.last().unwrap();
    for &w in g.neighbours(v) {
        if w <= root || path.contains(&w) {
            continue;
        }
        path.push(w);
        extend_cycle(g, girth, root, path, out);
        path.pop();
    }
}

/// Girth >= 5 rule: blackens a tree hanging off a good girth cycle, then
/// colours the remaining vertices in breadth order, blackening exactly those
/// not already fixed by the stabilizer of everything coloured so far.
pub fn colour_arc_transitive_girth5(g: &Graph, ctx: &GraphCtx) -> Result<Outcome, ColouringError> {
    let girth = g.girth().ok_or_else(|| pre("graph is acyclic"))?;
    if girth < 5 {
        return Err(pre(format!("girth {girth} is below 5")));
    }
    if !ctx.profile.arc_transitive {
        return Err(pre("graph is not arc-transitive"));
    }
    let s = ctx.profile.max_s;
    if s + 3 > girth {
        return Err(internal(format!(
            "{s}-arc-transitivity exceeds girth - 3: only the girth-6 cage does this"
        )));
    }
    let mut trace = ConstructionTrace::new(Branch::Girth5Tree);
    let cycle = find_good_girth_cycle(g)?;
    trace.step("girth-cycle", format!("cycle {cycle:?}"));

    // pointwise stabilizer of the inner walk v_1 .. v_{s+1}
    let walk: Vec<usize> = cycle[1..=s + 1].to_vec();
    let stab = ctx.group.pointwise_stabilizer(&walk);
    let (v0, v1, v2) = (cycle[0], cycle[1], cycle[2]);
    let v0_orbit = stab.orbit_of_vertex(v0);
    let v0_prime = g
        .neighbours(v1)
        .iter()
        .copied()
        .filter(|&w| w != v0 && w != v2 && !v0_orbit.contains(&w))
        .min()
        .ok_or_else(|| internal("walk stabilizer is transitive on the free neighbours"))?;
    trace.step("branch-vertex", format!("v0' = {v0_prime}"));

    // the marked set {v0', v0, .., v_{girth-2}} must induce a tree
    let mut tree: Vec<usize> = cycle[..girth - 1].to_vec();
    tree.push(v0_prime);
    tree.sort_unstable();
    tree.dedup();
    if tree.len() != girth {
        return Err(internal("tree vertices are not distinct"));
    }
    let induced_edges = tree
        .iter()
        .flat_map(|&a| tree.iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| a < b && g.has_edge(a, b))
        .count();
    if induced_edges != girth - 1 {
        return Err(internal("marked vertex set does not induce a tree"));
    }

    let rest_set = VertexSet::new(tree.clone());
    let (h, h_labels) = delete_vertices(g, &rest_set);
    if !h.is_connected() {
        return Err(internal("complement of the tree is disconnected"));
    }
    let v_last = cycle[girth - 1];
    let v_last_local = h_labels.binary_search(&v_last).expect("v_{g-1} outside the tree");
    let dist = h.distances(v_last_local);

    let mut blacks: Vec<usize> = tree.clone();
    let mut coloured: Vec<usize> = tree.clone();
    coloured.push(v_last);
    let mut stab_now = ctx.group.pointwise_stabilizer(&coloured);
    let mut order: Vec<usize> = (0..h.n()).filter(|&x| h_labels[x] != v_last).collect();
    order.sort_by_key(|&x| (dist[x], h_labels[x]));
    for x in order {
        let global = h_labels[x];
        if stab_now.orbit_of_vertex(global).len() == 1 {
            continue; // already fixed: white
        }
        blacks.push(global);
        coloured.push(global);
        stab_now = stab_now.pointwise_stabilizer(&[global]);
    }
    trace.step("breadth-colouring", format!("{} black vertices", blacks.len()));
    verified(g, &ctx.group, Colouring::from_blacks(g, &blacks), trace)
}

/// Is some non-adjacent pair joined by at least `k` common neighbours?
fn has_common_neighbour_pair(g: &Graph, k: usize) -> bool {
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if g.has_edge(u, v) {
                continue;
            }
            let common = g.neighbours(u).iter().filter(|w| g.neighbours(v).contains(w)).count();
            if common >= k {
                return true;
            }
        }
    }
    false
}

/// Arc-transitive dispatcher: handles all girths and local groups, returning
/// a verified colouring or one of the exceptional families.
pub fn colour_arc_transitive(g: &Graph, ctx: &GraphCtx) -> Result<Outcome, ColouringError> {
    if !ctx.profile.arc_transitive {
        return Err(pre("graph is not arc-transitive"));
    }
    if let Some(n) = wreath_parameter(g) {
        let mut trace = ConstructionTrace::new(Branch::WreathRecognized);
        trace.step("twin-fibres", format!("wreath graph on {n} fibres"));
        return Ok(exceptional(ExceptionalFamily::Wreath(n), trace));
    }
    let girth = g.girth().ok_or_else(|| internal("4-valent graph without a cycle"))?;

    if girth == 3 {
        if is_isomorphic(g, &constructions::complete(5)).is_some() {
            let mut trace = ConstructionTrace::new(Branch::Girth3K5);
            trace.step("recognized", "complete graph on 5 vertices");
            return Ok(exceptional(ExceptionalFamily::K5, trace));
        }
        if is_isomorphic(g, &constructions::k3_box_k3()).is_some() {
            let mut trace = ConstructionTrace::new(Branch::Girth3K3BoxK3);
            trace.step("recognized", "cartesian square of a triangle");
            return Ok(exceptional(ExceptionalFamily::K3BoxK3, trace));
        }
        // line graph of a cubic arc-transitive graph: 2-distinguishable
        let mut trace = ConstructionTrace::new(Branch::Girth3LineGraph);
        let (d, c) = distinguishing_number_with_group(g, &ctx.group, 2, ctx.limits)?;
        trace.step("search", format!("girth-3 line-graph case, found k={d}"));
        return verified(g, &ctx.group, c, trace);
    }

    if girth >= 5 {
        if is_isomorphic(&constructions::cage46(), g).is_some() {
            let mut trace = ConstructionTrace::new(Branch::CageFigure);
            let figure = figure_colouring(FigureCase::Cage46)?;
            let phi = is_isomorphic(&figure.graph, g).expect("isomorphism already established");
            let blacks: Vec<usize> =
                figure.colouring.blacks().iter().map(|&x| phi.apply(x)).collect();
            trace.step("figure", "girth-6 cage colouring transported");
            return verified(g, &ctx.group, Colouring::from_blacks(g, &blacks), trace);
        }
        return colour_arc_transitive_girth5(g, ctx);
    }

    // girth 4
    if has_common_neighbour_pair(g, 3) {
        // wreaths were recognized above, so this is the tensor double of K5
        let mut trace = ConstructionTrace::new(Branch::ManyCommonK5xK2);
        if is_isomorphic(g, &constructions::k5_tensor_k2()).is_none() {
            return Err(internal(
                "three common neighbours at girth 4, but neither a wreath nor the K5 double",
            ));
        }
        trace.step("recognized", "tensor product of K5 with an edge");
        return Ok(exceptional(ExceptionalFamily::K5TensorK2, trace));
    }

    if ctx.profile.max_s >= 2 {
        let mut trace = ConstructionTrace::new(Branch::TwoArcGirth4);
        let is_q4 = is_isomorphic(g, &constructions::hypercube(4)).is_some();
        let is_bipcomp = is_isomorphic(g, &constructions::heawood_bipcomp()).is_some();
        if !is_q4 && !is_bipcomp {
            return Err(internal(
                "2-arc-transitive girth-4 graph outside the cube/complement pair",
            ));
        }
        let (d, c) = distinguishing_number_with_group(g, &ctx.group, 2, ctx.limits)?;
        trace.step(
            "search",
            format!(
                "{}, found k={d}",
                if is_q4 { "4-dimensional hypercube" } else { "bipartite complement of Heawood" }
            ),
        );
        return verified(g, &ctx.group, c, trace);
    }

    let local = local_group_with_group(g, &ctx.group, 0);
    match local.iso_label {
        LocalGroupLabel::C4 | LocalGroupLabel::V4 => {
            // arc-regular: one vertex and three of its neighbours
            let mut trace = ConstructionTrace::new(Branch::ArcRegular);
            let mut blacks = vec![0usize];
            blacks.extend(g.neighbours(0).iter().copied().take(3));
            trace.step("arc-regular", format!("local group {:?}", local.iso_label));
            verified(g, &ctx.group, Colouring::from_blacks(g, &blacks), trace)
        }
        LocalGroupLabel::D4 => colour_locally_dihedral(g, ctx),
        other => Err(internal(format!(
            "arc-transitive girth-4 graph with unexpected local group {other:?}"
        ))),
    }
}

/// Enumerates 4-cycles as tuples (a, b, c, d) with a minimal and b < d.
fn four_cycles(g: &Graph) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..g.n() {
        for &b in g.neighbours(a) {
            if b <= a {
                continue;
            }
            for &c in g.neighbours(b) {
                if c <= a {
                    continue;
                }
                for &d in g.neighbours(c) {
                    if d == b || d <= b || !g.has_edge(d, a) {
                        continue;
                    }
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

fn colour_locally_dihedral(g: &Graph, ctx: &GraphCtx) -> Result<Outcome, ColouringError> {
    // hunt for a 4-cycle with a crooked corner
    let cycles = four_cycles(g);
    for &[a, b, c, d] in &cycles {
        for (u, v, w) in [(a, b, c), (b, c, d), (c, d, a), (d, a, b)] {
            let kind = crate::symmetry::classify_two_arc_with_group(g, &ctx.group, [u, v, w])?;
            if kind == TwoArcKind::Crooked {
                return crooked_path_rule(g, ctx, u, v, w);
            }
        }
    }
    straight_recursion_rule(g, ctx, &cycles)
}

/// Crooked 4-cycle rule: blacken the path (u, v, w, y) where (u, v, w) is
/// crooked and y completes the straight 2-arc through (v, w).
fn crooked_path_rule(
    g: &Graph,
    ctx: &GraphCtx,
    u: usize,
    v: usize,
    w: usize,
) -> Result<Outcome, ColouringError> {
    let mut trace = ConstructionTrace::new(Branch::CrookedPath);
    let info = local_group_with_group(g, &ctx.group, w);
    let blocks = info.blocks.ok_or_else(|| internal("local group lost its block system"))?;
    let y = blocks
        .iter()
        .find_map(|&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
        .ok_or_else(|| internal("crooked midpoint has no block partner"))?;
    if g.has_edge(y, u) {
        return Err(internal("straight continuation closes onto the crooked start"));
    }
    trace.step("path", format!("black path {u},{v},{w},{y}"));
    verified(g, &ctx.group, Colouring::from_blacks(g, &[u, v, w, y]), trace)
}

/// All-straight rule: the straight 4-cycles partition the edges; the
/// quotient on them halves the graph, and a distinguishing 2-colouring of
/// the line graph of the quotient pulls back to one of the original.
fn straight_recursion_rule(
    g: &Graph,
    ctx: &GraphCtx,
    cycles: &[[usize; 4]],
) -> Result<Outcome, ColouringError> {
    let mut trace = ConstructionTrace::new(Branch::StraightRecursion);
    let mut sets: Vec<Vec<usize>> = cycles
        .iter()
        .map(|&[a, b, c, d]| {
            let mut s = vec![a, b, c, d];
            s.sort_unstable();
            s
        })
        .collect();
    sets.sort();
    sets.dedup();
    // the 4-cycles must partition the edge set
    let mut edge_cover: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &[a, b, c, d] in cycles {
        for (x, y) in [(a, b), (b, c), (c, d), (d, a)] {
            *edge_cover.entry((x.min(y), x.max(y))).or_insert(0) += 1;
        }
    }
    if edge_cover.len() != g.edge_count() || edge_cover.values().any(|&c| c != 1) {
        return Err(internal("straight 4-cycles do not partition the edge set"));
    }
    if sets.len() != g.n() / 2 {
        return Err(internal("wrong number of straight 4-cycles"));
    }
    trace.step("partition", format!("{} straight 4-cycles partition the edges", sets.len()));

    // quotient: cycles adjacent when they share exactly one vertex
    let mut edges = Vec::new();
    let mut shared: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let inter: Vec<usize> =
                sets[i].iter().copied().filter(|x| sets[j].contains(x)).collect();
            match inter.len() {
                0 => {}
                1 => {
                    edges.push((i, j));
                    shared.insert((i, j), inter[0]);
                }
                _ => return Err(internal("two straight 4-cycles share two vertices")),
            }
        }
    }
    let quotient = Graph::from_edges(sets.len(), &edges)?;
    if quotient.regularity() != Some(4) || !quotient.is_connected() {
        return Err(internal("straight-cycle quotient is not a connected 4-valent graph"));
    }

    // classify the quotient recursively; the complete graph on 5 vertices
    // admits no such action and can never appear here
    let inner = distinguishing_colouring_4vt(&quotient, ctx.limits)?;
    if let Outcome::Exceptional { family: ExceptionalFamily::K5, .. } = inner {
        return Err(internal("straight-cycle quotient collapsed to K5"));
    }
    trace.step("recursion", format!("quotient on {} vertices classified", quotient.n()));
    trace.inner = Some(Box::new(inner.trace().clone()));

    // a 2-colouring of the line graph of the quotient pulls back: its
    // vertices are the quotient edges, i.e. the shared vertices, i.e. the
    // vertices of g
    let (lq, lq_edges) = line_graph(&quotient);
    let lq_group = automorphism_group(&lq);
    let (_, lc) = distinguishing_number_with_group(&lq, &lq_group, 2, ctx.limits)?;
    let mut blacks = Vec::new();
    for (idx, &(i, j)) in lq_edges.iter().enumerate() {
        if lc.colours[idx] == 1 {
            blacks.push(shared[&(i, j)]);
        }
    }
    trace.step("lift", "line-graph colouring pulled back through shared vertices");
    verified(g, &ctx.group, Colouring::from_blacks(g, &blacks), trace)
}

// ---------------------------------------------------------------------------
// wreath recognition and the master dispatcher

/// The wreath parameter n when the graph is a wreath graph on n fibres of
/// size 2 (the 4-fibre member being the complete bipartite graph on 4+4).
pub fn wreath_parameter(g: &Graph) -> Option<usize> {
    let total = g.n();
    if total < 6 || total % 2 != 0 {
        return None;
    }
    let n = total / 2;
    // twin classes: identical open neighbourhoods
    let mut classes: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for v in 0..total {
        classes.entry(g.neighbours(v).to_vec()).or_default().push(v);
    }
    let sizes: Vec<usize> = classes.values().map(|c| c.len()).collect();
    if sizes.iter().all(|&s| s == 2) && n >= 3 {
        let blocks: Vec<Vec<usize>> = classes.values().cloned().collect();
        let quotient = contract_partition(g, &blocks).ok()?;
        let cn = constructions::cycle(n).ok()?;
        if is_isomorphic(&quotient, &cn).is_some()
            && is_isomorphic(g, &constructions::wreath(n).ok()?).is_some()
        {
            return Some(n);
        }
        return None;
    }
    if total == 8 && is_isomorphic(g, &constructions::complete_bipartite(4, 4)).is_some() {
        return Some(4);
    }
    None
}

/// Master dispatcher: classifies a connected 4-valent vertex-transitive
/// graph as exceptional or produces a machine-verified distinguishing
/// 2-colouring, dispatching on the edge-type partition.
pub fn distinguishing_colouring_4vt(
    g: &Graph,
    limits: SearchLimits,
) -> Result<Outcome, ColouringError> {
    let ctx = GraphCtx::new(g, limits)?;
    distinguishing_colouring_4vt_with_ctx(g, &ctx)
}

pub fn distinguishing_colouring_4vt_with_ctx(
    g: &Graph,
    ctx: &GraphCtx,
) -> Result<Outcome, ColouringError> {
    let partition = &ctx.report.vertex_partition;
    if partition.contains(&1) {
        colour_type1(g, ctx)
    } else if partition == &vec![2, 2] {
        if ctx.profile.edge_transitive {
            colour_half_arc_transitive(g, ctx)
        } else {
            colour_type2_not_edge_transitive(g, ctx)
        }
    } else if partition == &vec![4] {
        colour_arc_transitive(g, ctx)
    } else {
        Err(internal(format!("impossible edge type partition {partition:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::*;
    use crate::operators::cartesian_product;
    use std::collections::BTreeMap;

    fn ctx(g: &Graph) -> GraphCtx {
        GraphCtx::new(g, SearchLimits::default()).unwrap()
    }

    fn assert_coloured(g: &Graph, outcome: &Outcome, branch: Branch) {
        match outcome {
            Outcome::Coloured { colouring, trace } => {
                assert_eq!(trace.branch, branch);
                assert!(trace.verified);
                assert!(crate::distinguishing::is_distinguishing(g, colouring)
                    .unwrap()
                    .distinguishing);
            }
            Outcome::Exceptional { family, .. } => {
                panic!("expected a colouring, got exceptional {family:?}")
            }
        }
    }

    fn assert_exceptional(outcome: &Outcome, family: ExceptionalFamily) {
        match outcome {
            Outcome::Exceptional { family: f, .. } => assert_eq!(*f, family),
            Outcome::Coloured { .. } => panic!("expected exceptional {family:?}"),
        }
    }

    #[test]
    fn figure_colourings_verify() {
        let fig = figure_colouring(FigureCase::Cage46).unwrap();
        assert!(crate::distinguishing::is_distinguishing(&fig.graph, &fig.colouring)
            .unwrap()
            .distinguishing);
        for n in [2, 3, 4, 5, 6] {
            let fig = figure_colouring(FigureCase::CycleOfK33(n)).unwrap();
            assert!(
                crate::distinguishing::is_distinguishing(&fig.graph, &fig.colouring)
                    .unwrap()
                    .distinguishing,
                "K33 cycle figure fails at n={n}"
            );
        }
    }

    #[test]
    fn anchored_figures_have_trivial_stabilizers() {
        for case in [FigureCase::Q3Anchored, FigureCase::PetersenAnchored] {
            let fig = figure_colouring(case).unwrap();
            let group = automorphism_group(&fig.graph);
            assert!(anchored_stabilizer_is_trivial(
                &fig.graph,
                &group,
                &fig.colouring,
                fig.anchor.unwrap()
            )
            .unwrap());
        }
    }

    #[test]
    fn wreath_parameter_examples() {
        assert_eq!(wreath_parameter(&complete_bipartite(4, 4)), Some(4));
        assert_eq!(wreath_parameter(&hypercube(4)), None);
        for n in 3..=12 {
            assert_eq!(wreath_parameter(&wreath(n).unwrap()), Some(n));
        }
    }

    #[test]
    fn dispatcher_rejects_bad_inputs() {
        // wrong valency
        let err = distinguishing_colouring_4vt(&petersen(), SearchLimits::default()).unwrap_err();
        assert!(matches!(err, ColouringError::Precondition(_)));
        // disconnected
        let two = Graph::from_edges(10, &[(0, 1)]).unwrap();
        assert!(distinguishing_colouring_4vt(&two, SearchLimits::default()).is_err());
        // 4-regular but not vertex-transitive
        let g = Graph::from_edges(
            7,
            &[
                (0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4),
                (2, 5), (3, 5), (2, 6), (3, 6), (4, 5), (4, 6), (5, 6),
            ],
        )
        .unwrap();
        assert_eq!(g.regularity(), Some(4));
        let err = distinguishing_colouring_4vt(&g, SearchLimits::default()).unwrap_err();
        assert!(matches!(err, ColouringError::Precondition(_)));
    }

    #[test]
    fn exceptional_graphs_are_recognized() {
        let cases: Vec<(Graph, ExceptionalFamily)> = vec![
            (complete(5), ExceptionalFamily::K5),
            (wreath(4).unwrap(), ExceptionalFamily::Wreath(4)),
            (complete_bipartite(4, 4), ExceptionalFamily::Wreath(4)),
            (k3_box_k3(), ExceptionalFamily::K3BoxK3),
            (k4_box_k2(), ExceptionalFamily::K4BoxK2),
            (k5_tensor_k2(), ExceptionalFamily::K5TensorK2),
            (wreath(3).unwrap(), ExceptionalFamily::Wreath(3)),
            (wreath(7).unwrap(), ExceptionalFamily::Wreath(7)),
            (circulant(12, &[1, 5, 7, 11]).unwrap(), ExceptionalFamily::Wreath(6)),
        ];
        for (g, family) in cases {
            let outcome = distinguishing_colouring_4vt(&g, SearchLimits::default()).unwrap();
            assert_exceptional(&outcome, family);
        }
    }

    #[test]
    fn type1_all_singletons() {
        // dihedral Cayley graph over four reflections with trivial stabilizer
        let table = GroupTable::dihedral(8);
        let g = cayley(&table, &[8, 9, 10, 12]).unwrap();
        let c = ctx(&g);
        assert_eq!(c.report.vertex_partition, vec![1, 1, 1, 1]);
        let outcome = distinguishing_colouring_4vt_with_ctx(&g, &c).unwrap();
        assert_coloured(&g, &outcome, Branch::Type1All);
    }

    #[test]
    fn type1_two_singletons_multi_cycle() {
        let table = GroupTable::s4();
        let g = cayley(&table, &[9, 18, 16, 6]).unwrap();
        let c = ctx(&g);
        assert_eq!(c.report.vertex_partition, vec![2, 1, 1]);
        let outcome = distinguishing_colouring_4vt_with_ctx(&g, &c).unwrap();
        assert_coloured(&g, &outcome, Branch::Type1TwoSingletonsMultiCycle);
    }

    #[test]
    fn type1_component_routes() {
        // cube components: anchored figure rule
        let g = cycle_of_q3(3).unwrap();
        let c = ctx(&g);
        assert_eq!(c.report.vertex_partition, vec![3, 1]);
        let outcome = distinguishing_colouring_4vt_with_ctx(&g, &c).unwrap();
        assert_coloured(&g, &outcome, Branch::Type1ComponentFigure);

        // Petersen components
        let g = cartesian_product(&petersen(), &complete(2));
        let outcome = distinguishing_colouring_4vt(&g, SearchLimits::default()).unwrap();
        assert_coloured(&g, &outcome, Branch::Type1ComponentFigure);

        // Heawood components are 2-distinguishable
        let g = cartesian_product(&heawood(), &complete(2));
        let outcome = distinguishing_colouring_4vt(&g, SearchLimits::default()).unwrap();
        assert_coloured(&g, &outcome, Branch::Type1ComponentDistinguishing);
    }

    #[test]
    fn type1_unique_edge_rule() {
        // arc graph of K5: K4 components pairwise joined by single edges
        let h = complete(5);
        let arcs = h.arcs();
        let idx: BTreeMap<(usize, usize), usize> =
            arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let mut e = Vec::new();
        for (i, &(u, v)) in arcs.iter().enumerate() {
            for &w in h.neighbours(u) {
                if w != v && i < idx[&(u, w)] {
                    e.push((i, idx[&(u, w)]));
                }
            }
            if i < idx[&(v, u)] {
                e.push((i, idx[&(v, u)]));
            }
        }
        let g = Graph::from_edges(20, &e).unwrap();
        let c = ctx(&g);
        assert_eq!(c.report.vertex_partition, vec![3, 1]);
        let outcome = distinguishing_colouring_4vt_with_ctx(&g, &c).unwrap();
        assert_coloured(&g, &outcome, Branch::Type1UniqueEdges);
    }

    #[test]
    fn type1_unique_rule_preconditions() {
        // two K33 blocks joined by triple matchings fail the multiplicity clause
        let g = cycle_of_k33(2).unwrap();
        let c = ctx(&g);
        let err = colour_type1_unique(&g, &c).unwrap_err();
        assert!(matches!(err, ColouringError::Precondition(_)));
    }

    #[test]
    fn type1_k33_cycle_route() {
        for n in [2, 4] {
            let g = cycle_of_k33(n).unwrap();
            let outcome = distinguishing_colouring_4vt(&g, SearchLimits::default()).unwrap();
            assert_coloured(&g, &outcome, Branch::Type1K33Cycle);
        }
    }

    #[test]
    fn half_arc_transitive_route() {
        let g = holt();
        let c = ctx(&g);
        assert!(c.profile.edge_transitive && !c.profile.arc_transitive);
        let outcome = distinguishing_colouring_4vt_with_ctx(&g, &c).unwrap();
        assert_coloured(&g, &outcome, Branch::HalfArc);
        // arc-transitive input is rejected
        let w = wreath(5).unwrap();
        let cw = ctx(&w);
        assert!(matches!(
            colour_half_arc_transitive(&w, &cw),
            Err(ColouringError::Precondition(_))
        ));
    }

    #[test]
    fn sweep_single_cycle_route() {
        for n in [7usize, 12] {
            let g = circulant(n, &[1, 2, n - 1, n - 2]).unwrap();
            let outcome = distinguishing_colouring_4vt(&g, SearchLimits::default()).unwrap();
            assert_coloured(&g, &outcome, Branch::SweepSingleCycle);
        }
        let g = circulant(11, &[1, 3, 8, 10]).unwrap();
        let outcome = distinguishing_colouring_4vt(&g, SearchLimits::default()).unwrap();
        assert_coloured(&g, &outcome, Branch::SweepSingleCycle);
    }

    #[test]
    fn sweep_multi_cycle_route() {
        let table = GroupTable::dihedral(9);
        let g = cayley(&table, &[4, 5, 10, 13]).unwrap();
        let c = ctx(&g);
        assert_eq!(c.report.vertex_partition, vec![2, 2]);
        assert!(!c.profile.edge_transitive);
        let outcome = distinguishing_colouring_4vt_with_ctx(&g, &c).unwrap();
        assert_coloured(&g, &outcome, Branch::Sweep);

        // three 4-cycles against four triangles
        let table = GroupTable::a4();
        let g = cayley(&table, &[3, 5, 9, 11]).unwrap();
        let outcome = distinguishing_colouring_4vt(&g, SearchLimits::default()).unwrap();
        assert_coloured(&g, &outcome, Branch::Sweep);
    }

    #[test]
    fn girth3_routes() {
        let (lq3, _) = line_graph(&hypercube(3));
        let outcome = distinguishing_colouring_4vt(&lq3, SearchLimits::default()).unwrap();
        assert_coloured(&lq3, &outcome, Branch::Girth3LineGraph);

        let (lpet, _) = line_graph(&petersen());
        let outcome = distinguishing_colouring_4vt(&lpet, SearchLimits::default()).unwrap();
        assert_coloured(&lpet, &outcome, Branch::Girth3LineGraph);
    }

    #[test]
    fn girth4_routes() {
        let q4 = hypercube(4);
        let outcome = distinguishing_colouring_4vt(&q4, SearchLimits::default()).unwrap();
        assert_coloured(&q4, &outcome, Branch::TwoArcGirth4);

        let hb = heawood_bipcomp();
        let outcome = distinguishing_colouring_4vt(&hb, SearchLimits::default()).unwrap();
        assert_coloured(&hb, &outcome, Branch::TwoArcGirth4);

        // arc-regular circulant
        let g = circulant(13, &[1, 5, 8, 12]).unwrap();
        let outcome = distinguishing_colouring_4vt(&g, SearchLimits::default()).unwrap();
        assert_coloured(&g, &outcome, Branch::ArcRegular);
    }

    #[test]
    fn locally_dihedral_routes() {
        // crooked: Cayley graph of Z6 x Z3
        let mut mul = vec![vec![0usize; 18]; 18];
        for b1 in 0..3 {
            for a1 in 0..6 {
                for b2 in 0..3 {
                    for a2 in 0..6 {
                        mul[b1 * 6 + a1][b2 * 6 + a2] = ((b1 + b2) % 3) * 6 + (a1 + a2) % 6;
                    }
                }
            }
        }
        let table = GroupTable { mul };
        let g = cayley(&table, &[1, 5, 11, 13]).unwrap();
        let outcome = distinguishing_colouring_4vt(&g, SearchLimits::default()).unwrap();
        assert_coloured(&g, &outcome, Branch::CrookedPath);

        // all-straight: quadrilateral expansions of wreaths
        let g = doubled_wreath(5).unwrap();
        let outcome = distinguishing_colouring_4vt(&g, SearchLimits::default()).unwrap();
        assert_coloured(&g, &outcome, Branch::StraightRecursion);
        if let Outcome::Coloured { trace, .. } = &outcome {
            let inner = trace.inner.as_ref().expect("recursion recorded");
            assert_eq!(inner.branch, Branch::WreathRecognized);
        }
    }

    #[test]
    fn girth5_routes() {
        let o4 = kneser(7, 3).unwrap();
        let outcome = distinguishing_colouring_4vt(&o4, SearchLimits::default()).unwrap();
        assert_coloured(&o4, &outcome, Branch::Girth5Tree);

        let cage = cage46();
        let outcome = distinguishing_colouring_4vt(&cage, SearchLimits::default()).unwrap();
        assert_coloured(&cage, &outcome, Branch::CageFigure);
    }

    #[test]
    fn good_girth_cycle_examples() {
        let pet = petersen();
        let c = find_good_girth_cycle(&pet).unwrap();
        assert_eq!(c.len(), 5);
        let cage = cage46();
        let c = find_good_girth_cycle(&cage).unwrap();
        assert_eq!(c.len(), 6);
        assert!(matches!(
            find_good_girth_cycle(&hypercube(4)),
            Err(ColouringError::Precondition(_))
        ));
    }

    #[test]
    fn induction_step_cases() {
        // drive the induction step directly on the dihedral sweep graph
        let table = GroupTable::dihedral(9);
        let g = cayley(&table, &[4, 5, 10, 13]).unwrap();
        let c = ctx(&g);
        let orbits = c.group.edge_orbits(&g.edges());
        let sub_a = Graph::from_edges(g.n(), &orbits[0]).unwrap();
        let sub_b = Graph::from_edges(g.n(), &orbits[1]).unwrap();
        let (cycles, _other) = {
            let ca = cycles_of(&sub_a).unwrap();
            let cb = cycles_of(&sub_b).unwrap();
            if ca[0].len() >= cb[0].len() {
                (ca, sub_b)
            } else {
                (cb, sub_a)
            }
        };
        let cycle_of = |x: usize| cycles.iter().position(|cy| cy.contains(&x)).unwrap();
        let v1 = 0usize;
        let fixed = vec![v1];
        let v = (0..g.n())
            .find(|&x| cycle_of(x) != cycle_of(v1) && g.neighbours(x).contains(&v1))
            .unwrap();
        let step =
            cycle_colour_induction_step(&g, &c, &cycles, &fixed, cycle_of(v), v).unwrap();
        assert!(step.blacks.contains(&v));
        // precondition violations are reported
        let bad = cycle_colour_induction_step(&g, &c, &cycles, &fixed, cycle_of(v1), v1);
        assert!(bad.is_err());
    }
}
