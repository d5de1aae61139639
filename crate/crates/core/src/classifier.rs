//! End-to-end classification: certificates for single graphs and the census
//! run that checks every bundled catalog entry.

use crate::canon::is_isomorphic;
use crate::colouring::{
    distinguishing_colouring_4vt_with_ctx, wreath_parameter, Branch, ColouringError,
    ConstructionTrace, ExceptionalFamily, GraphCtx, Outcome,
};
use crate::constructions::{self, GroupTable};
use crate::distinguishing::{distinguishing_number_with_group, Colouring, SearchLimits};
use crate::graph::Graph;
use crate::io::to_graph6;
use crate::operators::{cartesian_product, line_graph};
use serde::{Deserialize, Serialize};
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Colouring(#[from] ColouringError),
    #[error("certificate verification failed: {0}")]
    Verification(String),
}

/// The wreath parameter n when `g` is a wreath graph on n fibres; the
/// 4-fibre instance is the complete bipartite graph on 4+4.
pub fn recognize_wreath(g: &Graph) -> Option<usize> {
    wreath_parameter(g)
}

/// Classification outcome for one graph, with the construction trace and
/// the exact distinguishing number.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certificate {
    pub graph6: String,
    pub valency: usize,
    pub vertex_transitive: bool,
    pub edge_type_partition: Vec<usize>,
    pub branch_trace: ConstructionTrace,
    pub exceptional: Option<ExceptionalFamily>,
    pub d: usize,
    pub colouring: Option<Colouring>,
    pub verified: bool,
    #[serde(skip)]
    pub elapsed: Option<std::time::Duration>,
}

/// Classifies a connected 4-valent vertex-transitive graph. Exceptional
/// members have their distinguishing number recomputed by exact search and
/// checked against the family table; non-exceptional members carry a
/// machine-verified distinguishing 2-colouring.
pub fn classify(g: &Graph, limits: SearchLimits) -> Result<Certificate, ClassifyError> {
    let started = Instant::now();
    let ctx = GraphCtx::new(g, limits)?;
    let outcome = distinguishing_colouring_4vt_with_ctx(g, &ctx)?;
    let graph6 = to_graph6(g);
    let partition = ctx.report.vertex_partition.clone();
    let cert = match outcome {
        Outcome::Exceptional { family, trace } => {
            let expected = family.expected_d();
            let (d, _) = distinguishing_number_with_group(g, &ctx.group, expected, ctx.limits)
                .map_err(ColouringError::from)?;
            if d != expected {
                return Err(ClassifyError::Verification(format!(
                    "exceptional {} has distinguishing number {d}, expected {expected}",
                    family.display_name()
                )));
            }
            Certificate {
                graph6,
                valency: 4,
                vertex_transitive: true,
                edge_type_partition: partition,
                branch_trace: trace,
                exceptional: Some(family),
                d,
                colouring: None,
                verified: true,
                elapsed: Some(started.elapsed()),
            }
        }
        Outcome::Coloured { colouring, trace } => {
            if !trace.verified {
                return Err(ClassifyError::Verification("colouring left unverified".into()));
            }
            Certificate {
                graph6,
                valency: 4,
                vertex_transitive: true,
                edge_type_partition: partition,
                branch_trace: trace,
                exceptional: None,
                d: 2,
                colouring: Some(colouring),
                verified: true,
                elapsed: Some(started.elapsed()),
            }
        }
    };
    Ok(cert)
}

/// A named catalog graph.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub graph: Graph,
}

fn entry(name: &str, graph: Graph) -> CatalogEntry {
    CatalogEntry { name: name.into(), graph }
}

/// The bundled census catalog: all exceptional members up to 9 fibres, the
/// named small-distinguishing-number graphs, circulants, Cayley graphs over
/// the bundled group tables, line graphs of cubic arc-transitive graphs and
/// the expansion families. Together the non-exceptional entries exercise
/// every constructor branch.
pub fn bundled_catalog() -> Vec<CatalogEntry> {
    let mut out = Vec::new();

    // exceptional graphs
    out.push(entry("K5", constructions::complete(5)));
    out.push(entry("K4,4", constructions::complete_bipartite(4, 4)));
    out.push(entry("K3xK3", constructions::k3_box_k3()));
    out.push(entry("K4xK2", constructions::k4_box_k2()));
    out.push(entry("K5xK2-tensor", constructions::k5_tensor_k2()));
    for n in [3usize, 5, 6, 7, 8, 9] {
        out.push(entry(&format!("W{n}"), constructions::wreath(n).unwrap()));
    }
    out.push(entry("C12(1,5)", constructions::circulant(12, &[1, 5, 7, 11]).unwrap()));
    out.push(entry("C10(1,3)", constructions::circulant(10, &[1, 3, 7, 9]).unwrap()));

    // cubic oracle rows; the census skips them with a note
    out.push(entry("K4", constructions::complete(4)));
    out.push(entry("K3,3", constructions::complete_bipartite(3, 3)));
    out.push(entry("Q3", constructions::hypercube(3)));
    out.push(entry("petersen", constructions::petersen()));

    // small-distinguishing-number graphs
    out.push(entry("Q4", constructions::hypercube(4)));
    out.push(entry("cage46", constructions::cage46()));
    out.push(entry("heawood-bipcomp", constructions::heawood_bipcomp()));
    for n in 2..=6 {
        out.push(entry(&format!("C{n}-of-K3,3"), constructions::cycle_of_k33(n).unwrap()));
    }

    // line graphs of cubic arc-transitive graphs
    out.push(entry("L(Q3)", line_graph(&constructions::hypercube(3)).0));
    out.push(entry("L(petersen)", line_graph(&constructions::petersen()).0));
    out.push(entry("L(heawood)", line_graph(&constructions::heawood()).0));

    // circulants
    for n in 7..=16 {
        out.push(entry(
            &format!("C{n}(1,2)"),
            constructions::circulant(n, &[1, 2, n - 1, n - 2]).unwrap(),
        ));
    }
    out.push(entry("C11(1,3)", constructions::circulant(11, &[1, 3, 8, 10]).unwrap()));
    out.push(entry("C13(1,5)", constructions::circulant(13, &[1, 5, 8, 12]).unwrap()));
    out.push(entry("C17(1,4)", constructions::circulant(17, &[1, 4, 13, 16]).unwrap()));

    // Cayley graphs over the bundled tables
    let d8 = GroupTable::dihedral(8);
    out.push(entry("cayley(d8;s,sr,sr2,sr4)", constructions::cayley(&d8, &[8, 9, 10, 12]).unwrap()));
    let d10 = GroupTable::dihedral(10);
    out.push(entry(
        "cayley(d10;s,sr,sr2,sr4)",
        constructions::cayley(&d10, &[10, 11, 12, 14]).unwrap(),
    ));
    let d12 = GroupTable::dihedral(12);
    out.push(entry(
        "cayley(d12;s,sr,sr2,sr4)",
        constructions::cayley(&d12, &[12, 13, 14, 16]).unwrap(),
    ));
    let d9 = GroupTable::dihedral(9);
    out.push(entry("cayley(d9;r4,r5,s,sr3)", constructions::cayley(&d9, &[4, 5, 10, 13]).unwrap()));
    let s4 = GroupTable::s4();
    out.push(entry("cayley(s4;c4,c4inv,c4sq,t)", constructions::cayley(&s4, &[9, 18, 16, 6]).unwrap()));
    let a4 = GroupTable::a4();
    out.push(entry("cayley(a4;3,5,9,11)", constructions::cayley(&a4, &[3, 5, 9, 11]).unwrap()));
    let z6z3 = GroupTable::direct_product(&GroupTable::cyclic(6), &GroupTable::cyclic(3));
    out.push(entry("cayley(z6xz3;1,5,11,13)", constructions::cayley(&z6z3, &[1, 5, 11, 13]).unwrap()));

    // arc graphs, expansions, products and the half-arc-transitive graph
    out.push(entry("arcgraph(K5)", constructions::arc_graph(&constructions::complete(5)).unwrap()));
    out.push(entry(
        "arcgraph(W3)",
        constructions::arc_graph(&constructions::wreath(3).unwrap()).unwrap(),
    ));
    out.push(entry("holt", constructions::holt()));
    out.push(entry("doubled-W5", constructions::doubled_wreath(5).unwrap()));
    out.push(entry("doubled-W6", constructions::doubled_wreath(6).unwrap()));
    out.push(entry("C3-of-Q3", constructions::cycle_of_q3(3).unwrap()));
    out.push(entry("C4-of-Q3", constructions::cycle_of_q3(4).unwrap()));
    out.push(entry(
        "petersen-prism",
        cartesian_product(&constructions::petersen(), &constructions::complete(2)),
    ));
    out.push(entry(
        "heawood-prism",
        cartesian_product(&constructions::heawood(), &constructions::complete(2)),
    ));
    out.push(entry("odd-graph-O4", constructions::kneser(7, 3).unwrap()));
    out.push(entry("L(gray)", line_graph(&constructions::gray()).0));

    // a disconnected entry, skipped with a note
    out.push(entry("2xC5(1,2)", {
        let k5 = constructions::complete(5);
        let mut edges = Vec::new();
        for (u, v) in k5.edges() {
            edges.push((u, v));
            edges.push((u + 5, v + 5));
        }
        Graph::from_edges(10, &edges).unwrap()
    }));

    out
}

/// Branches that the bundled catalog must exercise. The single-cycle
/// two-singleton rule and the triangle-quotient exceptional detections are
/// excluded: no vertex-transitive graph realizes them (the first needs a
/// cycle reflection fixing two distinct matching neighbours, the others are
/// edge-transitive and so never reach the non-edge-transitive rule).
pub fn required_branches() -> Vec<Branch> {
    vec![
        Branch::WreathRecognized,
        Branch::Type1All,
        Branch::Type1TwoSingletonsMultiCycle,
        Branch::Type1ComponentDistinguishing,
        Branch::Type1ComponentFigure,
        Branch::Type1UniqueEdges,
        Branch::Type1K33Cycle,
        Branch::Type1K4BoxK2,
        Branch::HalfArc,
        Branch::SweepSingleCycle,
        Branch::Sweep,
        Branch::TriangleOrbits,
        Branch::Girth3K5,
        Branch::Girth3K3BoxK3,
        Branch::Girth3LineGraph,
        Branch::CageFigure,
        Branch::Girth5Tree,
        Branch::ManyCommonK5xK2,
        Branch::TwoArcGirth4,
        Branch::ArcRegular,
        Branch::CrookedPath,
        Branch::StraightRecursion,
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Ok,
    Skipped,
    Failed,
}

/// One census row.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CensusRow {
    pub name: String,
    pub graph6: String,
    pub status: RowStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exceptional: Option<ExceptionalFamily>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<Branch>,
}

/// Census summary: per-graph rows plus the coverage and failure inventory.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CensusReport {
    pub rows: Vec<CensusRow>,
    pub total: usize,
    pub ok: usize,
    pub skipped: usize,
    pub failed: usize,
    pub branches_seen: Vec<Branch>,
    pub branches_missing: Vec<Branch>,
}

impl CensusReport {
    pub fn passed(&self) -> bool {
        self.failed == 0 && self.branches_missing.is_empty()
    }
}

/// Classifies one catalog entry into a census row, cross-checking the
/// exceptional verdict against independent isomorphism tests.
pub fn census_row(item: &CatalogEntry, limits: SearchLimits) -> CensusRow {
    let g = &item.graph;
    let graph6 = to_graph6(g);
    let mut row = CensusRow {
        name: item.name.clone(),
        graph6,
        status: RowStatus::Ok,
        note: None,
        exceptional: None,
        d: None,
        branch: None,
    };
    if !g.is_connected() {
        row.status = RowStatus::Skipped;
        row.note = Some("not connected".into());
        return row;
    }
    if g.regularity() != Some(4) {
        row.status = RowStatus::Skipped;
        row.note = Some("not 4-valent".into());
        return row;
    }
    match classify(g, limits) {
        Err(ClassifyError::Colouring(ColouringError::Precondition(msg))) => {
            row.status = RowStatus::Skipped;
            row.note = Some(msg);
        }
        Err(e) => {
            row.status = RowStatus::Failed;
            row.note = Some(e.to_string());
        }
        Ok(cert) => {
            row.exceptional = cert.exceptional;
            row.d = Some(cert.d);
            row.branch = Some(cert.branch_trace.branch);
            // independent cross-check of the exceptional verdict
            let independent = independent_exceptional_check(g);
            match (&cert.exceptional, &independent) {
                (Some(a), Some(b)) if a == b => {}
                (None, None) => {}
                (got, want) => {
                    row.status = RowStatus::Failed;
                    row.note =
                        Some(format!("classification {got:?} disagrees with isomorphism {want:?}"));
                    return row;
                }
            }
            let expected_d = cert.exceptional.map(|f| f.expected_d()).unwrap_or(2);
            if cert.d != expected_d || !cert.verified {
                row.status = RowStatus::Failed;
                row.note = Some(format!("d = {} but expected {expected_d}", cert.d));
            }
        }
    }
    row
}

/// Membership in the exceptional list by direct isomorphism testing,
/// independent of the constructive pipeline.
pub fn independent_exceptional_check(g: &Graph) -> Option<ExceptionalFamily> {
    if is_isomorphic(g, &constructions::complete(5)).is_some() {
        return Some(ExceptionalFamily::K5);
    }
    if is_isomorphic(g, &constructions::k3_box_k3()).is_some() {
        return Some(ExceptionalFamily::K3BoxK3);
    }
    if is_isomorphic(g, &constructions::k4_box_k2()).is_some() {
        return Some(ExceptionalFamily::K4BoxK2);
    }
    if is_isomorphic(g, &constructions::k5_tensor_k2()).is_some() {
        return Some(ExceptionalFamily::K5TensorK2);
    }
    if g.n() % 2 == 0 && g.n() >= 6 {
        let n = g.n() / 2;
        if let Ok(w) = constructions::wreath(n) {
            if is_isomorphic(g, &w).is_some() {
                return Some(ExceptionalFamily::Wreath(n));
            }
        }
    }
    None
}

/// Assembles rows into a report: sorts by graph6 string and computes branch
/// coverage against `required_branches`.
pub fn assemble_report(mut rows: Vec<CensusRow>) -> CensusReport {
    rows.sort_by(|a, b| a.graph6.cmp(&b.graph6).then(a.name.cmp(&b.name)));
    let total = rows.len();
    let ok = rows.iter().filter(|r| r.status == RowStatus::Ok).count();
    let skipped = rows.iter().filter(|r| r.status == RowStatus::Skipped).count();
    let failed = rows.iter().filter(|r| r.status == RowStatus::Failed).count();
    let mut branches_seen: Vec<Branch> = rows.iter().filter_map(|r| r.branch).collect();
    branches_seen.sort();
    branches_seen.dedup();
    let branches_missing: Vec<Branch> = required_branches()
        .into_iter()
        .filter(|b| !branches_seen.contains(b))
        .collect();
    CensusReport { rows, total, ok, skipped, failed, branches_seen, branches_missing }
}

/// Runs the census over a catalog.
pub fn verify_theorem(catalog: &[CatalogEntry], limits: SearchLimits) -> CensusReport {
    let rows: Vec<CensusRow> = catalog.iter().map(|e| census_row(e, limits)).collect();
    assemble_report(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn limits() -> SearchLimits {
        SearchLimits::default()
    }

    #[test]
    fn recognize_wreath_inverts_the_constructor() {
        for n in 3..=12 {
            assert_eq!(recognize_wreath(&constructions::wreath(n).unwrap()), Some(n));
        }
        assert_eq!(recognize_wreath(&constructions::complete_bipartite(4, 4)), Some(4));
        assert_eq!(recognize_wreath(&constructions::hypercube(4)), None);
    }

    #[test]
    fn classify_exceptional_examples() {
        let cert = classify(&constructions::k5_tensor_k2(), limits()).unwrap();
        assert_eq!(cert.exceptional, Some(ExceptionalFamily::K5TensorK2));
        assert_eq!(cert.d, 3);
        assert!(cert.verified);

        let cert = classify(&constructions::cage46(), limits()).unwrap();
        assert_eq!(cert.exceptional, None);
        assert_eq!(cert.d, 2);
        assert!(cert.colouring.is_some());
    }

    #[test]
    fn classify_circulant_example() {
        let g = constructions::circulant(12, &[1, 2, 10, 11]).unwrap();
        let cert = classify(&g, limits()).unwrap();
        assert_eq!(cert.exceptional, None);
        assert_eq!(cert.d, 2);
    }

    #[test]
    fn catalog_is_large_enough() {
        let catalog = bundled_catalog();
        assert!(catalog.len() >= 55, "catalog has {} entries", catalog.len());
        let four_valent_vt = catalog
            .iter()
            .filter(|e| {
                e.graph.regularity() == Some(4)
                    && e.graph.is_connected()
                    && crate::canon::automorphism_group(&e.graph).is_transitive()
            })
            .count();
        assert!(four_valent_vt >= 45, "{four_valent_vt} classifiable entries");
    }

    #[test]
    fn census_rows_handle_skips() {
        let k4 = CatalogEntry { name: "K4".into(), graph: constructions::complete(4) };
        let row = census_row(&k4, limits());
        assert_eq!(row.status, RowStatus::Skipped);

        let disconnected = CatalogEntry {
            name: "2K5".into(),
            graph: {
                let k5 = constructions::complete(5);
                let mut edges = Vec::new();
                for (u, v) in k5.edges() {
                    edges.push((u, v));
                    edges.push((u + 5, v + 5));
                }
                Graph::from_edges(10, &edges).unwrap()
            },
        };
        let row = census_row(&disconnected, limits());
        assert_eq!(row.status, RowStatus::Skipped);
    }
}
