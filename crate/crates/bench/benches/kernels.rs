//! Benchmarks for the search kernels: automorphism groups, canonical forms,
//! exact distinguishing numbers and the end-to-end classifier.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use symbreak::canon::{automorphism_group, canonical_form};
use symbreak::classifier::classify;
use symbreak::constructions;
use symbreak::distinguishing::{distinguishing_number, SearchLimits};
use symbreak::graph::Graph;
use symbreak::io::{from_graph6, to_graph6};

fn bench_graphs() -> Vec<(&'static str, Graph)> {
    vec![
        ("petersen", constructions::petersen()),
        ("cage46", constructions::cage46()),
        ("W8", constructions::wreath(8).unwrap()),
        ("holt", constructions::holt()),
        ("odd-graph-O4", constructions::kneser(7, 3).unwrap()),
    ]
}

fn automorphism_groups(c: &mut Criterion) {
    let mut group = c.benchmark_group("automorphism_group");
    for (name, g) in bench_graphs() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &g, |b, g| {
            b.iter(|| automorphism_group(g).order())
        });
    }
    group.finish();
}

fn canonical_forms(c: &mut Criterion) {
    let mut group = c.benchmark_group("canonical_form");
    for (name, g) in bench_graphs() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &g, |b, g| {
            b.iter(|| canonical_form(g).0.edge_count())
        });
    }
    group.finish();
}

fn distinguishing_numbers(c: &mut Criterion) {
    let mut group = c.benchmark_group("distinguishing_number");
    let cases = vec![
        ("petersen", constructions::petersen(), 4),
        ("W6", constructions::wreath(6).unwrap(), 4),
        ("K4,4", constructions::complete_bipartite(4, 4), 6),
        ("Q4", constructions::hypercube(4), 3),
    ];
    for (name, g, k_max) in cases {
        group.bench_with_input(BenchmarkId::from_parameter(name), &g, |b, g| {
            b.iter(|| distinguishing_number(g, k_max, SearchLimits::default()).unwrap().0)
        });
    }
    group.finish();
}

fn classification(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify");
    let cases = vec![
        ("cage46", constructions::cage46()),
        ("holt", constructions::holt()),
        ("doubled-W5", constructions::doubled_wreath(5).unwrap()),
        ("C3-of-Q3", constructions::cycle_of_q3(3).unwrap()),
    ];
    for (name, g) in cases {
        group.bench_with_input(BenchmarkId::from_parameter(name), &g, |b, g| {
            b.iter(|| classify(g, SearchLimits::default()).unwrap().d)
        });
    }
    group.finish();
}

fn serialization(c: &mut Criterion) {
    let g = constructions::cage46();
    let s = to_graph6(&g);
    c.bench_function("graph6_round_trip/cage46", |b| {
        b.iter(|| from_graph6(&to_graph6(&g)).unwrap().n())
    });
    c.bench_function("graph6_parse/cage46", |b| b.iter(|| from_graph6(&s).unwrap().n()));
}

criterion_group!(
    benches,
    automorphism_groups,
    canonical_forms,
    distinguishing_numbers,
    classification,
    serialization
);
criterion_main!(benches);
