use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use medcons_core::consensus::{check_axiom, tabulate_median, verify_l6_is_abc, Axiom, DEFAULT_TABLE_CAP};
use medcons_core::graph::generators::{bhat, hypercube};
use medcons_core::hypergraph::{build_counterexample, CounterexampleKind};
use medcons_core::median::check_unimodal_equals_connected;
use medcons_core::pairing::polytope::{double_pairing_property, PolytopeOptions};
use medcons_core::{Exec, ProfileBudget};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn bench_consensus(c: &mut Criterion) {
    let mut group = c.benchmark_group("consensus");
    group.sample_size(10);
    let g = bhat(4).unwrap();
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new("l6_abc_len5", name), &exec, |b, &exec| {
            b.iter(|| verify_l6_is_abc(5, exec).unwrap())
        });
        let t = tabulate_median(&g, 4, DEFAULT_TABLE_CAP, exec).unwrap();
        group.bench_with_input(BenchmarkId::new("consistency_bhat4_len4", name), &exec, |b, &exec| {
            b.iter(|| check_axiom(&t, Axiom::C, exec).unwrap())
        });
    }
    group.finish();
}

fn bench_medians(c: &mut Criterion) {
    let mut group = c.benchmark_group("medians");
    group.sample_size(10);
    let q = hypercube(3).unwrap();
    for (name, exec) in MODES {
        let budget = ProfileBudget::new(4, 2).with_exec(exec);
        group.bench_with_input(BenchmarkId::new("connected_cube", name), &budget, |b, budget| {
            b.iter(|| check_unimodal_equals_connected(&q, 1, budget).unwrap())
        });
    }
    group.finish();
}

fn bench_pairing(c: &mut Criterion) {
    let mut group = c.benchmark_group("pairing");
    group.sample_size(10);
    let r = build_counterexample(CounterexampleKind::DoublePairing).unwrap().graph;
    for (name, exec) in MODES {
        let opts = PolytopeOptions { exec, ..PolytopeOptions::default() };
        group.bench_with_input(BenchmarkId::new("double_pairing_counterexample", name), &opts, |b, &opts| {
            b.iter(|| double_pairing_property(&r, opts).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_consensus, bench_medians, bench_pairing);
criterion_main!(benches);
