use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nearspace::enumeration::{enumerate_relations, mine_separating_examples};
use nearspace::groups::{check_proximal_group, FiniteGroup};
use nearspace::{check_class, AxiomClass, FiniteSpace, ProximityRelation};
use nearspace_bench::path_relation;

fn axiom_checks(c: &mut Criterion) {
    let mut group = c.benchmark_group("check_class/lodato-ef");
    for n in [3, 4, 5, 6] {
        let discrete = ProximityRelation::discrete(FiniteSpace::lettered(n).unwrap());
        group.bench_with_input(BenchmarkId::new("discrete", n), &discrete, |b, r| {
            b.iter(|| check_class(black_box(r), AxiomClass::LodatoEfremovic))
        });
        let path = path_relation(n);
        group.bench_with_input(BenchmarkId::new("path", n), &path, |b, r| {
            b.iter(|| check_class(black_box(r), AxiomClass::LodatoEfremovic))
        });
    }
    group.finish();
}

fn group_checks(c: &mut Criterion) {
    let mut group = c.benchmark_group("check_proximal_group");
    for (name, g) in FiniteGroup::catalog(8) {
        let rel = ProximityRelation::discrete(g.space().clone());
        group.bench_function(BenchmarkId::new("discrete", &name), |b| {
            b.iter(|| check_proximal_group(black_box(&g), black_box(&rel)).unwrap())
        });
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumeration");
    group.sample_size(10);
    group.bench_function("cech n=4", |b| {
        b.iter(|| enumerate_relations(4, AxiomClass::Cech).unwrap())
    });
    group.bench_function("census n=3", |b| {
        b.iter(|| mine_separating_examples(3).unwrap())
    });
    group.finish();
}

criterion_group!(benches, axiom_checks, group_checks, enumeration);
criterion_main!(benches);
