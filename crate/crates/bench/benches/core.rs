//! Benchmarks for the hot paths: norms, walk counts, freeness testing,
//! canonical labeling, and small exact search.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use xturan_core::canon;
use xturan_core::constructions::{petersen, polarity_graph};
use xturan_core::hypergraph::Host;
use xturan_core::norms;
use xturan_core::patterns::{is_free, registry};
use xturan_core::search;
use xturan_core::walks;

fn bench_norms(c: &mut Criterion) {
    let er = polarity_graph(31).expect("31 is prime");
    c.bench_function("p_norm ER_31 p=1.5", |b| {
        b.iter(|| norms::p_norm(black_box(&er), 1.5).unwrap())
    });
    c.bench_function("tp_norm ER_31 t=2 p=2", |b| {
        b.iter(|| norms::tp_norm(black_box(&er), 2, 2.0).unwrap())
    });
}

fn bench_walks(c: &mut Criterion) {
    let er = polarity_graph(31).expect("31 is prime");
    c.bench_function("walk_count ER_31 k=4", |b| {
        b.iter(|| walks::walk_count(black_box(&er), 4).unwrap())
    });
}

fn bench_freeness(c: &mut Criterion) {
    let er = Host::Hyper(polarity_graph(13).expect("13 is prime"));
    let c4 = registry("C4").unwrap();
    c.bench_function("is_free C4 in ER_13", |b| {
        b.iter(|| is_free(black_box(&er), &c4).unwrap())
    });
    let k33 = registry("K3,3").unwrap();
    c.bench_function("is_free K3,3 in ER_13", |b| {
        b.iter(|| is_free(black_box(&er), &k33).unwrap())
    });
}

fn bench_canonical(c: &mut Criterion) {
    let pet = petersen();
    c.bench_function("canonical_graph Petersen", |b| {
        b.iter_batched(
            || pet.clone(),
            |g| canon::canonical_graph(black_box(&g)),
            BatchSize::SmallInput,
        )
    });
}

fn bench_search(c: &mut Criterion) {
    let c4 = registry("C4").unwrap();
    c.bench_function("exact_max_pnorm n=5 C4 p=2", |b| {
        b.iter(|| search::exact_max_pnorm(5, black_box(&c4), 2.0, None).unwrap())
    });
}

criterion_group!(
    benches,
    bench_norms,
    bench_walks,
    bench_freeness,
    bench_canonical,
    bench_search
);
criterion_main!(benches);
