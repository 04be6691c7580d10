use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use spectral_turan::canon::canonical_form;
use spectral_turan::enumerate::{count_ffree, EnumOptions};
use spectral_turan::search::{local_search, SearchConfig};
use spectral_turan::spectral::rho_exact_family;
use spectral_turan::{graph6, is_free, perron, FamilySpec, ForbiddenSpec};
use spectral_turan_bench::{book_pair, random_graphs};

fn spectral(c: &mut Criterion) {
    let mut group = c.benchmark_group("perron");
    for m in [23, 101, 201] {
        let (book, runner) = book_pair(m);
        group.bench_with_input(BenchmarkId::new("book", m), &book, |b, g| b.iter(|| perron(black_box(g), 1e-12)));
        group.bench_with_input(BenchmarkId::new("runner-up", m), &runner, |b, g| {
            b.iter(|| perron(black_box(g), 1e-12))
        });
    }
    group.finish();
    c.bench_function("quotient/snkt-1001", |b| {
        let spec = FamilySpec::pendant_book_for_size(1001, 2).unwrap();
        b.iter(|| rho_exact_family(black_box(&spec)))
    });
}

fn detection(c: &mut Criterion) {
    let gem = ForbiddenSpec::gem();
    let sparse = random_graphs(64, 40, 0.05);
    let dense = random_graphs(64, 16, 0.3);
    c.bench_function("gem/sparse-40", |b| b.iter(|| sparse.iter().filter(|g| is_free(g, &gem)).count()));
    c.bench_function("gem/dense-16", |b| b.iter(|| dense.iter().filter(|g| is_free(g, &gem)).count()));
}

fn canon(c: &mut Criterion) {
    let graphs = random_graphs(64, 24, 0.15);
    c.bench_function("canonical-form/random-24", |b| b.iter(|| graphs.iter().map(canonical_form).count()));
    let (book, _) = book_pair(101);
    c.bench_function("canonical-form/book-101", |b| b.iter(|| canonical_form(black_box(&book))));
    c.bench_function("graph6/round-trip-24", |b| {
        b.iter(|| {
            graphs
                .iter()
                .map(|g| graph6::decode(&graph6::encode(g)).unwrap().size())
                .sum::<usize>()
        })
    });
}

fn enumeration(c: &mut Criterion) {
    let gem = ForbiddenSpec::gem();
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    for m in [7, 9] {
        group.bench_with_input(BenchmarkId::new("gem-free", m), &m, |b, &m| {
            b.iter(|| count_ffree(m, Some(&gem), &EnumOptions::default()).unwrap())
        });
    }
    group.finish();
}

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    let cfg = SearchConfig {
        restarts: 4,
        ..SearchConfig::new(23, ForbiddenSpec::gem())
    };
    group.bench_function("m23-4-restarts", |b| b.iter(|| local_search(black_box(&cfg)).unwrap()));
    group.finish();
}

criterion_group!(benches, spectral, detection, canon, enumeration, search);
criterion_main!(benches);
