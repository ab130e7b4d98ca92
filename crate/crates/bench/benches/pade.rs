use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use padelab_core::pade::pade;
use padelab_core::series::{catalog_make, CatalogSpec};

fn entries(c: &mut Criterion) {
    let mut g = c.benchmark_group("pade");
    for (name, spec) in [("exp", CatalogSpec::Exp), ("log_branch", CatalogSpec::log_branch("2"))] {
        for size in [8usize, 16, 32] {
            g.bench_with_input(BenchmarkId::new(name, size), &size, |b, &k| {
                // A fresh series each time so coefficient memoization is not shared.
                b.iter_batched(|| catalog_make(&spec).unwrap(), |f| pade(&f, k, k).unwrap(), criterion::BatchSize::SmallInput)
            });
        }
    }
    g.finish();
}

criterion_group!(benches, entries);
criterion_main!(benches);
