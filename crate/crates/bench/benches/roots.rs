use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use padelab_core::pade::pade;
use padelab_core::pade::roots::aberth_ehrlich;
use padelab_core::series::{catalog_make, CatalogSpec};
use padelab_core::Float;

const PREC: u32 = 256;

fn denominators(c: &mut Criterion) {
    let f = catalog_make(&CatalogSpec::Exp).unwrap();
    let mut g = c.benchmark_group("aberth_ehrlich");
    for m in [4usize, 8, 16] {
        let q = pade(&f, m, m).unwrap().q;
        let coeffs: Vec<Float> = q.coeffs().iter().map(|x| Float::with_val(PREC, x)).collect();
        g.bench_with_input(BenchmarkId::from_parameter(m), &coeffs, |b, cs| b.iter(|| aberth_ehrlich(cs, PREC, 500).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, denominators);
criterion_main!(benches);
