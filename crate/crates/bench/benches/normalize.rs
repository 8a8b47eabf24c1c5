use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use uqglmn_bench::maximal_product;
use uqglmn_core::{expand_ns, normal_order, NormalOrderConfig, PivotStrategy};

fn bench_normal_order(c: &mut Criterion) {
    let cfg = NormalOrderConfig::default();
    let mut group = c.benchmark_group("normal_order_maximal_pair");
    for (m, n) in [(1, 1), (2, 1), (2, 2), (3, 2)] {
        let x = maximal_product(m, n);
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("gl({m}|{n})")),
            &x,
            |b, x| b.iter(|| normal_order(x, &cfg).unwrap()),
        );
    }
    group.finish();
}

fn bench_expand_then_normalize(c: &mut Criterion) {
    let cfg = NormalOrderConfig::default();
    let mut group = c.benchmark_group("expand_then_normalize_maximal_pair");
    for (m, n) in [(1, 1), (2, 1), (2, 2), (3, 2)] {
        let x = maximal_product(m, n);
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("gl({m}|{n})")),
            &x,
            |b, x| {
                b.iter(|| {
                    normal_order(&expand_ns(x, PivotStrategy::Row), &cfg).unwrap()
                })
            },
        );
    }
    group.finish();
}

fn bench_expansion(c: &mut Criterion) {
    let mut group = c.benchmark_group("expand_ns_maximal_pair");
    for (m, n) in [(2, 2), (3, 3), (4, 4)] {
        let x = maximal_product(m, n);
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("gl({m}|{n})")),
            &x,
            |b, x| b.iter(|| expand_ns(x, PivotStrategy::Row)),
        );
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_normal_order,
    bench_expand_then_normalize,
    bench_expansion
);
criterion_main!(benches);
