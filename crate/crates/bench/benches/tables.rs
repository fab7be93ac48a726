use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qgenocchi::qcore::rational;
use qgenocchi::qzeta::qzeta_neg_int;
use qgenocchi::{GenocchiTable, QContext};

fn tables(c: &mut Criterion) {
    let mut g = c.benchmark_group("genocchi_table");
    for (num, den) in [(1, 1), (1, 2), (2, 3)] {
        let ctx = QContext::new(rational(num, den)).unwrap();
        for order in [10usize, 20] {
            g.bench_with_input(BenchmarkId::new(format!("q={num}/{den}"), order), &order, |b, &order| {
                b.iter(|| GenocchiTable::new(&ctx, 2, black_box(order)).unwrap())
            });
        }
    }
    g.finish();
}

fn zeta(c: &mut Criterion) {
    let ctx = QContext::new(rational(2, 3)).unwrap();
    c.bench_function("qzeta_neg_int alpha=3 n=8", |b| {
        b.iter(|| qzeta_neg_int(&ctx, black_box(8), &rational(1, 2), 3).unwrap())
    });
}

criterion_group!(benches, tables, zeta);
criterion_main!(benches);
