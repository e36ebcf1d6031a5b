use criterion::{criterion_group, criterion_main, Criterion};

use bql_bench::{carmichael_presentation, scrambled_braid};
use bql_core::cosets::{enumerate, Budget};
use bql_core::{PermGroup, Word};

fn normal_form(c: &mut Criterion) {
    let mut group = c.benchmark_group("garside");
    for (n, len) in [(5, 100), (8, 200), (9, 1000)] {
        let b = scrambled_braid(n, len, 0x9e37_79b9_7f4a_7c15);
        group.bench_function(format!("n{n}_len{len}"), |bench| {
            bench.iter(|| b.normal_form())
        });
    }
    group.finish();
}

fn coset_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("todd_coxeter");
    group.sample_size(10);
    let sub = [Word::from_signed(&[1]).unwrap()];
    for n in [5, 6, 7] {
        let p = carmichael_presentation(n);
        group.bench_function(format!("carmichael_n{n}"), |bench| {
            bench.iter(|| enumerate(&p, &sub, &Budget::default()).unwrap())
        });
    }
    group.finish();
}

fn schreier_sims(c: &mut Criterion) {
    c.bench_function("alternating_9_order", |bench| {
        bench.iter(|| PermGroup::alternating(9).order())
    });
}

criterion_group!(benches, normal_form, coset_enumeration, schreier_sims);
criterion_main!(benches);
