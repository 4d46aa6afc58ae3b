use std::time::Duration;

use bqlab_core::search::search_brackets;
use bqlab_core::{fixtures, Ring, SearchSpec};
use criterion::{criterion_group, criterion_main, Criterion};

fn exhaustive(c: &mut Criterion) {
    let mut group = c.benchmark_group("search");
    group.sample_size(10).measurement_time(Duration::from_secs(5));

    let trivial2 = fixtures::biquandle("trivial2").unwrap();
    let spec = SearchSpec::new(trivial2, Ring::modular(4).unwrap());
    group.bench_function("trivial2/Z4", |b| b.iter(|| search_brackets(&spec).unwrap()));

    let flip2 = fixtures::biquandle("flip2").unwrap();
    let spec = SearchSpec {
        up_to_scaling: true,
        ..SearchSpec::new(flip2, fixtures::gf8())
    };
    group.bench_function("flip2/GF8/up-to-scaling", |b| b.iter(|| search_brackets(&spec).unwrap()));

    let dihedral3 = fixtures::biquandle("dihedral3").unwrap();
    let spec = SearchSpec {
        up_to_scaling: true,
        ..SearchSpec::new(dihedral3, Ring::modular(5).unwrap())
    };
    group.bench_function("dihedral3/Z5/up-to-scaling", |b| b.iter(|| search_brackets(&spec).unwrap()));
    group.finish();
}

criterion_group!(benches, exhaustive);
criterion_main!(benches);
