use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use stefan_core::specfun::{en_fn, kummer_m, kummer_u};

fn kummer(c: &mut Criterion) {
    let mut group = c.benchmark_group("kummer_m");
    for (a, b, z) in [
        (-0.35, 0.5, -0.8),
        (1.2, 1.5, 9.0),
        (0.3, 0.5, -40.0),
        (1.75, 0.5, 120.0),
    ] {
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{a},{b},{z}")),
            &(a, b, z),
            |bch, &(a, b, z)| bch.iter(|| kummer_m(black_box(a), black_box(b), black_box(z))),
        );
    }
    group.finish();

    let mut group = c.benchmark_group("kummer_u");
    for (a, b, z) in [
        (0.85, 0.5, 0.3),
        (1.3, 0.5, 4.0),
        (2.0, 0.5, 25.0),
        (0.75, 0.5, 400.0),
    ] {
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{a},{b},{z}")),
            &(a, b, z),
            |bch, &(a, b, z)| bch.iter(|| kummer_u(black_box(a), black_box(b), black_box(z))),
        );
    }
    group.finish();

    c.bench_function("en_fn/n=3,z=1.1", |b| {
        b.iter(|| en_fn(black_box(3), black_box(1.1)))
    });
}

criterion_group!(benches, kummer);
criterion_main!(benches);
