use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use starconv::euler::{
    cf_inverse_convex, default_directions, direction_sweep, euler_convolve_many, inverse_probe_points,
};
use starconv::geom::{convex_hull, Mode, Point, Region, Term};
use starconv::interval::convolve_generators;
use starconv::oracle::validate_table_with;
use starconv::{ConstructibleFunction, Execution};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn plus_shape() -> Region {
    let rect = |x0: i64, y0: i64, x1: i64, y1: i64| {
        convex_hull(&[
            Point::from_ints(&[x0, y0]),
            Point::from_ints(&[x1, y0]),
            Point::from_ints(&[x0, y1]),
            Point::from_ints(&[x1, y1]),
        ])
        .unwrap()
    };
    Region::from_terms(
        2,
        [Term::new(rect(-3, -1, 3, 1), Mode::Closed, 1), Term::new(rect(-1, -3, 1, 3), Mode::Closed, 1)],
    )
    .unwrap()
}

fn table(c: &mut Criterion) {
    let mut group = c.benchmark_group("validate_table");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, 2000), &exec, |b, &exec| {
            b.iter(|| validate_table_with(2000, 1, convolve_generators, exec).unwrap())
        });
    }
    group.finish();
}

fn sweep(c: &mut Criterion) {
    let region = plus_shape();
    let dirs = default_directions(&region, 5);
    let mut group = c.benchmark_group("direction_sweep");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, dirs.len()), &exec, |b, &exec| {
            b.iter(|| direction_sweep(&region, &dirs, exec).unwrap())
        });
    }
    group.finish();
}

fn inverse_identity(c: &mut Criterion) {
    let cube = convex_hull(&(0..8).map(|i| Point::from_ints(&[i & 1, (i >> 1) & 1, (i >> 2) & 1])).collect::<Vec<_>>())
        .unwrap();
    let one = ConstructibleFunction::indicator(cube.clone(), Mode::Closed);
    let inv = cf_inverse_convex(&cube);
    let ts = inverse_probe_points(&cube, 200, 1);
    let mut group = c.benchmark_group("inverse_identity");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, ts.len()), &exec, |b, &exec| {
            b.iter(|| euler_convolve_many(&one, &inv, &ts, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, table, sweep, inverse_identity);
criterion_main!(benches);
