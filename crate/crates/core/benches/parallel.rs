//! Parallel vs sequential throughput for the batch workloads: the pentagon
//! scan and the oracle grid minimization.
//!
//! With the default `parallel` feature the library paths run on rayon; the
//! `sequential` entries always run the plain loop, so the comparison shows
//! the speedup directly. Built with `--no-default-features` both sides run
//! sequentially.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kleinbary::euclidean::{pentagon_conjecture_scan, pentagon_conjecture_scan_sequential};
use kleinbary::oracle::{minimize_on_disk, ScalarField};
use kleinbary::polygon::{barycenter, IdealPolygon};
use kleinbary::PlanePoint;

fn bench_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("pentagon_scan");
    for samples in [500usize, 2000] {
        group.bench_with_input(
            BenchmarkId::new("parallel", samples),
            &samples,
            |b, &samples| b.iter(|| pentagon_conjecture_scan(samples, 7, 1e-7)),
        );
        group.bench_with_input(
            BenchmarkId::new("sequential", samples),
            &samples,
            |b, &samples| b.iter(|| pentagon_conjecture_scan_sequential(samples, 7, 1e-7)),
        );
    }
    group.finish();
}

fn bench_oracle(c: &mut Criterion) {
    let poly = IdealPolygon::regular(6).unwrap();
    let reference = barycenter(&poly).unwrap();
    let triples: Vec<_> = (0..6).map(|k| poly.side(k).triple()).collect();
    c.bench_function("oracle_minimize_hexagon", |b| {
        b.iter(|| {
            let triples = triples.clone();
            let field = ScalarField::on_disk(move |p: &PlanePoint| {
                let w = (1.0 - p.norm_sq()).sqrt();
                triples
                    .iter()
                    .map(|t| (t.i_minus_k * p.x + t.two_j * p.y - t.i_plus_k) / w)
                    .sum()
            });
            let (argmin, _) = minimize_on_disk(&field, 1e-8).unwrap();
            assert!(argmin.dist(&reference) < 1e-5);
            argmin
        })
    });
}

criterion_group!(benches, bench_scan, bench_oracle);
criterion_main!(benches);
