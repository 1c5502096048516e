use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use exittime_core::montecarlo::simulate;
use exittime_core::{Domain, McConfig, McMethod, Point2};

fn walk_on_spheres(c: &mut Criterion) {
    let mut g = c.benchmark_group("wos 10k paths");
    g.sample_size(10);
    for spec in ["disc:r0=1", "ellipse:a=1.2,b=0.6", "polygon:m=7", "cutout:a=1,b=0.3"] {
        let d: Domain = spec.parse().unwrap();
        let start = if spec.starts_with("cutout") { Point2::new(1.15, 0.0) } else { Point2::new(0.1, 0.1) };
        let cfg = McConfig { paths: 10_000, ..McConfig::default() };
        g.bench_function(spec, |b| b.iter(|| simulate(&d, black_box(start), &cfg)));
    }
    g.finish();
}

fn euler(c: &mut Criterion) {
    let mut g = c.benchmark_group("euler 1k paths");
    g.sample_size(10);
    let d: Domain = "disc:r0=1".parse().unwrap();
    for step in [1e-3, 1e-4] {
        let cfg = McConfig { method: McMethod::Euler, paths: 1_000, step, ..McConfig::default() };
        g.bench_function(format!("disc h={step}"), |b| b.iter(|| simulate(&d, black_box(Point2::ORIGIN), &cfg)));
    }
    g.finish();
}

criterion_group!(benches, walk_on_spheres, euler);
criterion_main!(benches);
