use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use spatialgen::gridgen::*;
use spatialgen::netgen::*;
use spatialgen::pointgen::sample_homogeneous_poisson;
use spatialgen::{RngStream, Window};
use spatialgen_bench::{density_grid, planar_network};

fn grids(c: &mut Criterion) {
    let mut group = c.benchmark_group("grid");
    for size in [25, 50] {
        let rd = ReactionDiffusionParams { size, total_population: (size * size * 10) as f64, ..Default::default() };
        group.bench_with_input(BenchmarkId::new("reaction_diffusion", size), &rd, |b, p| {
            b.iter(|| generate_reaction_diffusion(p, &mut RngStream::new(1)).unwrap())
        });
        let km = KernelMixtureParams { size, n_centers: 5, ..Default::default() };
        group.bench_with_input(BenchmarkId::new("kernel_mixture", size), &km, |b, p| {
            b.iter(|| generate_kernel_mixture(p, &mut RngStream::new(1)).unwrap())
        });
    }
    group.finish();
}

fn networks(c: &mut Criterion) {
    let mut group = c.benchmark_group("network");
    for n in [100, 400] {
        group.bench_with_input(BenchmarkId::new("random_planar", n), &n, |b, &n| {
            b.iter(|| generate_random_planar(n, 0.3, &Window::unit(), &mut RngStream::new(2)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("tree", n), &n, |b, &n| {
            b.iter(|| generate_tree_network(n, &Window::unit(), &mut RngStream::new(2)).unwrap())
        });
    }
    let substrate = planar_network(60, 3);
    let params = SlimeMouldParams {
        iterations: 100,
        flow_amplification: 1.8,
        decay: 0.5,
        time_step: 0.1,
        input_flow: 2.0,
        keep_threshold: 0.1,
        terminals: vec![0, 10, 20, 30, 40],
    };
    group.bench_function("slime_mould_60", |b| {
        b.iter(|| generate_slime_mould(&substrate, &params, &mut RngStream::new(4)).unwrap())
    });
    group.finish();
}

fn points(c: &mut Criterion) {
    let intensity = density_grid(30, 5);
    let mut group = c.benchmark_group("points");
    group.bench_function("homogeneous_1000", |b| {
        b.iter(|| sample_homogeneous_poisson(1000.0, &Window::unit(), &mut RngStream::new(6)).unwrap())
    });
    group.bench_function("inhomogeneous_rd30", |b| {
        b.iter(|| spatialgen::pointgen::sample_inhomogeneous_poisson(&intensity, &mut RngStream::new(6)))
    });
    group.finish();
}

criterion_group!(benches, grids, networks, points);
criterion_main!(benches);
