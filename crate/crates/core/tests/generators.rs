mod common;

use common::*;
use spatialgen::gridgen::*;
use spatialgen::indicators::grid_morphology;
use spatialgen::pointgen::*;
use spatialgen::{Grid, Point, RngStream, Window};
use statrs::distribution::{ChiSquared, ContinuousCDF};

#[test]
fn reaction_diffusion_uniform_when_alpha_zero() {
    let p = ReactionDiffusionParams {
        size: 10,
        total_population: 1000.0,
        growth_rate: 100.0,
        alpha: 0.0,
        beta: 0.0,
        diffusion_steps: 0,
    };
    let mut counts = vec![0.0; 100];
    for seed in 0..50 {
        let g = generate_reaction_diffusion(&p, &mut RngStream::new(seed)).unwrap();
        assert_eq!(g.sum(), 1000.0);
        for (c, v) in counts.iter_mut().zip(g.values()) {
            *c += v;
        }
    }
    let expected = 50.0 * 1000.0 / 100.0;
    let chi2: f64 = counts.iter().map(|c| (c - expected).powi(2) / expected).sum();
    let p_value = 1.0 - ChiSquared::new(99.0).unwrap().cdf(chi2);
    assert!(p_value > 0.001, "chi2 {chi2}, p {p_value}");
}

#[test]
fn reaction_diffusion_sweep_conserves_mass() {
    let mut rng = RngStream::new(41);
    let (w, h) = (13, 9);
    let mut v: Vec<f64> = (0..w * h).map(|_| rng.uniform() * 100.0).collect();
    for _ in 0..3 {
        let before: f64 = v.iter().sum();
        diffusion_sweep(&mut v, w, h, 0.2);
        let after: f64 = v.iter().sum();
        assert!((after - before).abs() <= 1e-9 * before);
        assert!(v.iter().all(|&x| x >= 0.0));
    }
}

#[test]
fn reaction_diffusion_alpha_controls_autocorrelation() {
    let mean_moran = |alpha: f64| {
        let p = ReactionDiffusionParams {
            size: 50,
            total_population: 50_000.0,
            growth_rate: 50.0,
            alpha,
            beta: 0.1,
            diffusion_steps: 2,
        };
        let m: Vec<f64> = (0..20)
            .map(|s| grid_morphology(&generate_reaction_diffusion(&p, &mut RngStream::new(s)).unwrap()).moran)
            .collect();
        mean(&m)
    };
    assert!(mean_moran(4.0) > mean_moran(0.5));
}

#[test]
fn kernel_mixture_closed_forms() {
    let base = KernelMixtureParams { size: 9, n_centers: 1, max_value: 3.0, radius: 2.0, kernel: Kernel::Exponential };
    let center = Grid::zeros(9, 9).cell_center(40);
    let g = kernel_mixture_from_centers(&base, &[center]).unwrap();
    assert_eq!(g.values()[40], 3.0);
    let gauss = KernelMixtureParams { kernel: Kernel::Gaussian, ..base };
    let g = kernel_mixture_from_centers(&gauss, &[center]).unwrap();
    // cell two columns to the right is at distance r0 = 2
    assert!((g.values()[42] - 3.0 * (-0.5f64).exp()).abs() < 1e-12);
}

#[test]
fn kernel_mixture_matches_direct_summation() {
    let p = KernelMixtureParams { size: 20, n_centers: 3, max_value: 5.0, radius: 3.0, kernel: Kernel::Gaussian };
    let mut rng = RngStream::new(42);
    let centers: Vec<Point> = (0..3).map(|_| Point::new(rng.uniform() * 20.0, rng.uniform() * 20.0)).collect();
    let g = kernel_mixture_from_centers(&p, &centers).unwrap();
    for i in 0..g.len() {
        let c = g.cell_center(i);
        let want: f64 = centers.iter().map(|k| 5.0 * (-(c.distance(*k) / 3.0).powi(2) / 2.0).exp()).sum();
        assert!((g.values()[i] - want).abs() < 1e-12);
    }
    // mirrored centers give the mirrored grid
    let mirrored: Vec<Point> = centers.iter().map(|c| Point::new(20.0 - c.x, c.y)).collect();
    let m = kernel_mixture_from_centers(&p, &mirrored).unwrap();
    for r in 0..20 {
        for c in 0..20 {
            assert!((g.get(r, c) - m.get(r, 19 - c)).abs() < 1e-12);
        }
    }
    let a = generate_kernel_mixture(&p, &mut RngStream::new(5)).unwrap();
    assert_eq!(a, generate_kernel_mixture(&p, &mut RngStream::new(5)).unwrap());
}

fn is_single_cluster(g: &Grid) -> bool {
    let (w, h) = (g.width(), g.height());
    let occupied: Vec<usize> = (0..g.len()).filter(|&i| g.values()[i] > 0.0).collect();
    let Some(&start) = occupied.first() else { return true };
    let mut seen = vec![false; g.len()];
    let mut stack = vec![start];
    seen[start] = true;
    let mut count = 0;
    while let Some(i) = stack.pop() {
        count += 1;
        let (r, c) = (i / w, i % w);
        let mut nb = Vec::new();
        if r > 0 {
            nb.push(i - w);
        }
        if r + 1 < h {
            nb.push(i + w);
        }
        if c > 0 {
            nb.push(i - 1);
        }
        if c + 1 < w {
            nb.push(i + 1);
        }
        for j in nb {
            if !seen[j] && g.values()[j] > 0.0 {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    count == occupied.len()
}

#[test]
fn percolation_contracts() {
    let p = |q, keep| PercolationParams { size: 50, occupation_probability: q, keep_largest_cluster_only: keep };
    let mut rng = RngStream::new(43);
    assert!(generate_percolation(&p(1.0, false), &mut rng).unwrap().values().iter().all(|&v| v == 1.0));
    assert!(generate_percolation(&p(0.0, true), &mut rng).unwrap().values().iter().all(|&v| v == 0.0));
    let kept = generate_percolation(&p(0.6, true), &mut rng).unwrap();
    assert!(kept.sum() > 0.0 && is_single_cluster(&kept));
    let raw = generate_percolation(&PercolationParams { size: 100, ..p(0.3, false) }, &mut rng).unwrap();
    let freq = raw.sum() / 1e4;
    assert!((freq - 0.3).abs() < 3.0 * (0.3f64 * 0.7 / 1e4).sqrt());
}

#[test]
fn blocks_contracts() {
    let mut rng = RngStream::new(44);
    let none = BlocksParams { size: 10, n_blocks: 0, min_block_side: 1, max_block_side: 3, allow_overlap: true };
    assert_eq!(generate_blocks(&none, &mut rng).unwrap().sum(), 0.0);
    let one = BlocksParams { n_blocks: 1, min_block_side: 3, max_block_side: 3, ..none.clone() };
    let g = generate_blocks(&one, &mut rng).unwrap();
    assert_eq!(g.sum(), 9.0);
    let cells: Vec<usize> = (0..100).filter(|&i| g.values()[i] == 1.0).collect();
    let (r0, c0) = (cells[0] / 10, cells[0] % 10);
    assert!(cells.iter().all(|&i| (r0..r0 + 3).contains(&(i / 10)) && (c0..c0 + 3).contains(&(i % 10))));
    let five = BlocksParams { size: 30, n_blocks: 5, min_block_side: 2, max_block_side: 6, allow_overlap: false };
    let (g, rects) = generate_blocks_with_rects(&five, &mut rng).unwrap();
    for (i, a) in rects.iter().enumerate() {
        for b in &rects[i + 1..] {
            let apart = a.row + a.height <= b.row
                || b.row + b.height <= a.row
                || a.col + a.width <= b.col
                || b.col + b.width <= a.col;
            assert!(apart);
        }
    }
    assert_eq!(g.sum() as usize, rects.iter().map(|r| r.area()).sum::<usize>());
}

#[test]
fn homogeneous_poisson_mean_count() {
    let counts: Vec<f64> = (0..1000)
        .map(|s| sample_homogeneous_poisson(50.0, &Window::unit(), &mut RngStream::new(s)).unwrap().len() as f64)
        .collect();
    assert!((mean(&counts) - 50.0).abs() < 3.0 * (50.0f64 / 1000.0).sqrt());
    assert_eq!(sample_homogeneous_poisson(0.0, &Window::unit(), &mut RngStream::new(0)).unwrap().len(), 0);
}

#[test]
fn homogeneous_poisson_disjoint_counts_uncorrelated() {
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for s in 0..1000 {
        let ps = sample_homogeneous_poisson(40.0, &Window::unit(), &mut RngStream::new(10_000 + s)).unwrap();
        assert!(ps.points().iter().all(|p| Window::unit().contains(*p)));
        a.push(ps.points().iter().filter(|p| p.x < 0.5).count() as f64);
        b.push(ps.points().iter().filter(|p| p.x >= 0.5).count() as f64);
    }
    let (ma, mb) = (mean(&a), mean(&b));
    let cov = a.iter().zip(&b).map(|(x, y)| (x - ma) * (y - mb)).sum::<f64>() / 999.0;
    // sd of the sample covariance of independent variables ≈ σa·σb/√n
    let se = (variance(&a) * variance(&b) / 1000.0).sqrt();
    assert!(cov.abs() < 3.0 * se, "cov {cov}, se {se}");
}

#[test]
fn inhomogeneous_thinning() {
    let constant = Grid::filled(4, 4, 5.0);
    let counts: Vec<f64> =
        (0..1000).map(|s| sample_inhomogeneous_poisson(&constant, &mut RngStream::new(s)).len() as f64).collect();
    assert!((mean(&counts) - 80.0).abs() < 3.0 * (80.0f64 / 1000.0).sqrt());

    let mut v = vec![0.0; 16];
    v[6] = 30.0;
    let spike = Grid::new(4, 4, v).unwrap();
    let ps = sample_inhomogeneous_poisson(&spike, &mut RngStream::new(3));
    assert!(!ps.is_empty());
    assert!(ps.points().iter().all(|p| spike.cell_at(*p) == Some(6)));
    assert!(sample_inhomogeneous_poisson(&Grid::zeros(3, 3), &mut RngStream::new(0)).is_empty());

    // acceptance per cell tracks intensity / max
    let ramp = Grid::new(4, 1, vec![10.0, 20.0, 30.0, 40.0]).unwrap();
    let mut per_cell = [0.0; 4];
    let runs = 500;
    for s in 0..runs {
        for p in sample_inhomogeneous_poisson(&ramp, &mut RngStream::new(s)).points() {
            per_cell[ramp.cell_at(*p).unwrap()] += 1.0;
        }
    }
    for (c, lam) in per_cell.iter().zip([10.0, 20.0, 30.0, 40.0]) {
        let expected = lam * runs as f64;
        assert!((c - expected).abs() < 3.0 * expected.sqrt(), "{c} vs {expected}");
    }
}

#[test]
fn ripley_under_csr() {
    let r = 0.05;
    let ks: Vec<f64> = (0..500)
        .map(|s| {
            let ps = sample_homogeneous_poisson(100.0, &Window::unit(), &mut RngStream::new(s)).unwrap();
            spatialgen::indicators::ripley_k(&ps, &[r]).unwrap()[0].1
        })
        .collect();
    let target = std::f64::consts::PI * r * r;
    assert!((mean(&ks) - target).abs() < 0.1 * target, "{} vs {target}", mean(&ks));
}
