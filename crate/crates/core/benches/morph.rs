use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use hausmorph::experiment::{generate_random_pair, run_grid, GridConfig};
use hausmorph::hausdorff::{hausdorff_with, HausdorffOptions};
use hausmorph::{Align, Execution, Method, MorphParams, Morpher, Scale};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn morpher(vertices: usize, exec: Execution) -> Morpher {
    let (a, b) = generate_random_pair(7, vertices).unwrap();
    Morpher::new(&a, &b, Align::Centroid, Scale::UnitArea, MorphParams::default(), exec).unwrap()
}

fn morphs(c: &mut Criterion) {
    let mut g = c.benchmark_group("voronoi_morph");
    g.sample_size(10);
    for n in [16, 32] {
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, n), &n, |bch, &n| {
                bch.iter(|| black_box(morpher(n, exec).voronoi(0.5).unwrap()))
            });
        }
    }
    g.finish();
}

fn hausdorff(c: &mut Criterion) {
    let (a, b) = generate_random_pair(3, 48).unwrap();
    let mut g = c.benchmark_group("hausdorff");
    g.sample_size(10);
    for (name, exec) in MODES {
        let opts = HausdorffOptions { execution: exec, ..Default::default() };
        g.bench_function(name, |bch| bch.iter(|| black_box(hausdorff_with(&a, &b, &opts).unwrap())));
    }
    g.finish();
}

fn grid(c: &mut Criterion) {
    let cfg = GridConfig { methods: vec![Method::Dilation, Method::Voronoi], alpha_step: 0.25, ..GridConfig::default() };
    let mut g = c.benchmark_group("alpha_grid");
    g.sample_size(10);
    for (name, exec) in MODES {
        let m = morpher(16, exec);
        g.bench_function(name, |bch| bch.iter(|| black_box(run_grid("bench", &m, &cfg, exec).unwrap())));
    }
    g.finish();
}

criterion_group!(benches, morphs, hausdorff, grid);
criterion_main!(benches);
