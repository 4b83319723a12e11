//! Acceptance suite: one PASS/FAIL line per criterion. Runs as a plain binary so
//! the report is always printed.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use hausmorph::experiment::{aggregate, generate_comb_pair, generate_random_pair, run_grid, GridConfig, Quantity};
use hausmorph::hausdorff::hausdorff;
use hausmorph::kernel::{difference, KernelConfig};
use hausmorph::{measure, Align, Execution, Method, MorphParams, Morpher, Point, Scale, Shape};

const SEEDS: u64 = 50;
const SEGMENTS: usize = 64;
const ARC_TOL: f64 = 1e-4;
const FILTER: f64 = 1e-6;

fn grid() -> Vec<f64> {
    (0..=8).map(|i| i as f64 / 8.0).collect()
}

fn interior_grid() -> Vec<f64> {
    (1..8).map(|i| i as f64 / 8.0).collect()
}

fn tau(h: f64) -> f64 {
    f64::max(3.0 * h * (1.0 - (PI / SEGMENTS as f64).cos()), 5.0 * ARC_TOL)
}

fn kernel() -> KernelConfig {
    KernelConfig::default()
}

fn dh(a: &Shape, b: &Shape) -> f64 {
    hausdorff(a, b).expect("hausdorff").distance
}

// ---- brute-force sampled distance, independent of the library's ----

fn point_in(p: Point, s: &Shape) -> bool {
    let mut inside = false;
    for ring in s.rings() {
        let v = ring.vertices();
        for i in 0..v.len() {
            let (a, b) = (v[i], v[(i + 1) % v.len()]);
            if (a.y > p.y) != (b.y > p.y) && p.x < a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y) {
                inside = !inside;
            }
        }
    }
    inside
}

fn seg_dist(p: Point, a: Point, b: Point) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 { 0.0 } else { (((p.x - a.x) * dx + (p.y - a.y) * dy) / len2).clamp(0.0, 1.0) };
    let (qx, qy) = (a.x + t * dx, a.y + t * dy);
    ((p.x - qx).powi(2) + (p.y - qy).powi(2)).sqrt()
}

fn dist_to(p: Point, s: &Shape) -> f64 {
    if point_in(p, s) {
        return 0.0;
    }
    let mut best = f64::INFINITY;
    for ring in s.rings() {
        let v = ring.vertices();
        for i in 0..v.len() {
            best = best.min(seg_dist(p, v[i], v[(i + 1) % v.len()]));
        }
    }
    best
}

fn samples(s: &Shape, spacing: f64) -> Vec<Point> {
    let mut out = Vec::new();
    for ring in s.rings() {
        let v = ring.vertices();
        for i in 0..v.len() {
            let (a, b) = (v[i], v[(i + 1) % v.len()]);
            let n = ((a.dist(b) / spacing).ceil() as usize).max(1);
            out.extend((0..n).map(|k| a.lerp(b, k as f64 / n as f64)));
        }
    }
    let bb = s.bbox();
    let mut y = bb.min.y;
    while y <= bb.max.y {
        let mut x = bb.min.x;
        while x <= bb.max.x {
            let p = Point::new(x, y);
            if point_in(p, s) {
                out.push(p);
            }
            x += spacing;
        }
        y += spacing;
    }
    out
}

fn sampled_hausdorff(a: &Shape, b: &Shape, spacing: f64) -> f64 {
    let directed = |x: &Shape, y: &Shape| samples(x, spacing).into_iter().map(|p| dist_to(p, y)).fold(0.0, f64::max);
    directed(a, b).max(directed(b, a))
}

// ---- shared corpus ----

struct Case {
    morpher: Morpher,
    /// `T_α` and `S_α` over the interior grid.
    voronoi: Vec<Shape>,
    dilation: Vec<Shape>,
}

struct Corpus {
    cases: Vec<Case>,
    build_time: Duration,
}

fn normalized(a: &Shape, b: &Shape) -> Morpher {
    Morpher::new(a, b, Align::Centroid, Scale::UnitArea, MorphParams::default(), Execution::Parallel).expect("morpher")
}

fn raw(a: &Shape, b: &Shape) -> Morpher {
    Morpher::new(a, b, Align::None, Scale::None, MorphParams::default(), Execution::Parallel).expect("morpher")
}

impl Corpus {
    fn build() -> Corpus {
        let start = Instant::now();
        let cases = (0..SEEDS)
            .map(|seed| {
                let (a, b) = generate_random_pair(seed, 12 + (seed as usize % 13)).expect("pair");
                let morpher = normalized(&a, &b);
                let voronoi = interior_grid().iter().map(|&t| morpher.voronoi(t).unwrap().shape).collect();
                let dilation = interior_grid().iter().map(|&t| morpher.dilation(t).unwrap().shape).collect();
                Case { morpher, voronoi, dilation }
            })
            .collect();
        Corpus { cases, build_time: start.elapsed() }
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

/// Worst `|d_H(A,X_α) − α·h|` and `|d_H(B,X_α) − (1−α)·h|`, as a multiple of τ.
fn interpolation_error(corpus: &Corpus, shapes: impl Fn(&Case) -> &Vec<Shape>) -> (f64, usize) {
    let mut worst = 0.0f64;
    let mut violations = 0;
    for case in &corpus.cases {
        let pair = case.morpher.pair();
        let h = case.morpher.h();
        for (x, &t) in shapes(case).iter().zip(&interior_grid()) {
            let ea = (dh(&pair.a, x) - t * h).abs();
            let eb = (dh(&pair.b, x) - (1.0 - t) * h).abs();
            let e = ea.max(eb) / tau(h);
            worst = worst.max(e);
            if e > 1.0 {
                violations += 1;
            }
        }
    }
    (worst, violations)
}

fn c1_voronoi_bounds(corpus: &Corpus) -> Outcome {
    let start = Instant::now();
    let (worst, bad) = interpolation_error(corpus, |c| &c.voronoi);
    let total = corpus.build_time + start.elapsed();
    outcome(
        bad == 0 && total < Duration::from_secs(60),
        format!("{} pairs x 7 alphas, {bad} violations, worst error {worst:.3} tau, {:.1}s", SEEDS, total.as_secs_f64()),
    )
}

fn c2_dilation_bounds(corpus: &Corpus) -> Outcome {
    let (worst, bad) = interpolation_error(corpus, |c| &c.dilation);
    outcome(bad == 0, format!("{bad} violations, worst error {worst:.3} tau"))
}

fn c3_lipschitz(corpus: &Corpus) -> Outcome {
    let g = grid();
    let mut worst = f64::NEG_INFINITY;
    let mut bad = 0;
    let mut checked = 0;
    for case in corpus.cases.iter().take(20) {
        let h = case.morpher.h();
        let shapes: Vec<Shape> = g.iter().map(|&t| case.morpher.voronoi(t).unwrap().shape).collect();
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                let slack = dh(&shapes[i], &shapes[j]) - (g[j] - g[i]) * h;
                worst = worst.max(slack / tau(h));
                checked += 1;
                if slack > tau(h) {
                    bad += 1;
                }
            }
        }
    }
    outcome(bad == 0 && checked == 720, format!("{checked} alpha pairs, {bad} violations, worst excess {worst:.3} tau"))
}

fn c4_containment(corpus: &Corpus) -> Outcome {
    let (phi, psi) = (0.01, 0.05);
    let cfg = kernel();
    let mut worst = 0.0f64;
    let mut bad = 0;
    for case in corpus.cases.iter().take(20) {
        let m = &case.morpher;
        let bound = tau(m.h());
        for &t in &grid() {
            let tv = m.voronoi(t).unwrap().shape;
            let mp = m.mixed(t, phi).unwrap().shape;
            let mq = m.mixed(t, psi).unwrap().shape;
            let s = m.dilation(t).unwrap().shape;
            let limit = bound * s.perimeter();
            for excess in [difference(&tv, &mp, &cfg).area(), difference(&mp, &mq, &cfg).area(), difference(&mq, &s, &cfg).area()] {
                worst = worst.max(excess / limit);
                if excess > limit {
                    bad += 1;
                }
            }
        }
    }
    outcome(bad == 0, format!("20 pairs x 9 alphas x 3 inclusions, {bad} violations, worst {worst:.2e} of allowance"))
}

fn c5_component_constancy(corpus: &Corpus) -> Outcome {
    let mut varying = Vec::new();
    for (seed, case) in corpus.cases.iter().enumerate() {
        let counts: Vec<usize> = case.voronoi.iter().map(|s| measure(s, FILTER).components).collect();
        if counts.iter().any(|&c| c != counts[0]) {
            varying.push(format!("seed {seed}: {counts:?}"));
        }
    }
    outcome(varying.is_empty(), if varying.is_empty() { format!("{SEEDS} pairs constant") } else { varying.join("; ") })
}

fn c6_area_lower_bound(corpus: &Corpus) -> Outcome {
    let mut bad = 0;
    let mut tightest = f64::INFINITY;
    for case in &corpus.cases {
        let m = &case.morpher;
        let (aa, ab) = (m.pair().a.area(), m.pair().b.area());
        for &t in &grid() {
            let s = m.voronoi(t).unwrap().shape;
            let bound = (1.0 - t).powi(2) * aa + t * t * ab - tau(m.h()) * s.perimeter();
            tightest = tightest.min(s.area() - bound);
            if s.area() < bound {
                bad += 1;
            }
        }
    }
    outcome(bad == 0, format!("{bad} violations, smallest margin {tightest:.4}"))
}

fn c7_squares() -> Outcome {
    let (a, b) = (Shape::rect(0.0, 0.0, 1.0, 1.0), Shape::rect(2.0, 0.0, 3.0, 1.0));
    let m = raw(&a, &b);
    let t = m.voronoi(0.5).unwrap().shape;
    let s = m.dilation(0.5).unwrap().shape;
    let expected = Shape::rect(1.0, 0.0, 2.0, 1.0);
    let cfg = kernel();
    let off = difference(&t, &expected, &cfg).area() + difference(&expected, &t, &cfg).area();
    let (da, db) = (dh(&a, &t), dh(&b, &t));
    let outside_s = difference(&t, &s, &cfg).area().abs();
    let pass = (m.h() - 2.0).abs() <= 1e-9
        && (t.area() - 1.0).abs() <= 1e-6
        && off <= 1e-6
        && (da - 1.0).abs() <= 1e-6
        && (db - 1.0).abs() <= 1e-6
        && outside_s <= 1e-9;
    outcome(pass, format!("h={:.12} area(T)={:.9} d_H={da:.9},{db:.9} area(T\\S)={outside_s:.1e}", m.h(), t.area()))
}

fn c8_comb() -> Outcome {
    let start = Instant::now();
    let mut counts = Vec::new();
    for p in [2usize, 4, 8] {
        let (a, b) = generate_comb_pair(p).unwrap();
        let s = raw(&a, &b).dilation(0.5).unwrap().shape;
        counts.push((p, measure(&s, FILTER).components));
    }
    // One-point calibration at four prongs.
    let c = counts[1].1 as f64 / 16.0;
    let fits = counts.iter().all(|&(p, n)| {
        let model = c * (p * p) as f64;
        n as f64 <= 2.0 * model && n as f64 >= model / 2.0
    });
    // Every prong crossing outside the shared corner leaves its own component.
    let exact = counts.iter().all(|&(p, n)| n == 1 + (p - 1) * (p - 1));
    let elapsed = start.elapsed();
    outcome(fits && exact && elapsed < Duration::from_secs(30), format!("components {counts:?}, c={c:.3}, {:.1}s", elapsed.as_secs_f64()))
}

fn c9_oracle(corpus: &Corpus) -> Outcome {
    let mut worst = 0.0f64;
    let mut check = |a: &Shape, b: &Shape| {
        let gap = (dh(a, b) - sampled_hausdorff(a, b, 0.01)).abs();
        worst = worst.max(gap);
    };
    for case in &corpus.cases {
        let p = case.morpher.pair();
        check(&p.a, &p.b);
    }
    check(&Shape::rect(0.0, 0.0, 1.0, 1.0), &Shape::rect(2.0, 0.0, 3.0, 1.0));
    let (ca, cb) = generate_comb_pair(2).unwrap();
    check(&ca, &cb);
    let holed = difference(&Shape::rect(0.0, 0.0, 4.0, 4.0), &Shape::rect(1.0, 1.0, 3.0, 3.0), &kernel());
    check(&holed, &Shape::rect(1.5, 1.5, 2.5, 2.5));
    outcome(worst <= 0.02, format!("{} pairs plus 3 fixtures, worst gap {worst:.5}", SEEDS))
}

fn c10_orderings() -> Outcome {
    let grid_cfg = GridConfig::default();
    let mut records = Vec::new();
    for seed in 1..=20u64 {
        let (a, b) = generate_random_pair(seed, 32).unwrap();
        records.extend(run_grid(&format!("p{seed}"), &normalized(&a, &b), &grid_cfg, Execution::Parallel).unwrap());
    }
    let summary = aggregate(&records, &HashMap::new()).unwrap();
    let overall = |m: Method| summary.iter().find(|r| r.method == m && r.quantity == Quantity::AreaRatio).unwrap().mean;
    let at = |m: Method, t: f64, f: fn(&hausmorph::experiment::MeasurementRecord) -> f64| {
        let xs: Vec<f64> = records.iter().filter(|r| r.method == m && r.alpha == t).map(f).collect();
        xs.iter().sum::<f64>() / xs.len() as f64
    };
    let dil_area: Vec<f64> = grid().iter().map(|&t| at(Method::Dilation, t, |r| r.area_ratio)).collect();
    let peak = grid()[dil_area.iter().enumerate().max_by(|x, y| x.1.total_cmp(y.1)).unwrap().0];
    let per = |m| at(m, 0.5, |r| r.perimeter_ratio);
    let (pv, pm, pd) = (per(Method::Voronoi), per(Method::Mixed), per(Method::Dilation));
    let (ad, av) = (overall(Method::Dilation), overall(Method::Voronoi));
    let pass = ad > av && peak == 0.5 && pv > pm && pm > 1.0 && 1.0 > pd;
    outcome(
        pass,
        format!("area ratio dilation {ad:.4} > voronoi {av:.4}, dilation peak at {peak}; perimeter ratio at 1/2: voronoi {pv:.4} > mixed {pm:.4} > 1 > dilation {pd:.4}"),
    )
}

fn c11_mixed_jump() -> Outcome {
    let a = Shape::rect(-1.0, -1.0, 1.0, 1.0);
    let b = Shape::from_polygons(
        [Shape::rect(-10.0, -0.5, -3.0, 0.5), Shape::rect(3.0, -0.5, 10.0, 0.5)].into_iter().flat_map(|s| s.polygons).collect(),
    );
    let m = raw(&a, &b);
    let phi = 1.0;
    let t: Vec<usize> = interior_grid().iter().map(|&x| measure(&m.voronoi(x).unwrap().shape, FILTER).components).collect();
    let mixed: Vec<usize> = interior_grid().iter().map(|&x| measure(&m.mixed(x, phi).unwrap().shape, FILTER).components).collect();
    let t_constant = t.iter().all(|&c| c == t[0]);
    let jump = mixed.windows(2).any(|w| w[0] != w[1]);
    outcome(t_constant && jump, format!("phi={phi}: T components {t:?}, M components {mixed:?}"))
}

fn c12_cli_determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_hausmorph");
    let dir = tempfile::tempdir().unwrap();
    let run = |args: &[&str]| {
        let out = Command::new(bin).args(args).output().expect("spawn");
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        String::from_utf8(out.stdout).unwrap()
    };
    let mut manifest = String::new();
    let gens: [&[&str]; 3] = [&["squares", "--gap", "1"], &["comb", "--prongs", "2"], &["random", "--seed", "7", "--vertices", "16"]];
    for (i, g) in gens.iter().enumerate() {
        let sub = dir.path().join(format!("p{i}"));
        let mut args = vec!["gen"];
        args.extend_from_slice(g);
        args.extend(["--out", sub.to_str().unwrap()]);
        run(&args);
        let line = std::fs::read_to_string(sub.join("manifest.txt")).unwrap();
        manifest.push_str(&line.replace("a.wkt", &format!("p{i}/a.wkt")).replace("b.wkt", &format!("p{i}/b.wkt")));
    }
    let mpath = dir.path().join("manifest.txt");
    std::fs::write(&mpath, manifest).unwrap();
    let mut outputs = Vec::new();
    let mut echo = String::new();
    for k in 0..2 {
        let out = dir.path().join(format!("run{k}"));
        echo = run(&["batch", "--manifest", mpath.to_str().unwrap(), "--out", out.to_str().unwrap()]);
        outputs.push((std::fs::read(out.join("records.csv")).unwrap(), std::fs::read(out.join("summary.csv")).unwrap()));
    }
    let identical = outputs[0] == outputs[1];
    let echoed = echo.contains("step=0.125") && echo.contains("phi=0.02");
    outcome(identical && echoed, format!("identical={identical}, echo '{}'", echo.lines().next().unwrap_or("")))
}

fn main() {
    let corpus = Corpus::build();
    type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;
    let criteria: Vec<(&str, Check)> = vec![
        ("voronoi morph distance bounds", Box::new(|| c1_voronoi_bounds(&corpus))),
        ("dilation morph distance bounds", Box::new(|| c2_dilation_bounds(&corpus))),
        ("voronoi morph lipschitz in alpha", Box::new(|| c3_lipschitz(&corpus))),
        ("mixed morph containment chain", Box::new(|| c4_containment(&corpus))),
        ("voronoi morph component constancy", Box::new(|| c5_component_constancy(&corpus))),
        ("voronoi morph area lower bound", Box::new(|| c6_area_lower_bound(&corpus))),
        ("analytic squares fixture", Box::new(c7_squares)),
        ("comb quadratic blow-up", Box::new(c8_comb)),
        ("hausdorff oracle agreement", Box::new(|| c9_oracle(&corpus))),
        ("qualitative corpus orderings", Box::new(c10_orderings)),
        ("mixed morph component jump", Box::new(c11_mixed_jump)),
        ("cli batch determinism", Box::new(c12_cli_determinism)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            outcome(false, format!("panicked: {}", msg.unwrap_or_default()))
        });
        if !o.pass {
            failed += 1;
        }
        println!(
            "{} criterion {:>2} {name}: {} [{:.1}s]",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
