//! Regularized boolean operations on [`Shape`]s, backed by `i_overlay`'s
//! integer overlay engine.
//!
//! Every call maps coordinates onto one fixed grid centred at the origin whose
//! step is the configured snap tolerance (rounded down to a power of two), so
//! results of independent operations snap consistently.

use i_overlay::core::fill_rule::FillRule;
use i_overlay::core::overlay::ShapeType;
use i_overlay::core::overlay_rule::OverlayRule;
use i_overlay::core::solver::Solver;
use i_overlay::float::overlay::{FloatOverlay, OverlayOptions};
use i_overlay::i_float::adapter::FloatPointAdapter;
use i_overlay::i_float::float::rect::FloatRect;

use std::collections::HashMap;

use crate::geom::{self, Point};
use crate::kernel::KernelConfig;
use crate::shape::{PolygonWithHoles, Ring, Shape};

pub(crate) type Contour = Vec<[f64; 2]>;

pub(crate) fn shape_contours(shape: &Shape) -> Vec<Contour> {
    shape.rings().map(ring_contour).collect()
}

fn ring_contour(ring: &Ring) -> Contour {
    ring.vertices().iter().map(|&p| p.into()).collect()
}

pub(crate) fn points_contour(pts: &[Point]) -> Contour {
    pts.iter().map(|&p| p.into()).collect()
}

fn max_abs(contours: &[&[Contour]]) -> f64 {
    contours
        .iter()
        .flat_map(|c| c.iter())
        .flat_map(|c| c.iter())
        .fold(0.0f64, |m, p| m.max(p[0].abs()).max(p[1].abs()))
}

fn adapter(radius: f64, cfg: &KernelConfig) -> FloatPointAdapter<[f64; 2], i64> {
    let radius = radius.max(1.0) * 1.01;
    let mut scale = cfg.grid_scale();
    // Keep converted coordinates inside the conservative 61-bit budget.
    while radius * scale > 2f64.powi(59) {
        scale *= 0.5;
    }
    let rect = FloatRect::new(-radius, radius, -radius, radius).expect("finite bounds");
    FloatPointAdapter::with_scale(rect, scale)
}

/// Runs one overlay and converts the result back into a shape.
pub(crate) fn overlay(
    subject: &[Contour],
    clip: &[Contour],
    rule: OverlayRule,
    fill: FillRule,
    cfg: &KernelConfig,
) -> Shape {
    let radius = max_abs(&[subject, clip]);
    let mut options = OverlayOptions::<f64, i64>::default();
    options.ogc = true;
    let capacity = subject.iter().chain(clip).map(Vec::len).sum();
    let mut ov = FloatOverlay::<[f64; 2], i64>::new_custom(adapter(radius, cfg), options, Solver::default(), capacity)
        .unsafe_add_source(subject, ShapeType::Subject)
        .unsafe_add_source(clip, ShapeType::Clip);
    let shapes = ov.overlay(rule, fill);
    let polygons = shapes
        .into_iter()
        .filter_map(|contours| {
            let mut it = contours.into_iter().map(|c| Ring::new(c.into_iter().map(Point::from).collect()));
            let outer = it.next()?;
            let poly = PolygonWithHoles::new(outer, it.filter(|h| h.len() >= 3).collect()).normalized();
            (poly.outer.len() >= 3 && poly.area() > 0.0).then_some(poly)
        })
        .collect();
    Shape::from_polygons(polygons)
}

pub fn intersect(a: &Shape, b: &Shape, cfg: &KernelConfig) -> Shape {
    if a.is_empty() || b.is_empty() || !a.bbox().overlaps(&b.bbox()) {
        return Shape::empty();
    }
    overlay(&shape_contours(a), &shape_contours(b), OverlayRule::Intersect, FillRule::NonZero, cfg)
}

pub fn union(a: &Shape, b: &Shape, cfg: &KernelConfig) -> Shape {
    overlay(&shape_contours(a), &shape_contours(b), OverlayRule::Union, FillRule::NonZero, cfg)
}

pub fn difference(a: &Shape, b: &Shape, cfg: &KernelConfig) -> Shape {
    if a.is_empty() {
        return Shape::empty();
    }
    overlay(&shape_contours(a), &shape_contours(b), OverlayRule::Difference, FillRule::NonZero, cfg)
}

pub fn symmetric_difference(a: &Shape, b: &Shape, cfg: &KernelConfig) -> Shape {
    overlay(&shape_contours(a), &shape_contours(b), OverlayRule::Xor, FillRule::NonZero, cfg)
}

/// Union of many shapes in a single overlay pass (non-zero winding).
pub fn union_all<'a>(shapes: impl IntoIterator<Item = &'a Shape>, cfg: &KernelConfig) -> Shape {
    let contours: Vec<Contour> = shapes.into_iter().flat_map(shape_contours).collect();
    if contours.is_empty() {
        return Shape::empty();
    }
    overlay(&contours, &[], OverlayRule::Subject, FillRule::NonZero, cfg)
}

/// Grid steps within which [`union_all_snapped`] merges vertices.
const CLUSTER_STEPS: f64 = 8.0;

/// Like [`union_all`], but the inputs are first snapped together: vertices of
/// different inputs lying within a few grid steps of each other move onto a common
/// point, and vertices that close to an edge are inserted into it. Pieces that
/// should share an edge but were rounded independently then merge instead of
/// leaving a one-step sliver between them.
pub fn union_all_snapped<'a>(shapes: impl IntoIterator<Item = &'a Shape>, cfg: &KernelConfig) -> Shape {
    let radius = CLUSTER_STEPS / cfg.grid_scale();
    let mut clusters = VertexClusters::new(radius);
    // (ring, is_outer) after vertex clustering.
    let mut rings: Vec<(Vec<Point>, bool)> = Vec::new();
    for poly in shapes.into_iter().flat_map(|s| &s.polygons) {
        let outer = clusters.snap_ring(&poly.outer);
        if outer.len() < 3 || geom::signed_area(&outer) <= 0.0 {
            continue;
        }
        rings.push((outer, true));
        for hole in &poly.holes {
            let h = clusters.snap_ring(hole);
            if h.len() >= 3 && geom::signed_area(&h) < 0.0 {
                rings.push((h, false));
            }
        }
    }
    let mut vertices: Vec<Point> = clusters.cells.into_values().flatten().collect();
    vertices.sort_by(|p, q| p.x.total_cmp(&q.x));
    let contours: Vec<Contour> = rings
        .iter()
        .map(|(r, _)| insert_near_vertices(r, &vertices, radius))
        .filter(|r| r.len() >= 3)
        .map(|r| points_contour(&r))
        .collect();
    if contours.is_empty() {
        return Shape::empty();
    }
    overlay(&contours, &[], OverlayRule::Subject, FillRule::NonZero, cfg)
}

/// Splits every edge of `ring` at the vertices (sorted by x) lying within `radius`
/// of its interior.
fn insert_near_vertices(ring: &[Point], sorted: &[Point], radius: f64) -> Vec<Point> {
    let n = ring.len();
    let mut out = Vec::with_capacity(n);
    let mut hits: Vec<(f64, Point)> = Vec::new();
    for i in 0..n {
        let (p, q) = (ring[i], ring[(i + 1) % n]);
        out.push(p);
        let d = q - p;
        let len2 = d.dot(d);
        if len2 == 0.0 {
            continue;
        }
        let (x0, x1) = (p.x.min(q.x) - radius, p.x.max(q.x) + radius);
        let (y0, y1) = (p.y.min(q.y) - radius, p.y.max(q.y) + radius);
        let start = sorted.partition_point(|v| v.x < x0);
        hits.clear();
        for &v in sorted[start..].iter().take_while(|v| v.x <= x1) {
            if v.y < y0 || v.y > y1 || v == p || v == q {
                continue;
            }
            let t = (v - p).dot(d) / len2;
            if t <= 0.0 || t >= 1.0 {
                continue;
            }
            if (p + d * t).dist(v) <= radius {
                hits.push((t, v));
            }
        }
        hits.sort_by(|x, y| x.0.total_cmp(&y.0));
        out.extend(hits.iter().map(|h| h.1));
    }
    out
}

/// Greedy vertex clustering on a hash grid: each point maps to the first
/// registered point within `radius`, or registers itself.
struct VertexClusters {
    radius: f64,
    cells: HashMap<(i64, i64), Vec<Point>>,
}

impl VertexClusters {
    fn new(radius: f64) -> Self {
        VertexClusters { radius, cells: HashMap::new() }
    }

    fn key(&self, p: Point) -> (i64, i64) {
        ((p.x / self.radius).floor() as i64, (p.y / self.radius).floor() as i64)
    }

    fn snap(&mut self, p: Point) -> Point {
        let (cx, cy) = self.key(p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(reps) = self.cells.get(&(cx + dx, cy + dy)) {
                    if let Some(&q) = reps.iter().find(|q| q.dist(p) <= self.radius) {
                        return q;
                    }
                }
            }
        }
        self.cells.entry((cx, cy)).or_default().push(p);
        p
    }

    fn snap_ring(&mut self, ring: &Ring) -> Vec<Point> {
        let mut out: Vec<Point> = Vec::with_capacity(ring.len());
        for &p in ring.vertices() {
            let q = self.snap(p);
            if out.last() != Some(&q) {
                out.push(q);
            }
        }
        while out.len() > 1 && out.first() == out.last() {
            out.pop();
        }
        out
    }
}

/// `subject ∖ ⋃ cutters`, cutters being counterclockwise loops.
pub(crate) fn subtract_loops(subject: &Shape, cutters: &[Vec<Point>], cfg: &KernelConfig) -> Shape {
    if subject.is_empty() {
        return Shape::empty();
    }
    let clip: Vec<Contour> = cutters.iter().filter(|l| l.len() >= 3).map(|l| points_contour(l)).collect();
    if clip.is_empty() {
        return subject.clone();
    }
    overlay(&shape_contours(subject), &clip, OverlayRule::Difference, FillRule::NonZero, cfg)
}

/// Makes a loop counterclockwise.
pub(crate) fn ccw(mut pts: Vec<Point>) -> Vec<Point> {
    if geom::signed_area(&pts) < 0.0 {
        pts.reverse();
    }
    pts
}
