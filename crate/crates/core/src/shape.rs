//! Shape data model: rings, polygons with holes and multi-polygon shapes,
//! together with validation and the basic measures used by the experiments.

use crate::error::{Error, Result};
use crate::geom::{self, BBox, Point};
use crate::kernel::{difference, intersect, KernelConfig};

/// Role of a ring, encoded by its orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// Counterclockwise, positive signed area.
    Outer,
    /// Clockwise, negative signed area.
    Hole,
}

/// A closed vertex loop. The first vertex is not repeated at the end.
#[derive(Debug, Clone, PartialEq)]
pub struct Ring {
    vertices: Vec<Point>,
}

impl Ring {
    /// Wraps a vertex list without any checks.
    pub fn new(vertices: Vec<Point>) -> Self {
        Ring { vertices }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn signed_area(&self) -> f64 {
        geom::signed_area(&self.vertices)
    }

    pub fn orientation(&self) -> Orientation {
        if self.signed_area() >= 0.0 {
            Orientation::Outer
        } else {
            Orientation::Hole
        }
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|(a, b)| a.dist(b)).sum()
    }

    /// Edges as (start, end) pairs in ring order.
    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn bbox(&self) -> BBox {
        BBox::from_points(&self.vertices)
    }

    pub fn contains(&self, p: Point) -> bool {
        geom::point_in_ring(p, &self.vertices)
    }

    pub(crate) fn oriented(mut self, want: Orientation) -> Self {
        if self.orientation() != want {
            self.vertices.reverse();
        }
        self
    }

    pub fn map(&self, f: impl Fn(Point) -> Point) -> Ring {
        Ring::new(self.vertices.iter().map(|&p| f(p)).collect())
    }

    /// Checks vertex count, finiteness, repeated vertices, degeneracy and simplicity.
    pub fn validate(&self, index: usize) -> Result<()> {
        let bad = |reason: &str| Error::InvalidRing { ring: index, reason: reason.to_string() };
        let n = self.vertices.len();
        if n < 3 {
            return Err(bad("fewer than 3 vertices"));
        }
        if self.vertices.iter().any(|p| !p.is_finite()) {
            return Err(bad("non-finite coordinate"));
        }
        for i in 0..n {
            if self.vertices[i] == self.vertices[(i + 1) % n] {
                return Err(bad("consecutive duplicate vertices"));
            }
        }
        if self.signed_area() == 0.0 {
            return Err(bad("zero area"));
        }
        if !edges_simple(&self.vertices) {
            return Err(bad("self-intersection"));
        }
        Ok(())
    }
}

/// Sweep over edges sorted by min-x; adjacent edges may only share their common vertex.
fn edges_simple(pts: &[Point]) -> bool {
    let n = pts.len();
    let mut order: Vec<usize> = (0..n).collect();
    let minx = |i: usize| pts[i].x.min(pts[(i + 1) % n].x);
    let maxx = |i: usize| pts[i].x.max(pts[(i + 1) % n].x);
    order.sort_by(|&a, &b| minx(a).total_cmp(&minx(b)));
    for (k, &i) in order.iter().enumerate() {
        let (a1, a2) = (pts[i], pts[(i + 1) % n]);
        for &j in &order[k + 1..] {
            if minx(j) > maxx(i) {
                break;
            }
            let (b1, b2) = (pts[j], pts[(j + 1) % n]);
            let adjacent = (i + 1) % n == j || (j + 1) % n == i;
            if adjacent {
                // Sharing the endpoint is fine; overlapping back along the other edge is not.
                let (shared, other_a, other_b) = if (i + 1) % n == j { (a2, a1, b2) } else { (a1, a2, b1) };
                if geom::orient(shared, other_a, other_b) == 0.0
                    && (other_a - shared).dot(other_b - shared) > 0.0
                {
                    return false;
                }
                continue;
            }
            if geom::segments_intersect(a1, a2, b1, b2) {
                return false;
            }
        }
    }
    true
}

fn loop_shape(pts: &[Point]) -> Shape {
    Shape::from_polygons(vec![PolygonWithHoles::from_outer(pts.to_vec())])
}

/// Area beyond the snap noise floor; boundary contact alone yields zero.
fn significant(area: f64, scale: f64) -> f64 {
    if area > 1e-12 * (1.0 + scale) { area } else { 0.0 }
}

/// Area of `a` outside `b`, both taken as simple loops.
fn ring_excess(a: &[Point], b: &[Point]) -> f64 {
    let (sa, sb) = (loop_shape(a), loop_shape(b));
    significant(difference(&sa, &sb, &KernelConfig::default()).area(), sa.area())
}

fn ring_overlap(a: &[Point], b: &[Point]) -> f64 {
    let (sa, sb) = (loop_shape(a), loop_shape(b));
    significant(intersect(&sa, &sb, &KernelConfig::default()).area(), sa.area().min(sb.area()))
}

fn polygon_overlap(a: &PolygonWithHoles, b: &PolygonWithHoles) -> f64 {
    let (sa, sb) = (Shape::from_polygons(vec![a.clone()]), Shape::from_polygons(vec![b.clone()]));
    significant(intersect(&sa, &sb, &KernelConfig::default()).area(), a.area().min(b.area()))
}

fn rings_cross(a: &[Point], b: &[Point]) -> bool {
    let (na, nb) = (a.len(), b.len());
    let bb = BBox::from_points(b);
    for i in 0..na {
        let (p1, p2) = (a[i], a[(i + 1) % na]);
        let eb = BBox::from_points(&[p1, p2]);
        if !eb.overlaps(&bb) {
            continue;
        }
        for j in 0..nb {
            if geom::segments_intersect(p1, p2, b[j], b[(j + 1) % nb]) {
                return true;
            }
        }
    }
    false
}

/// A polygon with zero or more holes.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonWithHoles {
    pub outer: Ring,
    pub holes: Vec<Ring>,
}

impl PolygonWithHoles {
    pub fn new(outer: Ring, holes: Vec<Ring>) -> Self {
        PolygonWithHoles { outer, holes }
    }

    /// A polygon from a single outer loop, oriented counterclockwise.
    pub fn from_outer(pts: Vec<Point>) -> Self {
        PolygonWithHoles::new(Ring::new(pts).oriented(Orientation::Outer), Vec::new())
    }

    pub fn rings(&self) -> impl Iterator<Item = &Ring> {
        std::iter::once(&self.outer).chain(self.holes.iter())
    }

    /// Net area (outer minus holes).
    pub fn area(&self) -> f64 {
        self.outer.signed_area().abs() - self.holes.iter().map(|h| h.signed_area().abs()).sum::<f64>()
    }

    pub fn perimeter(&self) -> f64 {
        self.rings().map(Ring::perimeter).sum()
    }

    pub fn bbox(&self) -> BBox {
        self.outer.bbox()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.outer.contains(p) && !self.holes.iter().any(|h| h.contains(p))
    }

    pub fn vertex_count(&self) -> usize {
        self.rings().map(Ring::len).sum()
    }

    pub fn map(&self, f: impl Fn(Point) -> Point + Copy) -> PolygonWithHoles {
        PolygonWithHoles::new(self.outer.map(f), self.holes.iter().map(|h| h.map(f)).collect())
    }

    /// Outer counterclockwise, holes clockwise.
    pub fn normalized(self) -> Self {
        PolygonWithHoles {
            outer: self.outer.oriented(Orientation::Outer),
            holes: self.holes.into_iter().map(|h| h.oriented(Orientation::Hole)).collect(),
        }
    }
}

/// A planar region: a set of pairwise interior-disjoint polygons with holes.
/// The empty shape is valid.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Shape {
    pub polygons: Vec<PolygonWithHoles>,
}

impl Shape {
    pub fn empty() -> Self {
        Shape::default()
    }

    /// Wraps polygons without validation (used for kernel output).
    pub fn from_polygons(polygons: Vec<PolygonWithHoles>) -> Self {
        Shape { polygons }
    }

    /// Validates and orientation-normalizes a list of polygons.
    pub fn new(polygons: Vec<PolygonWithHoles>) -> Result<Self> {
        let shape = Shape { polygons: polygons.into_iter().map(PolygonWithHoles::normalized).collect() };
        shape.validate()?;
        Ok(shape)
    }

    /// Axis-aligned rectangle `[x0,x1] × [y0,y1]`.
    pub fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        Shape::from_polygons(vec![PolygonWithHoles::from_outer(vec![
            Point::new(x0, y0),
            Point::new(x1, y0),
            Point::new(x1, y1),
            Point::new(x0, y1),
        ])])
    }

    pub fn is_empty(&self) -> bool {
        self.polygons.is_empty()
    }

    pub fn rings(&self) -> impl Iterator<Item = &Ring> {
        self.polygons.iter().flat_map(|p| p.rings())
    }

    pub fn vertex_count(&self) -> usize {
        self.polygons.iter().map(PolygonWithHoles::vertex_count).sum()
    }

    pub fn area(&self) -> f64 {
        self.polygons.iter().map(PolygonWithHoles::area).sum()
    }

    pub fn perimeter(&self) -> f64 {
        self.polygons.iter().map(PolygonWithHoles::perimeter).sum()
    }

    pub fn hole_count(&self) -> usize {
        self.polygons.iter().map(|p| p.holes.len()).sum()
    }

    pub fn bbox(&self) -> BBox {
        self.polygons.iter().fold(BBox::empty(), |b, p| b.union(&p.bbox()))
    }

    /// Point membership (boundary points may go either way).
    pub fn contains(&self, p: Point) -> bool {
        self.polygons.iter().any(|poly| poly.contains(p))
    }

    /// Closest point of the boundary to `p`, ties broken by (ring index, edge order).
    pub fn closest_boundary_point(&self, p: Point) -> Option<Point> {
        let mut best: Option<(f64, Point)> = None;
        for ring in self.rings() {
            for (a, b) in ring.edges() {
                let (q, _) = geom::closest_on_segment(p, a, b);
                let d = q.dist(p);
                if best.is_none_or(|(bd, _)| d < bd) {
                    best = Some((d, q));
                }
            }
        }
        best.map(|(_, q)| q)
    }

    /// Region distance: 0 inside, otherwise the distance to the boundary.
    pub fn distance_to(&self, p: Point) -> f64 {
        if self.contains(p) {
            return 0.0;
        }
        self.closest_boundary_point(p).map_or(f64::INFINITY, |q| q.dist(p))
    }

    pub fn map(&self, f: impl Fn(Point) -> Point + Copy) -> Shape {
        Shape::from_polygons(self.polygons.iter().map(|p| p.map(f)).collect())
    }

    /// Full structural validation: ring validity, orientation, nesting and interior
    /// disjointness. Boundaries may touch.
    pub fn validate(&self) -> Result<()> {
        let mut ring_index = 0usize;
        let mut ring_ids: Vec<usize> = Vec::new();
        for poly in &self.polygons {
            let outer_id = ring_index;
            poly.outer.validate(outer_id)?;
            if poly.outer.orientation() != Orientation::Outer {
                return Err(Error::InvalidRing { ring: outer_id, reason: "outer ring is clockwise".into() });
            }
            ring_index += 1;
            for (k, hole) in poly.holes.iter().enumerate() {
                let id = ring_index;
                ring_index += 1;
                hole.validate(id)?;
                if hole.orientation() != Orientation::Hole {
                    return Err(Error::InvalidRing { ring: id, reason: "hole ring is counterclockwise".into() });
                }
                let touches = rings_cross(hole.vertices(), poly.outer.vertices())
                    || !hole.vertices().iter().all(|&v| poly.outer.contains(v));
                if touches && ring_excess(hole.vertices(), poly.outer.vertices()) > 0.0 {
                    return Err(Error::InvalidRing { ring: id, reason: "hole not strictly inside outer ring".into() });
                }
                for other in &poly.holes[..k] {
                    let touches = rings_cross(hole.vertices(), other.vertices())
                        || other.contains(hole.vertices()[0])
                        || hole.contains(other.vertices()[0]);
                    if touches && ring_overlap(hole.vertices(), other.vertices()) > 0.0 {
                        return Err(Error::InvalidRing { ring: id, reason: "holes overlap".into() });
                    }
                }
            }
            ring_ids.push(outer_id);
        }
        for (i, pi) in self.polygons.iter().enumerate() {
            for pj in &self.polygons[..i] {
                if !pi.bbox().overlaps(&pj.bbox()) {
                    continue;
                }
                let crosses = rings_cross(pi.outer.vertices(), pj.outer.vertices());
                let nested = pj.contains(pi.outer.vertices()[0]) || pi.contains(pj.outer.vertices()[0]);
                if (crosses || nested) && polygon_overlap(pi, pj) > 0.0 {
                    return Err(Error::InvalidRing { ring: ring_ids[i], reason: "polygons overlap".into() });
                }
            }
        }
        Ok(())
    }
}

/// Area, perimeter and topology of a shape after spurious-feature filtering.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Measurements {
    pub area: f64,
    pub perimeter: f64,
    pub components: usize,
    pub holes: usize,
}

/// Default spurious-feature area filter, in normalized (unit-area) units.
pub const DEFAULT_MIN_FEATURE_AREA: f64 = 1e-6;

/// Measures a shape. Components with net area at or below `min_feature_area`,
/// and holes with area at or below it, are dropped and contribute nothing.
pub fn measure(shape: &Shape, min_feature_area: f64) -> Measurements {
    let mut m = Measurements::default();
    for poly in &shape.polygons {
        if poly.area() <= min_feature_area {
            continue;
        }
        m.components += 1;
        m.area += poly.outer.signed_area().abs();
        m.perimeter += poly.outer.perimeter();
        for hole in &poly.holes {
            let a = hole.signed_area().abs();
            if a <= min_feature_area {
                continue;
            }
            m.holes += 1;
            m.area -= a;
            m.perimeter += hole.perimeter();
        }
    }
    m
}

/// Area-weighted centroid of the region; holes subtract.
pub fn centroid(shape: &Shape) -> Result<Point> {
    if shape.is_empty() {
        return Err(Error::EmptyShape);
    }
    let (mut a, mut cx, mut cy) = (0.0, 0.0, 0.0);
    for ring in shape.rings() {
        let v = ring.vertices();
        let n = v.len();
        for i in 0..n {
            let (p, q) = (v[i], v[(i + 1) % n]);
            let c = p.cross(q);
            a += c;
            cx += (p.x + q.x) * c;
            cy += (p.y + q.y) * c;
        }
    }
    a *= 0.5;
    if a.abs() <= f64::MIN_POSITIVE {
        return Err(Error::ZeroArea);
    }
    Ok(Point::new(cx / (6.0 * a), cy / (6.0 * a)))
}

/// `p ↦ center + scale·(p − center) + translation`.
pub fn transform(shape: &Shape, translation: Point, scale_factor: f64, scale_center: Point) -> Result<Shape> {
    if !(scale_factor > 0.0 && scale_factor.is_finite()) {
        return Err(Error::Parameter { name: "scale_factor", value: scale_factor });
    }
    Ok(shape.map(|p| scale_center + (p - scale_center) * scale_factor + translation))
}
