//! Voronoi cells of boundary features, restricted to the exterior of the shape.
//!
//! A point outside the shape whose nearest boundary point lies on the open edge
//! `e` is in the outward half-strip over `e`; one whose nearest point is the
//! vertex `v` is in the normal wedge at `v`, which is non-empty only at convex
//! vertices. A cell is that normal region minus the points strictly closer to
//! some other feature. The "closer" regions are
//!
//! * vertex vs vertex: a half-plane,
//! * edge vs edge (inside both slabs): an intersection of two half-planes, since
//!   `|l'| < l` with `l ≥ 0` is `l − l' > 0 ∧ l + l' > 0`,
//! * vertex vs edge: bounded by a parabola, discretized into chords with sagitta
//!   at most the arc tolerance.
//!
//! Every bisector is generated from the pair of features alone, so the two cells
//! sharing it use bit-identical polylines.

use crate::geom::{clip_halfplane, BBox, Point};
use crate::kernel::boolean::ccw;
use crate::voronoi::site::VertexFeature;

/// Hard cap on the chord count of one parabolic bisector.
const MAX_PARABOLA_CHORDS: usize = 4096;

pub(crate) fn box_loop(b: &BBox) -> Vec<Point> {
    b.corners().to_vec()
}

/// Normal wedge at a convex vertex, clipped to `clip`.
pub(crate) fn vertex_region(v: &VertexFeature, clip: &[Point]) -> Vec<Point> {
    if !v.is_convex() {
        return Vec::new();
    }
    let (at, din, dout) = (v.at, v.at - v.prev, v.next - v.at);
    let r = clip_halfplane(clip, |p| (p - at).dot(din));
    clip_halfplane(&r, |p| -((p - at).dot(dout)))
}

/// Outward half-strip over the edge `a → b` (material on the left), clipped to `clip`.
pub(crate) fn edge_region(a: Point, b: Point, clip: &[Point]) -> Vec<Point> {
    let d = b - a;
    let r = clip_halfplane(clip, |p| (p - a).dot(d));
    let r = clip_halfplane(&r, |p| (b - p).dot(d));
    clip_halfplane(&r, |p| -d.cross(p - a))
}

/// Part of `region` strictly closer to `other` than to `v`.
pub(crate) fn vertex_vertex_exclusion(v: Point, other: Point, region: &[Point]) -> Vec<Point> {
    let mid = (v + other) * 0.5;
    let dir = other - v;
    clip_halfplane(region, |p| (p - mid).dot(dir))
}

/// Part of `region` inside the slab of `c → d` whose outward distance to the line of
/// `a → b` exceeds its unsigned distance to the line of `c → d`.
pub(crate) fn edge_edge_exclusion(a: Point, b: Point, c: Point, d: Point, region: &[Point]) -> Vec<Point> {
    let (ab, cd) = (b - a, d - c);
    let (lab, lcd) = (ab.norm(), cd.norm());
    // Signed outward distances (right of travel direction).
    let l = move |p: Point| -ab.cross(p - a) / lab;
    let l2 = move |p: Point| -cd.cross(p - c) / lcd;
    let r = clip_halfplane(region, |p| (p - c).dot(cd));
    let r = clip_halfplane(&r, |p| (d - p).dot(cd));
    let r = clip_halfplane(&r, |p| l(p) - l2(p));
    clip_halfplane(&r, |p| l(p) + l2(p))
}

/// Clips a loop to an axis-aligned box.
pub(crate) fn clip_to_box(poly: &[Point], b: &BBox) -> Vec<Point> {
    let r = clip_halfplane(poly, |p| p.x - b.min.x);
    let r = clip_halfplane(&r, |p| b.max.x - p.x);
    let r = clip_halfplane(&r, |p| p.y - b.min.y);
    clip_halfplane(&r, |p| b.max.y - p.y)
}

/// Discretized parabola separating the vertex `focus` from the supporting line of
/// the edge `a → b`. Chord vertices sit on the lattice `u0 + i·step` fixed by the
/// two features alone; a box only selects which of them are emitted, so cells
/// sharing the bisector see the same polyline wherever their boxes overlap.
pub(crate) struct ParabolaBisector {
    origin: Point,
    along: Point,
    normal: Point,
    len: f64,
    /// +1 when the focus is on the outward side of the edge.
    side: f64,
    /// Extent of the box along the edge, in edge coordinates.
    u_range: (f64, f64),
    /// Largest distance of a box corner from the supporting line.
    w_max: f64,
    /// Chord vertices `(u, |w|)`; empty when the parabola misses the box.
    samples: Vec<(f64, f64)>,
    degenerate: bool,
}

impl ParabolaBisector {
    /// `None` when the edge's slab misses `clip`.
    pub fn new(focus: Point, a: Point, b: Point, clip: &BBox, tol: f64) -> Option<Self> {
        let d = b - a;
        let len = d.norm();
        let along = d * (1.0 / len);
        let normal = Point::new(along.y, -along.x);
        let (mut umin, mut umax, mut w_max) = (f64::INFINITY, f64::NEG_INFINITY, 0.0f64);
        for c in clip.corners() {
            let u = (c - a).dot(along);
            umin = umin.min(u);
            umax = umax.max(u);
            w_max = w_max.max((c - a).dot(normal).abs());
        }
        if umin.max(0.0) >= umax.min(len) {
            return None;
        }
        let u0 = (focus - a).dot(along);
        let dist = (focus - a).dot(normal);
        let scale = 1.0 + clip.diagonal() + len;
        let mut bis = ParabolaBisector {
            origin: a,
            along,
            normal,
            len,
            side: if dist >= 0.0 { 1.0 } else { -1.0 },
            u_range: (umin, umax),
            w_max,
            samples: Vec::new(),
            degenerate: dist.abs() <= 1e-12 * scale,
        };
        if bis.degenerate {
            return Some(bis);
        }
        let dd = dist.abs();
        let reach_sq = 2.0 * dd * w_max - dd * dd;
        if reach_sq <= 0.0 {
            return Some(bis);
        }
        let reach = reach_sq.sqrt();
        let (lo, hi) = ((u0 - reach).max(umin), (u0 + reach).min(umax));
        if lo > hi {
            return Some(bis);
        }
        let step = (8.0 * dd * tol).sqrt();
        let i_lo = ((lo - u0) / step).floor() as i64 - 1;
        let i_hi = ((hi - u0) / step).ceil() as i64 + 1;
        if (i_hi - i_lo) as usize > MAX_PARABOLA_CHORDS {
            // Too fine for this box; fall back to a uniform subdivision of it.
            let n = MAX_PARABOLA_CHORDS;
            let (lo, hi) = (lo - (hi - lo) / n as f64, hi + (hi - lo) / n as f64);
            bis.samples = (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).map(|u| (u, parabola(u, u0, dd))).collect();
        } else {
            bis.samples = (i_lo..=i_hi).map(|i| u0 + step * i as f64).map(|u| (u, parabola(u, u0, dd))).collect();
        }
        Some(bis)
    }

    fn to_world(&self, u: f64, w_abs: f64) -> Point {
        self.origin + self.along * u + self.normal * (w_abs * self.side)
    }

    /// A height beyond both the box and every sample.
    fn ceiling(&self) -> f64 {
        let top = self.samples.iter().fold(self.w_max, |m, s| m.max(s.1));
        2.0 * top + 1e-9
    }

    /// Points closer to the focus than to the supporting line (epigraph).
    /// Exact only inside the box given at construction.
    pub fn focus_side(&self) -> Vec<Point> {
        if self.degenerate || self.samples.len() < 2 {
            return Vec::new();
        }
        let top = self.ceiling();
        let (lo, hi) = (self.samples[0].0, self.samples[self.samples.len() - 1].0);
        let mut pts: Vec<Point> = self.samples.iter().map(|&(u, w)| self.to_world(u, w)).collect();
        pts.push(self.to_world(hi, top));
        pts.push(self.to_world(lo, top));
        ccw(pts)
    }

    /// Points of the edge's slab closer to the line than to the focus (hypograph,
    /// including everything on the far side of the line). Exact only inside the
    /// box given at construction.
    pub fn line_side(&self) -> Vec<Point> {
        let (mut umin, mut umax) = self.u_range;
        let top = self.ceiling();
        let mut pts = Vec::new();
        if self.degenerate || self.samples.len() < 2 {
            pts.extend([self.to_world(umin, -top), self.to_world(umax, -top), self.to_world(umax, top), self.to_world(umin, top)]);
        } else {
            let (lo, hi) = (self.samples[0].0, self.samples[self.samples.len() - 1].0);
            umin = umin.min(lo);
            umax = umax.max(hi);
            pts.extend([self.to_world(umin, -top), self.to_world(umax, -top)]);
            if hi < umax {
                pts.push(self.to_world(umax, top));
            }
            pts.push(self.to_world(hi, top));
            pts.extend(self.samples.iter().rev().map(|&(u, wv)| self.to_world(u, wv)));
            pts.push(self.to_world(lo, top));
            if lo > umin {
                pts.push(self.to_world(umin, top));
            }
        }
        let (a, along, len) = (self.origin, self.along, self.len);
        let r = clip_halfplane(&ccw(pts), |p| (p - a).dot(along));
        clip_halfplane(&r, |p| len - (p - a).dot(along))
    }
}

fn parabola(u: f64, u0: f64, dd: f64) -> f64 {
    ((u - u0) * (u - u0) + dd * dd) / (2.0 * dd)
}
