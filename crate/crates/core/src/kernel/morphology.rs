//! Minkowski dilation, erosion and closing with a polygonal disk.

use std::f64::consts::PI;

use crate::geom::{convex_hull, Point};
use crate::kernel::boolean::{self, Contour};
use crate::kernel::KernelConfig;
use crate::shape::Shape;

use i_overlay::core::fill_rule::FillRule;
use i_overlay::core::overlay_rule::OverlayRule;

/// Regular `segments`-gon inscribed in the circle of radius `radius`, with one
/// vertex on the positive x-axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskApprox {
    pub radius: f64,
    pub segments: usize,
}

impl DiskApprox {
    /// `segments` is rounded up to an even count of at least 8; negative radii clamp to 0.
    pub fn new(radius: f64, segments: usize) -> Self {
        let mut k = segments.max(8);
        if k % 2 == 1 {
            k += 1;
        }
        DiskApprox { radius: radius.max(0.0), segments: k }
    }

    /// Maximum gap between the true disk and the inscribed polygon: `r·(1 − cos(π/k))`.
    pub fn error_bound(&self) -> f64 {
        error_bound(self.radius, self.segments)
    }

    pub fn vertices(&self) -> Vec<Point> {
        let k = self.segments;
        (0..k)
            .map(|i| {
                let t = 2.0 * PI * i as f64 / k as f64;
                Point::new(self.radius * t.cos(), self.radius * t.sin())
            })
            .collect()
    }
}

pub fn error_bound(radius: f64, segments: usize) -> f64 {
    radius * (1.0 - (PI / segments as f64).cos())
}

/// Minkowski sum with the disk polygon. The result is the union of the shape
/// with, for every boundary edge, the convex hull of the disk placed at both
/// edge endpoints.
pub fn dilate(s: &Shape, disk: &DiskApprox, cfg: &KernelConfig) -> Shape {
    if s.is_empty() || disk.radius == 0.0 {
        return s.clone();
    }
    let kgon = disk.vertices();
    let mut contours: Vec<Contour> = boolean::shape_contours(s);
    let mut buf = Vec::with_capacity(2 * kgon.len());
    for ring in s.rings() {
        for (a, b) in ring.edges() {
            buf.clear();
            buf.extend(kgon.iter().map(|&k| a + k));
            buf.extend(kgon.iter().map(|&k| b + k));
            contours.push(boolean::points_contour(&convex_hull(&buf)));
        }
    }
    boolean::overlay(&contours, &[], OverlayRule::Subject, FillRule::NonZero, cfg)
}

/// Minkowski difference: `box ∖ dilate(box ∖ s)` with `box` the bounding box of
/// `s` grown by `2r`.
pub fn erode(s: &Shape, disk: &DiskApprox, cfg: &KernelConfig) -> Shape {
    if s.is_empty() || disk.radius == 0.0 {
        return s.clone();
    }
    let b = s.bbox().expand(2.0 * disk.radius);
    let frame = Shape::rect(b.min.x, b.min.y, b.max.x, b.max.y);
    let complement = boolean::difference(&frame, s, cfg);
    let grown = dilate(&complement, disk, cfg);
    boolean::difference(&frame, &grown, cfg)
}

/// Dilation followed by erosion with the same disk.
pub fn closing(s: &Shape, disk: &DiskApprox, cfg: &KernelConfig) -> Shape {
    if disk.radius == 0.0 {
        return s.clone();
    }
    erode(&dilate(s, disk, cfg), disk, cfg)
}
