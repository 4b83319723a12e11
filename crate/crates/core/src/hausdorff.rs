//! Hausdorff distance between filled regions.
//!
//! Points of the source that lie inside the target are at distance zero. The
//! exact computation reads the maximum off the Voronoi partition: inside a vertex
//! cell the distance to the site is convex, inside an edge cell it is affine along
//! the normal, so the supremum over a piece is attained at one of its vertices.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::geom::{BBox, Point};
use crate::kernel::KernelConfig;
use crate::shape::Shape;
use crate::voronoi::{build_partition, Partition, Site, DEFAULT_ARC_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HausdorffResult {
    pub distance: f64,
    /// A point of the source realizing the supremum.
    pub witness_source: Point,
    /// Its closest point on the target.
    pub witness_target: Point,
}

/// Partition settings used by the exact computation.
#[derive(Debug, Clone, Copy)]
pub struct HausdorffOptions {
    pub arc_tolerance: f64,
    pub kernel: KernelConfig,
    pub execution: Execution,
}

impl Default for HausdorffOptions {
    fn default() -> Self {
        HausdorffOptions {
            arc_tolerance: DEFAULT_ARC_TOLERANCE,
            kernel: KernelConfig::default(),
            execution: Execution::default(),
        }
    }
}

pub fn directed_hausdorff(a: &Shape, b: &Shape) -> Result<HausdorffResult> {
    directed_hausdorff_with(a, b, &HausdorffOptions::default())
}

pub fn directed_hausdorff_with(a: &Shape, b: &Shape, opts: &HausdorffOptions) -> Result<HausdorffResult> {
    let partition = build_partition(a, b, opts.arc_tolerance, &opts.kernel, opts.execution)?;
    Ok(from_partition(&partition))
}

/// The larger directed distance; ties report the `a → b` direction.
pub fn hausdorff(a: &Shape, b: &Shape) -> Result<HausdorffResult> {
    hausdorff_with(a, b, &HausdorffOptions::default())
}

pub fn hausdorff_with(a: &Shape, b: &Shape, opts: &HausdorffOptions) -> Result<HausdorffResult> {
    let ab = directed_hausdorff_with(a, b, opts)?;
    let ba = directed_hausdorff_with(b, a, opts)?;
    Ok(if ba.distance > ab.distance { ba } else { ab })
}

/// Directed distance from the partition's source to its target.
pub fn from_partition(partition: &Partition) -> HausdorffResult {
    let mut best: Option<HausdorffResult> = None;
    for piece in &partition.pieces {
        if piece.site == Site::Interior {
            continue;
        }
        for ring in piece.geometry.rings() {
            for &p in ring.vertices() {
                let q = piece.site.closest_point(p);
                let cand = HausdorffResult { distance: p.dist(q), witness_source: p, witness_target: q };
                if best.is_none_or(|b| better(&cand, &b)) {
                    best = Some(cand);
                }
            }
        }
    }
    best.unwrap_or_else(|| {
        // Source inside the target: any source point is its own witness.
        let p = partition
            .pieces
            .first()
            .map(|piece| piece.geometry.outer.vertices()[0])
            .or_else(|| partition.source.rings().next().map(|r| r.vertices()[0]))
            .unwrap_or(Point::ORIGIN);
        HausdorffResult { distance: 0.0, witness_source: p, witness_target: p }
    })
}

fn better(c: &HausdorffResult, b: &HausdorffResult) -> bool {
    match c.distance.partial_cmp(&b.distance) {
        Some(Ordering::Greater) => true,
        Some(Ordering::Equal) => c.witness_source.lex_cmp(&b.witness_source) == Ordering::Less,
        _ => false,
    }
}

/// Brute-force estimate from boundary samples and an interior grid at `spacing`,
/// maximized over both directions. Within `O(spacing)` of the true value.
pub fn hausdorff_oracle(a: &Shape, b: &Shape, spacing: f64) -> Result<f64> {
    if spacing.is_nan() || spacing <= 0.0 {
        return Err(Error::Parameter { name: "spacing", value: spacing });
    }
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyShape);
    }
    Ok(directed_oracle(a, b, spacing).max(directed_oracle(b, a, spacing)))
}

fn directed_oracle(a: &Shape, b: &Shape, spacing: f64) -> f64 {
    sample_region(a, spacing).into_iter().map(|p| b.distance_to(p)).fold(0.0, f64::max)
}

/// Boundary points (vertices plus edge subdivisions) and interior grid points of `s`.
pub fn sample_region(s: &Shape, spacing: f64) -> Vec<Point> {
    let mut out = Vec::new();
    for ring in s.rings() {
        for (p, q) in ring.edges() {
            let n = (p.dist(q) / spacing).ceil().max(1.0) as usize;
            out.extend((0..n).map(|i| p.lerp(q, i as f64 / n as f64)));
        }
    }
    let bb: BBox = s.bbox();
    let nx = (bb.width() / spacing).ceil() as usize;
    let ny = (bb.height() / spacing).ceil() as usize;
    for j in 0..=ny {
        for i in 0..=nx {
            let p = Point::new(bb.min.x + i as f64 * spacing, bb.min.y + j as f64 * spacing);
            if s.contains(p) {
                out.push(p);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{dilate, DiskApprox};

    #[test]
    fn facing_squares() {
        let a = Shape::rect(0.0, 0.0, 1.0, 1.0);
        let b = Shape::rect(2.0, 0.0, 3.0, 1.0);
        let r = directed_hausdorff(&a, &b).unwrap();
        assert_eq!(r.distance, 2.0);
        assert_eq!(r.witness_source.x, 0.0);
        assert_eq!(r.witness_target.x, 2.0);
        assert_eq!(r.witness_source.y, r.witness_target.y);
        // Lexicographic tie-break among the two left corners.
        assert_eq!(r.witness_source, Point::new(0.0, 0.0));
        assert_eq!(hausdorff(&a, &b).unwrap().distance, 2.0);
        assert!((hausdorff_oracle(&a, &b, 0.01).unwrap() - 2.0).abs() <= 0.02);
    }

    #[test]
    fn identical_and_contained() {
        let a = Shape::rect(0.0, 0.0, 1.0, 1.0);
        assert_eq!(hausdorff(&a, &a).unwrap().distance, 0.0);
        assert_eq!(hausdorff_oracle(&a, &a, 0.05).unwrap(), 0.0);
        let inner = Shape::rect(0.4, 0.4, 0.6, 0.6);
        assert_eq!(directed_hausdorff(&inner, &a).unwrap().distance, 0.0);
        let r = hausdorff(&inner, &a).unwrap();
        assert!((r.distance - 0.4 * 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(r, directed_hausdorff(&a, &inner).unwrap());
    }

    #[test]
    fn dilated_square() {
        let cfg = KernelConfig::default();
        let sq = Shape::rect(0.0, 0.0, 1.0, 1.0);
        let r = 0.3;
        let big = dilate(&sq, &DiskApprox::new(r, 64), &cfg);
        let d = hausdorff(&big, &sq).unwrap();
        assert!((d.distance - r).abs() <= crate::kernel::morphology::error_bound(r, 64) + 1e-9);
        assert!((d.distance - d.witness_source.dist(d.witness_target)).abs() < 1e-9);
    }

    #[test]
    fn empty_and_bad_spacing() {
        let a = Shape::rect(0.0, 0.0, 1.0, 1.0);
        assert!(hausdorff(&a, &Shape::empty()).is_err());
        assert!(hausdorff_oracle(&a, &a, 0.0).is_err());
    }
}
