use crate::geom::{self, Point};
use crate::shape::Shape;

/// A feature of a shape that generates a Voronoi cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Site {
    Vertex(Point),
    /// Open edge from `.0` to `.1`; its supporting line is the line through both.
    Edge(Point, Point),
    /// The interior of the shape.
    Interior,
}

impl Site {
    pub fn kind(&self) -> &'static str {
        match self {
            Site::Vertex(_) => "vertex",
            Site::Edge(..) => "edge",
            Site::Interior => "interior",
        }
    }

    /// Closest point of the (closed) site geometry to `p`; `p` itself for the interior.
    pub fn closest_point(&self, p: Point) -> Point {
        match *self {
            Site::Vertex(v) => v,
            Site::Edge(a, b) => geom::closest_on_segment(p, a, b).0,
            Site::Interior => p,
        }
    }

    pub fn distance(&self, p: Point) -> f64 {
        self.closest_point(p).dist(p)
    }

    /// Where `p` moves at fraction `alpha` of the way toward the site: uniformly toward
    /// a vertex, perpendicular onto an edge's supporting line, not at all for the interior.
    pub fn scale_point(&self, p: Point, alpha: f64) -> Point {
        match *self {
            Site::Vertex(v) => p + (v - p) * alpha,
            Site::Edge(a, b) => {
                let d = b - a;
                let foot = a + d * ((p - a).dot(d) / d.norm_sq());
                p + (foot - p) * alpha
            }
            Site::Interior => p,
        }
    }
}

/// One vertex site per ring vertex, one edge site per ring edge, and one interior site.
pub fn feature_sites(shape: &Shape) -> Vec<Site> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for ring in shape.rings() {
        vertices.extend(ring.vertices().iter().map(|&v| Site::Vertex(v)));
        edges.extend(ring.edges().map(|(a, b)| Site::Edge(a, b)));
    }
    vertices.extend(edges);
    vertices.push(Site::Interior);
    vertices
}

/// Boundary vertex together with its ring neighbours (material on the left).
#[derive(Debug, Clone, Copy)]
pub(crate) struct VertexFeature {
    pub at: Point,
    pub prev: Point,
    pub next: Point,
}

impl VertexFeature {
    /// Convex as seen from the material side; only these have exterior cells.
    pub fn is_convex(&self) -> bool {
        (self.at - self.prev).cross(self.next - self.at) > 0.0
    }
}

/// Boundary features of a shape in ring order; edge `i` starts at vertex `i`.
#[derive(Debug, Clone, Default)]
pub(crate) struct Features {
    pub vertices: Vec<VertexFeature>,
    pub edges: Vec<(Point, Point)>,
}

impl Features {
    pub fn of(shape: &Shape) -> Self {
        let mut f = Features::default();
        for ring in shape.rings() {
            let v = ring.vertices();
            let n = v.len();
            for i in 0..n {
                f.vertices.push(VertexFeature { at: v[i], prev: v[(i + n - 1) % n], next: v[(i + 1) % n] });
                f.edges.push((v[i], v[(i + 1) % n]));
            }
        }
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{difference, KernelConfig};

    fn count(sites: &[Site]) -> (usize, usize, usize) {
        let v = sites.iter().filter(|s| matches!(s, Site::Vertex(_))).count();
        let e = sites.iter().filter(|s| matches!(s, Site::Edge(..))).count();
        let i = sites.iter().filter(|s| matches!(s, Site::Interior)).count();
        (v, e, i)
    }

    #[test]
    fn site_counts() {
        assert_eq!(count(&feature_sites(&Shape::rect(0.0, 0.0, 1.0, 1.0))), (4, 4, 1));
        let holed = difference(&Shape::rect(0.0, 0.0, 4.0, 4.0), &Shape::rect(1.0, 1.0, 3.0, 3.0), &KernelConfig::default());
        assert_eq!(count(&feature_sites(&holed)), (8, 8, 1));
        let tri = |dx: f64| crate::shape::PolygonWithHoles::from_outer(vec![
            Point::new(dx, 0.0),
            Point::new(dx + 1.0, 0.0),
            Point::new(dx, 1.0),
        ]);
        let two = Shape::new(vec![tri(0.0), tri(3.0)]).unwrap();
        assert_eq!(count(&feature_sites(&two)), (6, 6, 1));
    }

    #[test]
    fn scaling_maps() {
        let e = Site::Edge(Point::new(2.0, 0.0), Point::new(2.0, 1.0));
        assert_eq!(e.scale_point(Point::new(0.0, 0.5), 0.5), Point::new(1.0, 0.5));
        let v = Site::Vertex(Point::new(3.0, 0.0));
        assert_eq!(v.scale_point(Point::new(1.0, 1.0), 1.0), Point::new(3.0, 0.0));
        assert_eq!(Site::Interior.scale_point(Point::new(1.0, 1.0), 0.7), Point::new(1.0, 1.0));
    }

    #[test]
    fn holes_have_convex_corners_from_outside() {
        let holed = difference(&Shape::rect(0.0, 0.0, 4.0, 4.0), &Shape::rect(1.0, 1.0, 3.0, 3.0), &KernelConfig::default());
        let f = Features::of(&holed);
        // Outer corners are convex; the hole's corners are reflex for the material.
        assert_eq!(f.vertices.iter().filter(|v| v.is_convex()).count(), 4);
    }
}
