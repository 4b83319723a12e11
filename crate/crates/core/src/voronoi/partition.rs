use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::geom::{self, BBox, Point};
use crate::kernel::boolean::{self, subtract_loops};
use crate::kernel::KernelConfig;
use crate::shape::{PolygonWithHoles, Ring, Shape};
use crate::voronoi::cells::{
    box_loop, clip_to_box, edge_edge_exclusion, edge_region, vertex_region, vertex_vertex_exclusion, ParabolaBisector,
};
use crate::voronoi::site::{Features, Site};

/// Default chord deviation allowed when discretizing parabolic cell boundaries.
pub const DEFAULT_ARC_TOLERANCE: f64 = 1e-4;

/// Pieces below this area are dropped (before and after scaling).
pub const MIN_PIECE_AREA: f64 = 1e-12;

/// Cutters subtracted per overlay pass while building one cell.
const CUTTER_BATCH: usize = 16;

/// A region of the source shape whose closest feature of the target is `site`.
#[derive(Debug, Clone, PartialEq)]
pub struct Piece {
    pub geometry: PolygonWithHoles,
    pub site: Site,
}

/// The source shape cut by the Voronoi diagram of the target's features.
#[derive(Debug, Clone)]
pub struct Partition {
    pub pieces: Vec<Piece>,
    pub source: Shape,
    pub target: Shape,
    pub arc_tolerance: f64,
}

impl Partition {
    pub fn area(&self) -> f64 {
        self.pieces.iter().map(|p| p.geometry.area()).sum()
    }

    /// Debug dump: the pieces as a MULTIPOLYGON literal, and one line per piece
    /// giving its site kind and coordinates.
    pub fn debug_dump(&self) -> (String, String) {
        let geometry = Shape::from_polygons(self.pieces.iter().map(|p| p.geometry.clone()).collect());
        let mut wkt = crate::wkt::emit_wkt(&geometry);
        if self.pieces.len() == 1 {
            wkt = format!("MULTIPOLYGON({})", &wkt["POLYGON".len()..]);
        }
        let mut sites = String::new();
        for (i, piece) in self.pieces.iter().enumerate() {
            let line = match piece.site {
                Site::Vertex(v) => format!("{i} vertex {} {}\n", v.x, v.y),
                Site::Edge(a, b) => format!("{i} edge {} {} {} {}\n", a.x, a.y, b.x, b.y),
                Site::Interior => format!("{i} interior\n"),
            };
            sites.push_str(&line);
        }
        (wkt, sites)
    }

    /// All pieces moved a fraction `alpha` toward their sites, degenerate ones dropped.
    pub fn scaled(&self, alpha: f64) -> Vec<PolygonWithHoles> {
        self.pieces.iter().filter_map(|p| scale_piece(p, alpha)).collect()
    }
}

/// Closest point of the region `shape` to `p`: `p` itself when inside, otherwise
/// the nearest boundary point.
pub fn closest_point(p: Point, shape: &Shape) -> Result<Point> {
    if shape.is_empty() {
        return Err(Error::EmptyShape);
    }
    if shape.contains(p) {
        return Ok(p);
    }
    shape.closest_boundary_point(p).ok_or(Error::EmptyShape)
}

/// Moves a piece toward its site. Returns `None` when the result is degenerate.
pub fn scale_piece(piece: &Piece, alpha: f64) -> Option<PolygonWithHoles> {
    match piece.site {
        Site::Interior => return Some(piece.geometry.clone()),
        _ if alpha >= 1.0 => return None,
        _ if alpha == 0.0 => return Some(piece.geometry.clone()),
        _ => {}
    }
    let site = piece.site;
    let poly = piece.geometry.map(move |p| site.scale_point(p, alpha));
    (poly.area() > MIN_PIECE_AREA).then_some(poly)
}

/// Partitions `a` by the Voronoi diagram of `b`'s vertices, open edges and interior.
///
/// `a ∩ b` becomes interior pieces; `a ∖ b` is cut along the cells of `b`'s
/// boundary features, whose parabolic arcs are replaced by chords deviating by at
/// most `arc_tolerance`.
pub fn build_partition(a: &Shape, b: &Shape, arc_tolerance: f64, cfg: &KernelConfig, exec: Execution) -> Result<Partition> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyShape);
    }
    if !(arc_tolerance > 0.0 && arc_tolerance.is_finite()) {
        return Err(Error::Parameter { name: "arc_tolerance", value: arc_tolerance });
    }
    let inside = boolean::intersect(a, b, cfg);
    let outside = boolean::difference(a, b, cfg);

    let mut pieces: Vec<Piece> = inside
        .polygons
        .into_iter()
        .filter(|p| p.area() > MIN_PIECE_AREA)
        .map(|geometry| Piece { geometry, site: Site::Interior })
        .collect();

    if !outside.is_empty() {
        let ctx = CellContext::new(b, &outside, arc_tolerance, cfg);
        let cells = exec.map_range(ctx.site_total(), |i| ctx.cell(i));
        pieces.extend(cells.into_iter().flatten());
    }
    Ok(Partition { pieces, source: a.clone(), target: b.clone(), arc_tolerance })
}

struct CellContext<'a> {
    features: Features,
    outside: &'a Shape,
    outside_boxes: Vec<BBox>,
    clip_loop: Vec<Point>,
    tol: f64,
    cfg: &'a KernelConfig,
}

impl<'a> CellContext<'a> {
    fn new(target: &Shape, outside: &'a Shape, tol: f64, cfg: &'a KernelConfig) -> Self {
        let ob = outside.bbox();
        let clip = ob.expand(0.01 * ob.diagonal() + 1e-6);
        CellContext {
            features: Features::of(target),
            outside,
            outside_boxes: outside.polygons.iter().map(|p| p.bbox()).collect(),
            clip_loop: box_loop(&clip),
            tol,
            cfg,
        }
    }

    fn site_total(&self) -> usize {
        self.features.vertices.len() + self.features.edges.len()
    }

    /// Site `i`: vertices first, then edges.
    fn cell(&self, i: usize) -> Vec<Piece> {
        let nv = self.features.vertices.len();
        let (site, region) = if i < nv {
            let v = &self.features.vertices[i];
            (Site::Vertex(v.at), vertex_region(v, &self.clip_loop))
        } else {
            let (a, b) = self.features.edges[i - nv];
            (Site::Edge(a, b), edge_region(a, b, &self.clip_loop))
        };
        if region.len() < 3 {
            return Vec::new();
        }
        let rb = BBox::from_points(&region);
        if !self.outside_boxes.iter().any(|b| b.overlaps(&rb)) {
            return Vec::new();
        }
        let region_shape = Shape::from_polygons(vec![PolygonWithHoles::new(Ring::new(region), vec![])]);
        let candidate = boolean::intersect(&region_shape, self.outside, self.cfg);
        if candidate.is_empty() {
            return Vec::new();
        }
        let mut cell = candidate;
        let mut rivals = self.rivals(i, site);
        // Nearest rivals first; after each batch the cell shrinks, and with it the
        // distance within which the remaining rivals can matter.
        while !rivals.is_empty() && !cell.is_empty() {
            let qb = cell.bbox();
            // Farthest the site is from any point of the cell; only rivals nearer
            // than this to the cell's box can claim part of it.
            let reach = cell
                .rings()
                .flat_map(|r| r.vertices().iter())
                .map(|&p| site.distance(p))
                .fold(0.0f64, f64::max)
                * (1.0 + 1e-9)
                + 1e-12;
            rivals.retain(|r| self.rival_box_distance(*r, &qb) < reach);
            if rivals.is_empty() {
                break;
            }
            let take = rivals.len().min(CUTTER_BATCH);
            // Cutters are clipped to a box slightly larger than the cell rather than
            // to the cell's normal region, so they never share slanted edges.
            let local = qb.expand(1e-3 * qb.diagonal() + 1e-7);
            let mut cutters = Vec::with_capacity(take);
            for r in rivals.drain(..take) {
                push_loop(&mut cutters, self.cutter(site, r, &local));
            }
            cell = subtract_loops(&cell, &cutters, self.cfg);
        }
        cell.polygons
            .into_iter()
            .filter(|p| p.area() > MIN_PIECE_AREA)
            .map(|geometry| Piece { geometry, site })
            .collect()
    }

    /// Features that may be closer than `site` somewhere, nearest first.
    fn rivals(&self, idx: usize, site: Site) -> Vec<Rival> {
        let nv = self.features.vertices.len();
        let mut out: Vec<(f64, Rival)> = Vec::new();
        match site {
            Site::Vertex(v) => {
                let own = &self.features.vertices[idx];
                for (j, other) in self.features.vertices.iter().enumerate() {
                    if j != idx && other.at != v {
                        out.push((other.at.dist(v), Rival::Vertex(j)));
                    }
                }
                // The normal region already excludes the vertex's own edges. Edges of
                // other rings that merely touch it still cut it.
                for (j, &(a, b)) in self.features.edges.iter().enumerate() {
                    if (a, b) != (own.prev, v) && (a, b) != (v, own.next) {
                        out.push((geom::segment_distance(v, a, b), Rival::Edge(j)));
                    }
                }
            }
            Site::Edge(a, b) => {
                for (j, other) in self.features.vertices.iter().enumerate() {
                    let p = other.at;
                    // Only foci on the outward side can beat the edge there.
                    if p != a && p != b && (b - a).cross(p - a) < 0.0 {
                        out.push((geom::segment_distance(p, a, b), Rival::Vertex(j)));
                    }
                }
                for (j, &(c, d)) in self.features.edges.iter().enumerate() {
                    if j + nv != idx {
                        let gap = geom::segment_distance(c, a, b).min(geom::segment_distance(d, a, b));
                        out.push((gap, Rival::Edge(j)));
                    }
                }
            }
            Site::Interior => unreachable!(),
        }
        out.sort_by(|x, y| x.0.total_cmp(&y.0));
        out.into_iter().map(|(_, r)| r).collect()
    }

    fn rival_box_distance(&self, r: Rival, qb: &BBox) -> f64 {
        match r {
            Rival::Vertex(j) => point_box_distance(self.features.vertices[j].at, qb),
            Rival::Edge(j) => {
                let (c, d) = self.features.edges[j];
                segment_box_distance(c, d, qb)
            }
        }
    }

    /// Part of `local` (within the site's slab, for edges) closer to the rival than to the site.
    fn cutter(&self, site: Site, r: Rival, local: &BBox) -> Vec<Point> {
        match (site, r) {
            (Site::Vertex(v), Rival::Vertex(j)) => vertex_vertex_exclusion(v, self.features.vertices[j].at, &box_loop(local)),
            (Site::Vertex(v), Rival::Edge(j)) => {
                let (a, b) = self.features.edges[j];
                ParabolaBisector::new(v, a, b, local, self.tol).map_or_else(Vec::new, |bis| clip_to_box(&bis.line_side(), local))
            }
            (Site::Edge(a, b), Rival::Vertex(j)) => ParabolaBisector::new(self.features.vertices[j].at, a, b, local, self.tol)
                .map_or_else(Vec::new, |bis| clip_to_box(&bis.focus_side(), local)),
            (Site::Edge(a, b), Rival::Edge(j)) => {
                let (c, d) = self.features.edges[j];
                edge_edge_exclusion(a, b, c, d, &box_loop(local))
            }
            (Site::Interior, _) => unreachable!(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Rival {
    Vertex(usize),
    Edge(usize),
}

fn push_loop(out: &mut Vec<Vec<Point>>, l: Vec<Point>) {
    if l.len() >= 3 {
        out.push(l);
    }
}

fn point_box_distance(p: Point, b: &BBox) -> f64 {
    BBox { min: p, max: p }.distance(b)
}

fn segment_box_distance(a: Point, c: Point, b: &BBox) -> f64 {
    BBox::from_points(&[a, c]).distance(b)
}
