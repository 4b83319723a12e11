//! Synthetic shape pairs.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::Point;
use crate::shape::{PolygonWithHoles, Shape};

/// `[0,1]²` and `[1+gap, 2+gap] × [0,1]`.
pub fn generate_squares_pair(gap: f64) -> Result<(Shape, Shape)> {
    if !(gap >= 0.0 && gap.is_finite()) {
        return Err(Error::Parameter { name: "gap", value: gap });
    }
    Ok((Shape::rect(0.0, 0.0, 1.0, 1.0), Shape::rect(1.0 + gap, 0.0, 2.0 + gap, 1.0)))
}

/// Prong width and gap of the comb fixture.
const COMB_WIDTH: f64 = 1.0;
const COMB_GAP: f64 = 2.0;

/// Two interlocking combs on a common grid. The first has a vertical spine on the
/// left and horizontal prongs, the second a horizontal spine at the bottom and
/// vertical prongs; each spine coincides with the other comb's first prong, so
/// every prong of one crosses every prong of the other.
pub fn generate_comb_pair(prongs: usize) -> Result<(Shape, Shape)> {
    if prongs < 2 {
        return Err(Error::Parameter { name: "prongs", value: prongs as f64 });
    }
    let (w, g) = (COMB_WIDTH, COMB_GAP);
    let pitch = w + g;
    let len = pitch * (prongs - 1) as f64 + w;
    // Horizontal comb, counterclockwise from the origin.
    let mut pts = vec![Point::new(0.0, 0.0), Point::new(len, 0.0), Point::new(len, w)];
    for i in 1..prongs {
        let y = pitch * i as f64;
        pts.push(Point::new(w, y - g));
        pts.push(Point::new(w, y));
        pts.push(Point::new(len, y));
        pts.push(Point::new(len, y + w));
    }
    pts.push(Point::new(0.0, len));
    let horizontal = Shape::new(vec![PolygonWithHoles::from_outer(pts)])?;
    let vertical = horizontal.map(|p| Point::new(p.y, p.x));
    let vertical = Shape::new(vertical.polygons)?;
    Ok((horizontal, vertical))
}

/// Two star-shaped polygons with `vertices` vertices each, deterministic in `seed`.
/// Angles are jittered around an even spacing, radii drawn from `[0.4, 1]`; the
/// second polygon's centre is offset by up to 0.3 in each coordinate.
pub fn generate_random_pair(seed: u64, vertices: usize) -> Result<(Shape, Shape)> {
    if vertices < 3 {
        return Err(Error::Parameter { name: "vertices", value: vertices as f64 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = star(&mut rng, Point::ORIGIN, vertices)?;
    let offset = Point::new(rng.random_range(-0.3..0.3), rng.random_range(-0.3..0.3));
    let b = star(&mut rng, offset, vertices)?;
    Ok((a, b))
}

fn star(rng: &mut ChaCha8Rng, center: Point, n: usize) -> Result<Shape> {
    let step = TAU / n as f64;
    let phase = rng.random_range(0.0..TAU);
    let pts = (0..n)
        .map(|i| {
            let t = phase + step * (i as f64 + rng.random_range(-0.35..0.35));
            let r = rng.random_range(0.4..1.0);
            center + Point::new(t.cos(), t.sin()) * r
        })
        .collect();
    Shape::new(vec![PolygonWithHoles::from_outer(pts)])
}
