//! The three morphs and the pair normalization they share.
//!
//! Radii are measured in the pair's own units: the dilation morph at `α` dilates
//! `A` by `α·h` and `B` by `(1−α)·h`, where `h` is the pair's Hausdorff distance.
//! [`Morpher`] builds both Voronoi partitions once and reuses them for every `α`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::geom::Point;
use crate::hausdorff;
use crate::kernel::morphology::error_bound;
use crate::kernel::{self, KernelConfig, DEFAULT_DISK_SEGMENTS};
use crate::shape::{centroid, transform, Shape};
use crate::voronoi::{build_partition, Partition, DEFAULT_ARC_TOLERANCE};

/// Closing radius used by the experiments, in unit-area units.
pub const DEFAULT_PHI: f64 = 0.02;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Dilation,
    Voronoi,
    Mixed,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Dilation, Method::Voronoi, Method::Mixed];

    pub fn name(self) -> &'static str {
        match self {
            Method::Dilation => "dilation",
            Method::Voronoi => "voronoi",
            Method::Mixed => "mixed",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "dilation" => Ok(Method::Dilation),
            "voronoi" => Ok(Method::Voronoi),
            "mixed" => Ok(Method::Mixed),
            other => Err(Error::InvalidGeometry(format!("unknown morph method '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MorphParams {
    pub alpha: f64,
    /// Closing radius of the mixed morph.
    pub phi: f64,
    pub disk_segments: usize,
    pub arc_tolerance: f64,
}

impl Default for MorphParams {
    fn default() -> Self {
        MorphParams { alpha: 0.5, phi: DEFAULT_PHI, disk_segments: DEFAULT_DISK_SEGMENTS, arc_tolerance: DEFAULT_ARC_TOLERANCE }
    }
}

impl MorphParams {
    pub fn with_alpha(self, alpha: f64) -> Self {
        MorphParams { alpha, ..self }
    }

    pub fn with_phi(self, phi: f64) -> Self {
        MorphParams { phi, ..self }
    }

    /// `max(3·err(h, k), 5·arc_tolerance)`: the slack the morph guarantees hold within.
    pub fn tolerance(&self, h: f64) -> f64 {
        f64::max(3.0 * error_bound(h, self.disk_segments), 5.0 * self.arc_tolerance)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Align {
    #[default]
    Centroid,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scale {
    /// Both shapes scaled to the geometric mean of their areas.
    #[default]
    EqualArea,
    /// Both shapes scaled to area 1.
    UnitArea,
    None,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedPair {
    pub a: Shape,
    pub b: Shape,
    /// Hausdorff distance of the normalized shapes.
    pub h: f64,
    pub applied_translation: [Point; 2],
    pub applied_scale: [f64; 2],
}

impl NormalizedPair {
    /// Wraps a pair as-is, measuring its Hausdorff distance.
    pub fn raw(a: Shape, b: Shape) -> Result<Self> {
        normalize_pair(&a, &b, Align::None, Scale::None)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MorphResult {
    pub shape: Shape,
    pub method: Method,
    pub params: MorphParams,
    pub h: f64,
}

/// Scales each shape about its centroid (per `scale`), then moves both centroids
/// to the origin (per `align`), then measures `h`.
pub fn normalize_pair(a: &Shape, b: &Shape, align: Align, scale: Scale) -> Result<NormalizedPair> {
    Ok(Morpher::new(a, b, align, scale, MorphParams::default(), Execution::default())?.into_pair())
}

fn normalize_shapes(a: &Shape, b: &Shape, align: Align, scale: Scale) -> Result<(Shape, Shape, [Point; 2], [f64; 2])> {
    for s in [a, b] {
        if s.is_empty() {
            return Err(Error::EmptyShape);
        }
        if s.area() <= 0.0 {
            return Err(Error::ZeroArea);
        }
    }
    if align == Align::None && scale == Scale::None {
        return Ok((a.clone(), b.clone(), [Point::ORIGIN; 2], [1.0; 2]));
    }
    let (ca, cb) = (centroid(a)?, centroid(b)?);
    let target = match scale {
        Scale::EqualArea => (a.area() * b.area()).sqrt(),
        Scale::UnitArea => 1.0,
        Scale::None => f64::NAN,
    };
    let factor = |s: &Shape| if scale == Scale::None { 1.0 } else { (target / s.area()).sqrt() };
    let (fa, fb) = (factor(a), factor(b));
    let (ta, tb) = match align {
        Align::Centroid => (-ca, -cb),
        Align::None => (Point::ORIGIN, Point::ORIGIN),
    };
    let na = transform(a, ta, fa, ca)?;
    let nb = transform(b, tb, fb, cb)?;
    Ok((na, nb, [ta, tb], [fa, fb]))
}

/// A normalized pair with both Voronoi partitions built, ready to morph at any `α`.
#[derive(Debug, Clone)]
pub struct Morpher {
    pair: NormalizedPair,
    ab: Partition,
    ba: Partition,
    params: MorphParams,
    kernel: KernelConfig,
    exec: Execution,
}

impl Morpher {
    pub fn new(a: &Shape, b: &Shape, align: Align, scale: Scale, params: MorphParams, exec: Execution) -> Result<Self> {
        let (na, nb, applied_translation, applied_scale) = normalize_shapes(a, b, align, scale)?;
        let kernel = KernelConfig { disk_segments: params.disk_segments, ..KernelConfig::default() };
        let (ab, ba) = (
            build_partition(&na, &nb, params.arc_tolerance, &kernel, exec)?,
            build_partition(&nb, &na, params.arc_tolerance, &kernel, exec)?,
        );
        let h = hausdorff::from_partition(&ab).distance.max(hausdorff::from_partition(&ba).distance);
        let pair = NormalizedPair { a: na, b: nb, h, applied_translation, applied_scale };
        Ok(Morpher { pair, ab, ba, params, kernel, exec })
    }

    /// A pair used exactly as given.
    pub fn raw(a: &Shape, b: &Shape, params: MorphParams) -> Result<Self> {
        Morpher::new(a, b, Align::None, Scale::None, params, Execution::default())
    }

    pub fn pair(&self) -> &NormalizedPair {
        &self.pair
    }

    pub fn into_pair(self) -> NormalizedPair {
        self.pair
    }

    pub fn h(&self) -> f64 {
        self.pair.h
    }

    pub fn params(&self) -> &MorphParams {
        &self.params
    }

    pub fn partitions(&self) -> (&Partition, &Partition) {
        (&self.ab, &self.ba)
    }

    /// `max(3·err(h, k), 5·arc_tolerance)` for this pair.
    pub fn tolerance(&self) -> f64 {
        self.params.tolerance(self.pair.h)
    }

    pub fn morph(&self, method: Method, alpha: f64, phi: f64) -> Result<MorphResult> {
        check_alpha(alpha)?;
        if !(phi >= 0.0 && phi.is_finite()) {
            return Err(Error::Parameter { name: "phi", value: phi });
        }
        let shape = match method {
            Method::Dilation => self.dilation_shape(alpha),
            Method::Voronoi => self.voronoi_shape(alpha),
            Method::Mixed => self.mixed_shape(alpha, phi),
        };
        Ok(MorphResult { shape, method, params: MorphParams { alpha, phi, ..self.params }, h: self.pair.h })
    }

    pub fn dilation(&self, alpha: f64) -> Result<MorphResult> {
        self.morph(Method::Dilation, alpha, 0.0)
    }

    pub fn voronoi(&self, alpha: f64) -> Result<MorphResult> {
        self.morph(Method::Voronoi, alpha, 0.0)
    }

    pub fn mixed(&self, alpha: f64, phi: f64) -> Result<MorphResult> {
        self.morph(Method::Mixed, alpha, phi)
    }

    fn endpoint(&self, alpha: f64) -> Option<Shape> {
        if alpha == 0.0 {
            Some(self.pair.a.clone())
        } else if alpha == 1.0 {
            Some(self.pair.b.clone())
        } else {
            None
        }
    }

    fn dilation_shape(&self, alpha: f64) -> Shape {
        if let Some(s) = self.endpoint(alpha) {
            return s;
        }
        let h = self.pair.h;
        let da = kernel::dilate(&self.pair.a, &self.kernel.disk(alpha * h), &self.kernel);
        let db = kernel::dilate(&self.pair.b, &self.kernel.disk((1.0 - alpha) * h), &self.kernel);
        kernel::intersect(&da, &db, &self.kernel)
    }

    fn voronoi_shape(&self, alpha: f64) -> Shape {
        if let Some(s) = self.endpoint(alpha) {
            return s;
        }
        let scaled: Vec<Shape> = self
            .exec
            .map(&[(&self.ab, alpha), (&self.ba, 1.0 - alpha)], |(p, t)| Shape::from_polygons(p.scaled(*t)));
        kernel::union_all_snapped(&scaled, &self.kernel)
    }

    fn mixed_shape(&self, alpha: f64, phi: f64) -> Shape {
        if let Some(s) = self.endpoint(alpha) {
            return s;
        }
        let t = self.voronoi_shape(alpha);
        let closed = kernel::closing(&t, &self.kernel.disk(phi), &self.kernel);
        kernel::intersect(&closed, &self.dilation_shape(alpha), &self.kernel)
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if (0.0..=1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::Parameter { name: "alpha", value: alpha })
    }
}

fn prepared(pair: &NormalizedPair) -> Result<Morpher> {
    Morpher::raw(&pair.a, &pair.b, MorphParams::default())
}

/// `(A ⊕ D_{αh}) ∩ (B ⊕ D_{(1−α)h})`.
pub fn dilation_morph(pair: &NormalizedPair, alpha: f64) -> Result<MorphResult> {
    check_alpha(alpha)?;
    prepared(pair)?.dilation(alpha)
}

/// Union of the pieces of `Π(A,B)` scaled by `α` and of `Π(B,A)` scaled by `1−α`.
pub fn voronoi_morph(pair: &NormalizedPair, alpha: f64) -> Result<MorphResult> {
    check_alpha(alpha)?;
    prepared(pair)?.voronoi(alpha)
}

/// `closing(T_α, φ) ∩ S_α`.
pub fn mixed_morph(pair: &NormalizedPair, alpha: f64, phi: f64) -> Result<MorphResult> {
    check_alpha(alpha)?;
    prepared(pair)?.mixed(alpha, phi)
}

/// Morphs `a` toward `b + t`: the morph of `(a, b)` as given, shifted by `α·t`.
pub fn morph_translated(a: &Shape, b: &Shape, t: Point, method: Method, params: &MorphParams) -> Result<MorphResult> {
    check_alpha(params.alpha)?;
    let m = Morpher::raw(a, b, *params)?;
    let mut r = m.morph(method, params.alpha, params.phi)?;
    let shift = t * params.alpha;
    r.shape = r.shape.map(move |p| p + shift);
    Ok(r)
}
