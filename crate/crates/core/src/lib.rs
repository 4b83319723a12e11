//! Hausdorff morphs between polygonal shapes.
//!
//! Three interpolations between shapes `A` and `B` whose intermediate shape at
//! time `α` sits at Hausdorff distance `α·h` from `A` and `(1−α)·h` from `B`:
//!
//! * the dilation morph `S_α = (A ⊕ D_{αh}) ∩ (B ⊕ D_{(1−α)h})`,
//! * the Voronoi morph `T_α`, moving every point of each shape a fraction of
//!   the way toward its closest point on the other shape,
//! * the mixed morph `M_{α,φ}`, a morphological closing of `T_α` clipped to `S_α`.
//!
//! The crate also carries the geometric kernel these need (booleans, disk
//! morphology, a segment Voronoi partition, exact Hausdorff distance) and an
//! experiment harness that measures morph sequences over an `α` grid.

pub mod error;
pub mod exec;
pub mod experiment;
pub mod geom;
pub mod hausdorff;
pub mod kernel;
pub mod morph;
pub mod shape;
pub mod voronoi;
pub mod wkt;

pub use error::{Error, Result};
pub use exec::Execution;
pub use geom::Point;
pub use kernel::{DiskApprox, KernelConfig};
pub use morph::{Align, Method, MorphParams, MorphResult, Morpher, NormalizedPair, Scale};
pub use shape::{centroid, measure, transform, Measurements, PolygonWithHoles, Ring, Shape};
pub use wkt::{emit_wkt, parse_wkt};
