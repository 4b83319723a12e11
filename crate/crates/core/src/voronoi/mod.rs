//! Partition of one shape by the Voronoi diagram of another shape's features.

mod cells;
mod partition;
mod site;

pub use partition::{
    build_partition, closest_point, scale_piece, Partition, Piece, DEFAULT_ARC_TOLERANCE, MIN_PIECE_AREA,
};
pub use site::{feature_sites, Site};
