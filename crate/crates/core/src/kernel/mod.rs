//! Geometric kernel: regularized booleans and disk morphology.

pub mod boolean;
pub mod morphology;

pub use boolean::{difference, intersect, symmetric_difference, union, union_all, union_all_snapped};
pub use morphology::{closing, dilate, erode, DiskApprox};

/// Default number of sides of the polygon standing in for a disk.
pub const DEFAULT_DISK_SEGMENTS: usize = 64;
/// Default vertex snap tolerance.
pub const DEFAULT_SNAP: f64 = 1e-9;

/// Kernel tuning shared by every boolean and morphology call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelConfig {
    /// Vertices closer than this are merged (the overlay grid step).
    pub snap: f64,
    /// Sides of the regular polygon used for disks.
    pub disk_segments: usize,
}

impl Default for KernelConfig {
    fn default() -> Self {
        KernelConfig { snap: DEFAULT_SNAP, disk_segments: DEFAULT_DISK_SEGMENTS }
    }
}

impl KernelConfig {
    /// Grid scale: the power of two whose reciprocal is the largest step ≤ `snap`.
    pub(crate) fn grid_scale(&self) -> f64 {
        let snap = if self.snap > 0.0 && self.snap.is_finite() { self.snap } else { DEFAULT_SNAP };
        2f64.powi((1.0 / snap).log2().ceil() as i32)
    }

    pub fn disk(&self, radius: f64) -> DiskApprox {
        DiskApprox::new(radius, self.disk_segments)
    }
}
