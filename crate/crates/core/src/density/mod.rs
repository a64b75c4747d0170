//! Compactly supported densities `0 <= g <= 1` built from disks, annuli,
//! rectangles and an optional piecewise-constant grid.

mod region;
mod spec;
mod swiss;

pub use region::{Grid, Region, Term};
pub use spec::{DensitySpec, Violation, BOUNDARY_SAMPLES, VALIDATION_GRID};
pub use swiss::{hole_center, swiss_cheese, MAX_ATTEMPTS};
