//! Finite metric spaces and the primitives every checker is built on:
//! validation, comparison angles, the snowflake transform, separated
//! subsets and greedy doubling covers.

mod angle;
mod doubling;
pub mod io;
pub mod random;
mod separated;
mod space;

pub use angle::{angle_from_sides, comparison_angle, AngleValue};
pub use doubling::{doubling_estimate, BallCover, DoublingEstimate};
pub use separated::{max_separated_subset, SeparatedSubset, EXACT_SEPARATED_CAP};
pub use space::{
    snowflake_transform, validate_rows, FiniteMetricSpace, ValidationReport, Violation,
};

/// Default absolute tolerance for metric-axiom and angle comparisons.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Anything that can report pairwise distances between `len()` indexed points.
///
/// [`FiniteMetricSpace`] stores a dense matrix; generated spaces that are too
/// large to materialize (long Heisenberg-axis samples, normed point clouds)
/// evaluate distances on demand.
pub trait Metric {
    fn len(&self) -> usize;

    fn dist(&self, i: usize, j: usize) -> f64;

    fn tolerance(&self) -> f64 {
        DEFAULT_TOLERANCE
    }

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl<M: Metric + ?Sized> Metric for &M {
    fn len(&self) -> usize {
        (**self).len()
    }

    fn dist(&self, i: usize, j: usize) -> f64 {
        (**self).dist(i, j)
    }

    fn tolerance(&self) -> f64 {
        (**self).tolerance()
    }
}
