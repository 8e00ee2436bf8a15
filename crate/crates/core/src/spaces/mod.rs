//! Generators for the explicit example spaces.

mod broom;
mod cayley;
mod heisenberg;
mod laakso;
mod sample;

pub use broom::{broom_tree, BroomSequence, BroomTree};
pub use cayley::{cayley_ball, stable_norm_estimate, StableNormEstimate, SubadditivityWitness, WordMetricBall, BFS_BUDGET};
pub use heisenberg::{heisenberg_axis, HeisenbergAxis};
pub use laakso::{laakso_closed_form, laakso_graph, laakso_sra_points, LaaksoGraph, LaaksoPoints, LAAKSO_DEFAULT_CAP, LAAKSO_MAX_LEVEL};
pub use sample::{normed_sample, normed_sample_coords};
