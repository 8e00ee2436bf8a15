//! Finite metric spaces and the rough-angle, angular-boundedness and
//! self-contracted-curve conditions on them, with generators for the
//! standard example spaces.

pub mod atb;
pub mod cli;
pub mod curves;
pub mod error;
pub mod graph;
pub mod metric;
pub mod report;
pub mod search;
pub mod spaces;
pub mod sra;

pub use error::{Error, Result};
