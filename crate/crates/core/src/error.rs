use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("degenerate vertex {vertex}: both legs of a comparison angle must have positive length")]
    DegenerateVertex { vertex: usize },

    #[error("degenerate triple ({x}, {z}, {y}): the three points must be distinct")]
    DegenerateTriple { x: usize, z: usize, y: usize },

    #[error("point index {index} out of range for a space of {len} points")]
    OutOfRange { index: usize, len: usize },

    #[error("exact search over {n} points exceeds the cap of {cap}; use greedy mode instead")]
    OverCap { n: usize, cap: usize },

    #[error("no geodesic stored from {from} to {to}")]
    MissingGeodesic { from: usize, to: usize },

    #[error("no geodesic pairs lie inside the horizon {horizon}")]
    NoGeodesicPairs { horizon: f64 },

    #[error("step size {step} exceeds the stability bound {bound}")]
    UnstableStep { step: f64, bound: f64 },

    #[error("search budget exceeded: {0}")]
    Budget(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_index(index: usize, len: usize) -> Result<()> {
    if index < len {
        Ok(())
    } else {
        Err(Error::OutOfRange { index, len })
    }
}
