//! JSON and CSV encodings of finite metric spaces.
//!
//! JSON: `{"labels": [...], "dist": [[...]], "tolerance": 1e-9, "metadata": {...}}`
//! where `metadata` is optional and carries generator parameters and named
//! point lists (for example `{"points": {"tips": [..]}}`).
//!
//! CSV: a header row of labels followed by the square matrix; every entry is
//! written with 17 significant digits so values round-trip bit-exactly.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{FiniteMetricSpace, Metric, DEFAULT_TOLERANCE};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceDocument {
    pub labels: Vec<String>,
    pub dist: Vec<Vec<f64>>,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Value>,
}

fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}

impl SpaceDocument {
    pub fn from_space(space: &FiniteMetricSpace, metadata: Option<Value>) -> Self {
        Self { labels: space.labels().to_vec(), dist: space.rows(), tolerance: space.tolerance(), metadata }
    }

    pub fn to_space(&self) -> Result<FiniteMetricSpace> {
        FiniteMetricSpace::new(self.labels.clone(), self.dist.clone(), self.tolerance)
    }

    /// A named point list from `metadata.points`, resolved to indices.
    pub fn named_points(&self, name: &str) -> Option<Vec<usize>> {
        let list = self.metadata.as_ref()?.get("points")?.get(name)?.as_array()?;
        list.iter().map(|v| v.as_u64().map(|u| u as usize)).collect()
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// Parses the CSV layout (header of labels, then the matrix).
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader);
        let labels: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
        let mut dist = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let row = rec
                .iter()
                .map(|f| f.parse::<f64>().map_err(|e| Error::Malformed(format!("row {i}: {f:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            dist.push(row);
        }
        Ok(Self { labels, dist, tolerance: DEFAULT_TOLERANCE, metadata: None })
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(&self.labels)?;
        for row in &self.dist {
            w.write_record(row.iter().map(|v| format!("{v:.16e}")))?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads JSON, or CSV when the path ends in `.csv`.
    pub fn read(path: &Path) -> Result<Self> {
        let bytes = std::fs::read(path)?;
        if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
            Self::from_csv(bytes.as_slice())
        } else {
            Ok(serde_json::from_slice(&bytes)?)
        }
    }
}
