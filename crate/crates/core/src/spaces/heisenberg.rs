use crate::error::{Error, Result};
use crate::metric::{FiniteMetricSpace, Metric, DEFAULT_TOLERANCE};

/// Equally spaced points `t_i = a + i (b − a)/n`, `i = 0..=n`, on the
/// vertical axis of the Heisenberg group, where `d(s, t) = 2√(π|s − t|)`.
///
/// Distances are computed on demand, so large `n` costs no memory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeisenbergAxis {
    steps: usize,
    span: (f64, f64),
}

pub fn heisenberg_axis(steps: usize, span: (f64, f64)) -> Result<HeisenbergAxis> {
    if steps < 1 {
        return Err(Error::Parameter("need at least one step".into()));
    }
    if !(span.0 < span.1 && span.0.is_finite() && span.1.is_finite()) {
        return Err(Error::Parameter(format!("empty span [{}, {}]", span.0, span.1)));
    }
    Ok(HeisenbergAxis { steps, span })
}

impl HeisenbergAxis {
    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn height(&self, i: usize) -> f64 {
        self.span.0 + (self.span.1 - self.span.0) * i as f64 / self.steps as f64
    }

    pub fn to_space(&self) -> Result<FiniteMetricSpace> {
        let labels = (0..self.len()).map(|i| format!("z{i}")).collect();
        FiniteMetricSpace::from_fn(labels, DEFAULT_TOLERANCE, |i, j| self.dist(i, j))
    }
}

impl Metric for HeisenbergAxis {
    fn len(&self) -> usize {
        self.steps + 1
    }

    fn dist(&self, i: usize, j: usize) -> f64 {
        let gap = i.abs_diff(j) as f64 * (self.span.1 - self.span.0) / self.steps as f64;
        2.0 * (std::f64::consts::PI * gap).sqrt()
    }
}
