use serde::{Deserialize, Serialize};

use super::{Metric, DEFAULT_TOLERANCE};
use crate::error::{check_index, Error, Result};

/// A labeled point set with a dense, exactly symmetric distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    dist: Vec<f64>,
    tolerance: f64,
}

impl FiniteMetricSpace {
    /// Builds a space from matrix rows.
    ///
    /// Rows must form a square matrix of finite nonnegative entries matching
    /// the label count. Entries that are symmetric within `tolerance` are
    /// snapped to the upper-triangle value; larger asymmetries are rejected.
    /// The remaining axioms are *not* enforced here so that broken inputs can
    /// still be inspected with [`FiniteMetricSpace::validate`].
    pub fn new(labels: Vec<String>, rows: Vec<Vec<f64>>, tolerance: f64) -> Result<Self> {
        check_shape(&rows)?;
        if labels.len() != rows.len() {
            return Err(Error::Malformed(format!(
                "{} labels for a {}x{} matrix",
                labels.len(),
                rows.len(),
                rows.len()
            )));
        }
        if !(tolerance.is_finite() && tolerance >= 0.0) {
            return Err(Error::Parameter(format!("tolerance {tolerance} must be finite and >= 0")));
        }
        let n = rows.len();
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let (a, b) = (rows[i][j], rows[j][i]);
                if (a - b).abs() > tolerance {
                    return Err(Error::Malformed(format!(
                        "asymmetric entries dist[{i}][{j}] = {a} and dist[{j}][{i}] = {b}"
                    )));
                }
                dist[i * n + j] = a;
                dist[j * n + i] = a;
            }
        }
        Ok(Self { labels, dist, tolerance })
    }

    /// Builds a space with labels `0..n` and the default tolerance.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let labels = (0..rows.len()).map(|i| i.to_string()).collect();
        Self::new(labels, rows, DEFAULT_TOLERANCE)
    }

    /// Builds a space from a distance function evaluated on the upper triangle.
    pub fn from_fn(labels: Vec<String>, tolerance: f64, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let n = labels.len();
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = f(i, j);
                if !d.is_finite() || d < 0.0 {
                    return Err(Error::Malformed(format!("distance {d} between {i} and {j}")));
                }
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        Ok(Self { labels, dist, tolerance })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Index of the first point carrying `label`.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.dist.chunks(self.len().max(1)).take(self.len()).map(<[f64]>::to_vec).collect()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let n = self.len();
        &self.dist[i * n..(i + 1) * n]
    }

    /// The induced metric on `points`, in the given order.
    pub fn subspace(&self, points: &[usize]) -> Result<Self> {
        for &p in points {
            check_index(p, self.len())?;
        }
        let labels = points.iter().map(|&p| self.labels[p].clone()).collect();
        Self::from_fn(labels, self.tolerance, |i, j| self.dist(points[i], points[j]))
    }

    /// Checks every metric axiom within the space's tolerance.
    pub fn validate(&self) -> ValidationReport {
        validate_dense(self.len(), |i, j| self.dist(i, j), self.tolerance)
    }

    /// Largest pairwise distance.
    pub fn diameter(&self) -> f64 {
        self.dist.iter().copied().fold(0.0, f64::max)
    }

    /// Smallest distance between distinct points, or `None` below two points.
    pub fn min_positive_distance(&self) -> Option<f64> {
        let n = self.len();
        (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .map(|(i, j)| self.dist(i, j))
            .reduce(f64::min)
    }
}

impl Metric for FiniteMetricSpace {
    fn len(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    fn dist(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.labels.len() + j]
    }

    fn tolerance(&self) -> f64 {
        self.tolerance
    }
}

/// One failed metric axiom.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NonzeroDiagonal { i: usize, value: f64 },
    Asymmetric { i: usize, j: usize, forward: f64, backward: f64 },
    /// Distinct points closer than the tolerance.
    Coincident { i: usize, j: usize, value: f64 },
    /// `dist[i][k] > dist[i][j] + dist[j][k] + tolerance`, reported with `i < k`.
    Triangle { i: usize, j: usize, k: usize, lhs: f64, rhs: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub points: usize,
    pub tolerance: f64,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_shape(rows: &[Vec<f64>]) -> Result<()> {
    let n = rows.len();
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Malformed(format!("row {i} has {} entries, expected {n}", row.len())));
        }
        for (j, &v) in row.iter().enumerate() {
            if v.is_nan() || v.is_infinite() {
                return Err(Error::Malformed(format!("non-finite entry dist[{i}][{j}]")));
            }
            if v < 0.0 {
                return Err(Error::Malformed(format!("negative entry dist[{i}][{j}] = {v}")));
            }
        }
    }
    Ok(())
}

/// Validates raw matrix rows, including symmetry, without building a space.
pub fn validate_rows(rows: &[Vec<f64>], tolerance: f64) -> Result<ValidationReport> {
    check_shape(rows)?;
    Ok(validate_dense(rows.len(), |i, j| rows[i][j], tolerance))
}

fn validate_dense(n: usize, d: impl Fn(usize, usize) -> f64, tol: f64) -> ValidationReport {
    let mut violations = Vec::new();
    for i in 0..n {
        let v = d(i, i);
        if v != 0.0 {
            violations.push(Violation::NonzeroDiagonal { i, value: v });
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let (a, b) = (d(i, j), d(j, i));
            if a != b {
                violations.push(Violation::Asymmetric { i, j, forward: a, backward: b });
            }
            if a <= tol {
                violations.push(Violation::Coincident { i, j, value: a });
            }
        }
    }
    for i in 0..n {
        for k in (i + 1)..n {
            let lhs = d(i, k);
            for j in 0..n {
                if j == i || j == k {
                    continue;
                }
                let rhs = d(i, j) + d(j, k);
                if lhs > rhs + tol {
                    violations.push(Violation::Triangle { i, j, k, lhs, rhs });
                }
            }
        }
    }
    ValidationReport { points: n, tolerance: tol, violations }
}

/// The α-snowflake `d^α` of a valid metric space.
pub fn snowflake_transform(space: &FiniteMetricSpace, alpha: f64) -> Result<FiniteMetricSpace> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Parameter(format!("snowflake exponent {alpha} must lie in (0, 1)")));
    }
    let report = space.validate();
    if !report.passed() {
        return Err(Error::Parameter(format!(
            "snowflake input is not a metric ({} violations)",
            report.violations.len()
        )));
    }
    FiniteMetricSpace::from_fn(space.labels.clone(), space.tolerance, |i, j| space.dist(i, j).powf(alpha))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(rows: Vec<Vec<f64>>) -> FiniteMetricSpace {
        FiniteMetricSpace::from_rows(rows).unwrap()
    }

    #[test]
    fn colinear_points_validate() {
        let s = space(vec![vec![0.0, 1.0, 2.0], vec![1.0, 0.0, 1.0], vec![2.0, 1.0, 0.0]]);
        assert!(s.validate().passed());
    }

    #[test]
    fn triangle_violation_is_reported_with_indices() {
        let s = space(vec![vec![0.0, 1.0, 5.0], vec![1.0, 0.0, 1.0], vec![5.0, 1.0, 0.0]]);
        let r = s.validate();
        assert_eq!(r.violations, vec![Violation::Triangle { i: 0, j: 1, k: 2, lhs: 5.0, rhs: 2.0 }]);
    }

    #[test]
    fn zero_off_diagonal_is_coincident() {
        let s = space(vec![vec![0.0, 0.0], vec![0.0, 0.0]]);
        assert_eq!(s.validate().violations, vec![Violation::Coincident { i: 0, j: 1, value: 0.0 }]);
    }

    #[test]
    fn malformed_inputs_are_errors() {
        assert!(matches!(
            FiniteMetricSpace::from_rows(vec![vec![0.0, 1.0], vec![1.0]]),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            FiniteMetricSpace::from_rows(vec![vec![0.0, f64::NAN], vec![f64::NAN, 0.0]]),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            FiniteMetricSpace::from_rows(vec![vec![0.0, -1.0], vec![-1.0, 0.0]]),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            FiniteMetricSpace::new(vec!["a".into()], vec![vec![0.0, 1.0], vec![1.0, 0.0]], 1e-9),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn raw_rows_report_asymmetry() {
        let r = validate_rows(&[vec![0.0, 1.0], vec![2.0, 0.0]], 1e-9).unwrap();
        assert!(matches!(r.violations[0], Violation::Asymmetric { i: 0, j: 1, .. }));
    }

    #[test]
    fn snowflake_takes_powers() {
        let s = space(vec![vec![0.0, 4.0], vec![4.0, 0.0]]);
        let f = snowflake_transform(&s, 0.5).unwrap();
        assert_eq!(f.dist(0, 1), 2.0);
        assert_eq!(f.dist(0, 0), 0.0);
        assert!(snowflake_transform(&s, 1.0).is_err());
        assert!(snowflake_transform(&s, 0.0).is_err());
    }

    #[test]
    fn subspace_preserves_distances() {
        let s = space(vec![vec![0.0, 1.0, 2.0], vec![1.0, 0.0, 1.0], vec![2.0, 1.0, 0.0]]);
        let sub = s.subspace(&[2, 0]).unwrap();
        assert_eq!(sub.dist(0, 1), 2.0);
        assert_eq!(sub.labels(), &["2".to_string(), "0".to_string()]);
        assert!(s.subspace(&[3]).is_err());
    }
}
