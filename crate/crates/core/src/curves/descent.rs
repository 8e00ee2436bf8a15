use serde::{Deserialize, Serialize};

use super::{DiscreteCurve, Norm, NormedPoints, DESCENT_TOLERANCE};
use crate::error::{Error, Result};

/// Objectives with a closed-form Euclidean gradient.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Objective {
    /// `f(x) = ½ xᵀ A x` for symmetric positive semidefinite `A`.
    Quadratic { matrix: Vec<Vec<f64>> },
    /// `f(x) = |x|²`.
    SquaredNorm,
    /// `f(x) = sin(x₁)`.
    SineFirst,
    /// `f(x) = max(|x − c| − r, 0)²`, a smoothed distance to a closed ball.
    BallDistanceSquared { center: Vec<f64>, radius: f64 },
}

impl Objective {
    pub fn value(&self, x: &[f64]) -> f64 {
        match self {
            Objective::Quadratic { matrix } => {
                0.5 * matrix.iter().zip(x).map(|(row, xi)| xi * dot(row, x)).sum::<f64>()
            }
            Objective::SquaredNorm => dot(x, x),
            Objective::SineFirst => x[0].sin(),
            Objective::BallDistanceSquared { center, radius } => {
                let gap = (euclid(x, center) - radius).max(0.0);
                gap * gap
            }
        }
    }

    pub fn gradient(&self, x: &[f64]) -> Vec<f64> {
        match self {
            Objective::Quadratic { matrix } => matrix.iter().map(|row| dot(row, x)).collect(),
            Objective::SquaredNorm => x.iter().map(|c| 2.0 * c).collect(),
            Objective::SineFirst => {
                let mut g = vec![0.0; x.len()];
                g[0] = x[0].cos();
                g
            }
            Objective::BallDistanceSquared { center, radius } => {
                let r = euclid(x, center);
                let gap = (r - radius).max(0.0);
                if gap == 0.0 {
                    return vec![0.0; x.len()];
                }
                x.iter().zip(center).map(|(a, c)| 2.0 * gap * (a - c) / r).collect()
            }
        }
    }

    /// Lipschitz constant of the gradient, for the step-size bound.
    pub fn smoothness(&self) -> Result<f64> {
        match self {
            Objective::Quadratic { matrix } => {
                check_symmetric(matrix)?;
                let (largest, smallest) = extreme_eigenvalues(matrix);
                if smallest < -1e-9 * largest.abs().max(1.0) {
                    return Err(Error::Parameter(format!("quadratic form is not positive semidefinite (eigenvalue {smallest})")));
                }
                Ok(largest)
            }
            Objective::SquaredNorm | Objective::BallDistanceSquared { .. } => Ok(2.0),
            Objective::SineFirst => Ok(1.0),
        }
    }

    fn dimension(&self) -> Option<usize> {
        match self {
            Objective::Quadratic { matrix } => Some(matrix.len()),
            Objective::BallDistanceSquared { center, .. } => Some(center.len()),
            _ => None,
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

fn check_symmetric(m: &[Vec<f64>]) -> Result<()> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::Malformed("quadratic form must be square".into()));
    }
    for i in 0..n {
        for j in 0..i {
            if (m[i][j] - m[j][i]).abs() > 1e-9 {
                return Err(Error::Malformed(format!("quadratic form is not symmetric at ({i}, {j})")));
            }
        }
    }
    Ok(())
}

/// Largest-magnitude eigenvalue of a symmetric matrix by power iteration.
pub fn largest_eigenvalue(m: &[Vec<f64>]) -> f64 {
    power_iteration(m, 0.0)
}

fn power_iteration(m: &[Vec<f64>], shift: f64) -> f64 {
    let n = m.len();
    if n == 0 {
        return 0.0;
    }
    // Fixed, non-axis-aligned start so no eigenvector is missed by symmetry.
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * i as f64).collect();
    let mut estimate = 0.0;
    for _ in 0..10_000 {
        let norm = dot(&v, &v).sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        v.iter_mut().for_each(|c| *c /= norm);
        let w: Vec<f64> = m.iter().enumerate().map(|(i, row)| dot(row, &v) - shift * v[i]).collect();
        let next = dot(&v, &w);
        let converged = (next - estimate).abs() <= 1e-15 * next.abs().max(1.0);
        estimate = next;
        v = w;
        if converged {
            break;
        }
    }
    estimate + shift
}

/// `(largest, smallest)` eigenvalues: power iteration on `A`, then on the
/// shifted matrix `A − λ I` to reach the other end of the spectrum.
fn extreme_eigenvalues(m: &[Vec<f64>]) -> (f64, f64) {
    let top = largest_eigenvalue(m);
    let other = power_iteration(m, top);
    (top.max(other), top.min(other))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DescentSpec {
    pub objective: Objective,
    /// Norm used to measure the trajectory; the step always follows the
    /// Euclidean gradient.
    pub norm: Norm,
    pub step: f64,
    pub iterations: usize,
    pub start: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DescentTrajectory {
    /// `iterations + 1` points, starting at `start`.
    pub curve: DiscreteCurve<NormedPoints>,
    /// `1 / L` for the gradient's Lipschitz constant `L`.
    pub stability_bound: f64,
}

/// Explicit Euclidean gradient steps `x_{k+1} = x_k − h ∇f(x_k)`.
pub fn gradient_descent_trajectory(spec: &DescentSpec) -> Result<DescentTrajectory> {
    if !(spec.step > 0.0 && spec.step.is_finite()) {
        return Err(Error::Parameter(format!("step size {} must be positive", spec.step)));
    }
    if spec.start.is_empty() {
        return Err(Error::Parameter("start point is empty".into()));
    }
    if let Some(dim) = spec.objective.dimension() {
        if dim != spec.start.len() {
            return Err(Error::Malformed(format!("objective has dimension {dim}, start has {}", spec.start.len())));
        }
    }
    let smoothness = spec.objective.smoothness()?;
    let stability_bound = if smoothness > 0.0 { 1.0 / smoothness } else { f64::INFINITY };
    if spec.step > stability_bound * (1.0 + 1e-12) {
        return Err(Error::UnstableStep { step: spec.step, bound: stability_bound });
    }
    let mut points = Vec::with_capacity(spec.iterations + 1);
    let mut x = spec.start.clone();
    points.push(x.clone());
    for _ in 0..spec.iterations {
        let g = spec.objective.gradient(&x);
        x.iter_mut().zip(&g).for_each(|(xi, gi)| *xi -= spec.step * gi);
        points.push(x.clone());
    }
    let curve = DiscreteCurve::from_coords(points, spec.norm)?.with_tolerance(DESCENT_TOLERANCE);
    Ok(DescentTrajectory { curve, stability_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::is_self_contracted;
    use crate::sra::Verdict;

    #[test]
    fn eigenvalues_of_diagonal_and_rotated() {
        assert!((largest_eigenvalue(&[vec![3.0, 0.0], vec![0.0, 1.0]]) - 3.0).abs() < 1e-10);
        let (hi, lo) = extreme_eigenvalues(&[vec![2.0, 1.0], vec![1.0, 2.0]]);
        assert!((hi - 3.0).abs() < 1e-10 && (lo - 1.0).abs() < 1e-10);
    }

    #[test]
    fn isotropic_descent_is_a_contracting_ray() {
        let spec = DescentSpec {
            objective: Objective::Quadratic { matrix: vec![vec![1.0, 0.0], vec![0.0, 1.0]] },
            norm: Norm::L2,
            step: 0.1,
            iterations: 50,
            start: vec![1.0, 1.0],
        };
        let t = gradient_descent_trajectory(&spec).unwrap();
        assert_eq!(t.curve.len(), 51);
        let last = &t.curve.metric().coords()[50];
        assert!((last[0] - 0.9f64.powi(50)).abs() < 1e-15);
        assert_eq!(last[0], last[1]);
        assert_eq!(is_self_contracted(&t.curve).unwrap().verdict, Verdict::Pass);
    }

    #[test]
    fn oversized_step_is_refused_with_bound() {
        let spec = DescentSpec {
            objective: Objective::Quadratic { matrix: vec![vec![4.0, 0.0], vec![0.0, 1.0]] },
            norm: Norm::L2,
            step: 0.3,
            iterations: 5,
            start: vec![1.0, 1.0],
        };
        match gradient_descent_trajectory(&spec) {
            Err(Error::UnstableStep { bound, .. }) => assert!((bound - 0.25).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn indefinite_or_asymmetric_forms_are_rejected() {
        let mut spec = DescentSpec {
            objective: Objective::Quadratic { matrix: vec![vec![1.0, 0.0], vec![0.0, -2.0]] },
            norm: Norm::L2,
            step: 0.1,
            iterations: 5,
            start: vec![1.0, 1.0],
        };
        assert!(gradient_descent_trajectory(&spec).is_err());
        spec.objective = Objective::Quadratic { matrix: vec![vec![1.0, 0.5], vec![0.0, 1.0]] };
        assert!(gradient_descent_trajectory(&spec).is_err());
    }

    #[test]
    fn gradients_match_finite_differences() {
        let objectives = [
            Objective::Quadratic { matrix: vec![vec![2.0, 0.5], vec![0.5, 1.0]] },
            Objective::SquaredNorm,
            Objective::SineFirst,
            Objective::BallDistanceSquared { center: vec![0.1, -0.2], radius: 0.3 },
        ];
        let x = [0.7, -0.4];
        let h = 1e-6;
        for f in &objectives {
            let g = f.gradient(&x);
            for k in 0..2 {
                let (mut up, mut down) = (x, x);
                up[k] += h;
                down[k] -= h;
                let fd = (f.value(&up) - f.value(&down)) / (2.0 * h);
                assert!((fd - g[k]).abs() < 1e-6, "{f:?} component {k}: {fd} vs {}", g[k]);
            }
        }
    }
}
