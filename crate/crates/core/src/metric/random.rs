//! Random valid metrics for property tests and experiments.

use rand::Rng;

use super::{FiniteMetricSpace, DEFAULT_TOLERANCE};

/// Replaces every entry by the shortest-path distance through the matrix
/// (Floyd–Warshall), which turns any symmetric nonnegative matrix into a
/// pseudometric.
pub fn shortest_path_closure(rows: &mut [Vec<f64>]) {
    let n = rows.len();
    for k in 0..n {
        for i in 0..n {
            let dik = rows[i][k];
            for j in 0..n {
                let via = dik + rows[k][j];
                if via < rows[i][j] {
                    rows[i][j] = via;
                }
            }
        }
    }
}

/// A random `n`-point metric: symmetric entries drawn from `[min_edge, 1]`
/// and repaired by shortest-path closure. All distances stay `>= min_edge`.
pub fn random_metric<R: Rng + ?Sized>(n: usize, min_edge: f64, rng: &mut R) -> FiniteMetricSpace {
    assert!(min_edge > 0.0 && min_edge <= 1.0);
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = rng.random_range(min_edge..=1.0);
            rows[i][j] = d;
            rows[j][i] = d;
        }
    }
    shortest_path_closure(&mut rows);
    FiniteMetricSpace::from_rows(rows)
        .expect("closure of a symmetric matrix is symmetric")
        .with_tolerance(DEFAULT_TOLERANCE)
}
