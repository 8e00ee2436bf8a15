use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::Metric;
use crate::error::{check_index, Error, Result};

/// A Euclidean comparison angle in radians, always within `[0, π]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AngleValue(f64);

impl AngleValue {
    pub fn radians(self) -> f64 {
        self.0
    }

    /// Builds an angle from a cosine, clamping rounding noise into `[-1, 1]`.
    pub fn from_cosine(cos: f64) -> Self {
        AngleValue(cos.clamp(-1.0, 1.0).acos().clamp(0.0, PI))
    }
}

/// Angle opposite `opposite` in the Euclidean triangle with sides `leg_a`, `leg_b`, `opposite`.
pub fn angle_from_sides(leg_a: f64, leg_b: f64, opposite: f64) -> AngleValue {
    AngleValue::from_cosine((leg_a * leg_a + leg_b * leg_b - opposite * opposite) / (2.0 * leg_a * leg_b))
}

/// Comparison angle at `z` for the triple `(x, z, y)`.
pub fn comparison_angle<M: Metric + ?Sized>(space: &M, x: usize, z: usize, y: usize) -> Result<AngleValue> {
    for p in [x, z, y] {
        check_index(p, space.len())?;
    }
    let (dxz, dyz) = (space.dist(x, z), space.dist(y, z));
    if x == z || y == z || dxz <= 0.0 || dyz <= 0.0 {
        return Err(Error::DegenerateVertex { vertex: z });
    }
    Ok(angle_from_sides(dxz, dyz, space.dist(x, y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::FiniteMetricSpace;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn triangle(xz: f64, zy: f64, xy: f64) -> FiniteMetricSpace {
        FiniteMetricSpace::from_rows(vec![vec![0.0, xz, xy], vec![xz, 0.0, zy], vec![xy, zy, 0.0]]).unwrap()
    }

    #[test]
    fn reference_triangles() {
        assert_relative_eq!(comparison_angle(&triangle(1.0, 1.0, 1.0), 0, 1, 2).unwrap().radians(), PI / 3.0, epsilon = 1e-12);
        assert_relative_eq!(comparison_angle(&triangle(1.0, 1.0, 2.0), 0, 1, 2).unwrap().radians(), PI, epsilon = 1e-12);
        assert_relative_eq!(comparison_angle(&triangle(3.0, 4.0, 5.0), 0, 1, 2).unwrap().radians(), PI / 2.0, epsilon = 1e-12);
    }

    #[test]
    fn repeated_vertex_is_degenerate() {
        let t = triangle(1.0, 1.0, 1.0);
        assert!(matches!(comparison_angle(&t, 1, 1, 2), Err(Error::DegenerateVertex { vertex: 1 })));
        assert!(matches!(comparison_angle(&t, 0, 1, 1), Err(Error::DegenerateVertex { vertex: 1 })));
    }

    proptest! {
        #[test]
        fn angle_is_symmetric_and_bounded(a in 1e-6f64..10.0, b in 1e-6f64..10.0, c in 0.0f64..25.0) {
            // Arbitrary side lengths, including ones that violate the triangle
            // inequality, must still clamp into [0, pi].
            let ab = angle_from_sides(a, b, c).radians();
            let ba = angle_from_sides(b, a, c).radians();
            prop_assert_eq!(ab, ba);
            prop_assert!((0.0..=PI).contains(&ab));
        }
    }
}
