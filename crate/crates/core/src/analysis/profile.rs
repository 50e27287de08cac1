use serde::{Deserialize, Serialize};

use super::field::DiscreteField;
use crate::geom::Point;
use crate::Real;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PressureProfile {
    /// `(arc length, p_h)` at each sample that fell inside the mesh.
    pub samples: Vec<(f64, f64)>,
    /// `Σ |p_{i+1} − p_i|` over consecutive samples.
    pub total_variation: f64,
}

/// Samples `p_h` at `n` midpoints of equal subdivisions of the segment `a`–`b`.
pub fn pressure_profile<T: Real>(field: &DiscreteField<'_, T>, a: Point<T>, b: Point<T>, n: usize) -> PressureProfile {
    let len = crate::geom::distance(&a, &b).as_f64();
    let mut samples = Vec::with_capacity(n);
    for i in 0..n {
        let t = T::lit((i as f64 + 0.5) / n as f64);
        let x = [0, 1, 2].map(|r| a[r] + t * (b[r] - a[r]));
        if let Some(c) = field.locate(&x) {
            samples.push((t.as_f64() * len, field.pressure(c, &x).as_f64()));
        }
    }
    let total_variation = samples.windows(2).map(|w| (w[1].1 - w[0].1).abs()).sum();
    PressureProfile { samples, total_variation }
}
