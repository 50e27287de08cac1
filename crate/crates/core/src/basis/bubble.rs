use serde::{Deserialize, Serialize};

use crate::geom::Point;
use crate::Real;

/// Element bubble family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BubbleKind {
    /// `c_b (d+1)^3 ∏ λ_i`, a cubic (2D) or quartic (3D) polynomial.
    Power,
    /// Piecewise linear on the sub-simplices `conv(facet, centroid)`.
    Hat,
}

impl std::str::FromStr for BubbleKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "power" => Ok(BubbleKind::Power),
            "hat" => Ok(BubbleKind::Hat),
            _ => Err(crate::Error::InvalidInput(format!("unknown bubble kind `{s}`"))),
        }
    }
}

impl std::fmt::Display for BubbleKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BubbleKind::Power => "power",
            BubbleKind::Hat => "hat",
        })
    }
}

/// Constant making the bubble equal to one at the centroid.
pub fn bubble_normalization(kind: BubbleKind, dim: usize) -> f64 {
    let k = (dim + 1) as f64;
    match kind {
        BubbleKind::Power => 1.0 / (k.powi(3) * k.powi(-(dim as i32 + 1))),
        BubbleKind::Hat => 1.0 / k,
    }
}

/// Bubble value and gradient at barycentric coordinates `lam`.
///
/// `sub` selects the hat sub-simplex by the local vertex opposite its facet
/// (ignored for the power bubble). Passing `None` picks the sub-simplex
/// containing the point, i.e. the smallest coordinate.
pub fn eval_bubble<T: Real>(
    kind: BubbleKind,
    dim: usize,
    lam: &[T; 4],
    grads: &[Point<T>; 4],
    sub: Option<usize>,
) -> (T, Point<T>) {
    let k = T::from_usize_lossy(dim + 1);
    let cb = T::lit(bubble_normalization(kind, dim));
    match kind {
        BubbleKind::Power => {
            let scale = cb * k * k * k;
            let mut value = scale;
            let mut grad = [T::zero(); 3];
            for i in 0..=dim {
                value *= lam[i];
                let mut others = scale;
                for j in (0..=dim).filter(|&j| j != i) {
                    others *= lam[j];
                }
                for c in 0..3 {
                    grad[c] += others * grads[i][c];
                }
            }
            (value, grad)
        }
        BubbleKind::Hat => {
            let j = sub.unwrap_or_else(|| {
                (0..=dim).fold(0, |best, i| if lam[i] < lam[best] { i } else { best })
            });
            // (d+1) λ_j is the sub-simplex coordinate that is one at the centroid.
            let s = cb * k * k;
            (s * lam[j], [s * grads[j][0], s * grads[j][1], s * grads[j][2]])
        }
    }
}
