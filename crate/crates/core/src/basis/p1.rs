use crate::geom::{barycentric, facet_normal, scale, signed_measure, Point};
use crate::Real;

/// Barycentric gradients of one simplex.
#[derive(Debug, Clone, Copy)]
pub struct P1Element<T> {
    pub dim: usize,
    pub points: [Point<T>; 4],
    pub measure: T,
    /// Gradient of the barycentric coordinate of each vertex (constant).
    pub grads: [Point<T>; 4],
}

impl<T: Real> P1Element<T> {
    pub fn new(dim: usize, pts: &[Point<T>]) -> Self {
        let mut points = [[T::zero(); 3]; 4];
        points[..=dim].copy_from_slice(&pts[..=dim]);
        let measure = signed_measure(dim, &points[..=dim]);
        let mut grads = [[T::zero(); 3]; 4];
        let denom = T::from_usize_lossy(dim) * measure;
        for i in 0..=dim {
            let facet: Vec<Point<T>> = (0..=dim).filter(|&j| j != i).map(|j| points[j]).collect();
            // Outward facet normal scaled by the facet measure.
            let n = facet_normal(dim, &facet, &points[i]);
            grads[i] = scale(&n, -T::one() / denom);
        }
        P1Element { dim, points, measure, grads }
    }

    pub fn barycentric(&self, x: &Point<T>) -> [T; 4] {
        barycentric(self.dim, &self.points[..=self.dim], x)
    }

    /// Physical point at barycentric coordinates `lam`.
    pub fn point_at(&self, lam: &[T; 4]) -> Point<T> {
        let mut x = [T::zero(); 3];
        for i in 0..=self.dim {
            for c in 0..3 {
                x[c] += lam[i] * self.points[i][c];
            }
        }
        x
    }
}

/// Values and gradients of the linear nodal functions at `x`.
pub fn eval_p1<T: Real>(element: &P1Element<T>, x: &Point<T>) -> ([T; 4], [Point<T>; 4]) {
    (element.barycentric(x), element.grads)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn unit_triangle_gradients() {
        let el = P1Element::<f64>::new(2, &[[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]);
        let expect = [[-1.0, -1.0], [1.0, 0.0], [0.0, 1.0]];
        for i in 0..3 {
            for c in 0..2 {
                assert!((el.grads[i][c] - expect[i][c]).abs() < 1e-15);
            }
        }
        let (v, _) = eval_p1(&el, &[1.0, 0.0, 0.0]);
        assert_eq!(&v[..3], &[0.0, 1.0, 0.0]);
        let (v, _) = eval_p1(&el, &[1.0 / 3.0, 1.0 / 3.0, 0.0]);
        assert!(v[..3].iter().all(|x| (x - 1.0 / 3.0).abs() < 1e-15));
    }

    proptest! {
        #[test]
        fn partition_of_unity(
            c in prop::collection::vec(-2.0f64..2.0, 12),
            l in prop::collection::vec(0.0f64..1.0, 4),
            dim in 2usize..4,
        ) {
            let pts: Vec<Point<f64>> = (0..4)
                .map(|i| [c[3 * i], c[3 * i + 1], if dim == 3 { c[3 * i + 2] } else { 0.0 }])
                .collect();
            let m = signed_measure(dim, &pts[..=dim]);
            prop_assume!(m.abs() > 1e-2);
            let el = P1Element::new(dim, &pts);
            let s: f64 = l[..=dim].iter().sum();
            let mut lam = [0.0; 4];
            for i in 0..=dim { lam[i] = l[i] / s; }
            let (v, g) = eval_p1(&el, &el.point_at(&lam));
            prop_assert!((v.iter().sum::<f64>() - 1.0).abs() < 1e-10);
            for c in 0..3 {
                prop_assert!(g[..=dim].iter().map(|gi| gi[c]).sum::<f64>().abs() < 1e-10);
            }
            for i in 0..=dim { prop_assert!((v[i] - lam[i]).abs() < 1e-9); }
        }
    }
}
