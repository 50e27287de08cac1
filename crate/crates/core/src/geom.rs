//! Small fixed-size vector helpers. Points are always stored as `[T; 3]`;
//! 2D data keeps `z = 0`.

use crate::Real;

pub type Point<T> = [T; 3];

#[inline]
pub fn sub<T: Real>(a: &Point<T>, b: &Point<T>) -> Point<T> {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
pub fn add<T: Real>(a: &Point<T>, b: &Point<T>) -> Point<T> {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

#[inline]
pub fn scale<T: Real>(a: &Point<T>, s: T) -> Point<T> {
    [a[0] * s, a[1] * s, a[2] * s]
}

#[inline]
pub fn dot<T: Real>(a: &Point<T>, b: &Point<T>) -> T {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn cross<T: Real>(a: &Point<T>, b: &Point<T>) -> Point<T> {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[inline]
pub fn norm<T: Real>(a: &Point<T>) -> T {
    dot(a, a).sqrt()
}

pub fn distance<T: Real>(a: &Point<T>, b: &Point<T>) -> T {
    norm(&sub(a, b))
}

/// Arithmetic mean of a set of points.
pub fn centroid<T: Real>(pts: &[Point<T>]) -> Point<T> {
    let mut c = [T::zero(); 3];
    for p in pts {
        c = add(&c, p);
    }
    scale(&c, T::one() / T::from_usize_lossy(pts.len()))
}

/// Signed measure of a `dim`-simplex given by `dim + 1` points.
pub fn signed_measure<T: Real>(dim: usize, pts: &[Point<T>]) -> T {
    match dim {
        2 => {
            let a = sub(&pts[1], &pts[0]);
            let b = sub(&pts[2], &pts[0]);
            (a[0] * b[1] - a[1] * b[0]) * T::lit(0.5)
        }
        3 => {
            let a = sub(&pts[1], &pts[0]);
            let b = sub(&pts[2], &pts[0]);
            let c = sub(&pts[3], &pts[0]);
            dot(&a, &cross(&b, &c)) / T::lit(6.0)
        }
        _ => panic!("unsupported dimension {dim}"),
    }
}

/// Area-weighted normal of a facet (segment in 2D, triangle in 3D), oriented
/// away from `opposite`. Its length equals the facet measure.
pub fn facet_normal<T: Real>(dim: usize, facet: &[Point<T>], opposite: &Point<T>) -> Point<T> {
    let n = match dim {
        2 => {
            let t = sub(&facet[1], &facet[0]);
            [t[1], -t[0], T::zero()]
        }
        3 => scale(
            &cross(&sub(&facet[1], &facet[0]), &sub(&facet[2], &facet[0])),
            T::lit(0.5),
        ),
        _ => panic!("unsupported dimension {dim}"),
    };
    if dot(&n, &sub(&facet[0], opposite)) < T::zero() {
        scale(&n, -T::one())
    } else {
        n
    }
}

/// Barycentric coordinates of `x` with respect to a `dim`-simplex.
pub fn barycentric<T: Real>(dim: usize, pts: &[Point<T>], x: &Point<T>) -> [T; 4] {
    let total = signed_measure(dim, pts);
    let mut lam = [T::zero(); 4];
    let mut tmp: Vec<Point<T>> = pts[..=dim].to_vec();
    for i in 0..=dim {
        tmp[i] = *x;
        lam[i] = signed_measure(dim, &tmp) / total;
        tmp[i] = pts[i];
    }
    lam
}

/// Largest pairwise distance within a point set.
pub fn diameter<T: Real>(pts: &[Point<T>]) -> T {
    let mut d = T::zero();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            d = d.max(distance(&pts[i], &pts[j]));
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_simplices() {
        let tri = [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]];
        assert_eq!(signed_measure(2, &tri), 0.5);
        let tet = [
            [0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
        ];
        assert!((signed_measure::<f64>(3, &tet) - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn normal_points_away() {
        let n = facet_normal::<f64>(2, &[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]], &[0.0, 0.0, 0.0]);
        assert!(n[0] > 0.0 && n[1] > 0.0);
        assert!((norm(&n) - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn barycentric_roundtrip() {
        let tri = [[0.0, 0.0, 0.0], [2.0, 0.0, 0.0], [0.0, 3.0, 0.0]];
        let l = barycentric::<f64>(2, &tri, &[0.5, 1.0, 0.0]);
        assert!((l[0] + l[1] + l[2] - 1.0).abs() < 1e-15);
        assert!((l[1] - 0.25).abs() < 1e-15 && (l[2] - 1.0 / 3.0).abs() < 1e-15);
    }
}
