use crate::Real;

/// Quadrature rule on a reference simplex, in barycentric coordinates.
/// Weights sum to one; multiply by the simplex measure when integrating.
#[derive(Debug, Clone)]
pub struct QuadratureRule<T> {
    pub points: Vec<[T; 4]>,
    pub weights: Vec<T>,
    pub degree: usize,
}

impl<T: Real> QuadratureRule<T> {
    fn from_f64(points: Vec<[f64; 4]>, weights: Vec<f64>, degree: usize) -> Self {
        QuadratureRule {
            points: points.into_iter().map(|p| p.map(T::lit)).collect(),
            weights: weights.into_iter().map(T::lit).collect(),
            degree,
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Gauss–Legendre nodes and weights on `[0, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let (p, pm) = if n == 1 { (z, 1.0) } else { (p1, p0) };
            dp = n as f64 * (z * p - pm) / (z * z - 1.0);
            let dz = p / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        if n == 1 {
            dp = 1.0;
        }
        x[i] = 0.5 * (1.0 - z);
        w[i] = 1.0 / ((1.0 - z * z) * dp * dp);
    }
    (x, w)
}

/// Collapsed-coordinate product rule exact for polynomials of `degree` on a
/// `dim`-simplex (`dim` in 1..=3).
pub fn simplex_quadrature<T: Real>(dim: usize, degree: usize) -> QuadratureRule<T> {
    let n = (degree + dim) / 2 + 1;
    let (x, w) = gauss_legendre(n);
    let mut points = Vec::new();
    let mut weights = Vec::new();
    match dim {
        1 => {
            for i in 0..n {
                points.push([1.0 - x[i], x[i], 0.0, 0.0]);
                weights.push(w[i]);
            }
        }
        2 => {
            for i in 0..n {
                for j in 0..n {
                    let (u, v) = (x[i], x[j] * (1.0 - x[i]));
                    points.push([1.0 - u - v, u, v, 0.0]);
                    weights.push(2.0 * w[i] * w[j] * (1.0 - x[i]));
                }
            }
        }
        3 => {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let u = x[i];
                        let v = x[j] * (1.0 - u);
                        let s = x[k] * (1.0 - u) * (1.0 - x[j]);
                        points.push([1.0 - u - v - s, u, v, s]);
                        weights.push(6.0 * w[i] * w[j] * w[k] * (1.0 - u).powi(2) * (1.0 - x[j]));
                    }
                }
            }
        }
        _ => panic!("unsupported simplex dimension {dim}"),
    }
    QuadratureRule::from_f64(points, weights, degree)
}

/// Rule for a smoothing-domain boundary facet: a segment (`facet_dim = 1`)
/// or a triangle (`facet_dim = 2`).
pub fn boundary_quadrature<T: Real>(facet_dim: usize, degree: usize) -> QuadratureRule<T> {
    let degree = degree.max(1);
    match (facet_dim, degree) {
        (1, 1) => QuadratureRule::from_f64(vec![[0.5, 0.5, 0.0, 0.0]], vec![1.0], 1),
        (1, 2..=3) => {
            let g = 0.5 / 3f64.sqrt();
            QuadratureRule::from_f64(
                vec![[0.5 + g, 0.5 - g, 0.0, 0.0], [0.5 - g, 0.5 + g, 0.0, 0.0]],
                vec![0.5, 0.5],
                3,
            )
        }
        (2, 1) => QuadratureRule::from_f64(vec![[1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0]], vec![1.0], 1),
        (2, 2..=4) => {
            let (a, wa) = (0.445_948_490_915_964_9, 0.223_381_589_678_011_47);
            let (b, wb) = (0.091_576_213_509_770_74, 0.109_951_743_655_321_87);
            let mut pts = Vec::new();
            let mut ws = Vec::new();
            for (p, w) in [(a, wa), (b, wb)] {
                let q = 1.0 - 2.0 * p;
                pts.extend([[q, p, p, 0.0], [p, q, p, 0.0], [p, p, q, 0.0]]);
                ws.extend([w; 3]);
            }
            QuadratureRule::from_f64(pts, ws, 4)
        }
        _ => simplex_quadrature(facet_dim, degree),
    }
}
