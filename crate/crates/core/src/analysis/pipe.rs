use crate::geom::Point;
use crate::Real;

/// Thick-walled pipe under inner pressure, plane strain.
///
/// Radial displacement `u_r = C [(1 - 2ν) r + b² / r]` with
/// `C = (1 + ν) a² p / (E (b² - a²))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactPipeSolution {
    pub a: f64,
    pub b: f64,
    pub p: f64,
    pub young: f64,
    pub poisson: f64,
}

impl ExactPipeSolution {
    pub fn new(a: f64, b: f64, p: f64, young: f64, poisson: f64) -> Self {
        ExactPipeSolution { a, b, p, young, poisson }
    }

    fn c(&self) -> f64 {
        (1.0 + self.poisson) * self.a * self.a * self.p / (self.young * (self.b * self.b - self.a * self.a))
    }

    fn lambda(&self) -> f64 {
        let nu = self.poisson;
        nu * self.young / ((1.0 + nu) * (1.0 - 2.0 * nu))
    }

    /// `(u_r, σ_r, σ_φ)` at radius `r`.
    pub fn at(&self, r: f64) -> (f64, f64, f64) {
        let k = self.a * self.a * self.p / (self.b * self.b - self.a * self.a);
        let q = self.b * self.b / (r * r);
        (self.c() * ((1.0 - 2.0 * self.poisson) * r + self.b * self.b / r), k * (1.0 - q), k * (1.0 + q))
    }

    /// `λ ∇·u`, constant over the wall.
    pub fn pressure(&self) -> f64 {
        self.lambda() * 2.0 * self.c() * (1.0 - 2.0 * self.poisson)
    }

    pub fn displacement<T: Real>(&self, x: &Point<T>) -> Point<T> {
        let (px, py) = (x[0].as_f64(), x[1].as_f64());
        let r = px.hypot(py);
        let (ur, _, _) = self.at(r);
        [T::lit(ur * px / r), T::lit(ur * py / r), T::zero()]
    }

    /// Cartesian stress in Voigt order `(σxx, σyy, σxy)`.
    pub fn stress<T: Real>(&self, x: &Point<T>) -> [T; 3] {
        let (px, py) = (x[0].as_f64(), x[1].as_f64());
        let r = px.hypot(py);
        let (_, sr, sp) = self.at(r);
        let (c, s) = (px / r, py / r);
        [T::lit(sr * c * c + sp * s * s), T::lit(sr * s * s + sp * c * c), T::lit((sr - sp) * c * s)]
    }

    /// Engineering strain `(εxx, εyy, γxy)`.
    pub fn strain<T: Real>(&self, x: &Point<T>) -> [T; 3] {
        let (px, py) = (x[0].as_f64(), x[1].as_f64());
        let r = px.hypot(py);
        let cc = self.c();
        let er = cc * ((1.0 - 2.0 * self.poisson) - self.b * self.b / (r * r));
        let ep = cc * ((1.0 - 2.0 * self.poisson) + self.b * self.b / (r * r));
        let (c, s) = (px / r, py / r);
        [T::lit(er * c * c + ep * s * s), T::lit(er * s * s + ep * c * c), T::lit(2.0 * (er - ep) * c * s)]
    }

    pub fn divergence<T: Real>(&self, _x: &Point<T>) -> T {
        T::lit(2.0 * self.c() * (1.0 - 2.0 * self.poisson))
    }
}
