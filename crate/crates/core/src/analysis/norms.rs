use serde::{Deserialize, Serialize};

use super::field::DiscreteField;
use super::pipe::ExactPipeSolution;
use crate::basis::simplex_quadrature;
use crate::geom::Point;
use crate::Real;
use crate::scalar::sum;

/// Reference solution evaluated pointwise.
pub trait ExactField<T> {
    fn displacement(&self, x: &Point<T>) -> Point<T>;
    /// Engineering Voigt strain.
    fn strain(&self, x: &Point<T>) -> [T; 6];
    fn pressure(&self, x: &Point<T>) -> T;
}

impl<T: Real> ExactField<T> for ExactPipeSolution {
    fn displacement(&self, x: &Point<T>) -> Point<T> {
        ExactPipeSolution::displacement(self, x)
    }

    fn strain(&self, x: &Point<T>) -> [T; 6] {
        let e = ExactPipeSolution::strain(self, x);
        [e[0], e[1], e[2], T::zero(), T::zero(), T::zero()]
    }

    fn pressure(&self, _x: &Point<T>) -> T {
        T::lit(ExactPipeSolution::pressure(self))
    }
}

/// Energy error; `raw` is the signed sum before the square root, which can
/// dip below zero for the mixed variants through the pressure cross term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyError {
    pub norm: f64,
    pub raw: f64,
}

const DEGREE: usize = 4;

/// Sums `f(cell, x)` times the quadrature weight over every micro-cell.
fn integrate<T: Real>(field: &DiscreteField<'_, T>, f: impl Fn(usize, &Point<T>) -> T) -> T {
    let dim = field.products.dim();
    let rule = simplex_quadrature::<T>(dim, DEGREE);
    let mut total = T::zero();
    for (c, cell) in field.products.micro.cells().iter().enumerate() {
        let pts = cell.points(dim);
        let mut acc = T::zero();
        for (q, &w) in rule.points.iter().zip(&rule.weights) {
            let mut x = [T::zero(); 3];
            for (i, p) in pts.iter().enumerate() {
                for r in 0..3 {
                    x[r] += q[i] * p[r];
                }
            }
            acc += w * f(c, &x);
        }
        total += acc * cell.measure;
    }
    total
}

/// `‖u − u_h‖_{L²}` including the bubble part of `u_h`.
pub fn error_displacement<T: Real>(field: &DiscreteField<'_, T>, exact: &dyn ExactField<T>) -> f64 {
    let dim = field.products.dim();
    integrate(field, |c, x| {
        let (u, uh) = (exact.displacement(x), field.displacement(c, x));
        sum((0..dim).map(|i| (u[i] - uh[i]) * (u[i] - uh[i])))
    })
    .as_f64()
    .sqrt()
}

/// `‖p − p_h‖_{L²}` with `p_h` piecewise constant on pressure cells
/// (or continuous linear for MINI).
pub fn error_pressure<T: Real>(field: &DiscreteField<'_, T>, exact: &dyn ExactField<T>) -> f64 {
    integrate(field, |c, x| {
        let d = exact.pressure(x) - field.pressure(c, x);
        d * d
    })
    .as_f64()
    .sqrt()
}

/// `Σ ∫ (ε − ε_h)ᵀ D_dev (ε − ε_h) + (p − p_h)(∇·u − ∇·u_h)`.
///
/// With `p_h = λ ∇·u_h` this is the stress-compliance energy of the
/// displacement-only methods; for the mixed methods the second term carries
/// the independent pressure.
pub fn error_energy<T: Real>(field: &DiscreteField<'_, T>, exact: &dyn ExactField<T>) -> EnergyError {
    let dim = field.products.dim();
    let nv = field.voigt_size();
    let mu = field.assembled.bundle.material.mu;
    let raw = integrate(field, |c, x| {
        let e = exact.strain(x);
        let eh = field.strain(c, x);
        let mut s = T::zero();
        for i in 0..nv {
            let d = e[i] - eh[i];
            s += if i < dim { T::lit(2.0) * mu * d * d } else { mu * d * d };
        }
        let div: T = sum(e[..dim].iter().copied());
        let divh: T = sum(eh[..dim].iter().copied());
        s + (exact.pressure(x) - field.pressure(c, x)) * (div - divh)
    })
    .as_f64();
    EnergyError { norm: raw.max(0.0).sqrt(), raw }
}
