//! Mixed and condensed linear solves, pressure recovery and the discrete
//! inf-sup constant.

mod infsup;

pub use infsup::infsup_measure;

use crate::assembly::{apply_dirichlet, assemble_condensed, Assembled, Method, OperatorBundle, PressureMass};
use crate::smoothing::{MeshProducts, SmoothedStrainBlock};
use crate::sparse::{norm2, CooMatrix, CsrMatrix, LdlFactor};
use crate::{Error, Real, Result};
use crate::scalar::sum;

/// Refinement sweeps after each direct solve.
const REFINEMENT_STEPS: usize = 3;

/// Discrete displacement (vertex then bubble coefficients) and pressure.
#[derive(Debug, Clone)]
pub struct SolutionField<T> {
    pub method: Method,
    pub displacement: Vec<T>,
    /// One value per node; empty for displacement-only methods.
    pub pressure: Vec<T>,
    /// Relative residual of the system actually solved.
    pub residual: T,
}

/// `[A Bᵀ; B −C/λ]` with constrained displacement rows eliminated.
pub fn mixed_matrix<T: Real>(bundle: &OperatorBundle<T>, lambda: T) -> Result<(CsrMatrix<T>, Vec<T>)> {
    mixed_matrix_scaled(bundle, lambda, T::one())
}

/// Same system in the unknowns `(u, p / s)`.
fn mixed_matrix_scaled<T: Real>(bundle: &OperatorBundle<T>, lambda: T, s: T) -> Result<(CsrMatrix<T>, Vec<T>)> {
    let (Some(b), Some(c)) = (&bundle.b, &bundle.c) else {
        return Err(Error::InvalidInput(format!("{} has no pressure field", bundle.method)));
    };
    if !(lambda > T::zero()) {
        return Err(Error::InvalidInput("mixed solve needs λ > 0".into()));
    }
    let n = bundle.dofmap.num_displacement();
    let np = b.nrows;
    let mut big = CooMatrix::new(n + np, n + np);
    for i in 0..n {
        for (j, v) in bundle.a.row(i) {
            big.push(i, j, v);
        }
    }
    for i in 0..np {
        for (j, v) in b.row(i) {
            big.push(n + i, j, s * v);
            big.push(j, n + i, s * v);
        }
    }
    let mass = c.to_csr();
    for i in 0..np {
        for (j, v) in mass.row(i) {
            big.push(n + i, n + j, -s * s * v / lambda);
        }
    }
    let mut constrained = bundle.dofmap.constrained().to_vec();
    constrained.resize(n + np, false);
    let mut rhs = bundle.f.clone();
    rhs.resize(n + np, T::zero());
    Ok(apply_dirichlet(&big.to_csr(), &rhs, &constrained, None))
}

fn relative_residual<T: Real>(a: &CsrMatrix<T>, x: &[T], b: &[T]) -> T {
    let ax = a.mul_vec(x);
    let r: Vec<T> = b.iter().zip(&ax).map(|(&u, &v)| u - v).collect();
    let nb = norm2(b);
    if nb > T::zero() {
        norm2(&r) / nb
    } else {
        norm2(&r)
    }
}

/// Solves the saddle point system directly.
///
/// The pressure is rescaled so that the coupling block matches `A` in size;
/// otherwise the `C/λ` block of a nearly incompressible material falls
/// below the pivot tolerance.
pub fn solve_mixed<T: Real>(bundle: &OperatorBundle<T>, lambda: T) -> Result<SolutionField<T>> {
    let bmax = bundle.b.as_ref().map_or(T::one(), |b| b.max_abs());
    let amax = bundle.a.max_abs();
    let s = if bmax > T::zero() && amax > T::zero() { amax / bmax } else { T::one() };
    let (k, rhs) = mixed_matrix_scaled(bundle, lambda, s)?;
    let factor = LdlFactor::new(&k)?;
    let x = factor.solve_refined(&k, &rhs, REFINEMENT_STEPS);
    let residual = relative_residual(&k, &x, &rhs);
    let n = bundle.dofmap.num_displacement();
    Ok(SolutionField {
        method: bundle.method,
        displacement: x[..n].to_vec(),
        pressure: x[n..].iter().map(|&v| v * s).collect(),
        residual,
    })
}

/// Solves `K u = f` on the free dofs (constrained dofs are zero).
pub fn solve_condensed<T: Real>(k: &CsrMatrix<T>, f: &[T], constrained: &[bool]) -> Result<(Vec<T>, T)> {
    let (kc, rhs) = apply_dirichlet(k, f, constrained, None);
    let factor = LdlFactor::new(&kc)?;
    let (pos, neg) = factor.inertia();
    if neg > 0 {
        return Err(Error::Singular { row: pos, hint: "condensed operator is not positive definite" });
    }
    let u = factor.solve_refined(&kc, &rhs, REFINEMENT_STEPS);
    let residual = relative_residual(&kc, &u, &rhs);
    Ok((u, residual))
}

/// `p_i = λ / m(V_i) Σ_k m(V_i ∩ Ω_k) div̄_k(u)`.
pub fn recover_pressure<T: Real>(
    u: &[T],
    products: &MeshProducts<T>,
    blocks: &[SmoothedStrainBlock<T>],
    lambda: T,
) -> Vec<T> {
    let div: Vec<T> = blocks.iter().map(|b| b.divergence(u)).collect();
    products
        .third
        .cells
        .iter()
        .map(|cell| {
            let s: T = sum(cell.overlaps.iter().map(|&(k, m)| m * div[k]));
            lambda * s / cell.measure
        })
        .collect()
}

/// Default solve path: condensed for third-mesh methods, saddle point for
/// MINI, plain stiffness for the displacement-only baselines.
pub fn solve<T: Real>(assembled: &Assembled<T>, products: &MeshProducts<T>) -> Result<SolutionField<T>> {
    let bundle = &assembled.bundle;
    let lambda = bundle.material.lambda;
    match (&bundle.b, &bundle.c) {
        (Some(b), Some(PressureMass::Diagonal(c))) => {
            let k = assemble_condensed(&bundle.a, b, c, lambda);
            let (u, residual) = solve_condensed(&k, &bundle.f, bundle.dofmap.constrained())?;
            let pressure = recover_pressure(&u, products, &assembled.blocks, lambda);
            Ok(SolutionField { method: bundle.method, displacement: u, pressure, residual })
        }
        (Some(_), Some(PressureMass::Consistent(_))) => solve_mixed(bundle, lambda),
        _ => {
            let (u, residual) = solve_condensed(&bundle.a, &bundle.f, bundle.dofmap.constrained())?;
            Ok(SolutionField { method: bundle.method, displacement: u, pressure: Vec::new(), residual })
        }
    }
}
