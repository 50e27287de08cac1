use nalgebra::{DMatrix, SymmetricEigen};

use crate::assembly::PressureMass;
use crate::sparse::{CsrMatrix, LdlFactor};
use crate::{Error, Real, Result};
use crate::scalar::sum;

/// Eigenvalues below this fraction of the largest count as zero.
const KERNEL_TOL: f64 = 1e-10;

/// Discrete inf-sup constant `β_h`: square root of the smallest nonzero
/// eigenvalue of `B G⁻¹ Bᵀ` relative to the pressure mass, where `G` is
/// the displacement Gram matrix. Constrained displacement dofs are removed.
pub fn infsup_measure<T: Real>(
    b: &CsrMatrix<T>,
    gram: &CsrMatrix<T>,
    mass: &PressureMass<T>,
    constrained: &[bool],
) -> Result<f64> {
    let free: Vec<usize> = (0..gram.nrows).filter(|&d| !constrained.get(d).copied().unwrap_or(false)).collect();
    let rows: Vec<usize> = (0..b.nrows).collect();
    let g = gram.submatrix(&free, &free);
    let bf = b.submatrix(&rows, &free);
    let factor = LdlFactor::new(&g)?;
    let np = bf.nrows;
    let mut s = DMatrix::<f64>::zeros(np, np);
    let mut rhs = vec![T::zero(); free.len()];
    for i in 0..np {
        rhs.iter_mut().for_each(|v| *v = T::zero());
        for (j, v) in bf.row(i) {
            rhs[j] = v;
        }
        let x = factor.solve(&rhs);
        for k in 0..np {
            let v: T = sum(bf.row(k).map(|(j, w)| w * x[j]));
            s[(k, i)] = v.as_f64();
        }
    }
    let s = (&s + s.transpose()) * 0.5;
    let scaled = match mass {
        PressureMass::Diagonal(c) => {
            let d: Vec<f64> = c.iter().map(|v| 1.0 / v.as_f64().sqrt()).collect();
            DMatrix::from_fn(np, np, |i, j| s[(i, j)] * d[i] * d[j])
        }
        PressureMass::Consistent(m) => {
            let dense = DMatrix::from_fn(np, np, |i, j| m.get(i, j).as_f64());
            let chol = dense
                .cholesky()
                .ok_or(Error::NonConvergence { what: "pressure mass factorization", detail: "not SPD".into() })?;
            let l = chol.l();
            let linv = l
                .clone()
                .try_inverse()
                .ok_or(Error::NonConvergence { what: "pressure mass factorization", detail: "singular".into() })?;
            &linv * s * linv.transpose()
        }
    };
    let eig = SymmetricEigen::try_new(scaled, 1e-14, 10_000)
        .ok_or(Error::NonConvergence { what: "inf-sup eigensolve", detail: format!("{np} pressure dofs") })?;
    let top = eig.eigenvalues.iter().fold(0.0f64, |m, &v| m.max(v));
    let smallest = eig
        .eigenvalues
        .iter()
        .copied()
        .filter(|&v| v > KERNEL_TOL * top)
        .fold(f64::INFINITY, f64::min);
    if !smallest.is_finite() {
        return Err(Error::NonConvergence { what: "inf-sup eigensolve", detail: "no nonzero eigenvalue".into() });
    }
    Ok(smallest.sqrt())
}
