use crate::{Error, Real, Result};
use crate::scalar::sum;

pub type Mat3<T> = [[T; 3]; 3];
/// Fourth-order tensor, `t[i][j][k][l]`.
pub type Tensor4<T> = [[[[T; 3]; 3]; 3]; 3];

pub(crate) fn identity<T: Real>() -> Mat3<T> {
    let mut m = [[T::zero(); 3]; 3];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = T::one();
    }
    m
}

pub(crate) fn det<T: Real>(m: &Mat3<T>) -> T {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

pub(crate) fn inverse<T: Real>(m: &Mat3<T>) -> Option<Mat3<T>> {
    let d = det(m);
    if d == T::zero() || !d.is_finite() {
        return None;
    }
    let mut inv = [[T::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
            let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
            inv[i][j] = (m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]) / d;
        }
    }
    Some(inv)
}

pub(crate) fn transpose_mul<T: Real>(f: &Mat3<T>) -> Mat3<T> {
    let mut c = [[T::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = sum((0..3).map(|k| f[k][i] * f[k][j]));
        }
    }
    c
}

/// Compressible neo-Hookean material,
/// `Ψ = ½λ(ln J)² − μ ln J + ½μ(tr C − 3)` with `λ = κ − 2μ/3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeoHookeanParams<T> {
    pub mu: T,
    pub kappa: T,
    pub lambda: T,
}

impl<T: Real> NeoHookeanParams<T> {
    pub fn new(mu: T, kappa: T) -> Result<Self> {
        if !(mu > T::zero()) || !(kappa > T::zero()) {
            return Err(Error::InvalidInput(format!("neo-Hookean needs μ > 0 and κ > 0, got {mu}, {kappa}")));
        }
        Ok(NeoHookeanParams { mu, kappa, lambda: kappa - T::lit(2.0 / 3.0) * mu })
    }

    /// The same material without the `(ln J)²` term.
    pub fn without_volumetric(self) -> Self {
        NeoHookeanParams { lambda: T::zero(), ..self }
    }
}

fn jacobian_of<T: Real>(c: &Mat3<T>) -> Result<(Mat3<T>, T)> {
    let d = det(c);
    if !(d > T::zero()) {
        return Err(Error::InvalidInput("right Cauchy-Green tensor is not positive definite".into()));
    }
    let ci = inverse(c).expect("positive determinant");
    Ok((ci, d.sqrt().ln()))
}

pub fn strain_energy<T: Real>(c: &Mat3<T>, p: &NeoHookeanParams<T>) -> Result<T> {
    let (_, ln_j) = jacobian_of(c)?;
    let tr = c[0][0] + c[1][1] + c[2][2];
    let half = T::lit(0.5);
    Ok(half * p.lambda * ln_j * ln_j - p.mu * ln_j + half * p.mu * (tr - T::lit(3.0)))
}

/// `S = μ(I − C⁻¹) + λ ln J C⁻¹`.
pub fn pk2_stress<T: Real>(c: &Mat3<T>, p: &NeoHookeanParams<T>) -> Result<Mat3<T>> {
    let (ci, ln_j) = jacobian_of(c)?;
    let id = identity::<T>();
    let mut s = [[T::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            s[i][j] = p.mu * (id[i][j] - ci[i][j]) + p.lambda * ln_j * ci[i][j];
        }
    }
    Ok(s)
}

/// `ℂ = λ C⁻¹⊗C⁻¹ + (μ − λ ln J)(C⁻¹_ik C⁻¹_jl + C⁻¹_il C⁻¹_jk)`.
pub fn material_tangent<T: Real>(c: &Mat3<T>, p: &NeoHookeanParams<T>) -> Result<Tensor4<T>> {
    let (ci, ln_j) = jacobian_of(c)?;
    let g = p.mu - p.lambda * ln_j;
    let mut t = [[[[T::zero(); 3]; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    t[i][j][k][l] =
                        p.lambda * (ci[i][j] * ci[k][l]) + g * (ci[i][k] * ci[j][l] + ci[i][l] * ci[j][k]);
                }
            }
        }
    }
    Ok(t)
}

/// First Piola stress `P = F S` and `A_iJkL = ∂P_iJ/∂F_kL`.
pub(crate) fn first_piola<T: Real>(f: &Mat3<T>, p: &NeoHookeanParams<T>) -> Result<(Mat3<T>, Tensor4<T>)> {
    let c = transpose_mul(f);
    let s = pk2_stress(&c, p)?;
    let cc = material_tangent(&c, p)?;
    let mut pk1 = [[T::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            pk1[i][j] = sum((0..3).map(|k| f[i][k] * s[k][j]));
        }
    }
    // F_iI ℂ_IJKL F_kK, contracted in two passes.
    let mut half = [[[[T::zero(); 3]; 3]; 3]; 3];
    for i in 0..3 {
        for jj in 0..3 {
            for kk in 0..3 {
                for ll in 0..3 {
                    half[i][jj][kk][ll] = sum((0..3).map(|ii| f[i][ii] * cc[ii][jj][kk][ll]));
                }
            }
        }
    }
    let mut a = [[[[T::zero(); 3]; 3]; 3]; 3];
    for i in 0..3 {
        for jj in 0..3 {
            for k in 0..3 {
                for ll in 0..3 {
                    let geo = if i == k { s[jj][ll] } else { T::zero() };
                    a[i][jj][k][ll] = geo + sum((0..3).map(|kk| half[i][jj][kk][ll] * f[k][kk]));
                }
            }
        }
    }
    Ok((pk1, a))
}
