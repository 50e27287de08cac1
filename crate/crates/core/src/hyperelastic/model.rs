use super::material::{first_piola, identity, inverse, Mat3, NeoHookeanParams};
use crate::assembly::{assemble_loads, Method, Traction};
use crate::basis::BubbleKind;
use crate::dofs::DofMap;
use crate::geom::Point;
use crate::smoothing::{smoothed_gradient, MeshProducts};
use crate::sparse::{CooMatrix, CsrMatrix};
use crate::{Error, Real, Result};
use crate::scalar::sum;

/// Gradient operator of one integration domain: `∇u = Σ_a u_a ⊗ g_a`.
#[derive(Debug, Clone)]
struct DomainOperator<T> {
    measure: T,
    /// `dofs[a * dim + i]` is component `i` of function `a`.
    dofs: Vec<usize>,
    grads: Vec<Point<T>>,
}

/// Per-domain kinematics of a displacement state.
#[derive(Debug, Clone)]
pub struct DeformationState<T> {
    pub f: Vec<Mat3<T>>,
    pub jacobian: Vec<T>,
}

/// Total-Lagrangian neo-Hookean problem on smoothed (or element) gradients.
///
/// For the bubble-enriched methods the `½λ(ln J)²` term is not evaluated per
/// smoothing domain: `ln J` is averaged onto the pressure cells first, the
/// nonlinear counterpart of eliminating the third-mesh pressure. At zero
/// displacement the tangent is the condensed linear operator.
pub struct HyperelasticModel<'a, T> {
    pub products: &'a MeshProducts<T>,
    pub method: Method,
    pub params: NeoHookeanParams<T>,
    pub dofmap: DofMap,
    /// External load at factor one.
    pub load: Vec<T>,
    ops: Vec<DomainOperator<T>>,
    projected: bool,
}

impl<'a, T: Real> HyperelasticModel<'a, T> {
    pub fn new(
        method: Method,
        products: &'a MeshProducts<T>,
        params: NeoHookeanParams<T>,
        bubble: BubbleKind,
        traction: &Traction<'_, T>,
    ) -> Result<Self> {
        let dim = products.dim();
        if !method.supports(dim) || method == Method::Mini {
            return Err(Error::InvalidInput(format!("{method} has no hyperelastic formulation in {dim}D")));
        }
        if method != Method::FemT3 && products.dual.kind != method.domain_kind(dim) {
            return Err(Error::InvalidInput(format!("{method} needs {:?} domains", method.domain_kind(dim))));
        }
        let projected = method.is_bubble_smoothed();
        let dofmap = DofMap::new(&products.mesh, projected, false);
        let ops = if method == Method::FemT3 {
            (0..products.mesh.num_elements())
                .map(|e| {
                    let el = &products.elements[e];
                    let nodes = products.mesh.element(e);
                    DomainOperator {
                        measure: el.measure,
                        dofs: nodes.iter().flat_map(|&n| (0..dim).map(move |c| (n, c))).map(|(n, c)| dofmap.node_dof(n, c)).collect(),
                        grads: el.grads[..=dim].to_vec(),
                    }
                })
                .collect()
        } else {
            let b = projected.then_some(bubble);
            (0..products.dual.domains.len())
                .map(|k| {
                    let g = smoothed_gradient(products, k, b)?;
                    let mut dofs = Vec::with_capacity(g.functions.len() * dim);
                    for f in &g.functions {
                        for c in 0..dim {
                            dofs.push(dofmap.function_dof(*f, c).expect("dof for every smoothed function"));
                        }
                    }
                    Ok(DomainOperator { measure: g.measure, dofs, grads: g.grads })
                })
                .collect::<Result<Vec<_>>>()?
        };
        let load = assemble_loads(products, &dofmap, traction);
        Ok(HyperelasticModel { products, method, params, dofmap, load, ops, projected })
    }

    pub fn num_dofs(&self) -> usize {
        self.dofmap.num_displacement()
    }

    /// Smoothed deformation gradients; fails on any non-positive `J`.
    pub fn state(&self, u: &[T]) -> Result<DeformationState<T>> {
        let dim = self.products.dim();
        let mut fs = Vec::with_capacity(self.ops.len());
        let mut js = Vec::with_capacity(self.ops.len());
        for (k, op) in self.ops.iter().enumerate() {
            let mut f = identity::<T>();
            for (a, g) in op.grads.iter().enumerate() {
                for i in 0..dim {
                    let ui = u[op.dofs[a * dim + i]];
                    for j in 0..dim {
                        f[i][j] += ui * g[j];
                    }
                }
            }
            let j = super::material::det(&f);
            if !(j > T::zero()) || !j.is_finite() {
                return Err(Error::InvertedDomain { domain: k });
            }
            fs.push(f);
            js.push(j);
        }
        Ok(DeformationState { f: fs, jacobian: js })
    }

    /// Averages of `ln J` over the pressure cells.
    fn theta(&self, state: &DeformationState<T>) -> Vec<T> {
        self.products
            .third
            .cells
            .iter()
            .map(|cell| {
                let s: T = sum(cell.overlaps.iter().map(|&(k, m)| m * state.jacobian[k].ln()));
                s / cell.measure
            })
            .collect()
    }

    /// Stored energy minus the work of `factor × load`.
    pub fn energy(&self, u: &[T], factor: T) -> Result<T> {
        let state = self.state(u)?;
        let mat = if self.projected { self.params.without_volumetric() } else { self.params };
        let mut e = T::zero();
        for (k, op) in self.ops.iter().enumerate() {
            let c = super::material::transpose_mul(&state.f[k]);
            e += op.measure * super::material::strain_energy(&c, &mat)?;
        }
        if self.projected {
            let th = self.theta(&state);
            for (cell, t) in self.products.third.cells.iter().zip(&th) {
                e += T::lit(0.5) * self.params.lambda * cell.measure * *t * *t;
            }
        }
        let work: T = sum(self.load.iter().zip(u).map(|(&f, &v)| f * v));
        Ok(e - factor * work)
    }

    /// `f_int(u) − factor × load`, constrained rows included.
    pub fn residual(&self, u: &[T], factor: T) -> Result<Vec<T>> {
        Ok(self.residual_tangent(u, factor, false)?.0)
    }

    pub fn residual_tangent(&self, u: &[T], factor: T, with_tangent: bool) -> Result<(Vec<T>, Option<CsrMatrix<T>>)> {
        let dim = self.products.dim();
        let n = self.num_dofs();
        let state = self.state(u)?;
        let mat = if self.projected { self.params.without_volumetric() } else { self.params };
        let mut r: Vec<T> = self.load.iter().map(|&f| -factor * f).collect();
        let mut coo = CooMatrix::new(n, n);

        // ln J gradient rows per domain, `v_k[a·dim+i] = Σ_J F⁻¹_Ji g_aJ`.
        let mut finv = Vec::new();
        let mut vrows: Vec<Vec<T>> = Vec::new();
        if self.projected {
            for (k, op) in self.ops.iter().enumerate() {
                let fi = inverse(&state.f[k]).expect("positive jacobian");
                let mut v = vec![T::zero(); op.dofs.len()];
                for (a, g) in op.grads.iter().enumerate() {
                    for i in 0..dim {
                        v[a * dim + i] = sum((0..dim).map(|jj| fi[jj][i] * g[jj]));
                    }
                }
                finv.push(fi);
                vrows.push(v);
            }
        }
        let coef: Vec<T> = if self.projected {
            let th = self.theta(&state);
            let mut c = vec![T::zero(); self.ops.len()];
            for (cell, t) in self.products.third.cells.iter().zip(&th) {
                for &(k, m) in &cell.overlaps {
                    c[k] += self.params.lambda * m * *t;
                }
            }
            c
        } else {
            Vec::new()
        };

        for (k, op) in self.ops.iter().enumerate() {
            let (p, a) = first_piola(&state.f[k], &mat)?;
            let m = op.measure;
            let nf = op.grads.len();
            for (fa, ga) in op.grads.iter().enumerate() {
                for i in 0..dim {
                    let s: T = sum((0..dim).map(|jj| p[i][jj] * ga[jj]));
                    r[op.dofs[fa * dim + i]] += m * s;
                }
            }
            if self.projected {
                for (x, &v) in op.dofs.iter().zip(&vrows[k]) {
                    r[*x] += coef[k] * v;
                }
            }
            if !with_tangent {
                continue;
            }
            for fa in 0..nf {
                let ga = &op.grads[fa];
                for fb in 0..nf {
                    let gb = &op.grads[fb];
                    for i in 0..dim {
                        for kk in 0..dim {
                            let mut s = T::zero();
                            for jj in 0..dim {
                                for ll in 0..dim {
                                    let mut v = m * a[i][jj][kk][ll];
                                    if self.projected {
                                        let fi = &finv[k];
                                        v -= coef[k] * fi[jj][kk] * fi[ll][i];
                                    }
                                    s += v * ga[jj] * gb[ll];
                                }
                            }
                            coo.push(op.dofs[fa * dim + i], op.dofs[fb * dim + kk], s);
                        }
                    }
                }
            }
        }
        if self.projected && with_tangent {
            // Σ_i (λ / m_i) w_i w_iᵀ with w_i = Σ_k m(V_i ∩ Ω_k) v_k
            for cell in &self.products.third.cells {
                let mut w: Vec<(usize, T)> = Vec::new();
                for &(k, m) in &cell.overlaps {
                    for (x, &v) in self.ops[k].dofs.iter().zip(&vrows[k]) {
                        w.push((*x, m * v));
                    }
                }
                w.sort_by_key(|e| e.0);
                let mut merged: Vec<(usize, T)> = Vec::with_capacity(w.len());
                for (x, v) in w {
                    match merged.last_mut() {
                        Some(last) if last.0 == x => last.1 += v,
                        _ => merged.push((x, v)),
                    }
                }
                let s = self.params.lambda / cell.measure;
                for &(x, vx) in &merged {
                    for &(y, vy) in &merged {
                        coo.push(x, y, s * vx * vy);
                    }
                }
            }
        }
        Ok((r, with_tangent.then(|| coo.to_csr())))
    }

    pub fn tangent(&self, u: &[T]) -> Result<CsrMatrix<T>> {
        Ok(self.residual_tangent(u, T::zero(), true)?.1.expect("tangent requested"))
    }
}
