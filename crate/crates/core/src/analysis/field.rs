use crate::assembly::{Assembled, Method};
use crate::basis::eval_bubble;
use crate::geom::{barycentric, Point};
use crate::smoothing::{field_gradient, shear_pairs, voigt_size, MeshProducts};
use crate::solve::SolutionField;
use crate::Real;
use crate::scalar::sum;

/// A discrete solution that can be evaluated inside any micro-cell.
///
/// Strains are the ones each method actually uses: the smoothed strain of
/// the owning domain, the element strain for linear elements, the pointwise
/// strain for MINI. Displacement-only methods report `λ ∇·u_h` as pressure.
pub struct DiscreteField<'a, T> {
    pub products: &'a MeshProducts<T>,
    pub assembled: &'a Assembled<T>,
    pub solution: &'a SolutionField<T>,
}

pub(crate) fn voigt_from_gradient<T: Real>(dim: usize, g: &[[T; 3]; 3]) -> [T; 6] {
    let mut e = [T::zero(); 6];
    for i in 0..dim {
        e[i] = g[i][i];
    }
    for (s, &(i, j)) in shear_pairs(dim).iter().enumerate() {
        e[dim + s] = g[i][j] + g[j][i];
    }
    e
}

impl<'a, T: Real> DiscreteField<'a, T> {
    pub fn new(products: &'a MeshProducts<T>, assembled: &'a Assembled<T>, solution: &'a SolutionField<T>) -> Self {
        DiscreteField { products, assembled, solution }
    }

    pub fn method(&self) -> Method {
        self.assembled.bundle.method
    }

    fn block(&self, cell: usize) -> Option<usize> {
        match self.method() {
            Method::Mini => None,
            Method::FemT3 => Some(self.products.micro.cell(cell).element),
            _ => Some(self.products.dual.cell_domain[cell]),
        }
    }

    pub fn displacement(&self, cell: usize, x: &Point<T>) -> Point<T> {
        let dim = self.products.dim();
        let dofmap = &self.assembled.bundle.dofmap;
        let u = &self.solution.displacement;
        let mc = self.products.micro.cell(cell);
        let el = &self.products.elements[mc.element];
        let lam = el.barycentric(x);
        let mut out = [T::zero(); 3];
        for (a, &n) in self.products.mesh.element(mc.element).iter().enumerate() {
            for c in 0..dim {
                out[c] += lam[a] * u[dofmap.node_dof(n, c)];
            }
        }
        if let Some(kind) = self.assembled.bubble {
            let (b, _) = eval_bubble(kind, dim, &lam, &el.grads, Some(mc.opposite));
            for (c, o) in out.iter_mut().enumerate().take(dim) {
                *o += b * u[dofmap.bubble_dof(mc.element, c).expect("bubble dofs present")];
            }
        }
        out
    }

    /// Engineering Voigt strain used by the method at `x`.
    pub fn strain(&self, cell: usize, x: &Point<T>) -> [T; 6] {
        let dim = self.products.dim();
        match self.block(cell) {
            Some(k) => {
                let mut e = [T::zero(); 6];
                for (i, v) in self.assembled.blocks[k].apply(&self.solution.displacement).into_iter().enumerate() {
                    e[i] = v;
                }
                e
            }
            None => {
                let g = field_gradient(
                    self.products,
                    self.assembled.bubble,
                    &self.assembled.bundle.dofmap,
                    &self.solution.displacement,
                    cell,
                    x,
                );
                voigt_from_gradient(dim, &g)
            }
        }
    }

    pub fn divergence(&self, cell: usize, x: &Point<T>) -> T {
        sum(self.strain(cell, x)[..self.products.dim()].iter().copied())
    }

    pub fn pressure(&self, cell: usize, x: &Point<T>) -> T {
        let mc = self.products.micro.cell(cell);
        match self.method() {
            Method::BesFem | Method::BfsFem => self.solution.pressure[mc.node],
            Method::Mini => {
                let lam = self.products.elements[mc.element].barycentric(x);
                sum(self.products.mesh.element(mc.element).iter().enumerate().map(|(a, &n)| lam[a] * self.solution.pressure[n]))
            }
            _ => self.assembled.bundle.material.lambda * self.divergence(cell, x),
        }
    }

    /// Micro-cell containing `x`, if any.
    pub fn locate(&self, x: &Point<T>) -> Option<usize> {
        let dim = self.products.dim();
        let (e, _) = self.products.mesh.locate(x)?;
        let tol = T::lit(-1e-9);
        self.products.micro.element_cells(e).find(|&c| {
            let lam = barycentric(dim, self.products.micro.cell(c).points(dim), x);
            lam[..=dim].iter().all(|&l| l >= tol)
        })
    }

    pub(crate) fn voigt_size(&self) -> usize {
        voigt_size(self.products.dim())
    }
}
