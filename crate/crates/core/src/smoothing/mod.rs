//! Smoothed gradients, strains and divergences over smoothing domains.
//!
//! The smoothed gradient of a scalar function `φ` on a domain `Ω_k` is
//! `(1 / m(Ω_k)) ∮ φ n ds`, integrated facet by facet. Each facet lies in one
//! micro-cell, so bubble traces are polynomial on it and the boundary rule is
//! exact.

mod oracle;

pub use oracle::oracle_volume_average;
pub(crate) use oracle::field_gradient;

use crate::basis::{boundary_quadrature, eval_bubble, BubbleKind, P1Element};
use crate::dofs::{BasisFn, DofMap};
use crate::geom::Point;
use crate::mesh::{
    build_micro_decomposition, build_pressure_cells, build_smoothing_domains, build_topology, DomainKind, DualMesh,
    MicroCellDecomposition, PrimalMesh, ThirdMesh, Topology,
};
use crate::{Error, Real, Result};
use crate::scalar::sum;

/// Everything derived from a primal mesh for one smoothing-domain kind.
#[derive(Debug, Clone)]
pub struct MeshProducts<T> {
    pub mesh: PrimalMesh<T>,
    pub topology: Topology,
    pub micro: MicroCellDecomposition<T>,
    pub dual: DualMesh<T>,
    pub third: ThirdMesh<T>,
    pub elements: Vec<P1Element<T>>,
}

impl<T: Real> MeshProducts<T> {
    pub fn new(mesh: PrimalMesh<T>, kind: DomainKind) -> Result<Self> {
        let topology = build_topology(&mesh);
        let micro = build_micro_decomposition(&mesh, &topology)?;
        let dual = build_smoothing_domains(&micro, kind)?;
        let third = build_pressure_cells(&micro, &dual)?;
        let elements = (0..mesh.num_elements())
            .map(|e| P1Element::new(mesh.dim(), &mesh.element_points(e)))
            .collect();
        Ok(MeshProducts { mesh, topology, micro, dual, third, elements })
    }

    /// Edge domains in 2D, face domains in 3D.
    pub fn natural(mesh: PrimalMesh<T>) -> Result<Self> {
        let kind = if mesh.dim() == 2 { DomainKind::Edge2d } else { DomainKind::Face3d };
        Self::new(mesh, kind)
    }

    pub fn dim(&self) -> usize {
        self.mesh.dim()
    }

    /// Largest diameter over smoothing domains and pressure cells.
    pub fn mesh_size(&self) -> T {
        let dim = self.dim();
        let dual = self.dual.domains.iter().map(|d| d.diameter(dim)).fold(T::zero(), T::max);
        let third = self
            .third
            .cells
            .iter()
            .map(|c| {
                let pts: Vec<Point<T>> =
                    c.cells.iter().flat_map(|&m| self.micro.cell(m).points(dim).to_vec()).collect();
                crate::geom::diameter(&pts)
            })
            .fold(T::zero(), T::max);
        dual.max(third)
    }
}

/// Number of Voigt strain components.
pub fn voigt_size(dim: usize) -> usize {
    if dim == 2 {
        3
    } else {
        6
    }
}

/// Index pairs of the engineering shear components, in Voigt order.
pub fn shear_pairs(dim: usize) -> &'static [(usize, usize)] {
    if dim == 2 {
        &[(0, 1)]
    } else {
        &[(0, 1), (1, 2), (2, 0)]
    }
}

/// Voigt strain of the vector field `φ e_c` whose scalar gradient is `g`.
pub fn strain_column<T: Real>(dim: usize, g: &Point<T>, c: usize) -> [T; 6] {
    let mut col = [T::zero(); 6];
    col[c] = g[c];
    for (s, &(i, j)) in shear_pairs(dim).iter().enumerate() {
        if c == i {
            col[dim + s] = g[j];
        } else if c == j {
            col[dim + s] = g[i];
        }
    }
    col
}

/// Smoothed gradients of every scalar basis function touching a domain.
#[derive(Debug, Clone)]
pub struct SmoothedGradient<T> {
    pub domain: usize,
    pub measure: T,
    pub functions: Vec<BasisFn>,
    pub grads: Vec<Point<T>>,
}

/// Functions seen by a domain: nodes of the overlapped elements, then their bubbles.
fn domain_functions<T: Real>(products: &MeshProducts<T>, k: usize, bubble: Option<BubbleKind>) -> Vec<BasisFn> {
    let domain = &products.dual.domains[k];
    let mut nodes: Vec<usize> =
        domain.elements.iter().flat_map(|&(e, _)| products.mesh.element(e).to_vec()).collect();
    nodes.sort_unstable();
    nodes.dedup();
    let mut f: Vec<BasisFn> = nodes.into_iter().map(BasisFn::Node).collect();
    if bubble.is_some() {
        f.extend(domain.elements.iter().map(|&(e, _)| BasisFn::Bubble(e)));
    }
    f
}

pub fn smoothed_gradient<T: Real>(
    products: &MeshProducts<T>,
    k: usize,
    bubble: Option<BubbleKind>,
) -> Result<SmoothedGradient<T>> {
    let dim = products.dim();
    let domain = &products.dual.domains[k];
    if !(domain.measure > T::zero()) {
        return Err(Error::EmptyDomain { domain: k });
    }
    let functions = domain_functions(products, k, bubble);
    let slot = |f: BasisFn| functions.binary_search(&f).expect("function listed for domain");
    let mut grads = vec![[T::zero(); 3]; functions.len()];
    let rule = boundary_quadrature::<T>(dim - 1, if dim == 2 { 3 } else { 4 });
    let inv = T::one() / domain.measure;
    for facet in &domain.facets {
        let el = &products.elements[facet.element];
        let nodes = products.mesh.element(facet.element);
        let sub = products.micro.cell(facet.micro).opposite;
        let pts = facet.points(dim);
        for (q, &w) in rule.points.iter().zip(&rule.weights) {
            let mut x = [T::zero(); 3];
            for (i, p) in pts.iter().enumerate() {
                for c in 0..3 {
                    x[c] += q[i] * p[c];
                }
            }
            let lam = el.barycentric(&x);
            let s = w * facet.measure * inv;
            for (i, &n) in nodes.iter().enumerate() {
                let g = &mut grads[slot(BasisFn::Node(n))];
                for c in 0..dim {
                    g[c] += s * lam[i] * facet.normal[c];
                }
            }
            if let Some(kind) = bubble {
                let (b, _) = eval_bubble(kind, dim, &lam, &el.grads, Some(sub));
                let g = &mut grads[slot(BasisFn::Bubble(facet.element))];
                for c in 0..dim {
                    g[c] += s * b * facet.normal[c];
                }
            }
        }
    }
    Ok(SmoothedGradient { domain: k, measure: domain.measure, functions, grads })
}

/// Smoothed Voigt strain and divergence as dense rows over the domain's dofs.
#[derive(Debug, Clone)]
pub struct SmoothedStrainBlock<T> {
    pub domain: usize,
    pub measure: T,
    pub dofs: Vec<usize>,
    /// Row-major `voigt_size × dofs.len()`.
    pub strain: Vec<T>,
    pub div: Vec<T>,
}

impl<T: Real> SmoothedStrainBlock<T> {
    pub fn from_gradient(grad: &SmoothedGradient<T>, dofmap: &DofMap) -> Self {
        let dim = dofmap.dim();
        let nv = voigt_size(dim);
        let mut dofs = Vec::new();
        let mut cols = Vec::new();
        for (f, g) in grad.functions.iter().zip(&grad.grads) {
            for c in 0..dim {
                if let Some(d) = dofmap.function_dof(*f, c) {
                    dofs.push(d);
                    cols.push(strain_column(dim, g, c));
                }
            }
        }
        let n = dofs.len();
        let mut strain = vec![T::zero(); nv * n];
        for (j, col) in cols.iter().enumerate() {
            for r in 0..nv {
                strain[r * n + j] = col[r];
            }
        }
        let div = (0..n).map(|j| sum((0..dim).map(|r| strain[r * n + j]))).collect();
        SmoothedStrainBlock { domain: grad.domain, measure: grad.measure, dofs, strain, div }
    }

    pub fn voigt_rows(&self) -> usize {
        self.strain.len() / self.dofs.len().max(1)
    }

    /// Smoothed strain of a global displacement vector.
    pub fn apply(&self, u: &[T]) -> Vec<T> {
        let n = self.dofs.len();
        (0..self.voigt_rows())
            .map(|r| sum((0..n).map(|j| self.strain[r * n + j] * u[self.dofs[j]])))
            .collect()
    }

    pub fn divergence(&self, u: &[T]) -> T {
        sum(self.div.iter().zip(&self.dofs).map(|(&d, &j)| d * u[j]))
    }
}

pub fn smoothed_strain_block<T: Real>(
    products: &MeshProducts<T>,
    k: usize,
    bubble: Option<BubbleKind>,
    dofmap: &DofMap,
) -> Result<SmoothedStrainBlock<T>> {
    Ok(SmoothedStrainBlock::from_gradient(&smoothed_gradient(products, k, bubble)?, dofmap))
}

/// Blocks for every domain of the dual mesh.
pub fn strain_blocks<T: Real>(
    products: &MeshProducts<T>,
    bubble: Option<BubbleKind>,
    dofmap: &DofMap,
) -> Result<Vec<SmoothedStrainBlock<T>>> {
    (0..products.dual.domains.len())
        .map(|k| smoothed_strain_block(products, k, bubble, dofmap))
        .collect()
}
