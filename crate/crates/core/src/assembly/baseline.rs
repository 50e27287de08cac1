use super::loads::{assemble_loads, Traction};
use super::operators::{block_stiffness, cell_point};
use super::{Assembled, Material, Method, OperatorBundle, PressureMass};
use crate::basis::{eval_bubble, simplex_quadrature, BubbleKind};
use crate::dofs::{BasisFn, DofMap};
use crate::smoothing::{strain_blocks, MeshProducts, SmoothedGradient, SmoothedStrainBlock};
use crate::sparse::{CooMatrix, CsrMatrix};
use crate::{Error, Real, Result};
use crate::scalar::sum;

/// Constant-strain blocks of the linear elements, one per element.
pub(crate) fn element_blocks<T: Real>(products: &MeshProducts<T>, dofmap: &DofMap) -> Vec<SmoothedStrainBlock<T>> {
    products
        .elements
        .iter()
        .enumerate()
        .map(|(e, el)| {
            let grad = SmoothedGradient {
                domain: e,
                measure: el.measure,
                functions: products.mesh.element(e).iter().map(|&n| BasisFn::Node(n)).collect(),
                grads: el.grads[..=products.dim()].to_vec(),
            };
            SmoothedStrainBlock::from_gradient(&grad, dofmap)
        })
        .collect()
}

/// Standard linear-element stiffness with the full constitutive matrix.
pub fn assemble_fem_stiffness<T: Real>(products: &MeshProducts<T>, dofmap: &DofMap, material: &Material<T>) -> CsrMatrix<T> {
    let blocks = element_blocks(products, dofmap);
    block_stiffness(&blocks, &material.voigt_full(products.dim()), dofmap.num_displacement())
}

/// Smoothed stiffness without bubbles (ES/NS/FS-FEM) with the full constitutive matrix.
pub fn assemble_smoothed_stiffness<T: Real>(
    products: &MeshProducts<T>,
    dofmap: &DofMap,
    material: &Material<T>,
) -> Result<(CsrMatrix<T>, Vec<SmoothedStrainBlock<T>>)> {
    let blocks = strain_blocks(products, None, dofmap)?;
    let k = block_stiffness(&blocks, &material.voigt_full(products.dim()), dofmap.num_displacement());
    Ok((k, blocks))
}

/// MINI element: P1 plus power bubble displacement, continuous P1 pressure.
/// Returns `(A, B, M)` with `A` the shear stiffness `2μ ∫ ε:ε`, `B_ij = ∫ q_i ∇·φ_j`
/// and `M` the pressure mass.
pub fn assemble_mini<T: Real>(
    products: &MeshProducts<T>,
    dofmap: &DofMap,
    material: &Material<T>,
) -> (CsrMatrix<T>, CsrMatrix<T>, CsrMatrix<T>) {
    let dim = products.dim();
    let n = dofmap.num_displacement();
    let np = products.mesh.num_nodes();
    let rule = simplex_quadrature::<T>(dim, 2 * dim);
    let dev = material.voigt_deviatoric(dim);
    let mut a = CooMatrix::new(n, n);
    let mut b = CooMatrix::new(np, n);
    let mut m = CooMatrix::new(np, np);
    for (e, el) in products.elements.iter().enumerate() {
        let nodes = products.mesh.element(e);
        let mut dofs: Vec<usize> = Vec::new();
        for &nd in nodes {
            dofs.extend((0..dim).map(|c| dofmap.node_dof(nd, c)));
        }
        dofs.extend((0..dim).map(|c| dofmap.bubble_dof(e, c).expect("MINI needs bubble dofs")));
        let nl = dofs.len();
        let mut ke = vec![T::zero(); nl * nl];
        let mut be = vec![T::zero(); (dim + 1) * nl];
        for (q, &w) in rule.points.iter().zip(&rule.weights) {
            let x = cell_point(&el.points[..=dim], q);
            let lam = el.barycentric(&x);
            let (_, gb) = eval_bubble(BubbleKind::Power, dim, &lam, &el.grads, None);
            let mut grads = el.grads[..=dim].to_vec();
            grads.push(gb);
            let cols: Vec<[T; 6]> = (0..nl)
                .map(|j| crate::smoothing::strain_column(dim, &grads[j / dim], j % dim))
                .collect();
            let s = w * el.measure;
            for i in 0..nl {
                for j in 0..nl {
                    let v: T = sum((0..dev.len()).map(|r| cols[i][r] * dev[r][r] * cols[j][r]));
                    ke[i * nl + j] += s * v;
                }
                let div = grads[i / dim][i % dim];
                for p in 0..=dim {
                    be[p * nl + i] += s * lam[p] * div;
                }
            }
        }
        for i in 0..nl {
            for j in 0..nl {
                a.push(dofs[i], dofs[j], ke[i * nl + j]);
            }
        }
        for p in 0..=dim {
            for i in 0..nl {
                b.push(nodes[p], dofs[i], be[p * nl + i]);
            }
            for r in 0..=dim {
                let k = T::from_usize_lossy((dim + 1) * (dim + 2));
                let v = if p == r { T::lit(2.0) } else { T::one() };
                m.push(nodes[p], nodes[r], el.measure * v / k);
            }
        }
    }
    (a.to_csr(), b.to_csr(), m.to_csr())
}

/// Baseline methods on the products built for `method`'s domain kind.
pub fn assemble_baseline<T: Real>(
    method: Method,
    products: &MeshProducts<T>,
    material: Material<T>,
    traction: &Traction<'_, T>,
) -> Result<Assembled<T>> {
    let dim = products.dim();
    if !method.supports(dim) {
        return Err(Error::InvalidInput(format!("{method} is not available in {dim}D")));
    }
    let (dofmap, a, b, c, blocks, bubble) = match method {
        Method::FemT3 => {
            let dofmap = DofMap::new(&products.mesh, false, false);
            let a = assemble_fem_stiffness(products, &dofmap, &material);
            let blocks = element_blocks(products, &dofmap);
            (dofmap, a, None, None, blocks, None)
        }
        Method::EsFem | Method::NsFem | Method::FsFem => {
            if products.dual.kind != method.domain_kind(dim) {
                return Err(Error::InvalidInput(format!("{method} needs {:?} domains", method.domain_kind(dim))));
            }
            let dofmap = DofMap::new(&products.mesh, false, false);
            let (a, blocks) = assemble_smoothed_stiffness(products, &dofmap, &material)?;
            (dofmap, a, None, None, blocks, None)
        }
        Method::Mini => {
            let dofmap = DofMap::new(&products.mesh, true, true);
            let (a, b, m) = assemble_mini(products, &dofmap, &material);
            (dofmap, a, Some(b), Some(PressureMass::Consistent(m)), Vec::new(), Some(BubbleKind::Power))
        }
        Method::BesFem | Method::BfsFem => {
            return Err(Error::InvalidInput(format!("{method} is not a baseline method")));
        }
    };
    let f = assemble_loads(products, &dofmap, traction);
    Ok(Assembled { bundle: OperatorBundle { method, dofmap, a, b, c, f, material }, blocks, bubble })
}
