use crate::basis::{eval_bubble, simplex_quadrature, BubbleKind};
use crate::dofs::DofMap;
use crate::smoothing::{voigt_size, MeshProducts, SmoothedStrainBlock};
use crate::sparse::{CooMatrix, CsrMatrix};
use crate::Real;
use crate::scalar::sum;

/// `Σ_k m(Ω_k) B_kᵀ D B_k` for a Voigt weight matrix `D`.
pub(crate) fn block_stiffness<T: Real>(blocks: &[SmoothedStrainBlock<T>], d: &[Vec<T>], n: usize) -> CsrMatrix<T> {
    let nv = d.len();
    let mut coo = CooMatrix::new(n, n);
    let mut db = Vec::new();
    for blk in blocks {
        let m = blk.dofs.len();
        // db = D B (nv × m)
        db.clear();
        db.resize(nv * m, T::zero());
        for r in 0..nv {
            for s in 0..nv {
                let w = d[r][s];
                if w != T::zero() {
                    for j in 0..m {
                        db[r * m + j] += w * blk.strain[s * m + j];
                    }
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                let v: T = sum((0..nv).map(|r| blk.strain[r * m + i] * db[r * m + j]));
                if v != T::zero() {
                    coo.push(blk.dofs[i], blk.dofs[j], blk.measure * v);
                }
            }
        }
    }
    coo.to_csr()
}

/// `Ā = Σ_k 2μ m(Ω_k) B̄_kᵀ diag(1, .., ½, ..) B̄_k`.
pub fn assemble_a_bar<T: Real>(blocks: &[SmoothedStrainBlock<T>], mu: T, n: usize) -> CsrMatrix<T> {
    let nv = blocks.first().map(|b| b.voigt_rows()).unwrap_or(3);
    let dim = if nv == 3 { 2 } else { 3 };
    debug_assert_eq!(voigt_size(dim), nv);
    let d = crate::assembly::Material::from_lame(T::zero(), mu).voigt_deviatoric(dim);
    block_stiffness(blocks, &d, n)
}

/// Row `i` of `B̄` is `Σ_k m(V_i ∩ Ω_k) div̄_k`.
pub fn assemble_b_bar<T: Real>(
    products: &MeshProducts<T>,
    blocks: &[SmoothedStrainBlock<T>],
    dofmap: &DofMap,
) -> CsrMatrix<T> {
    let mut coo = CooMatrix::new(products.third.cells.len(), dofmap.num_displacement());
    for (i, cell) in products.third.cells.iter().enumerate() {
        for &(k, overlap) in &cell.overlaps {
            let blk = &blocks[k];
            for (&dof, &dv) in blk.dofs.iter().zip(&blk.div) {
                coo.push(i, dof, overlap * dv);
            }
        }
    }
    coo.to_csr()
}

/// Diagonal `C̄` with entries `m(V_i)`.
pub fn assemble_c_bar<T: Real>(products: &MeshProducts<T>) -> Vec<T> {
    products.third.measures()
}

/// Unsmoothed `B_ij = ∫_{V_i} ∇·φ_j`, integrated exactly per micro-cell.
pub fn assemble_plain_b<T: Real>(products: &MeshProducts<T>, dofmap: &DofMap, bubble: Option<BubbleKind>) -> CsrMatrix<T> {
    let dim = products.dim();
    let rule = simplex_quadrature::<T>(dim, dim);
    let mut coo = CooMatrix::new(products.third.cells.len(), dofmap.num_displacement());
    for cell in products.micro.cells() {
        let el = &products.elements[cell.element];
        for (a, &n) in products.mesh.element(cell.element).iter().enumerate() {
            for c in 0..dim {
                coo.push(cell.node, dofmap.node_dof(n, c), cell.measure * el.grads[a][c]);
            }
        }
        if let Some(kind) = bubble {
            let mut g = [T::zero(); 3];
            for (q, &w) in rule.points.iter().zip(&rule.weights) {
                let x = cell_point(cell.points(dim), q);
                let (_, gb) = eval_bubble(kind, dim, &el.barycentric(&x), &el.grads, Some(cell.opposite));
                for c in 0..dim {
                    g[c] += w * cell.measure * gb[c];
                }
            }
            for (c, &gc) in g.iter().enumerate().take(dim) {
                if let Some(dof) = dofmap.bubble_dof(cell.element, c) {
                    coo.push(cell.node, dof, gc);
                }
            }
        }
    }
    coo.to_csr()
}

pub(crate) fn cell_point<T: Real>(pts: &[crate::geom::Point<T>], q: &[T; 4]) -> crate::geom::Point<T> {
    let mut x = [T::zero(); 3];
    for (i, p) in pts.iter().enumerate() {
        for r in 0..3 {
            x[r] += q[i] * p[r];
        }
    }
    x
}

/// `K = Ā + λ B̄ᵀ C̄⁻¹ B̄`.
pub fn assemble_condensed<T: Real>(a: &CsrMatrix<T>, b: &CsrMatrix<T>, c: &[T], lambda: T) -> CsrMatrix<T> {
    let mut coo = a.to_coo();
    for i in 0..b.nrows {
        let s = lambda / c[i];
        let row: Vec<(usize, T)> = b.row(i).collect();
        for &(j, u) in &row {
            for &(k, v) in &row {
                coo.push(j, k, s * u * v);
            }
        }
    }
    coo.to_csr()
}

/// Vector H¹-seminorm Gram matrix on the (optionally enriched) displacement space.
pub fn assemble_h1_gram<T: Real>(products: &MeshProducts<T>, dofmap: &DofMap, bubble: Option<BubbleKind>) -> CsrMatrix<T> {
    let dim = products.dim();
    let rule = simplex_quadrature::<T>(dim, 2 * dim);
    let mut coo = CooMatrix::new(dofmap.num_displacement(), dofmap.num_displacement());
    for cell in products.micro.cells() {
        let el = &products.elements[cell.element];
        let nodes = products.mesh.element(cell.element);
        for (q, &w) in rule.points.iter().zip(&rule.weights) {
            let x = cell_point(cell.points(dim), q);
            let mut fns: Vec<(Option<usize>, crate::geom::Point<T>)> = Vec::with_capacity(dim + 2);
            for (a, &n) in nodes.iter().enumerate() {
                fns.push((Some(n), el.grads[a]));
            }
            if let Some(kind) = bubble {
                let (_, gb) = eval_bubble(kind, dim, &el.barycentric(&x), &el.grads, Some(cell.opposite));
                fns.push((None, gb));
            }
            let s = w * cell.measure;
            for (fa, ga) in &fns {
                for (fb, gb) in &fns {
                    let v = s * crate::geom::dot(ga, gb);
                    for c in 0..dim {
                        let da = fa.map_or_else(|| dofmap.bubble_dof(cell.element, c).unwrap(), |n| dofmap.node_dof(n, c));
                        let db = fb.map_or_else(|| dofmap.bubble_dof(cell.element, c).unwrap(), |n| dofmap.node_dof(n, c));
                        coo.push(da, db, v);
                    }
                }
            }
        }
    }
    coo.to_csr()
}
