use crate::basis::boundary_quadrature;
use crate::dofs::DofMap;
use crate::geom::{facet_normal, norm, scale, Point};
use crate::mesh::BoundaryLabel;
use crate::smoothing::MeshProducts;
use crate::sparse::{CooMatrix, CsrMatrix};
use crate::Real;

/// Traction `t(x, n)` on facets labelled `traction`, `n` the outward unit normal.
pub type Traction<'a, T> = dyn Fn(&Point<T>, &Point<T>) -> Point<T> + Sync + 'a;

/// Consistent nodal loads from boundary tractions. Bubble dofs receive none.
pub fn assemble_loads<T: Real>(products: &MeshProducts<T>, dofmap: &DofMap, traction: &Traction<'_, T>) -> Vec<T> {
    let dim = products.dim();
    let topo = &products.topology;
    let rule = boundary_quadrature::<T>(dim - 1, 3);
    let mut f = vec![T::zero(); dofmap.num_displacement()];
    for facet in topo.boundary_facets() {
        if topo.facet_label(facet) != Some(BoundaryLabel::Traction) {
            continue;
        }
        let nodes = topo.facet_nodes(facet);
        let e = topo.facet_elements(facet)[0];
        let opposite = products
            .mesh
            .element(e)
            .iter()
            .copied()
            .find(|n| !nodes.contains(n))
            .expect("element has a vertex off its facet");
        let pts: Vec<Point<T>> = nodes.iter().map(|&n| *products.mesh.node(n)).collect();
        let nvec = facet_normal(dim, &pts, products.mesh.node(opposite));
        let area = norm(&nvec);
        let unit = scale(&nvec, T::one() / area);
        for (q, &w) in rule.points.iter().zip(&rule.weights) {
            let x = super::operators::cell_point(&pts, q);
            let t = traction(&x, &unit);
            for (a, &n) in nodes.iter().enumerate() {
                for c in 0..dim {
                    f[dofmap.node_dof(n, c)] += w * area * q[a] * t[c];
                }
            }
        }
    }
    f
}

/// Symmetric elimination of constrained dofs with prescribed `values`
/// (zero when `None`): constrained rows and columns become identity and the
/// right-hand side is corrected for the free rows.
pub fn apply_dirichlet<T: Real>(
    k: &CsrMatrix<T>,
    rhs: &[T],
    constrained: &[bool],
    values: Option<&[T]>,
) -> (CsrMatrix<T>, Vec<T>) {
    let n = k.nrows;
    let fixed = |i: usize| i < constrained.len() && constrained[i];
    let g = |i: usize| values.map_or(T::zero(), |v| v[i]);
    let mut b = rhs.to_vec();
    let mut coo = CooMatrix::new(n, n);
    for i in 0..n {
        if fixed(i) {
            coo.push(i, i, T::one());
            b[i] = g(i);
            continue;
        }
        for (j, v) in k.row(i) {
            if fixed(j) {
                b[i] -= v * g(j);
            } else {
                coo.push(i, j, v);
            }
        }
    }
    (coo.to_csr(), b)
}
