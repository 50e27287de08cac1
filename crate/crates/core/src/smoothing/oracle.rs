use super::MeshProducts;
use crate::basis::{simplex_quadrature, BubbleKind};
use crate::geom::Point;
use crate::Real;

/// Volume average of a displacement gradient over smoothing domain `k`,
/// integrated micro-cell by micro-cell with a degree-6 rule. `grad(cell, x)`
/// returns `∂u_i/∂x_j` as `[i][j]` and only needs to be smooth per micro-cell.
pub fn oracle_volume_average<T: Real>(
    products: &MeshProducts<T>,
    k: usize,
    grad: impl Fn(usize, &Point<T>) -> [[T; 3]; 3],
) -> [[T; 3]; 3] {
    let dim = products.dim();
    let domain = &products.dual.domains[k];
    let rule = simplex_quadrature::<T>(dim, 6);
    let mut acc = [[T::zero(); 3]; 3];
    for &c in &domain.cells {
        let cell = products.micro.cell(c);
        let pts = cell.points(dim);
        for (q, &w) in rule.points.iter().zip(&rule.weights) {
            let mut x = [T::zero(); 3];
            for (i, p) in pts.iter().enumerate() {
                for r in 0..3 {
                    x[r] += q[i] * p[r];
                }
            }
            let g = grad(c, &x);
            for i in 0..3 {
                for j in 0..3 {
                    acc[i][j] += w * cell.measure * g[i][j];
                }
            }
        }
    }
    let inv = T::one() / domain.measure;
    acc.map(|row| row.map(|v| v * inv))
}

/// Gradient of the enriched field with global coefficients `u` inside a micro-cell.
pub(crate) fn field_gradient<T: Real>(
    products: &MeshProducts<T>,
    bubble: Option<BubbleKind>,
    dofmap: &crate::dofs::DofMap,
    u: &[T],
    cell: usize,
    x: &Point<T>,
) -> [[T; 3]; 3] {
    let dim = products.dim();
    let mc = products.micro.cell(cell);
    let el = &products.elements[mc.element];
    let mut g = [[T::zero(); 3]; 3];
    for (a, &n) in products.mesh.element(mc.element).iter().enumerate() {
        for i in 0..dim {
            let ui = u[dofmap.node_dof(n, i)];
            for j in 0..dim {
                g[i][j] += ui * el.grads[a][j];
            }
        }
    }
    if let Some(kind) = bubble {
        let lam = el.barycentric(x);
        let (_, gb) = crate::basis::eval_bubble(kind, dim, &lam, &el.grads, Some(mc.opposite));
        for i in 0..dim {
            let ui = u[dofmap.bubble_dof(mc.element, i).expect("bubble dofs present")];
            for j in 0..dim {
                g[i][j] += ui * gb[j];
            }
        }
    }
    g
}
