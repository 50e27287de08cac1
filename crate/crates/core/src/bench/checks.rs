//! Structural property checks shared by the `check` command and the
//! acceptance suite.

use serde::{Deserialize, Serialize};

use crate::assembly::{
    assemble_b_bar, assemble_bubble_smoothed, assemble_c_bar, assemble_h1_gram, assemble_plain_b, Material,
    PressureMass, Traction,
};
use crate::basis::BubbleKind;
use crate::dofs::DofMap;
use crate::smoothing::{strain_blocks, MeshProducts};
use crate::solve::{infsup_measure, solve, solve_mixed};
use crate::sparse::{norm2, CsrMatrix};
use crate::{Real, Result};

fn no_load(_: &crate::geom::Point<f64>, _: &crate::geom::Point<f64>) -> crate::geom::Point<f64> {
    [0.0; 3]
}

fn smoothed_and_plain(products: &MeshProducts<f64>, bubble: BubbleKind) -> Result<(CsrMatrix<f64>, CsrMatrix<f64>, DofMap)> {
    let asm = assemble_bubble_smoothed(products, Material::new(1.0, 0.3)?, bubble, &no_load)?;
    let plain = assemble_plain_b(products, &asm.bundle.dofmap, Some(bubble));
    Ok((asm.bundle.b.expect("mixed operators"), plain, asm.bundle.dofmap))
}

/// `max |B̄_ij − B_ij| / max |B|` over vertex columns.
pub fn vertex_column_deviation(products: &MeshProducts<f64>, bubble: BubbleKind) -> Result<f64> {
    let (b_bar, plain, dofmap) = smoothed_and_plain(products, bubble)?;
    let scale = plain.max_abs();
    let mut worst: f64 = 0.0;
    for i in 0..b_bar.nrows {
        for j in 0..dofmap.num_vertex_dofs() {
            worst = worst.max((b_bar.get(i, j) - plain.get(i, j)).abs());
        }
    }
    Ok(worst / scale)
}

/// Entrywise comparison of bubble columns of `B̄` and `B`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BubbleRatio {
    /// Mean of `B̄_ij / B_ij` over entries with `|B_ij| > 1e-8 max |B|`.
    pub mean: f64,
    /// `(max − min) / |mean|` of the same ratios.
    pub spread: f64,
    /// `max |B̄ − α B| / max |B|` for the `α` that was asked about.
    pub deviation: f64,
    pub entries: usize,
}

pub fn bubble_column_ratio(products: &MeshProducts<f64>, bubble: BubbleKind, alpha: f64) -> Result<BubbleRatio> {
    let (b_bar, plain, dofmap) = smoothed_and_plain(products, bubble)?;
    let scale = plain.max_abs();
    let (mut lo, mut hi, mut sum, mut count) = (f64::INFINITY, f64::NEG_INFINITY, 0.0, 0usize);
    let mut deviation: f64 = 0.0;
    for i in 0..b_bar.nrows {
        for j in dofmap.num_vertex_dofs()..dofmap.num_displacement() {
            let (s, p) = (b_bar.get(i, j), plain.get(i, j));
            deviation = deviation.max((s - alpha * p).abs());
            if p.abs() > 1e-8 * scale {
                let r = s / p;
                lo = lo.min(r);
                hi = hi.max(r);
                sum += r;
                count += 1;
            }
        }
    }
    let mean = sum / count.max(1) as f64;
    Ok(BubbleRatio { mean, spread: (hi - lo) / mean.abs(), deviation: deviation / scale, entries: count })
}

/// Largest relative violation of the measure identities over all incidences:
/// `m(V_i ∩ T ∩ Ω_k) = m(T)/(d(d+1))`, `m(Ω_k ∩ T) = m(V_i ∩ T) = m(T)/(d+1)`
/// and `m(Ω_k) = Σ_T m(Ω_k ∩ T)`.
pub fn mesh_identity_residual(products: &MeshProducts<f64>) -> f64 {
    let d = products.dim() as f64;
    let micro = &products.micro;
    let mut worst: f64 = 0.0;
    let mut check = |got: f64, want: f64| worst = worst.max((got - want).abs() / want.abs());
    for e in 0..products.mesh.num_elements() {
        let m_t = products.mesh.element_measure(e);
        let mut triple: std::collections::HashMap<(usize, usize), f64> = Default::default();
        let mut by_node: std::collections::HashMap<usize, f64> = Default::default();
        for c in micro.element_cells(e) {
            let cell = micro.cell(c);
            *triple.entry((cell.node, products.dual.cell_domain[c])).or_default() += cell.measure;
            *by_node.entry(cell.node).or_default() += cell.measure;
        }
        if products.dual.kind != crate::mesh::DomainKind::Node {
            for (_, m) in triple {
                check(m, m_t / (d * (d + 1.0)));
            }
        }
        for (_, m) in by_node {
            check(m, m_t / (d + 1.0));
        }
    }
    for domain in &products.dual.domains {
        let total: f64 = domain.elements.iter().map(|&(_, m)| m).sum();
        check(domain.measure, total);
        if products.dual.kind != crate::mesh::DomainKind::Node {
            for &(e, m) in &domain.elements {
                check(m, products.mesh.element_measure(e) / (d + 1.0));
            }
        }
    }
    for cell in &products.third.cells {
        let total: f64 = cell.overlaps.iter().map(|&(_, m)| m).sum();
        check(cell.measure, total);
    }
    worst
}

/// Relative gaps `(displacement, pressure)` between the mixed and the
/// condensed bubble-smoothed solves, computed in the scalar type `T`.
pub fn condensation_gap<T: Real>(
    products: &MeshProducts<T>,
    material: Material<T>,
    bubble: BubbleKind,
    traction: &Traction<'_, T>,
) -> Result<(f64, f64)> {
    let asm = assemble_bubble_smoothed(products, material, bubble, traction)?;
    let mixed = solve_mixed(&asm.bundle, material.lambda)?;
    let cond = solve(&asm, products)?;
    let rel = |a: &[T], b: &[T]| {
        let d: Vec<T> = a.iter().zip(b).map(|(&x, &y)| x - y).collect();
        (norm2(&d) / norm2(b)).as_f64()
    };
    Ok((rel(&cond.displacement, &mixed.displacement), rel(&cond.pressure, &mixed.pressure)))
}

/// Inf-sup constant of the smoothed divergence against third-mesh pressures.
/// `bubble = None` gives the bubble-free edge/face smoothed pairing.
pub fn smoothed_infsup(products: &MeshProducts<f64>, bubble: Option<BubbleKind>) -> Result<f64> {
    let dofmap = DofMap::new(&products.mesh, bubble.is_some(), true);
    let blocks = strain_blocks(products, bubble, &dofmap)?;
    let b = assemble_b_bar(products, &blocks, &dofmap);
    let g = assemble_h1_gram(products, &dofmap, bubble);
    infsup_measure(&b, &g, &PressureMass::Diagonal(assemble_c_bar(products)), dofmap.constrained())
}
