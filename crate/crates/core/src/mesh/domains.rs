//! Smoothing domains (dual mesh) and pressure cells (third mesh), both
//! assembled from micro-cells.

use std::collections::HashMap;

use super::micro::{MicroCellDecomposition, PointKey};
use crate::geom::{diameter, facet_normal, norm, scale, Point};
use crate::{Error, Real, Result};
use crate::scalar::sum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DomainKind {
    /// One domain per edge of a triangle mesh.
    Edge2d,
    /// One domain per face of a tetrahedral mesh.
    Face3d,
    /// One domain per node; same geometry as the pressure cells.
    Node,
}

/// Boundary piece of a smoothing domain, lying inside a single micro-cell.
#[derive(Debug, Clone)]
pub struct DomainFacet<T> {
    pub keys: [PointKey; 3],
    pub coords: [Point<T>; 3],
    /// Outward unit normal.
    pub normal: Point<T>,
    pub measure: T,
    /// Element whose basis functions are traced on this facet.
    pub element: usize,
    pub micro: usize,
}

impl<T: Real> DomainFacet<T> {
    pub fn points(&self, dim: usize) -> &[Point<T>] {
        &self.coords[..dim]
    }
}

#[derive(Debug, Clone)]
pub struct SmoothingDomain<T> {
    pub id: usize,
    pub kind: DomainKind,
    /// Owning edge, face or node.
    pub owner: usize,
    pub cells: Vec<usize>,
    pub measure: T,
    pub facets: Vec<DomainFacet<T>>,
    /// Overlapped elements with `m(Ω_k ∩ T)`, sorted by element.
    pub elements: Vec<(usize, T)>,
}

impl<T: Real> SmoothingDomain<T> {
    pub fn diameter(&self, dim: usize) -> T {
        let pts: Vec<Point<T>> = self.facets.iter().flat_map(|f| f.points(dim).to_vec()).collect();
        diameter(&pts)
    }
}

#[derive(Debug, Clone)]
pub struct DualMesh<T> {
    pub kind: DomainKind,
    pub domains: Vec<SmoothingDomain<T>>,
    /// Domain containing each micro-cell.
    pub cell_domain: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct PressureCell<T> {
    pub node: usize,
    pub cells: Vec<usize>,
    pub measure: T,
    /// `m(V_i ∩ Ω_k)` for each overlapped smoothing domain `k`, sorted by `k`.
    pub overlaps: Vec<(usize, T)>,
}

#[derive(Debug, Clone)]
pub struct ThirdMesh<T> {
    pub cells: Vec<PressureCell<T>>,
}

impl<T: Real> ThirdMesh<T> {
    pub fn measures(&self) -> Vec<T> {
        self.cells.iter().map(|c| c.measure).collect()
    }
}

pub fn build_smoothing_domains<T: Real>(micro: &MicroCellDecomposition<T>, kind: DomainKind) -> Result<DualMesh<T>> {
    let dim = micro.dim();
    match (kind, dim) {
        (DomainKind::Edge2d, 2) | (DomainKind::Face3d, 3) | (DomainKind::Node, _) => {}
        _ => return Err(Error::InvalidInput(format!("{kind:?} domains need a different dimension than {dim}"))),
    }
    let count = if kind == DomainKind::Node { micro.num_nodes() } else { micro.num_facets() };
    let cell_domain: Vec<usize> = micro
        .cells()
        .iter()
        .map(|c| if kind == DomainKind::Node { c.node } else { c.facet })
        .collect();
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
    for (c, &k) in cell_domain.iter().enumerate() {
        members[k].push(c);
    }
    let domains = members
        .into_iter()
        .enumerate()
        .map(|(k, cells)| build_domain(micro, kind, k, cells))
        .collect::<Result<Vec<_>>>()?;
    Ok(DualMesh { kind, domains, cell_domain })
}

fn build_domain<T: Real>(
    micro: &MicroCellDecomposition<T>,
    kind: DomainKind,
    id: usize,
    cells: Vec<usize>,
) -> Result<SmoothingDomain<T>> {
    let dim = micro.dim();
    let measure: T = sum(cells.iter().map(|&c| micro.cell(c).measure));
    if cells.is_empty() || !(measure > T::zero()) {
        return Err(Error::EmptyDomain { domain: id });
    }

    // Facets shared by two member cells are interior and cancel.
    let mut seen: HashMap<[PointKey; 3], Option<(usize, usize)>> = HashMap::new();
    let mut order = Vec::new();
    for &c in &cells {
        for skip in 0..=dim {
            let mut key = facet_keys(&micro.cell(c).keys, dim, skip);
            key[..dim].sort_unstable();
            match seen.get_mut(&key) {
                Some(slot) => *slot = None,
                None => {
                    seen.insert(key, Some((c, skip)));
                    order.push(key);
                }
            }
        }
    }
    let facets = order
        .into_iter()
        .filter_map(|key| seen[&key])
        .map(|(c, skip)| {
            let cell = micro.cell(c);
            let keys = facet_keys(&cell.keys, dim, skip);
            let mut coords = [[T::zero(); 3]; 3];
            for (j, i) in (0..=dim).filter(|&i| i != skip).enumerate() {
                coords[j] = cell.coords[i];
            }
            let n = facet_normal(dim, &coords[..dim], &cell.coords[skip]);
            let m = norm(&n);
            DomainFacet { keys, coords, normal: scale(&n, T::one() / m), measure: m, element: cell.element, micro: c }
        })
        .collect();

    let mut elements: Vec<(usize, T)> = Vec::new();
    for &c in &cells {
        let cell = micro.cell(c);
        match elements.iter_mut().find(|(e, _)| *e == cell.element) {
            Some(entry) => entry.1 += cell.measure,
            None => elements.push((cell.element, cell.measure)),
        }
    }
    elements.sort_by_key(|&(e, _)| e);

    Ok(SmoothingDomain { id, kind, owner: id, cells, measure, facets, elements })
}

fn facet_keys(keys: &[PointKey; 4], dim: usize, skip: usize) -> [PointKey; 3] {
    let mut out = [PointKey::Cell(usize::MAX); 3];
    for (j, i) in (0..=dim).filter(|&i| i != skip).enumerate() {
        out[j] = keys[i];
    }
    out
}

/// Builds the node-centred pressure cells and their overlaps with `dual`.
pub fn build_pressure_cells<T: Real>(micro: &MicroCellDecomposition<T>, dual: &DualMesh<T>) -> Result<ThirdMesh<T>> {
    let mut cells: Vec<PressureCell<T>> = (0..micro.num_nodes())
        .map(|node| PressureCell { node, cells: Vec::new(), measure: T::zero(), overlaps: Vec::new() })
        .collect();
    for (c, cell) in micro.cells().iter().enumerate() {
        let pc = &mut cells[cell.node];
        pc.cells.push(c);
        pc.measure += cell.measure;
        let k = dual.cell_domain[c];
        match pc.overlaps.iter_mut().find(|(d, _)| *d == k) {
            Some(entry) => entry.1 += cell.measure,
            None => pc.overlaps.push((k, cell.measure)),
        }
    }
    for pc in &mut cells {
        if pc.cells.is_empty() {
            return Err(Error::EmptyDomain { domain: pc.node });
        }
        pc.overlaps.sort_by_key(|&(k, _)| k);
    }
    Ok(ThirdMesh { cells })
}
