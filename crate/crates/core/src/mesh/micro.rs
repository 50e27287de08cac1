//! Canonical subdivision of each element into micro-simplices.
//!
//! A 2D micro-triangle is spanned by (vertex, midpoint of an edge through
//! the vertex, centroid); a 3D micro-tetrahedron by (vertex, edge midpoint,
//! face barycenter, centroid) with vertex ⊂ edge ⊂ face. Every dual and third
//! mesh cell is a union of these.

use super::topology::{TET_EDGES, TET_FACES, TRI_EDGES};
use super::{PrimalMesh, Topology};
use crate::geom::{centroid, signed_measure, Point};
use crate::{Error, Real, Result};

/// Global identity of a point used as a micro-simplex corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PointKey {
    Vertex(usize),
    /// Midpoint of a global edge.
    Edge(usize),
    /// Barycenter of a global face (3D only).
    Face(usize),
    /// Centroid of an element.
    Cell(usize),
}

#[derive(Debug, Clone)]
pub struct MicroCell<T> {
    pub element: usize,
    /// Global node owning the cell (membership in the pressure cell `V_i`).
    pub node: usize,
    pub local_vertex: usize,
    /// Global facet (edge in 2D, face in 3D) owning the cell.
    pub facet: usize,
    /// Local vertex of `element` opposite that facet.
    pub opposite: usize,
    /// Corners, positively oriented; only the first `dim + 1` are used.
    pub keys: [PointKey; 4],
    pub coords: [Point<T>; 4],
    pub measure: T,
}

impl<T: Real> MicroCell<T> {
    pub fn points(&self, dim: usize) -> &[Point<T>] {
        &self.coords[..=dim]
    }
}

#[derive(Debug, Clone)]
pub struct MicroCellDecomposition<T> {
    dim: usize,
    num_nodes: usize,
    num_facets: usize,
    num_elements: usize,
    cells: Vec<MicroCell<T>>,
    element_measures: Vec<T>,
}

impl<T: Real> MicroCellDecomposition<T> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn num_facets(&self) -> usize {
        self.num_facets
    }

    pub fn num_elements(&self) -> usize {
        self.num_elements
    }

    /// 6 in 2D, 24 in 3D.
    pub fn cells_per_element(&self) -> usize {
        if self.dim == 2 {
            6
        } else {
            24
        }
    }

    pub fn cells(&self) -> &[MicroCell<T>] {
        &self.cells
    }

    pub fn cell(&self, c: usize) -> &MicroCell<T> {
        &self.cells[c]
    }

    pub fn element_cells(&self, e: usize) -> std::ops::Range<usize> {
        let k = self.cells_per_element();
        e * k..(e + 1) * k
    }

    pub fn element_measure(&self, e: usize) -> T {
        self.element_measures[e]
    }
}

pub fn build_micro_decomposition<T: Real>(
    mesh: &PrimalMesh<T>,
    topo: &Topology,
) -> Result<MicroCellDecomposition<T>> {
    let dim = mesh.dim();
    let mut cells = Vec::with_capacity(mesh.num_elements() * if dim == 2 { 6 } else { 24 });
    let mut element_measures = Vec::with_capacity(mesh.num_elements());
    for e in 0..mesh.num_elements() {
        let el = mesh.element(e);
        let pts = mesh.element_points(e);
        let m = signed_measure(dim, &pts);
        if !(m > T::zero()) {
            return Err(Error::DegenerateElement { element: e });
        }
        element_measures.push(m);
        let c = centroid(&pts);
        let start = cells.len();
        if dim == 2 {
            for (le, ed) in TRI_EDGES.iter().enumerate() {
                let edge = topo.element_edges[e][le];
                let mid = centroid(&[pts[ed[0]], pts[ed[1]]]);
                let opposite = 3 - ed[0] - ed[1];
                for &lv in ed {
                    cells.push(oriented(
                        dim,
                        e,
                        el[lv],
                        lv,
                        edge,
                        opposite,
                        [PointKey::Vertex(el[lv]), PointKey::Edge(edge), PointKey::Cell(e), PointKey::Cell(e)],
                        [pts[lv], mid, c, c],
                    ));
                }
            }
        } else {
            for (lf, fv) in TET_FACES.iter().enumerate() {
                let face = topo.element_faces[e][lf];
                let bary = centroid(&[pts[fv[0]], pts[fv[1]], pts[fv[2]]]);
                for (le, ed) in TET_EDGES.iter().enumerate() {
                    if !fv.contains(&ed[0]) || !fv.contains(&ed[1]) {
                        continue;
                    }
                    let edge = topo.element_edges[e][le];
                    let mid = centroid(&[pts[ed[0]], pts[ed[1]]]);
                    for &lv in ed {
                        cells.push(oriented(
                            dim,
                            e,
                            el[lv],
                            lv,
                            face,
                            lf,
                            [
                                PointKey::Vertex(el[lv]),
                                PointKey::Edge(edge),
                                PointKey::Face(face),
                                PointKey::Cell(e),
                            ],
                            [pts[lv], mid, bary, c],
                        ));
                    }
                }
            }
        }
        for cell in &cells[start..] {
            if !(cell.measure > T::zero()) {
                return Err(Error::DegenerateElement { element: e });
            }
        }
    }
    Ok(MicroCellDecomposition {
        dim,
        num_nodes: mesh.num_nodes(),
        num_facets: topo.num_facets(),
        num_elements: mesh.num_elements(),
        cells,
        element_measures,
    })
}

#[allow(clippy::too_many_arguments)]
fn oriented<T: Real>(
    dim: usize,
    element: usize,
    node: usize,
    local_vertex: usize,
    facet: usize,
    opposite: usize,
    mut keys: [PointKey; 4],
    mut coords: [Point<T>; 4],
) -> MicroCell<T> {
    let mut measure = signed_measure(dim, &coords[..=dim]);
    if measure < T::zero() {
        keys.swap(1, 2);
        coords.swap(1, 2);
        measure = -measure;
    }
    MicroCell { element, node, local_vertex, facet, opposite, keys, coords, measure }
}
