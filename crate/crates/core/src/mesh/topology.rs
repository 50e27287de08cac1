use std::collections::HashMap;

use super::{BoundaryLabel, PrimalMesh};
use crate::Real;

pub(crate) const TRI_EDGES: [[usize; 2]; 3] = [[0, 1], [1, 2], [2, 0]];
pub(crate) const TET_EDGES: [[usize; 2]; 6] = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];
/// Local face `j` of a tetrahedron is opposite local vertex `j`.
pub(crate) const TET_FACES: [[usize; 3]; 4] = [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]];

/// Edge and face incidence of a primal mesh.
#[derive(Debug, Clone)]
pub struct Topology {
    dim: usize,
    pub edges: Vec<[usize; 2]>,
    pub edge_elements: Vec<Vec<usize>>,
    /// Per element, global edge ids in local edge order.
    pub element_edges: Vec<Vec<usize>>,
    pub faces: Vec<[usize; 3]>,
    pub face_elements: Vec<Vec<usize>>,
    /// Per element, global face ids; local face `j` is opposite vertex `j`.
    pub element_faces: Vec<Vec<usize>>,
    facet_labels: Vec<Option<BoundaryLabel>>,
}

fn sorted<const N: usize>(mut a: [usize; N]) -> [usize; N] {
    a.sort_unstable();
    a
}

pub fn build_topology<T: Real>(mesh: &PrimalMesh<T>) -> Topology {
    let dim = mesh.dim();
    let local_edges: &[[usize; 2]] = if dim == 2 { &TRI_EDGES } else { &TET_EDGES };

    let mut edge_index: HashMap<[usize; 2], usize> = HashMap::new();
    let mut edges = Vec::new();
    let mut edge_elements: Vec<Vec<usize>> = Vec::new();
    let mut element_edges = Vec::with_capacity(mesh.num_elements());
    for (e, el) in mesh.elements().enumerate() {
        let mut ids = Vec::with_capacity(local_edges.len());
        for le in local_edges {
            let key = sorted([el[le[0]], el[le[1]]]);
            let id = *edge_index.entry(key).or_insert_with(|| {
                edges.push(key);
                edge_elements.push(Vec::new());
                edges.len() - 1
            });
            edge_elements[id].push(e);
            ids.push(id);
        }
        element_edges.push(ids);
    }

    let mut faces = Vec::new();
    let mut face_elements: Vec<Vec<usize>> = Vec::new();
    let mut element_faces = Vec::new();
    let mut face_index: HashMap<[usize; 3], usize> = HashMap::new();
    if dim == 3 {
        for (e, el) in mesh.elements().enumerate() {
            let mut ids = Vec::with_capacity(4);
            for lf in &TET_FACES {
                let key = sorted([el[lf[0]], el[lf[1]], el[lf[2]]]);
                let id = *face_index.entry(key).or_insert_with(|| {
                    faces.push(key);
                    face_elements.push(Vec::new());
                    faces.len() - 1
                });
                face_elements[id].push(e);
                ids.push(id);
            }
            element_faces.push(ids);
        }
    }

    let n_facets = if dim == 2 { edges.len() } else { faces.len() };
    let mut facet_labels = vec![None; n_facets];
    for f in mesh.boundary() {
        let id = if dim == 2 {
            edge_index.get(&sorted([f.nodes[0], f.nodes[1]])).copied()
        } else {
            face_index.get(&sorted([f.nodes[0], f.nodes[1], f.nodes[2]])).copied()
        };
        if let Some(id) = id {
            facet_labels[id] = Some(f.label);
        }
    }

    Topology {
        dim,
        edges,
        edge_elements,
        element_edges,
        faces,
        face_elements,
        element_faces,
        facet_labels,
    }
}

impl Topology {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Codimension-one entities: edges in 2D, faces in 3D.
    pub fn num_facets(&self) -> usize {
        if self.dim == 2 {
            self.edges.len()
        } else {
            self.faces.len()
        }
    }

    pub fn facet_nodes(&self, f: usize) -> &[usize] {
        if self.dim == 2 {
            &self.edges[f]
        } else {
            &self.faces[f]
        }
    }

    pub fn facet_elements(&self, f: usize) -> &[usize] {
        if self.dim == 2 {
            &self.edge_elements[f]
        } else {
            &self.face_elements[f]
        }
    }

    pub fn is_boundary_facet(&self, f: usize) -> bool {
        self.facet_elements(f).len() == 1
    }

    pub fn boundary_facets(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_facets()).filter(|&f| self.is_boundary_facet(f))
    }

    /// Label of a boundary facet; unlabeled boundary facets count as free.
    pub fn facet_label(&self, f: usize) -> Option<BoundaryLabel> {
        if !self.is_boundary_facet(f) {
            return None;
        }
        Some(self.facet_labels[f].unwrap_or(BoundaryLabel::Free))
    }
}
