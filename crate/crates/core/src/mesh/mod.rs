//! Primal simplicial mesh and the dual / third meshes derived from it.

mod distort;
mod domains;
mod generate;
mod io;
mod micro;
mod topology;

pub use distort::distort_mesh;
pub use domains::{
    build_pressure_cells, build_smoothing_domains, DomainFacet, DomainKind, DualMesh, PressureCell,
    SmoothingDomain, ThirdMesh,
};
pub use generate::{
    generate_benchmark_mesh, Geometry, Resolution, BLOCK_HALF_WIDTH, BLOCK_HEIGHT, BLOCK_PATCH_HALF, COOK_CORNERS,
};
pub use io::{BoundaryEntry, MeshFile};
pub use micro::{build_micro_decomposition, MicroCell, MicroCellDecomposition, PointKey};
pub use topology::{build_topology, Topology};

use serde::{Deserialize, Serialize};

use crate::geom::{signed_measure, Point};
use crate::{Error, Real, Result};
use crate::scalar::sum;

/// Boundary condition tag carried by each boundary facet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundaryLabel {
    /// All displacement components fixed.
    Clamped,
    /// x-displacement fixed (symmetry plane normal to x).
    RollerX,
    /// y-displacement fixed (symmetry plane normal to y).
    RollerY,
    /// Loaded by a prescribed traction.
    Traction,
    Free,
}

impl BoundaryLabel {
    /// Displacement components fixed by this label.
    pub fn fixed_components(self, dim: usize) -> &'static [usize] {
        match (self, dim) {
            (BoundaryLabel::Clamped, 2) => &[0, 1],
            (BoundaryLabel::Clamped, _) => &[0, 1, 2],
            (BoundaryLabel::RollerX, _) => &[0],
            (BoundaryLabel::RollerY, _) => &[1],
            _ => &[],
        }
    }
}

/// Boundary facet: `dim` node indices plus a label.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryFacet {
    pub nodes: Vec<usize>,
    pub label: BoundaryLabel,
}

/// Triangle (2D) or tetrahedron (3D) mesh with positively oriented elements.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimalMesh<T> {
    dim: usize,
    nodes: Vec<Point<T>>,
    elements: Vec<usize>,
    boundary: Vec<BoundaryFacet>,
}

impl<T: Real> PrimalMesh<T> {
    /// Builds a mesh and checks indices and orientation.
    pub fn new(
        dim: usize,
        nodes: Vec<Point<T>>,
        elements: Vec<Vec<usize>>,
        boundary: Vec<BoundaryFacet>,
    ) -> Result<Self> {
        if dim != 2 && dim != 3 {
            return Err(Error::InvalidInput(format!("dimension {dim} not supported")));
        }
        let mut flat = Vec::with_capacity(elements.len() * (dim + 1));
        for (e, el) in elements.iter().enumerate() {
            if el.len() != dim + 1 {
                return Err(Error::InvalidInput(format!(
                    "element {e} has {} nodes, expected {}",
                    el.len(),
                    dim + 1
                )));
            }
            if el.iter().any(|&n| n >= nodes.len()) {
                return Err(Error::InvalidInput(format!("element {e} references a missing node")));
            }
            flat.extend_from_slice(el);
        }
        for f in &boundary {
            if f.nodes.len() != dim || f.nodes.iter().any(|&n| n >= nodes.len()) {
                return Err(Error::InvalidInput("malformed boundary facet".into()));
            }
        }
        let mesh = PrimalMesh { dim, nodes, elements: flat, boundary };
        for e in 0..mesh.num_elements() {
            if !(mesh.element_measure(e) > T::zero()) {
                return Err(Error::DegenerateElement { element: e });
            }
        }
        Ok(mesh)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_elements(&self) -> usize {
        self.elements.len() / (self.dim + 1)
    }

    pub fn nodes(&self) -> &[Point<T>] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &Point<T> {
        &self.nodes[i]
    }

    pub fn element(&self, e: usize) -> &[usize] {
        let k = self.dim + 1;
        &self.elements[e * k..(e + 1) * k]
    }

    pub fn elements(&self) -> impl Iterator<Item = &[usize]> {
        self.elements.chunks(self.dim + 1)
    }

    pub fn element_points(&self, e: usize) -> Vec<Point<T>> {
        self.element(e).iter().map(|&n| self.nodes[n]).collect()
    }

    pub fn element_measure(&self, e: usize) -> T {
        signed_measure(self.dim, &self.element_points(e))
    }

    pub fn total_measure(&self) -> T {
        sum((0..self.num_elements()).map(|e| self.element_measure(e)))
    }

    pub fn element_centroid(&self, e: usize) -> Point<T> {
        crate::geom::centroid(&self.element_points(e))
    }

    pub fn boundary(&self) -> &[BoundaryFacet] {
        &self.boundary
    }

    /// Same mesh in another scalar type.
    pub fn cast<U: Real>(&self) -> PrimalMesh<U> {
        PrimalMesh {
            dim: self.dim,
            nodes: self.nodes.iter().map(|p| p.map(|x| U::lit(x.as_f64()))).collect(),
            elements: self.elements.clone(),
            boundary: self.boundary.clone(),
        }
    }

    /// Replaces node coordinates, re-validating orientation.
    pub fn with_nodes(&self, nodes: Vec<Point<T>>) -> Result<Self> {
        if nodes.len() != self.nodes.len() {
            return Err(Error::InvalidInput("node count mismatch".into()));
        }
        let mesh = PrimalMesh { nodes, ..self.clone() };
        for e in 0..mesh.num_elements() {
            if !(mesh.element_measure(e) > T::zero()) {
                return Err(Error::DegenerateElement { element: e });
            }
        }
        Ok(mesh)
    }

    /// Nodes lying on at least one boundary facet.
    pub fn boundary_nodes(&self) -> Vec<bool> {
        let mut on = vec![false; self.num_nodes()];
        for f in &self.boundary {
            for &n in &f.nodes {
                on[n] = true;
            }
        }
        on
    }

    /// Finds the element containing `x` and its barycentric coordinates.
    pub fn locate(&self, x: &Point<T>) -> Option<(usize, [T; 4])> {
        let tol = T::lit(-1e-10);
        (0..self.num_elements()).find_map(|e| {
            let lam = crate::geom::barycentric(self.dim, &self.element_points(e), x);
            lam[..=self.dim].iter().all(|&l| l >= tol).then_some((e, lam))
        })
    }

    /// Index of the node closest to `x`.
    pub fn nearest_node(&self, x: &Point<T>) -> usize {
        let mut best = (0, T::infinity());
        for (i, p) in self.nodes.iter().enumerate() {
            let d = crate::geom::distance(p, x);
            if d < best.1 {
                best = (i, d);
            }
        }
        best.0
    }
}
