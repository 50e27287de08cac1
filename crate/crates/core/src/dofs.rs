//! Global numbering of displacement and pressure unknowns.

use crate::mesh::PrimalMesh;
use crate::Real;

/// Scalar shape function attached to a domain or element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisFn {
    /// Linear nodal function of a global node.
    Node(usize),
    /// Bubble of an element.
    Bubble(usize),
}

/// Vertex dofs come first (`dim * node + c`), then bubble dofs
/// (`dim * (num_nodes + element) + c`). Pressure dofs are numbered
/// separately, one per node.
#[derive(Debug, Clone, PartialEq)]
pub struct DofMap {
    dim: usize,
    num_nodes: usize,
    num_elements: usize,
    bubbles: bool,
    pressures: usize,
    constrained: Vec<bool>,
}

impl DofMap {
    /// Constraints follow the mesh boundary labels; bubble dofs are never constrained.
    pub fn new<T: Real>(mesh: &PrimalMesh<T>, bubbles: bool, pressure: bool) -> Self {
        let dim = mesh.dim();
        let n = dim * (mesh.num_nodes() + if bubbles { mesh.num_elements() } else { 0 });
        let mut constrained = vec![false; n];
        for f in mesh.boundary() {
            for &c in f.label.fixed_components(dim) {
                for &node in &f.nodes {
                    constrained[dim * node + c] = true;
                }
            }
        }
        DofMap {
            dim,
            num_nodes: mesh.num_nodes(),
            num_elements: mesh.num_elements(),
            bubbles,
            pressures: if pressure { mesh.num_nodes() } else { 0 },
            constrained,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn has_bubbles(&self) -> bool {
        self.bubbles
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn num_displacement(&self) -> usize {
        self.constrained.len()
    }

    pub fn num_vertex_dofs(&self) -> usize {
        self.dim * self.num_nodes
    }

    pub fn num_pressure(&self) -> usize {
        self.pressures
    }

    pub fn node_dof(&self, node: usize, c: usize) -> usize {
        self.dim * node + c
    }

    pub fn bubble_dof(&self, element: usize, c: usize) -> Option<usize> {
        (self.bubbles && element < self.num_elements).then(|| self.dim * (self.num_nodes + element) + c)
    }

    pub fn function_dof(&self, f: BasisFn, c: usize) -> Option<usize> {
        match f {
            BasisFn::Node(n) => Some(self.node_dof(n, c)),
            BasisFn::Bubble(e) => self.bubble_dof(e, c),
        }
    }

    pub fn is_bubble_dof(&self, dof: usize) -> bool {
        dof >= self.num_vertex_dofs()
    }

    pub fn constrained(&self) -> &[bool] {
        &self.constrained
    }

    pub fn is_constrained(&self, dof: usize) -> bool {
        self.constrained[dof]
    }

    /// Replaces the constraint table (e.g. to drop all constraints).
    pub fn with_constraints(mut self, constrained: Vec<bool>) -> Self {
        assert_eq!(constrained.len(), self.constrained.len());
        self.constrained = constrained;
        self
    }
}
