//! JSON mesh exchange format:
//!
//! ```json
//! {"dimension": 2,
//!  "nodes": [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]],
//!  "elements": [[0, 1, 2]],
//!  "boundary": [{"facet": [0, 1], "label": "clamped"}]}
//! ```
//!
//! Labels are `clamped`, `roller-x`, `roller-y`, `traction` or `free`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{BoundaryFacet, BoundaryLabel, PrimalMesh};
use crate::{Error, Real, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshFile {
    pub dimension: usize,
    pub nodes: Vec<Vec<f64>>,
    pub elements: Vec<Vec<usize>>,
    pub boundary: Vec<BoundaryEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryEntry {
    pub facet: Vec<usize>,
    pub label: BoundaryLabel,
}

impl MeshFile {
    pub fn from_mesh<T: Real>(mesh: &PrimalMesh<T>) -> Self {
        let d = mesh.dim();
        MeshFile {
            dimension: d,
            nodes: mesh.nodes().iter().map(|p| p[..d].iter().map(|x| x.as_f64()).collect()).collect(),
            elements: mesh.elements().map(|e| e.to_vec()).collect(),
            boundary: mesh
                .boundary()
                .iter()
                .map(|f| BoundaryEntry { facet: f.nodes.clone(), label: f.label })
                .collect(),
        }
    }

    pub fn to_mesh<T: Real>(&self) -> Result<PrimalMesh<T>> {
        let d = self.dimension;
        let nodes = self
            .nodes
            .iter()
            .map(|p| {
                if p.len() != d {
                    return Err(Error::InvalidInput(format!("node with {} coordinates in a {d}D mesh", p.len())));
                }
                let mut q = [T::zero(); 3];
                for (c, &x) in p.iter().enumerate() {
                    q[c] = T::lit(x);
                }
                Ok(q)
            })
            .collect::<Result<Vec<_>>>()?;
        let boundary = self
            .boundary
            .iter()
            .map(|b| BoundaryFacet { nodes: b.facet.clone(), label: b.label })
            .collect();
        PrimalMesh::new(d, nodes, self.elements.clone(), boundary)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)?)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{generate_benchmark_mesh, Geometry, Resolution};

    #[test]
    fn json_roundtrip() {
        let mesh = generate_benchmark_mesh::<f64>(&Geometry::Cook, &Resolution::PerSide(3)).unwrap();
        let text = serde_json::to_string(&MeshFile::from_mesh(&mesh)).unwrap();
        let back: MeshFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_mesh::<f64>().unwrap(), mesh);
    }

    #[test]
    fn parses_documented_example() {
        let text = r#"{"dimension": 2, "nodes": [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]],
            "elements": [[0, 1, 2]], "boundary": [{"facet": [0, 1], "label": "roller-y"}]}"#;
        let mesh = serde_json::from_str::<MeshFile>(text).unwrap().to_mesh::<f64>().unwrap();
        assert_eq!(mesh.boundary()[0].label, BoundaryLabel::RollerY);
    }

    #[test]
    fn rejects_inverted_element() {
        let f = MeshFile {
            dimension: 2,
            nodes: vec![vec![0.0, 0.0], vec![0.0, 1.0], vec![1.0, 0.0]],
            elements: vec![vec![0, 1, 2]],
            boundary: vec![],
        };
        assert!(matches!(f.to_mesh::<f64>(), Err(Error::DegenerateElement { element: 0 })));
    }
}
