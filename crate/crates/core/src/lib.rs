//! Bubble-enriched smoothed finite elements for nearly incompressible
//! elasticity on triangles and tetrahedra.

pub mod analysis;
pub mod assembly;
pub mod basis;
pub mod bench;
pub mod dofs;
pub mod error;
pub mod geom;
pub mod hyperelastic;
pub mod mesh;
pub mod scalar;
pub mod smoothing;
pub mod solve;
pub mod sparse;

pub use error::{Error, Result};
pub use scalar::Real;

/// Double precision instances of the generic types.
pub type Mesh = mesh::PrimalMesh<f64>;
pub type Products = smoothing::MeshProducts<f64>;
pub type Assembled = assembly::Assembled<f64>;
pub type Solution = solve::SolutionField<f64>;
pub type Material = assembly::Material<f64>;
pub type Field<'a> = analysis::DiscreteField<'a, f64>;
