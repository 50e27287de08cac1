//! Compressible neo-Hookean extension on smoothed deformation gradients.

mod material;
mod model;
mod newton;

pub use material::{material_tangent, pk2_stress, strain_energy, Mat3, NeoHookeanParams, Tensor4};
pub use model::{DeformationState, HyperelasticModel};
pub use newton::{newton_load_stepping, LoadStep, NewtonOptions, NonlinearSolution};
