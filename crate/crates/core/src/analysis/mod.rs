//! Reference solutions, error norms, convergence rates and reports.

mod field;
mod norms;
mod pipe;
mod profile;
mod rates;
mod report;

pub use field::DiscreteField;
pub use norms::{error_displacement, error_energy, error_pressure, EnergyError, ExactField};
pub use pipe::ExactPipeSolution;
pub use profile::{pressure_profile, PressureProfile};
pub use rates::{fit_rate, richardson};
pub use report::{ErrorReport, ErrorRow, RateFit};

#[cfg(test)]
mod tests;
