//! Benchmark scenarios, structural checks and acceptance thresholds.

mod checks;
mod config;
mod scenarios;
mod thresholds;
mod verdicts;

#[cfg(test)]
mod tests;

pub use checks::{
    bubble_column_ratio, condensation_gap, mesh_identity_residual, smoothed_infsup, vertex_column_deviation,
    BubbleRatio,
};
pub use config::{Scenario, ScenarioConfig};
pub use scenarios::{
    block_mesh, block_run, cook_mesh, cook_traction, emit_report, failed_row, format_table, neohookean_run, pipe_mesh, pipe_run,
    pressure_traction, run_scenario, LinearRun, ScenarioOutcome, BLOCK_POINT, COOK_EDGE, COOK_PROFILE_LINE,
    COOK_PROFILE_MESH, COOK_TIP, PIPE_RADII,
};
pub use thresholds::{Threshold, Thresholds};
pub use verdicts::{verdicts, Verdict};
