use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("element {element} has non-positive measure")]
    DegenerateElement { element: usize },
    #[error("mesh distortion could not keep elements positive around node {node}")]
    Distortion { node: usize },
    #[error("smoothing domain {domain} has zero measure")]
    EmptyDomain { domain: usize },
    #[error("singular system: zero pivot at row {row} ({hint})")]
    Singular { row: usize, hint: &'static str },
    #[error("{what} did not converge: {detail}")]
    NonConvergence { what: &'static str, detail: String },
    #[error("non-positive jacobian on smoothing domain {domain}")]
    InvertedDomain { domain: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
