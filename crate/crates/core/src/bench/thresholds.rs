use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

const BUILTIN: &str = include_str!("../../data/thresholds.json");

/// One acceptance threshold with its provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Threshold {
    pub value: f64,
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub rel_tol: Option<f64>,
    /// `PAPER` for published values, `DERIVED` for frozen baseline runs.
    pub source: String,
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Thresholds(pub BTreeMap<String, Threshold>);

impl Thresholds {
    pub fn builtin() -> Self {
        serde_json::from_str(BUILTIN).expect("bundled thresholds parse")
    }

    pub fn get(&self, key: &str) -> Result<&Threshold> {
        self.0.get(key).ok_or_else(|| Error::InvalidInput(format!("unknown threshold {key}")))
    }

    pub fn value(&self, key: &str) -> f64 {
        self.get(key).map(|t| t.value).unwrap_or(f64::NAN)
    }
}
