use std::io::Write;

use serde::{Deserialize, Serialize};

use super::rates::fit_rate;
use crate::Result;

type Getter = fn(&ErrorRow) -> Option<f64>;

/// CSV header, in serialization order of [`ErrorRow`].
pub const CSV_COLUMNS: [&str; 8] = ["method", "mesh_id", "h", "N_e", "err_u", "err_p", "err_E", "tip_uy"];

/// One row per (method, mesh) run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorRow {
    pub method: String,
    pub mesh_id: String,
    pub h: f64,
    #[serde(rename = "N_e")]
    pub n_e: usize,
    pub err_u: Option<f64>,
    pub err_p: Option<f64>,
    #[serde(rename = "err_E")]
    pub err_e: Option<f64>,
    pub tip_uy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateFit {
    pub method: String,
    pub quantity: String,
    pub rate: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub scenario: String,
    pub rows: Vec<ErrorRow>,
    pub rates: Vec<RateFit>,
    /// Scenario specific scalars (extrapolated tips, inf-sup values, ...).
    #[serde(default)]
    pub extra: serde_json::Map<String, serde_json::Value>,
}

impl ErrorReport {
    pub fn new(scenario: impl Into<String>) -> Self {
        ErrorReport { scenario: scenario.into(), ..Default::default() }
    }

    pub fn rows_for<'a>(&'a self, method: &'a str) -> impl Iterator<Item = &'a ErrorRow> + 'a {
        self.rows.iter().filter(move |r| r.method == method)
    }

    /// Fits convergence rates for every method with at least three meshes.
    pub fn fit_rates(&mut self) {
        let mut methods: Vec<String> = self.rows.iter().map(|r| r.method.clone()).collect();
        methods.dedup();
        let mut rates = Vec::new();
        for m in methods {
            let rows: Vec<&ErrorRow> = self.rows_for(&m).collect();
            let h: Vec<f64> = rows.iter().map(|r| r.h).collect();
            let series: [(&str, Getter); 3] =
                [("err_u", |r| r.err_u), ("err_p", |r| r.err_p), ("err_E", |r| r.err_e)];
            for (name, get) in series {
                let Some(e) = rows.iter().map(|r| get(r)).collect::<Option<Vec<f64>>>() else {
                    continue;
                };
                if let Ok(rate) = fit_rate(&h, &e) {
                    rates.push(RateFit { method: m.clone(), quantity: name.into(), rate });
                }
            }
        }
        self.rates = rates;
    }

    pub fn rate(&self, method: &str, quantity: &str) -> Option<f64> {
        self.rates.iter().find(|r| r.method == method && r.quantity == quantity).map(|r| r.rate)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        if self.rows.is_empty() {
            w.write_record(CSV_COLUMNS)?;
        }
        for row in &self.rows {
            w.serialize(row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}
