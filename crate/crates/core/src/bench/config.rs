use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::assembly::Method;
use crate::basis::BubbleKind;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    Cook,
    CookDistorted,
    Pipe,
    Block3d,
    CookNeohookean,
    Infsup,
    LemmaChecks,
}

impl Scenario {
    pub const ALL: [Scenario; 7] = [
        Scenario::Cook,
        Scenario::CookDistorted,
        Scenario::Pipe,
        Scenario::Block3d,
        Scenario::CookNeohookean,
        Scenario::Infsup,
        Scenario::LemmaChecks,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Cook => "cook",
            Scenario::CookDistorted => "cook-distorted",
            Scenario::Pipe => "pipe",
            Scenario::Block3d => "block3d",
            Scenario::CookNeohookean => "cook-neohookean",
            Scenario::Infsup => "infsup",
            Scenario::LemmaChecks => "lemma-checks",
        }
    }

    pub fn dim(self) -> usize {
        if self == Scenario::Block3d {
            3
        } else {
            2
        }
    }
}

impl std::fmt::Display for Scenario {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scenario::ALL
            .into_iter()
            .find(|x| x.name() == s.trim())
            .ok_or_else(|| Error::InvalidInput(format!("unknown scenario `{s}`")))
    }
}

/// Everything a benchmark run needs.
///
/// `meshes` holds one resolution parameter per run: elements per side for the
/// Cook scenarios, radial divisions for the pipe (angular = 2 × radial) and
/// hexahedra per side for the block. `load` is the resultant on Cook's right
/// edge, the inner pressure of the pipe, the patch pressure of the block and
/// the traction density for the neo-Hookean run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub methods: Vec<Method>,
    pub meshes: Vec<usize>,
    pub young: f64,
    pub poisson: f64,
    pub load: f64,
    pub mu: f64,
    pub kappa: Vec<f64>,
    pub bubble: BubbleKind,
    pub distortion: Option<f64>,
    pub seed: u64,
    pub steps: usize,
    pub out: PathBuf,
}

impl ScenarioConfig {
    pub fn defaults(scenario: Scenario) -> Self {
        let base = ScenarioConfig {
            scenario,
            methods: vec![Method::BesFem, Method::Mini, Method::NsFem, Method::EsFem, Method::FemT3],
            meshes: vec![2, 4, 8, 16, 32],
            young: 250.0,
            poisson: 0.4999,
            load: 100.0,
            mu: 0.6,
            kappa: vec![1.95, 10.0, 100.0, 1000.0, 10000.0],
            bubble: BubbleKind::Power,
            distortion: None,
            seed: 0,
            steps: 10,
            out: PathBuf::from("out").join(scenario.name()),
        };
        match scenario {
            Scenario::Cook => base,
            Scenario::CookDistorted => ScenarioConfig { distortion: Some(0.3), seed: 1, meshes: vec![2, 4, 8, 16], ..base },
            Scenario::Pipe => ScenarioConfig {
                methods: vec![Method::BesFem, Method::Mini, Method::NsFem],
                meshes: vec![4, 8, 16, 32],
                young: 21000.0,
                poisson: 0.4999999,
                load: 8.0,
                ..base
            },
            Scenario::Block3d => ScenarioConfig {
                methods: vec![Method::BfsFem, Method::FsFem],
                meshes: vec![5],
                young: 2.0e5,
                load: 250.0,
                ..base
            },
            Scenario::CookNeohookean => ScenarioConfig {
                methods: vec![Method::BesFem, Method::FemT3, Method::EsFem, Method::NsFem],
                meshes: vec![2, 4, 8, 16],
                load: 1.0 / 16.0,
                ..base
            },
            Scenario::Infsup => {
                ScenarioConfig { methods: vec![Method::BesFem, Method::EsFem], meshes: vec![2, 4, 8, 16, 32], ..base }
            }
            Scenario::LemmaChecks => ScenarioConfig {
                methods: vec![Method::BesFem, Method::BfsFem],
                meshes: vec![2, 3, 4],
                distortion: Some(0.4),
                ..base
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidInput(m));
        if self.methods.is_empty() {
            return bad("no methods selected".into());
        }
        if self.meshes.is_empty() || self.meshes.contains(&0) {
            return bad("mesh list must be non-empty and positive".into());
        }
        let dims: &[usize] = if self.scenario == Scenario::LemmaChecks { &[2, 3] } else { &[self.scenario.dim()] };
        for m in &self.methods {
            if !dims.iter().any(|&d| m.supports(d)) {
                return bad(format!("{m} is not available for scenario {}", self.scenario));
            }
            if self.scenario == Scenario::CookNeohookean && *m == Method::Mini {
                return bad("MINI has no large-deformation formulation".into());
            }
            if self.scenario == Scenario::Infsup && !matches!(m, Method::BesFem | Method::EsFem) {
                return bad(format!("inf-sup probe is defined for bES-FEM and ES-FEM, not {m}"));
            }
        }
        if !(self.young > 0.0) || !(self.poisson > -1.0 && self.poisson < 0.5) {
            return bad(format!("invalid material E = {}, nu = {}", self.young, self.poisson));
        }
        if !self.load.is_finite() {
            return bad("load must be finite".into());
        }
        if !(self.mu > 0.0) || self.kappa.is_empty() || self.kappa.iter().any(|k| !(*k > 0.0)) {
            return bad("neo-Hookean moduli must be positive".into());
        }
        if let Some(d) = self.distortion {
            if !(0.0..=0.5).contains(&d) {
                return bad(format!("distortion density {d} outside [0, 0.5]"));
            }
        }
        if self.steps == 0 {
            return bad("at least one load step".into());
        }
        Ok(())
    }

    /// Applies `key = value` lines on top of `self`; `#` starts a comment.
    pub fn apply_kv(&mut self, text: &str) -> Result<()> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::InvalidInput(format!("line {}: expected `key = value`", n + 1)))?;
            self.set(key.trim(), value.trim())
                .map_err(|e| Error::InvalidInput(format!("line {}: {e}", n + 1)))?;
        }
        Ok(())
    }

    /// Sets one field from its textual form.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: FromStr>(key: &str, v: &str) -> Result<T> {
            v.trim().parse().map_err(|_| Error::InvalidInput(format!("bad value `{v}` for `{key}`")))
        }
        fn list<T: FromStr>(key: &str, v: &str) -> Result<Vec<T>> {
            v.split(',').filter(|s| !s.trim().is_empty()).map(|s| num(key, s)).collect()
        }
        match key {
            "scenario" => self.scenario = value.parse()?,
            "methods" => self.methods = value.split(',').map(|s| s.trim().parse()).collect::<Result<_>>()?,
            "meshes" => self.meshes = list(key, value)?,
            "young" => self.young = num(key, value)?,
            "poisson" | "nu" => self.poisson = num(key, value)?,
            "load" => self.load = num(key, value)?,
            "mu" => self.mu = num(key, value)?,
            "kappa" => self.kappa = list(key, value)?,
            "bubble" => self.bubble = value.parse()?,
            "distortion" => {
                self.distortion = if value == "none" { None } else { Some(num(key, value)?) };
            }
            "seed" => self.seed = num(key, value)?,
            "steps" => self.steps = num(key, value)?,
            "out" => self.out = PathBuf::from(value),
            _ => return Err(Error::InvalidInput(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    pub fn to_kv(&self) -> String {
        let join = |v: Vec<String>| v.join(", ");
        let mut s = String::new();
        let _ = writeln!(s, "scenario = {}", self.scenario);
        let _ = writeln!(s, "methods = {}", join(self.methods.iter().map(|m| m.to_string()).collect()));
        let _ = writeln!(s, "meshes = {}", join(self.meshes.iter().map(|m| m.to_string()).collect()));
        let _ = writeln!(s, "young = {}", self.young);
        let _ = writeln!(s, "poisson = {}", self.poisson);
        let _ = writeln!(s, "load = {}", self.load);
        let _ = writeln!(s, "mu = {}", self.mu);
        let _ = writeln!(s, "kappa = {}", join(self.kappa.iter().map(|k| k.to_string()).collect()));
        let _ = writeln!(s, "bubble = {}", self.bubble);
        let _ = writeln!(s, "distortion = {}", self.distortion.map_or("none".to_string(), |d| d.to_string()));
        let _ = writeln!(s, "seed = {}", self.seed);
        let _ = writeln!(s, "steps = {}", self.steps);
        let _ = writeln!(s, "out = {}", self.out.display());
        s
    }
}
