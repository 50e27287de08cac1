use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Map, Value};

use super::checks::{bubble_column_ratio, mesh_identity_residual, smoothed_infsup, vertex_column_deviation};
use super::config::{Scenario, ScenarioConfig};
use super::thresholds::Thresholds;
use super::verdicts::{verdicts, Verdict};
use crate::analysis::{
    error_displacement, error_energy, error_pressure, pressure_profile, richardson, DiscreteField, ErrorReport,
    ErrorRow, ExactPipeSolution,
};
use crate::assembly::{assemble, Material, Method};
use crate::basis::BubbleKind;
use crate::geom::Point;
use crate::hyperelastic::{newton_load_stepping, HyperelasticModel, NeoHookeanParams, NewtonOptions};
use crate::mesh::{distort_mesh, generate_benchmark_mesh, Geometry, PrimalMesh, Resolution};
use crate::smoothing::MeshProducts;
use crate::solve::solve;
use crate::Result;

/// Cook's loaded edge length.
pub const COOK_EDGE: f64 = 16.0;
pub const COOK_TIP: Point<f64> = [48.0, 60.0, 0.0];
/// End points of the vertical pressure line `x = 24`.
pub const COOK_PROFILE_LINE: [Point<f64>; 2] = [[24.0, 22.0, 0.0], [24.0, 52.0, 0.0]];
/// The 256-triangle Cook mesh used for pressure profiles.
pub const COOK_PROFILE_MESH: Resolution = Resolution::Grid2(16, 8);
pub const BLOCK_POINT: Point<f64> = [0.0, 0.0, 50.0];
pub const PIPE_RADII: (f64, f64) = (1.0, 2.0);

/// Report plus a formatted table; `failures` lists cells that did not solve.
#[derive(Debug, Clone)]
pub struct ScenarioOutcome {
    pub report: ErrorReport,
    pub table: String,
    pub failures: Vec<String>,
    pub verdicts: Vec<Verdict>,
}

impl ScenarioOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.verdicts.iter().all(|v| v.passed)
    }
}

/// Uniform traction `load / COOK_EDGE` in `+y` on Cook's right edge.
pub fn cook_traction(load: f64) -> impl Fn(&Point<f64>, &Point<f64>) -> Point<f64> + Sync {
    move |_, _| [0.0, load / COOK_EDGE, 0.0]
}

/// Inner pressure `p` (acts against the outward normal).
pub fn pressure_traction(p: f64) -> impl Fn(&Point<f64>, &Point<f64>) -> Point<f64> + Sync {
    move |_, n| [-p * n[0], -p * n[1], -p * n[2]]
}

pub fn cook_mesh(res: &Resolution, distortion: Option<f64>, seed: u64) -> Result<PrimalMesh<f64>> {
    let mesh = generate_benchmark_mesh(&Geometry::Cook, res)?;
    match distortion {
        Some(d) if d > 0.0 => distort_mesh(&mesh, d, seed),
        _ => Ok(mesh),
    }
}

pub fn pipe_mesh(nr: usize) -> Result<PrimalMesh<f64>> {
    generate_benchmark_mesh(&Geometry::Annulus { a: PIPE_RADII.0, b: PIPE_RADII.1 }, &Resolution::Polar(nr, 2 * nr))
}

pub fn block_mesh(n: usize) -> Result<PrimalMesh<f64>> {
    generate_benchmark_mesh(&Geometry::BlockQuarter, &Resolution::Grid3(n, n, n))
}

/// Linear solve of one method on one mesh.
pub struct LinearRun {
    pub products: MeshProducts<f64>,
    pub assembled: crate::assembly::Assembled<f64>,
    pub solution: crate::solve::SolutionField<f64>,
}

impl LinearRun {
    pub fn new(
        method: Method,
        mesh: PrimalMesh<f64>,
        material: Material<f64>,
        bubble: BubbleKind,
        traction: &crate::assembly::Traction<'_, f64>,
    ) -> Result<Self> {
        let products = MeshProducts::new(mesh.clone(), method.domain_kind(mesh.dim()))?;
        let assembled = assemble(method, &products, material, bubble, traction)?;
        let solution = solve(&assembled, &products)?;
        Ok(LinearRun { products, assembled, solution })
    }

    pub fn field(&self) -> DiscreteField<'_, f64> {
        DiscreteField::new(&self.products, &self.assembled, &self.solution)
    }

    /// Displacement component `c` at the mesh node closest to `x`.
    pub fn node_displacement(&self, x: &Point<f64>, c: usize) -> f64 {
        let node = self.products.mesh.nearest_node(x);
        self.solution.displacement[self.assembled.bundle.dofmap.node_dof(node, c)]
    }
}

fn row(method: Method, mesh_id: String, products: &MeshProducts<f64>) -> ErrorRow {
    ErrorRow {
        method: method.to_string(),
        mesh_id,
        h: products.mesh_size(),
        n_e: products.mesh.num_elements(),
        err_u: None,
        err_p: None,
        err_e: None,
        tip_uy: None,
    }
}

/// Placeholder for a cell that did not solve: `h` is NaN and all errors are empty.
pub fn failed_row(method: Method, mesh_id: &str) -> ErrorRow {
    ErrorRow {
        method: method.to_string(),
        mesh_id: format!("{mesh_id}:failed"),
        h: f64::NAN,
        n_e: 0,
        err_u: None,
        err_p: None,
        err_e: None,
        tip_uy: None,
    }
}

pub fn run_scenario(cfg: &ScenarioConfig) -> Result<ScenarioOutcome> {
    cfg.validate()?;
    let mut report = ErrorReport::new(cfg.scenario.name());
    let mut failures = Vec::new();
    match cfg.scenario {
        Scenario::Cook | Scenario::CookDistorted => cook(cfg, &mut report, &mut failures)?,
        Scenario::Pipe => pipe(cfg, &mut report, &mut failures)?,
        Scenario::Block3d => block(cfg, &mut report, &mut failures)?,
        Scenario::CookNeohookean => neohookean(cfg, &mut report, &mut failures)?,
        Scenario::Infsup => infsup(cfg, &mut report, &mut failures)?,
        Scenario::LemmaChecks => lemmas(cfg, &mut report)?,
    }
    report.fit_rates();
    let verdicts = verdicts(&report, cfg.scenario, &Thresholds::builtin());
    let mut table = format_table(&report);
    for v in &verdicts {
        let _ = writeln!(table, "{} {}: {:.6e} (threshold {:.6e})", if v.passed { "PASS" } else { "FAIL" }, v.check, v.measured, v.threshold);
    }
    for f in &failures {
        let _ = writeln!(table, "FAILED {f}");
    }
    Ok(ScenarioOutcome { report, table, failures, verdicts })
}

fn cook(cfg: &ScenarioConfig, report: &mut ErrorReport, failures: &mut Vec<String>) -> Result<()> {
    let material = Material::new(cfg.young, cfg.poisson)?;
    let traction = cook_traction(cfg.load);
    let mut limits = Map::new();
    let mut profiles = Map::new();
    for &method in &cfg.methods {
        let mut tips = Vec::new();
        for &n in &cfg.meshes {
            let mesh_id = format!("n{n}");
            let run = cook_mesh(&Resolution::PerSide(n), cfg.distortion, cfg.seed)
                .and_then(|mesh| LinearRun::new(method, mesh, material, cfg.bubble, &traction));
            match run.map(|r| (r.node_displacement(&COOK_TIP, 1), r)) {
                Ok((tip, r)) => {
                    tips.push(tip);
                    report.rows.push(ErrorRow { tip_uy: Some(tip), ..row(method, mesh_id, &r.products) });
                }
                Err(e) => {
                    failures.push(format!("{method} {mesh_id}: {e}"));
                    report.rows.push(failed_row(method, &mesh_id));
                }
            }
        }
        if let Ok(l) = richardson(&tips) {
            limits.insert(method.to_string(), json!(l));
        }
        if matches!(method, Method::BesFem | Method::NsFem | Method::Mini) {
            let mesh = cook_mesh(&COOK_PROFILE_MESH, cfg.distortion, cfg.seed)?;
            match LinearRun::new(method, mesh, material, cfg.bubble, &traction) {
                Ok(r) => {
                    let p = pressure_profile(&r.field(), COOK_PROFILE_LINE[0], COOK_PROFILE_LINE[1], 200);
                    let first = p.samples.first().map_or(0.0, |s| s.1);
                    let last = p.samples.last().map_or(0.0, |s| s.1);
                    profiles.insert(
                        method.to_string(),
                        json!({"total_variation": p.total_variation, "envelope": (last - first).abs(), "samples": p.samples}),
                    );
                }
                Err(e) => failures.push(format!("{method} profile: {e}")),
            }
        }
    }
    report.extra.insert("richardson_tip".into(), Value::Object(limits));
    report.extra.insert("pressure_profile".into(), Value::Object(profiles));
    Ok(())
}

/// Pipe errors of one method on `Polar(nr, 2nr)`: `(row, raw energy)`.
pub fn pipe_run(method: Method, nr: usize, cfg: &ScenarioConfig) -> Result<(ErrorRow, f64)> {
    let exact = ExactPipeSolution::new(PIPE_RADII.0, PIPE_RADII.1, cfg.load, cfg.young, cfg.poisson);
    let material = Material::new(cfg.young, cfg.poisson)?;
    let run = LinearRun::new(method, pipe_mesh(nr)?, material, cfg.bubble, &pressure_traction(cfg.load))?;
    let field = run.field();
    let energy = error_energy(&field, &exact);
    let r = ErrorRow {
        err_u: Some(error_displacement(&field, &exact)),
        err_p: Some(error_pressure(&field, &exact)),
        err_e: Some(energy.norm),
        ..row(method, format!("nr{nr}"), &run.products)
    };
    Ok((r, energy.raw))
}

fn pipe(cfg: &ScenarioConfig, report: &mut ErrorReport, failures: &mut Vec<String>) -> Result<()> {
    let mut raw = Map::new();
    for &method in &cfg.methods {
        for &nr in &cfg.meshes {
            match pipe_run(method, nr, cfg) {
                Ok((r, e)) => {
                    raw.insert(format!("{method}/{}", r.mesh_id), json!(e));
                    report.rows.push(r);
                }
                Err(e) => {
                    let id = format!("nr{nr}");
                    failures.push(format!("{method} {id}: {e}"));
                    report.rows.push(failed_row(method, &id));
                }
            }
        }
    }
    report.extra.insert("energy_raw".into(), Value::Object(raw));
    Ok(())
}

/// Downward displacement at the top centre of the block.
pub fn block_run(method: Method, n: usize, cfg: &ScenarioConfig) -> Result<(ErrorRow, f64)> {
    let material = Material::new(cfg.young, cfg.poisson)?;
    let run = LinearRun::new(method, block_mesh(n)?, material, cfg.bubble, &pressure_traction(cfg.load))?;
    let uz = -run.node_displacement(&BLOCK_POINT, 2);
    Ok((ErrorRow { tip_uy: Some(uz), ..row(method, format!("n{n}"), &run.products) }, uz))
}

fn block(cfg: &ScenarioConfig, report: &mut ErrorReport, failures: &mut Vec<String>) -> Result<()> {
    let mut scaled = Map::new();
    for &method in &cfg.methods {
        for &n in &cfg.meshes {
            match block_run(method, n, cfg) {
                Ok((r, uz)) => {
                    scaled.insert(format!("{method}/{}", r.mesh_id), json!(uz * cfg.young));
                    report.rows.push(r);
                }
                Err(e) => {
                    let id = format!("n{n}");
                    failures.push(format!("{method} {id}: {e}"));
                    report.rows.push(failed_row(method, &id));
                }
            }
        }
    }
    // u·E does not depend on the (unpublished) modulus.
    report.extra.insert("displacement_times_young".into(), Value::Object(scaled));
    Ok(())
}

/// Tip displacement of a neo-Hookean Cook run and the worst Newton count.
pub fn neohookean_run(method: Method, n: usize, kappa: f64, cfg: &ScenarioConfig) -> Result<(ErrorRow, usize, usize)> {
    let params = NeoHookeanParams::new(cfg.mu, kappa)?;
    let mesh = cook_mesh(&Resolution::PerSide(n), cfg.distortion, cfg.seed)?;
    let products = MeshProducts::new(mesh, method.domain_kind(2))?;
    let load = cfg.load;
    let traction = move |_: &Point<f64>, _: &Point<f64>| [0.0, load, 0.0];
    let model = HyperelasticModel::new(method, &products, params, cfg.bubble, &traction)?;
    let sol = newton_load_stepping(&model, &NewtonOptions { steps: cfg.steps, ..Default::default() })?;
    let node = products.mesh.nearest_node(&COOK_TIP);
    let tip = sol.displacement[model.dofmap.node_dof(node, 1)];
    let iterations = sol.steps.iter().map(|s| s.iterations).max().unwrap_or(0);
    let r = ErrorRow { tip_uy: Some(tip), ..row(method, format!("k{kappa}/n{n}"), &products) };
    Ok((r, iterations, sol.halvings))
}

fn neohookean(cfg: &ScenarioConfig, report: &mut ErrorReport, failures: &mut Vec<String>) -> Result<()> {
    let mut newton = Map::new();
    for &kappa in &cfg.kappa {
        for &method in &cfg.methods {
            for &n in &cfg.meshes {
                match neohookean_run(method, n, kappa, cfg) {
                    Ok((r, it, halvings)) => {
                        newton.insert(format!("{method}/{}", r.mesh_id), json!({"max_iterations": it, "halvings": halvings}));
                        report.rows.push(r);
                    }
                    Err(e) => {
                        let id = format!("k{kappa}/n{n}");
                        failures.push(format!("{method} {id}: {e}"));
                        report.rows.push(failed_row(method, &id));
                    }
                }
            }
        }
    }
    report.extra.insert("newton".into(), Value::Object(newton));
    Ok(())
}

fn infsup(cfg: &ScenarioConfig, report: &mut ErrorReport, failures: &mut Vec<String>) -> Result<()> {
    let mut betas = Map::new();
    for &method in &cfg.methods {
        let bubble = (method == Method::BesFem).then_some(cfg.bubble);
        let mut series = Vec::new();
        for &n in &cfg.meshes {
            let products = MeshProducts::new(cook_mesh(&Resolution::PerSide(n), cfg.distortion, cfg.seed)?, method.domain_kind(2))?;
            match smoothed_infsup(&products, bubble) {
                Ok(beta) => {
                    series.push(json!({"mesh_id": format!("n{n}"), "h": products.mesh_size(), "beta": beta}));
                    report.rows.push(row(method, format!("n{n}"), &products));
                }
                Err(e) => {
                    let id = format!("n{n}");
                    failures.push(format!("{method} {id}: {e}"));
                    report.rows.push(failed_row(method, &id));
                }
            }
        }
        betas.insert(method.to_string(), Value::Array(series));
    }
    report.extra.insert("infsup".into(), Value::Object(betas));
    Ok(())
}

fn lemmas(cfg: &ScenarioConfig, report: &mut ErrorReport) -> Result<()> {
    let mut out = Map::new();
    for &method in &cfg.methods {
        let dim = if method.supports(2) { 2 } else { 3 };
        let mut entries = Vec::new();
        for &n in &cfg.meshes {
            let mesh = if dim == 2 { cook_mesh(&Resolution::PerSide(2 * n), None, 0)? } else { block_mesh(n)? };
            let mesh = match cfg.distortion {
                Some(d) if d > 0.0 => distort_mesh(&mesh, d, cfg.seed)?,
                _ => mesh,
            };
            let products = MeshProducts::new(mesh, method.domain_kind(dim))?;
            let mut e = json!({
                "mesh_id": format!("n{n}"),
                "identity_residual": mesh_identity_residual(&products),
                "vertex_deviation": vertex_column_deviation(&products, cfg.bubble)?,
            });
            for kind in [BubbleKind::Power, BubbleKind::Hat] {
                let r = bubble_column_ratio(&products, kind, 1.0)?;
                e[kind.to_string()] = json!({"ratio_mean": r.mean, "ratio_spread": r.spread});
            }
            entries.push(e);
        }
        out.insert(method.to_string(), Value::Array(entries));
    }
    report.extra.insert("lemma_checks".into(), Value::Object(out));
    Ok(())
}

fn cell(v: Option<f64>) -> String {
    v.map_or("-".into(), |x| format!("{x:.6e}"))
}

pub fn format_table(report: &ErrorReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<10} {:<14} {:>10} {:>7} {:>13} {:>13} {:>13} {:>13}",
        "method", "mesh", "h", "N_e", "err_u", "err_p", "err_E", "tip"
    );
    for r in &report.rows {
        let _ = writeln!(
            s,
            "{:<10} {:<14} {:>10.4} {:>7} {:>13} {:>13} {:>13} {:>13}",
            r.method,
            r.mesh_id,
            r.h,
            r.n_e,
            cell(r.err_u),
            cell(r.err_p),
            cell(r.err_e),
            cell(r.tip_uy)
        );
    }
    for r in &report.rates {
        let _ = writeln!(s, "rate {:<10} {:<6} {:.3}", r.method, r.quantity, r.rate);
    }
    s
}

/// Writes `<scenario>.csv`, `<scenario>.json` and `<scenario>.txt` into `dir`.
pub fn emit_report(outcome: &ScenarioOutcome, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let name = &outcome.report.scenario;
    outcome.report.write_csv(std::fs::File::create(dir.join(format!("{name}.csv")))?)?;
    let mut json = serde_json::to_value(&outcome.report)?;
    json["failures"] = json!(outcome.failures);
    json["verdicts"] = serde_json::to_value(&outcome.verdicts)?;
    json["passed"] = json!(outcome.passed());
    std::fs::write(dir.join(format!("{name}.json")), serde_json::to_string_pretty(&json)?)?;
    std::fs::write(dir.join(format!("{name}.txt")), &outcome.table)?;
    Ok(())
}
