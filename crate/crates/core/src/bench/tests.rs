use std::time::Instant;

use super::*;
use crate::analysis::{ErrorReport, ErrorRow};
use crate::assembly::Method;

fn tmp_dir(tag: &str) -> std::path::PathBuf {
    let d = std::env::temp_dir().join(format!("sfem-bench-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    d
}

fn cook_small() -> ScenarioConfig {
    let mut cfg = ScenarioConfig::defaults(Scenario::Cook);
    cfg.meshes = vec![2];
    cfg
}

#[test]
fn cook_resolution_two_is_fast_with_one_row_per_method() {
    let cfg = cook_small();
    let start = Instant::now();
    let out = run_scenario(&cfg).unwrap();
    assert!(start.elapsed().as_secs_f64() < 1.0, "took {:?}", start.elapsed());
    assert!(out.failures.is_empty());
    assert_eq!(out.report.rows.len(), cfg.methods.len());
    for m in &cfg.methods {
        assert_eq!(out.report.rows_for(&m.to_string()).count(), 1);
    }
}

#[test]
fn rerun_gives_identical_csv_bytes() {
    let mut cfg = cook_small();
    cfg.scenario = Scenario::CookDistorted;
    cfg.distortion = Some(0.3);
    let a = tmp_dir("a");
    let b = tmp_dir("b");
    emit_report(&run_scenario(&cfg).unwrap(), &a).unwrap();
    emit_report(&run_scenario(&cfg).unwrap(), &b).unwrap();
    let name = cfg.scenario.name();
    for ext in ["csv", "json", "txt"] {
        let f = format!("{name}.{ext}");
        assert_eq!(std::fs::read(a.join(&f)).unwrap(), std::fs::read(b.join(&f)).unwrap(), "{f}");
    }
    let _ = std::fs::remove_dir_all(a);
    let _ = std::fs::remove_dir_all(b);
}

#[test]
fn emitted_json_round_trips_to_the_report() {
    let out = run_scenario(&cook_small()).unwrap();
    let dir = tmp_dir("json");
    emit_report(&out, &dir).unwrap();
    let text = std::fs::read_to_string(dir.join("cook.json")).unwrap();
    let back: ErrorReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back.rows, out.report.rows);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["passed"], serde_json::json!(out.passed()));
    let _ = std::fs::remove_dir_all(dir);
}

#[test]
fn unsolvable_cell_is_recorded_as_failed_row() {
    // A single step with a load far beyond the stable range cannot converge.
    let mut cfg = ScenarioConfig::defaults(Scenario::CookNeohookean);
    cfg.methods = vec![Method::FemT3];
    cfg.meshes = vec![2];
    cfg.kappa = vec![1.95];
    cfg.load = 1e4;
    cfg.steps = 1;
    let out = run_scenario(&cfg).unwrap();
    assert_eq!(out.failures.len(), 1, "{:?}", out.failures);
    assert!(!out.passed());
    let row = &out.report.rows[0];
    assert!(row.mesh_id.ends_with(":failed") && row.h.is_nan() && row.tip_uy.is_none());
    assert!(out.table.contains("FAILED"));
}

fn tip_row(method: &str, mesh: &str, tip: f64) -> ErrorRow {
    ErrorRow {
        method: method.into(),
        mesh_id: mesh.into(),
        h: 1.0,
        n_e: 1,
        err_u: None,
        err_p: None,
        err_e: None,
        tip_uy: Some(tip),
    }
}

#[test]
fn block_verdicts_follow_thresholds() {
    let t = Thresholds::builtin();
    let reference = t.value("block_reference_uz");
    let mut r = ErrorReport::new("block3d");
    r.rows.push(tip_row("bFS-FEM", "n5", reference * 1.05));
    r.rows.push(tip_row("FS-FEM", "n5", reference / 100.0));
    let v = verdicts(&r, Scenario::Block3d, &t);
    assert!(!v.is_empty() && v.iter().all(|v| v.passed), "{v:?}");

    r.rows[0].tip_uy = Some(reference * 1.2);
    let v = verdicts(&r, Scenario::Block3d, &t);
    assert!(v.iter().any(|v| !v.passed), "{v:?}");
}

#[test]
fn missing_methods_give_no_verdicts() {
    let t = Thresholds::builtin();
    for s in [Scenario::Pipe, Scenario::Block3d, Scenario::Cook, Scenario::Infsup] {
        assert!(verdicts(&ErrorReport::new(s.name()), s, &t).is_empty(), "{s}");
    }
}

#[test]
fn pipe_rate_verdicts_use_fitted_rates() {
    let t = Thresholds::builtin();
    let mut r = ErrorReport::new("pipe");
    for (i, h) in [0.4f64, 0.2, 0.1].into_iter().enumerate() {
        for (m, rate) in [("bES-FEM", 2.0), ("NS-FEM", 1.0)] {
            let e = h.powf(rate);
            r.rows.push(ErrorRow {
                method: m.into(),
                mesh_id: format!("nr{i}"),
                h,
                n_e: 1,
                err_u: Some(e),
                err_p: Some(e),
                err_e: Some(e),
                tip_uy: None,
            });
        }
    }
    r.fit_rates();
    let v = verdicts(&r, Scenario::Pipe, &t);
    let rate_u = v.iter().find(|v| v.check.contains("err_u rate")).unwrap();
    assert!(rate_u.passed && (rate_u.measured - 2.0).abs() < 1e-12);
    assert!(v.iter().all(|v| v.passed), "{v:?}");
}
