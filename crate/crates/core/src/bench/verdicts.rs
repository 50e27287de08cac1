use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::config::Scenario;
use super::thresholds::Thresholds;
use crate::analysis::{ErrorReport, ErrorRow};

/// Pass/fail of one acceptance check on a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub check: String,
    pub passed: bool,
    pub measured: f64,
    pub threshold: f64,
}

impl Verdict {
    fn at_least(check: &str, measured: f64, threshold: f64) -> Self {
        Verdict { check: check.into(), passed: measured >= threshold, measured, threshold }
    }

    fn below(check: &str, measured: f64, threshold: f64) -> Self {
        Verdict { check: check.into(), passed: measured < threshold, measured, threshold }
    }
}

fn rows<'a>(report: &'a ErrorReport, method: &'a str) -> impl Iterator<Item = &'a ErrorRow> + 'a {
    report.rows.iter().filter(move |r| r.method == method)
}

fn tips(report: &ErrorReport, method: &str) -> Vec<f64> {
    rows(report, method).filter_map(|r| r.tip_uy).collect()
}

fn extra_f64(v: Option<&Value>) -> f64 {
    v.and_then(Value::as_f64).unwrap_or(f64::NAN)
}

/// Checks a scenario report against the thresholds that apply to it.
/// Methods missing from the report produce no verdicts.
pub fn verdicts(report: &ErrorReport, scenario: Scenario, t: &Thresholds) -> Vec<Verdict> {
    let mut out = Vec::new();
    match scenario {
        Scenario::Pipe => {
            for (q, key) in [("err_u", "pipe_rate_u"), ("err_p", "pipe_rate_p")] {
                if let Some(r) = report.rate("bES-FEM", q) {
                    out.push(Verdict::at_least(&format!("bES-FEM {q} rate"), r, t.value(key)));
                }
            }
            for other in ["MINI", "NS-FEM"] {
                let mut worst = f64::NEG_INFINITY;
                let mut seen = false;
                for b in rows(report, "bES-FEM") {
                    if let Some(o) = rows(report, other).find(|o| o.mesh_id == b.mesh_id) {
                        for (x, y) in [(b.err_u, o.err_u), (b.err_p, o.err_p), (b.err_e, o.err_e)] {
                            if let (Some(x), Some(y)) = (x, y) {
                                worst = worst.max(x / y);
                                seen = true;
                            }
                        }
                    }
                }
                if seen {
                    out.push(Verdict::below(&format!("bES-FEM / {other} worst error ratio"), worst, 1.0));
                }
            }
        }
        Scenario::Block3d => {
            let reference = t.get("block_reference_uz").ok();
            if let (Some(&b), Some(th)) = (tips(report, "bFS-FEM").last(), reference) {
                let rel = (b - th.value).abs() / th.value;
                out.push(Verdict::below("bFS-FEM relative deviation from reference", rel, th.rel_tol.unwrap_or(0.1)));
                if let Some(&f) = tips(report, "FS-FEM").last() {
                    out.push(Verdict::at_least("bFS-FEM / FS-FEM displacement", b / f, t.value("block_fs_factor")));
                }
            }
        }
        Scenario::Cook => {
            let bes = tips(report, "bES-FEM");
            if bes.len() >= 2 {
                let (a, b) = (bes[bes.len() - 2], bes[bes.len() - 1]);
                out.push(Verdict::below("bES-FEM finest tip change", (b - a).abs() / b.abs(), t.value("cook_tip_change")));
            }
            let limit = extra_f64(report.extra.get("richardson_tip").and_then(|m| m.get("bES-FEM")));
            for m in ["FEM-T3", "ES-FEM"] {
                if let Some(tip) = rows(report, m).find(|r| r.mesh_id == "n16").and_then(|r| r.tip_uy) {
                    out.push(Verdict::at_least(&format!("{m} gap below limit at 16"), 1.0 - tip / limit, t.value("cook_locking_gap")));
                }
            }
            let tv = |m: &str| {
                extra_f64(report.extra.get("pressure_profile").and_then(|p| p.get(m)).and_then(|p| p.get("total_variation")))
            };
            let ratio = tv("NS-FEM") / tv("bES-FEM");
            if ratio.is_finite() {
                out.push(Verdict::at_least("NS-FEM / bES-FEM pressure variation", ratio, t.value("cook_tv_factor")));
            }
        }
        Scenario::Infsup => {
            let betas = |m: &str| -> Vec<f64> {
                report
                    .extra
                    .get("infsup")
                    .and_then(|v| v.get(m))
                    .and_then(Value::as_array)
                    .map(|a| a.iter().map(|e| extra_f64(e.get("beta"))).collect())
                    .unwrap_or_default()
            };
            let bes = betas("bES-FEM");
            if bes.len() >= 3 {
                let lo = bes.iter().cloned().fold(f64::INFINITY, f64::min);
                let hi = bes.iter().cloned().fold(0.0, f64::max);
                out.push(Verdict::at_least("bES-FEM beta min/max", lo / hi, t.value("infsup_bes_minmax")));
            }
            let es = betas("ES-FEM");
            if es.len() >= 3 {
                out.push(Verdict::below("ES-FEM beta finest/coarsest", es[es.len() - 1] / es[0], t.value("infsup_es_decay")));
            }
        }
        Scenario::LemmaChecks => {
            let Some(lemma) = report.extra.get("lemma_checks").and_then(Value::as_object) else {
                return out;
            };
            for (method, entries) in lemma {
                let entries = entries.as_array().cloned().unwrap_or_default();
                let worst = |f: &dyn Fn(&Value) -> f64| entries.iter().map(f).fold(0.0, f64::max);
                out.push(Verdict::below(
                    &format!("{method} vertex columns"),
                    worst(&|e| extra_f64(e.get("vertex_deviation"))),
                    t.value("vertex_column_rel"),
                ));
                out.push(Verdict::below(
                    &format!("{method} measure identities"),
                    worst(&|e| extra_f64(e.get("identity_residual"))),
                    t.value("mesh_identity_rel"),
                ));
                if method == "bES-FEM" {
                    for (kind, key) in [("power", "bubble_ratio_cubic_2d"), ("hat", "bubble_ratio_hat_2d")] {
                        let th = t.get(key).ok();
                        let target = th.map_or(f64::NAN, |x| x.value);
                        let dev = worst(&|e| {
                            let r = &e[kind];
                            // Entrywise: the mean must hit the target and all ratios agree.
                            (extra_f64(r.get("ratio_mean")) - target).abs() / target + extra_f64(r.get("ratio_spread"))
                        });
                        out.push(Verdict::below(&format!("bES-FEM {kind} bubble ratio"), dev, th.and_then(|x| x.tol).unwrap_or(1e-10)));
                    }
                } else {
                    out.push(Verdict::below(
                        &format!("{method} bubble ratio spread"),
                        worst(&|e| extra_f64(e["power"].get("ratio_spread"))),
                        t.value("bubble_ratio_spread_3d"),
                    ));
                }
            }
        }
        Scenario::CookNeohookean => {
            let mut kappas: Vec<String> = Vec::new();
            for r in rows(report, "bES-FEM") {
                let k = r.mesh_id.split('/').next().unwrap_or("").to_string();
                if !kappas.contains(&k) {
                    kappas.push(k);
                }
            }
            for k in kappas {
                let series: Vec<f64> = rows(report, "bES-FEM")
                    .filter(|r| r.mesh_id.starts_with(&format!("{k}/")))
                    .filter_map(|r| r.tip_uy)
                    .collect();
                let worst_drop = series.windows(2).map(|w| w[0] - w[1]).fold(f64::NEG_INFINITY, f64::max);
                out.push(Verdict::below(&format!("bES-FEM {k} monotone (largest drop)"), worst_drop, 0.0));
            }
        }
        Scenario::CookDistorted => {}
    }
    out
}
