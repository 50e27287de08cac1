//! Acceptance suite: one pass/fail line per criterion with measured values
//! and runtimes. Failing criteria are reported, never relaxed.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sfem::analysis::{pressure_profile, DiscreteField};
use sfem::assembly::{Material, Method};
use sfem::basis::{eval_bubble, BubbleKind};
use sfem::bench::{
    block_mesh, block_run, bubble_column_ratio, condensation_gap, cook_mesh, cook_traction, mesh_identity_residual,
    neohookean_run, pipe_mesh, pipe_run, smoothed_infsup, vertex_column_deviation, LinearRun,
    Scenario, ScenarioConfig, COOK_PROFILE_LINE, COOK_PROFILE_MESH, COOK_TIP,
};
use sfem::dofs::DofMap;
use sfem::geom::Point;
use sfem::hyperelastic::{material_tangent, pk2_stress, strain_energy, HyperelasticModel, Mat3, NeoHookeanParams};
use sfem::mesh::{distort_mesh, generate_benchmark_mesh, DomainKind, Geometry, Resolution};
use sfem::smoothing::{oracle_volume_average, smoothed_gradient, MeshProducts};
use sfem::{Mesh, Real};

#[path = "support/double_double.rs"]
mod double_double;
use double_double::Dd;

struct Outcome {
    id: usize,
    passed: bool,
    detail: String,
    elapsed: Duration,
    limit: Option<Duration>,
}

fn criterion(id: usize, limit: Option<u64>, body: impl FnOnce() -> (bool, String)) -> Outcome {
    let start = Instant::now();
    let (ok, detail) = body();
    let elapsed = start.elapsed();
    let limit = limit.map(Duration::from_secs);
    let in_time = limit.is_none_or(|l| elapsed < l);
    let o = Outcome { id, passed: ok && in_time, detail, elapsed, limit };
    let budget = o.limit.map_or(String::new(), |l| format!(" (limit {l:?})"));
    println!(
        "criterion {:>2} {}: {} [{:.2?}{}]",
        o.id,
        if o.passed { "PASS" } else { "FAIL" },
        o.detail,
        o.elapsed,
        budget
    );
    o
}

fn products(mesh: Mesh, kind: DomainKind) -> MeshProducts<f64> {
    MeshProducts::new(mesh, kind).unwrap()
}

fn natural(dim: usize) -> DomainKind {
    if dim == 2 {
        DomainKind::Edge2d
    } else {
        DomainKind::Face3d
    }
}

/// Twenty distorted meshes: ten triangulations and ten tetrahedralizations.
fn random_meshes() -> Vec<Mesh> {
    let mut out = Vec::new();
    for seed in 0..10u64 {
        let base = if seed % 2 == 0 {
            cook_mesh(&Resolution::PerSide(2 + seed as usize / 2), None, 0).unwrap()
        } else {
            generate_benchmark_mesh(&Geometry::Annulus { a: 1.0, b: 2.0 }, &Resolution::Polar(3, 4 + seed as usize))
                .unwrap()
        };
        out.push(distort_mesh(&base, 0.4, seed).unwrap());
    }
    for seed in 0..10u64 {
        let n = 1 + seed as usize % 3;
        let base = generate_benchmark_mesh(&Geometry::BlockQuarter, &Resolution::Grid3(n, n + 1, 2)).unwrap();
        out.push(distort_mesh(&base, 0.4, seed).unwrap());
    }
    out
}

fn vertex_columns() -> (bool, String) {
    let meshes = random_meshes();
    let mut worst: f64 = 0.0;
    for mesh in &meshes {
        let p = products(mesh.clone(), natural(mesh.dim()));
        for bubble in [BubbleKind::Power, BubbleKind::Hat] {
            worst = worst.max(vertex_column_deviation(&p, bubble).unwrap());
        }
    }
    (worst <= 1e-12, format!("{} meshes, max relative deviation {worst:.3e} (limit 1e-12)", meshes.len()))
}

fn bubble_scaling() -> (bool, String) {
    let cubic = 16.0 / 11.0;
    let mut meshes2 = vec![cook_mesh(&Resolution::PerSide(4), None, 0).unwrap()];
    meshes2.extend(random_meshes().into_iter().filter(|m| m.dim() == 2));
    let (mut dev_power, mut dev_hat, mut mean_power) = (0.0f64, 0.0f64, 0.0);
    for m in &meshes2 {
        let p = products(m.clone(), DomainKind::Edge2d);
        let r = bubble_column_ratio(&p, BubbleKind::Power, cubic).unwrap();
        dev_power = dev_power.max(r.deviation);
        mean_power = r.mean;
        dev_hat = dev_hat.max(bubble_column_ratio(&p, BubbleKind::Hat, 1.0).unwrap().deviation);
    }
    let mut spread3 = 0.0f64;
    for n in 1..=3 {
        let p = products(block_mesh(n).unwrap(), DomainKind::Face3d);
        for kind in [BubbleKind::Power, BubbleKind::Hat] {
            spread3 = spread3.max(bubble_column_ratio(&p, kind, 1.0).unwrap().spread);
        }
    }
    let ok = dev_power <= 1e-10 && dev_hat <= 1e-10 && spread3 < 1e-8;
    (
        ok,
        format!(
            "2D cubic |B̄ - 16/11 B|/|B| = {dev_power:.3e} (measured ratio {mean_power:.6}), \
             2D hat |B̄ - B|/|B| = {dev_hat:.3e}, 3D spread {spread3:.3e}"
        ),
    )
}

fn benchmark_meshes() -> Vec<(String, Mesh)> {
    let mut out = Vec::new();
    for n in [2, 4, 8, 16, 32] {
        out.push((format!("cook n{n}"), cook_mesh(&Resolution::PerSide(n), None, 0).unwrap()));
    }
    for n in [2, 4, 8, 16] {
        out.push((format!("cook distorted n{n}"), cook_mesh(&Resolution::PerSide(n), Some(0.3), 1).unwrap()));
    }
    out.push(("cook 16x8".into(), cook_mesh(&COOK_PROFILE_MESH, None, 0).unwrap()));
    for nr in [4, 8, 16, 32] {
        out.push((format!("pipe nr{nr}"), pipe_mesh(nr).unwrap()));
    }
    out.push(("block n5".into(), block_mesh(5).unwrap()));
    out
}

/// Recomputes the measure identities from the micro-cells alone.
fn identity_oracle(p: &MeshProducts<f64>) -> f64 {
    let d = p.dim() as f64;
    let mut worst: f64 = 0.0;
    let mut rel = |a: f64, b: f64| worst = worst.max((a - b).abs() / b);
    let mut triple = std::collections::HashMap::new();
    let mut node_part = std::collections::HashMap::new();
    let mut facet_part = std::collections::HashMap::new();
    for e in 0..p.mesh.num_elements() {
        for c in p.micro.element_cells(e) {
            let cell = p.micro.cell(c);
            *triple.entry((e, cell.node, cell.facet)).or_insert(0.0) += cell.measure;
            *node_part.entry((e, cell.node)).or_insert(0.0) += cell.measure;
            *facet_part.entry((e, cell.facet)).or_insert(0.0) += cell.measure;
        }
    }
    for (&(e, _, _), &m) in &triple {
        rel(m, p.mesh.element_measure(e) / (d * (d + 1.0)));
    }
    for (&(e, _), &m) in node_part.iter().chain(facet_part.iter()) {
        rel(m, p.mesh.element_measure(e) / (d + 1.0));
    }
    worst
}

fn mesh_identities() -> (bool, String) {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for (_, mesh) in benchmark_meshes() {
        let dim = mesh.dim();
        for kind in [natural(dim), DomainKind::Node] {
            let p = products(mesh.clone(), kind);
            worst = worst.max(mesh_identity_residual(&p)).max(identity_oracle(&p));
            count += 1;
        }
    }
    (worst <= 1e-12, format!("{count} mesh/domain pairs, max relative residual {worst:.3e} (limit 1e-12)"))
}

/// Benchmark load on a mesh by name: Cook shear resultant or inner/patch pressure.
fn gap_in<T: Real>(name: &str, mesh: &Mesh) -> (f64, f64) {
    let (young, nu, load, shear) = if name.starts_with("cook") {
        (250.0, 0.4999, 100.0 / 16.0, true)
    } else if name.starts_with("pipe") {
        (21000.0, 0.4999999, 8.0, false)
    } else {
        (2.0e5, 0.4999, 250.0, false)
    };
    let load = T::lit(load);
    let traction = move |_: &Point<T>, n: &Point<T>| {
        if shear {
            [T::zero(), load, T::zero()]
        } else {
            [-load * n[0], -load * n[1], -load * n[2]]
        }
    };
    let mesh = mesh.cast::<T>();
    let p = MeshProducts::new(mesh, natural(mesh_dim(name))).unwrap();
    let material = Material::new(T::lit(young), T::lit(nu)).unwrap();
    condensation_gap(&p, material, BubbleKind::Power, &traction).unwrap()
}

fn mesh_dim(name: &str) -> usize {
    if name.starts_with("block") {
        3
    } else {
        2
    }
}

/// The equivalence is algebraic: where f64 conditioning hides it, the same
/// mesh is re-solved in double-double and that gap is what is judged.
fn condensation() -> (bool, String) {
    let mut worst = 0.0f64;
    let mut notes = Vec::new();
    let mut count = 0;
    for (name, mesh) in benchmark_meshes() {
        if mesh.num_elements() > 1000 {
            continue;
        }
        count += 1;
        let (du, dp) = gap_in::<f64>(&name, &mesh);
        if du.max(dp) <= 1e-9 {
            worst = worst.max(du.max(dp));
            continue;
        }
        let (eu, ep) = gap_in::<Dd>(&name, &mesh);
        worst = worst.max(eu.max(ep));
        notes.push(format!("{name}: f64 gaps {du:.2e}/{dp:.2e}, double-double {eu:.2e}/{ep:.2e}"));
    }
    (
        worst <= 1e-9,
        format!("{count} meshes, max relative gap {worst:.3e} (limit 1e-9); {}", if notes.is_empty() { "all in f64".into() } else { notes.join("; ") }),
    )
}

/// Least-squares slope of `log e` against `log h`.
fn slope(h: &[f64], e: &[f64]) -> f64 {
    let x: Vec<f64> = h.iter().map(|v| v.ln()).collect();
    let y: Vec<f64> = e.iter().map(|v| v.ln()).collect();
    let n = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let sxy: f64 = x.iter().zip(&y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

fn pipe() -> (bool, String) {
    let cfg = ScenarioConfig::defaults(Scenario::Pipe);
    let meshes = [4, 8, 16, 32];
    let run = |m: Method| meshes.iter().map(|&nr| pipe_run(m, nr, &cfg).unwrap().0).collect::<Vec<_>>();
    let (bes, mini, ns) = (run(Method::BesFem), run(Method::Mini), run(Method::NsFem));
    let h: Vec<f64> = bes.iter().map(|r| r.h).collect();
    let ru = slope(&h, &bes.iter().map(|r| r.err_u.unwrap()).collect::<Vec<_>>());
    let rp = slope(&h, &bes.iter().map(|r| r.err_p.unwrap()).collect::<Vec<_>>());
    let mut worst = 0.0f64;
    for other in [&mini, &ns] {
        for (b, o) in bes.iter().zip(other) {
            worst = worst
                .max(b.err_u.unwrap() / o.err_u.unwrap())
                .max(b.err_p.unwrap() / o.err_p.unwrap())
                .max(b.err_e.unwrap() / o.err_e.unwrap());
        }
    }
    let elements: Vec<usize> = bes.iter().map(|r| r.n_e).collect();
    (
        ru >= 1.9 && rp >= 1.9 && worst < 1.0 && elements == [64, 256, 1024, 4096],
        format!("bES-FEM rates u {ru:.3}, p {rp:.3} (>= 1.9); worst bES/(MINI, NS) error ratio {worst:.3} (< 1)"),
    )
}

fn block() -> (bool, String) {
    let cfg = ScenarioConfig::defaults(Scenario::Block3d);
    let (row, bfs) = block_run(Method::BfsFem, 5, &cfg).unwrap();
    let (_, fs) = block_run(Method::FsFem, 5, &cfg).unwrap();
    let dev = (bfs - 0.02054).abs() / 0.02054;
    (
        dev <= 0.1 && bfs / fs >= 30.0,
        format!(
            "{} tets, E = {:.0}: bFS-FEM u_z {bfs:.5} ({:.1}% from 0.02054), FS-FEM {fs:.3e}, ratio {:.2} (>= 30); u_z E = {:.1}",
            row.n_e,
            cfg.young,
            100.0 * dev,
            bfs / fs,
            bfs * cfg.young
        ),
    )
}

fn cook() -> (bool, String) {
    let material = Material::new(250.0, 0.4999).unwrap();
    let traction = cook_traction(100.0);
    let tip = |m: Method, res: Resolution| {
        LinearRun::new(m, cook_mesh(&res, None, 0).unwrap(), material, BubbleKind::Power, &traction)
            .unwrap()
            .node_displacement(&COOK_TIP, 1)
    };
    let bes: Vec<f64> = [2, 4, 8, 16, 32].iter().map(|&n| tip(Method::BesFem, Resolution::PerSide(n))).collect();
    let change = (bes[4] - bes[3]).abs() / bes[4];
    let (a, b, c) = (bes[2], bes[3], bes[4]);
    let limit = c - (c - b) * (c - b) / ((c - b) - (b - a));
    let t3 = tip(Method::FemT3, Resolution::PerSide(16));
    let es = tip(Method::EsFem, Resolution::PerSide(16));
    let (g3, ges) = (1.0 - t3 / limit, 1.0 - es / limit);
    let tv = |m: Method| {
        let run = LinearRun::new(m, cook_mesh(&COOK_PROFILE_MESH, None, 0).unwrap(), material, BubbleKind::Power, &traction)
            .unwrap();
        let field = DiscreteField::new(&run.products, &run.assembled, &run.solution);
        let prof = pressure_profile(&field, COOK_PROFILE_LINE[0], COOK_PROFILE_LINE[1], 200);
        let own: f64 = prof.samples.windows(2).map(|w| (w[1].1 - w[0].1).abs()).sum();
        assert!((own - prof.total_variation).abs() <= 1e-9 * own.max(1.0));
        own
    };
    let (tv_ns, tv_bes) = (tv(Method::NsFem), tv(Method::BesFem));
    let ok = change < 0.02 && g3 > 0.2 && ges > 0.2 && tv_ns / tv_bes >= 5.0;
    (
        ok,
        format!(
            "bES tips {:.4?}, finest change {:.2}% (< 2%), limit {limit:.4}; at 16/side FEM-T3 {t3:.3} ({:.0}% below), \
             ES-FEM {es:.3} ({:.0}% below) (> 20%); pressure TV on 256 triangles NS {tv_ns:.2} / bES {tv_bes:.2} = {:.2} (>= 5)",
            bes,
            100.0 * change,
            100.0 * g3,
            100.0 * ges,
            tv_ns / tv_bes
        ),
    )
}

fn infsup() -> (bool, String) {
    let sizes = [2, 4, 8, 16, 32];
    let beta = |b: Option<BubbleKind>| -> Vec<f64> {
        sizes
            .iter()
            .map(|&n| smoothed_infsup(&products(cook_mesh(&Resolution::PerSide(n), None, 0).unwrap(), DomainKind::Edge2d), b).unwrap())
            .collect()
    };
    let (bes, es) = (beta(Some(BubbleKind::Power)), beta(None));
    let minmax = bes.iter().cloned().fold(f64::INFINITY, f64::min) / bes.iter().cloned().fold(0.0, f64::max);
    let decay = es[es.len() - 1] / es[0];
    (
        minmax >= 0.5 && decay < 0.2,
        format!("bES-FEM beta {bes:.4?} min/max {minmax:.3} (>= 0.5); ES-FEM beta {es:.4?} finest/coarsest {decay:.3} (< 0.2)"),
    )
}

fn random_c(rng: &mut ChaCha8Rng) -> Mat3<f64> {
    loop {
        let mut f = [[0.0; 3]; 3];
        for (i, row) in f.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = if i == j { 1.0 } else { 0.0 } + rng.random_range(-0.3..0.3);
            }
        }
        let det = f[0][0] * (f[1][1] * f[2][2] - f[1][2] * f[2][1]) - f[0][1] * (f[1][0] * f[2][2] - f[1][2] * f[2][0])
            + f[0][2] * (f[1][0] * f[2][1] - f[1][1] * f[2][0]);
        if det > 0.3 {
            let mut c = [[0.0; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    c[i][j] = (0..3).map(|k| f[k][i] * f[k][j]).sum();
                }
            }
            return c;
        }
    }
}

/// Symmetric perturbation of `C_kl` and `C_lk`.
fn bump(c: &Mat3<f64>, k: usize, l: usize, h: f64) -> Mat3<f64> {
    let mut out = *c;
    out[k][l] += h;
    if k != l {
        out[l][k] += h;
    }
    out
}

fn hyperelastic() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let params = NeoHookeanParams::new(0.6, 100.0).unwrap();
    let (mut err_s, mut err_c) = (0.0f64, 0.0f64);
    let h = 1e-6;
    for _ in 0..100 {
        let c = random_c(&mut rng);
        let s = pk2_stress(&c, &params).unwrap();
        let t = material_tangent(&c, &params).unwrap();
        let s_scale = s.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
        let t_scale = t.iter().flatten().flatten().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
        for k in 0..3 {
            for l in 0..3 {
                let w = if k == l { 2.0 } else { 1.0 };
                let (cp, cm) = (bump(&c, k, l, h), bump(&c, k, l, -h));
                let dpsi = (strain_energy(&cp, &params).unwrap() - strain_energy(&cm, &params).unwrap()) / (2.0 * h);
                err_s = err_s.max((w * dpsi - s[k][l]).abs() / s_scale);
                let (sp, sm) = (pk2_stress(&cp, &params).unwrap(), pk2_stress(&cm, &params).unwrap());
                for i in 0..3 {
                    for j in 0..3 {
                        let fd = w * (sp[i][j] - sm[i][j]) / (2.0 * h);
                        err_c = err_c.max((fd - t[i][j][k][l]).abs() / t_scale);
                    }
                }
            }
        }
    }
    let mut err_k = 0.0f64;
    let shear = |_: &Point<f64>, _: &Point<f64>| [0.0, 1.0 / 16.0, 0.0];
    for (method, mesh) in [
        (Method::BesFem, cook_mesh(&Resolution::PerSide(3), None, 0).unwrap()),
        (Method::BfsFem, block_mesh(1).unwrap()),
    ] {
        let p = products(mesh.clone(), method.domain_kind(mesh.dim()));
        let model = HyperelasticModel::new(method, &p, params, BubbleKind::Power, &shear).unwrap();
        let free = |d: usize| !model.dofmap.constrained()[d];
        let u: Vec<f64> = (0..model.num_dofs()).map(|d| if free(d) { 0.02 * rng.random_range(-1.0..1.0) } else { 0.0 }).collect();
        let v: Vec<f64> = (0..model.num_dofs()).map(|d| if free(d) { rng.random_range(-1.0..1.0) } else { 0.0 }).collect();
        let k = model.tangent(&u).unwrap();
        let kv = k.mul_vec(&v);
        let eps = 1e-6;
        let shift = |s: f64| u.iter().zip(&v).map(|(a, b)| a + s * b).collect::<Vec<_>>();
        let (rp, rm) = (model.residual(&shift(eps), 1.0).unwrap(), model.residual(&shift(-eps), 1.0).unwrap());
        let scale = kv.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        for d in (0..model.num_dofs()).filter(|&d| free(d)) {
            err_k = err_k.max(((rp[d] - rm[d]) / (2.0 * eps) - kv[d]).abs() / scale);
        }
    }
    let cfg = ScenarioConfig::defaults(Scenario::CookNeohookean);
    let mut failures = Vec::new();
    let mut monotone = true;
    let mut iterations = 0;
    let mut curves = Vec::new();
    for &kappa in &cfg.kappa {
        for method in [Method::BesFem, Method::FemT3, Method::EsFem, Method::NsFem] {
            let mut tips = Vec::new();
            for &n in &cfg.meshes {
                match neohookean_run(method, n, kappa, &cfg) {
                    Ok((row, it, _)) => {
                        tips.push(row.tip_uy.unwrap());
                        iterations = iterations.max(it);
                    }
                    Err(e) => failures.push(format!("{method} k{kappa} n{n}: {e}")),
                }
            }
            if method == Method::BesFem {
                monotone &= tips.windows(2).all(|w| w[1] > w[0]);
                curves.push(format!("k{kappa}: {:.3} -> {:.3}", tips[0], tips[tips.len() - 1]));
            }
        }
    }
    let ok = err_s <= 1e-5 && err_c <= 1e-5 && err_k <= 1e-5 && failures.is_empty() && monotone;
    (
        ok,
        format!(
            "FD S {err_s:.2e}, FD tangent {err_c:.2e}, global tangent {err_k:.2e} (<= 1e-5); kappa sweep on {:?} per side: \
             {} failed runs, max {iterations} Newton iterations, bES monotone {monotone} ({}){}",
            cfg.meshes,
            failures.len(),
            curves.join(", "),
            failures.first().map_or(String::new(), |f| format!("; first failure {f}"))
        ),
    )
}

fn smoothing_oracle() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    let mut domains = 0;
    for mesh in random_meshes().into_iter().step_by(3) {
        let dim = mesh.dim();
        for kind in [natural(dim), DomainKind::Node] {
            let p = products(mesh.clone(), kind);
            for bubble in [BubbleKind::Power, BubbleKind::Hat] {
                let dofmap = DofMap::new(&p.mesh, true, false);
                let u: Vec<f64> = (0..dofmap.num_displacement()).map(|_| rng.random_range(-1.0..1.0)).collect();
                // Pointwise gradient of the enriched field inside a micro-cell.
                let grad = |c: usize, x: &Point<f64>| {
                    let mc = p.micro.cell(c);
                    let el = &p.elements[mc.element];
                    let lam = el.barycentric(x);
                    let (_, gb) = eval_bubble(bubble, dim, &lam, &el.grads, Some(mc.opposite));
                    let mut g = [[0.0; 3]; 3];
                    for i in 0..dim {
                        let ub = u[dofmap.bubble_dof(mc.element, i).unwrap()];
                        for j in 0..dim {
                            g[i][j] = ub * gb[j];
                            for (a, &n) in p.mesh.element(mc.element).iter().enumerate() {
                                g[i][j] += u[dofmap.node_dof(n, i)] * el.grads[a][j];
                            }
                        }
                    }
                    g
                };
                for k in 0..p.dual.domains.len() {
                    let sg = smoothed_gradient(&p, k, Some(bubble)).unwrap();
                    let oracle = oracle_volume_average(&p, k, grad);
                    for i in 0..dim {
                        for j in 0..dim {
                            let b: f64 = sg
                                .functions
                                .iter()
                                .zip(&sg.grads)
                                .map(|(f, g)| u[dofmap.function_dof(*f, i).unwrap()] * g[j])
                                .sum();
                            worst = worst.max((b - oracle[i][j]).abs());
                        }
                    }
                    domains += 1;
                }
            }
        }
    }
    (worst <= 1e-10, format!("{domains} domain evaluations, max deviation {worst:.3e} (limit 1e-10)"))
}

#[test]
fn acceptance() {
    let outcomes = vec![
        criterion(1, Some(30), vertex_columns),
        criterion(2, Some(60), bubble_scaling),
        criterion(3, None, mesh_identities),
        criterion(4, None, condensation),
        criterion(5, Some(300), pipe),
        criterion(6, Some(180), block),
        criterion(7, None, cook),
        criterion(8, None, infsup),
        criterion(9, None, hyperelastic),
        criterion(10, None, smoothing_oracle),
    ];
    let failed: Vec<usize> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    println!("acceptance: {} of {} criteria pass", outcomes.len() - failed.len(), outcomes.len());
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
