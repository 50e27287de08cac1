use super::*;
use crate::assembly::{assemble, Material, Method};
use crate::basis::BubbleKind;
use crate::geom::Point;
use crate::mesh::{generate_benchmark_mesh, Geometry, PrimalMesh, Resolution};
use crate::smoothing::MeshProducts;
use crate::solve::{solve, SolutionField};

fn no_load(_: &Point<f64>, _: &Point<f64>) -> Point<f64> {
    [0.0; 3]
}

/// Affine field `u = G x + c` with its constant strain.
struct Affine {
    g: [[f64; 2]; 2],
    lambda: f64,
}

impl ExactField<f64> for Affine {
    fn displacement(&self, x: &Point<f64>) -> Point<f64> {
        let g = &self.g;
        [g[0][0] * x[0] + g[0][1] * x[1] + 0.3, g[1][0] * x[0] + g[1][1] * x[1] - 0.1, 0.0]
    }
    fn strain(&self, _: &Point<f64>) -> [f64; 6] {
        let g = &self.g;
        [g[0][0], g[1][1], g[0][1] + g[1][0], 0.0, 0.0, 0.0]
    }
    fn pressure(&self, _: &Point<f64>) -> f64 {
        self.lambda * (self.g[0][0] + self.g[1][1])
    }
}

fn interpolated(method: Method, products: &MeshProducts<f64>, exact: &Affine) -> (crate::assembly::Assembled<f64>, SolutionField<f64>) {
    let material = Material::new(10.0, 0.3).unwrap();
    let asm = assemble(method, products, material, BubbleKind::Hat, &no_load).unwrap();
    let dofmap = &asm.bundle.dofmap;
    let mut u = vec![0.0; dofmap.num_displacement()];
    for (i, x) in products.mesh.nodes().iter().enumerate() {
        let v = exact.displacement(x);
        for c in 0..2 {
            u[dofmap.node_dof(i, c)] = v[c];
        }
    }
    let p = material.lambda * (exact.g[0][0] + exact.g[1][1]);
    let pressure = if method.is_mixed() { vec![p; products.mesh.num_nodes()] } else { Vec::new() };
    (asm, SolutionField { method, displacement: u, pressure, residual: 0.0 })
}

#[test]
fn affine_fields_have_zero_error() {
    let mesh = generate_benchmark_mesh::<f64>(&Geometry::Cook, &Resolution::PerSide(3)).unwrap();
    for method in [Method::BesFem, Method::FemT3, Method::EsFem, Method::NsFem, Method::Mini] {
        let products = MeshProducts::new(mesh.clone(), method.domain_kind(2)).unwrap();
        let exact = Affine { g: [[0.01, -0.02], [0.005, 0.03]], lambda: Material::new(10.0, 0.3).unwrap().lambda };
        let (asm, sol) = interpolated(method, &products, &exact);
        let field = DiscreteField::new(&products, &asm, &sol);
        assert!(error_displacement(&field, &exact) < 1e-12, "{method}");
        assert!(error_pressure(&field, &exact) < 1e-11, "{method}");
        let e = error_energy(&field, &exact);
        assert!(e.raw.abs() < 1e-20 && e.norm < 1e-10, "{method}: {e:?}");
    }
}

#[test]
fn quartic_displacement_error_is_exact() {
    // u = (x², 0) against u_h = 0 on the unit right triangle: ∫ x⁴ = 1/30.
    let mesh = PrimalMesh::new(2, vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]], vec![vec![0, 1, 2]], vec![])
        .unwrap();
    let products = MeshProducts::natural(mesh).unwrap();
    let asm = assemble(Method::FemT3, &products, Material::new(1.0, 0.25).unwrap(), BubbleKind::Power, &no_load).unwrap();
    let sol = SolutionField { method: Method::FemT3, displacement: vec![0.0; 6], pressure: vec![], residual: 0.0 };
    struct Sq;
    impl ExactField<f64> for Sq {
        fn displacement(&self, x: &Point<f64>) -> Point<f64> {
            [x[0] * x[0], 0.0, 0.0]
        }
        fn strain(&self, x: &Point<f64>) -> [f64; 6] {
            [2.0 * x[0], 0.0, 0.0, 0.0, 0.0, 0.0]
        }
        fn pressure(&self, _: &Point<f64>) -> f64 {
            0.0
        }
    }
    let field = DiscreteField::new(&products, &asm, &sol);
    let e = error_displacement(&field, &Sq);
    assert!((e - (1.0f64 / 30.0).sqrt()).abs() < 1e-14);
    // energy: 2μ ∫ (2x)² + 0 · ... with p = 0, p_h = 0; ∫ 4x² = 1/3
    let mu = asm.bundle.material.mu;
    assert!((error_energy(&field, &Sq).raw - 2.0 * mu / 3.0).abs() < 1e-14);
}

#[test]
fn profile_of_constant_pressure_is_flat() {
    let mesh = generate_benchmark_mesh::<f64>(&Geometry::Cook, &Resolution::PerSide(4)).unwrap();
    let products = MeshProducts::new(mesh, Method::BesFem.domain_kind(2)).unwrap();
    let exact = Affine { g: [[0.01, 0.0], [0.0, 0.01]], lambda: 1.0 };
    let (asm, sol) = interpolated(Method::BesFem, &products, &exact);
    let field = DiscreteField::new(&products, &asm, &sol);
    let prof = pressure_profile(&field, [24.0, 22.0, 0.0], [24.0, 52.0, 0.0], 50);
    assert_eq!(prof.samples.len(), 50);
    assert!(prof.total_variation < 1e-12);
}

pub(crate) fn pipe_errors(method: Method, nr: usize, bubble: BubbleKind) -> (f64, f64, f64, EnergyError) {
    let exact = ExactPipeSolution::new(1.0, 2.0, 8.0, 21000.0, 0.4999999);
    let mesh = generate_benchmark_mesh::<f64>(&Geometry::Annulus { a: 1.0, b: 2.0 }, &Resolution::Polar(nr, 2 * nr))
        .unwrap();
    let products = MeshProducts::new(mesh, method.domain_kind(2)).unwrap();
    let load = |x: &Point<f64>, n: &Point<f64>| [-8.0 * n[0], -8.0 * n[1], 0.0].map(|v| v + 0.0 * x[0]);
    let asm = assemble(method, &products, Material::new(21000.0, 0.4999999).unwrap(), bubble, &load).unwrap();
    let sol = solve(&asm, &products).unwrap();
    let field = DiscreteField::new(&products, &asm, &sol);
    (
        products.mesh_size(),
        error_displacement(&field, &exact),
        error_pressure(&field, &exact),
        error_energy(&field, &exact),
    )
}

#[test]
fn pipe_errors_decrease() {
    let coarse = pipe_errors(Method::BesFem, 4, BubbleKind::Hat);
    let fine = pipe_errors(Method::BesFem, 8, BubbleKind::Hat);
    assert!(fine.0 < coarse.0);
    assert!(fine.1 < coarse.1 / 2.5, "{coarse:?} {fine:?}");
    assert!(fine.3.norm < coarse.3.norm);
}
