//! Structured meshes for the benchmark geometries.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use super::{build_topology, BoundaryFacet, BoundaryLabel, PrimalMesh};
use crate::geom::{centroid, signed_measure, Point};
use crate::{Error, Real, Result};

/// Cook's tapered panel corners.
pub const COOK_CORNERS: [[f64; 2]; 4] = [[0.0, 0.0], [48.0, 44.0], [48.0, 60.0], [0.0, 44.0]];
/// Side length of the quarter block model.
pub const BLOCK_HALF_WIDTH: f64 = 50.0;
pub const BLOCK_HEIGHT: f64 = 50.0;
/// Half width of the loaded patch on the block top.
pub const BLOCK_PATCH_HALF: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Geometry {
    /// Cook's membrane: left edge clamped, right edge loaded.
    Cook,
    /// Quarter annulus with inner radius `a` and outer radius `b`.
    Annulus { a: f64, b: f64 },
    /// Quarter of the 100 x 100 x 50 block; symmetry planes at x = 0 and y = 0.
    BlockQuarter,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Resolution {
    /// Same count along every parametric direction.
    PerSide(usize),
    Grid2(usize, usize),
    /// Radial by angular divisions.
    Polar(usize, usize),
    Grid3(usize, usize, usize),
}

pub fn generate_benchmark_mesh<T: Real>(geometry: &Geometry, resolution: &Resolution) -> Result<PrimalMesh<T>> {
    match geometry {
        Geometry::Cook => {
            let (nx, ny) = match *resolution {
                Resolution::PerSide(n) => (n, n),
                Resolution::Grid2(nx, ny) => (nx, ny),
                _ => return Err(Error::InvalidInput("cook needs a 2D resolution".into())),
            };
            check_counts(&[nx, ny])?;
            cook(nx, ny)
        }
        Geometry::Annulus { a, b } => {
            if !(*a > 0.0 && a < b) {
                return Err(Error::InvalidInput(format!("annulus needs 0 < a < b, got a={a}, b={b}")));
            }
            let (nr, nt) = match *resolution {
                Resolution::PerSide(n) => (n, 2 * n),
                Resolution::Polar(nr, nt) | Resolution::Grid2(nr, nt) => (nr, nt),
                _ => return Err(Error::InvalidInput("annulus needs a 2D resolution".into())),
            };
            check_counts(&[nr, nt])?;
            annulus(*a, *b, nr, nt)
        }
        Geometry::BlockQuarter => {
            let (nx, ny, nz) = match *resolution {
                Resolution::PerSide(n) => (n, n, n),
                Resolution::Grid3(nx, ny, nz) => (nx, ny, nz),
                _ => return Err(Error::InvalidInput("block needs a 3D resolution".into())),
            };
            check_counts(&[nx, ny, nz])?;
            block(nx, ny, nz)
        }
    }
}

fn check_counts(counts: &[usize]) -> Result<()> {
    if counts.contains(&0) {
        return Err(Error::InvalidInput("resolution must be positive".into()));
    }
    Ok(())
}

fn p2<T: Real>(x: f64, y: f64) -> Point<T> {
    [T::lit(x), T::lit(y), T::zero()]
}

/// Splits a structured quad grid with node index `idx(i, j)` into triangles.
fn split_quads(nx: usize, ny: usize, idx: impl Fn(usize, usize) -> usize) -> Vec<Vec<usize>> {
    let mut elements = Vec::with_capacity(2 * nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            let (a, b, c, d) = (idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1));
            elements.push(vec![a, b, c]);
            elements.push(vec![a, c, d]);
        }
    }
    elements
}

/// Labels every boundary facet through a predicate on the facet centroid.
fn with_labels<T: Real>(
    dim: usize,
    nodes: Vec<Point<T>>,
    elements: Vec<Vec<usize>>,
    label: impl Fn(&[f64; 3]) -> BoundaryLabel,
) -> Result<PrimalMesh<T>> {
    let bare = PrimalMesh::new(dim, nodes, elements, vec![])?;
    let topo = build_topology(&bare);
    let boundary = topo
        .boundary_facets()
        .map(|f| {
            let fnodes = topo.facet_nodes(f).to_vec();
            let pts: Vec<Point<T>> = fnodes.iter().map(|&n| *bare.node(n)).collect();
            let c = centroid(&pts);
            BoundaryFacet {
                nodes: fnodes,
                label: label(&[c[0].as_f64(), c[1].as_f64(), c[2].as_f64()]),
            }
        })
        .collect();
    let PrimalMesh { dim, nodes, elements, .. } = bare;
    let elements = elements.chunks(dim + 1).map(|c| c.to_vec()).collect();
    PrimalMesh::new(dim, nodes, elements, boundary)
}

fn cook<T: Real>(nx: usize, ny: usize) -> Result<PrimalMesh<T>> {
    let mut nodes = Vec::with_capacity((nx + 1) * (ny + 1));
    for j in 0..=ny {
        for i in 0..=nx {
            let xi = i as f64 / nx as f64;
            let eta = j as f64 / ny as f64;
            let x = 48.0 * xi;
            let y = (1.0 - xi) * 44.0 * eta + xi * (44.0 + 16.0 * eta);
            nodes.push(p2(x, y));
        }
    }
    let elements = split_quads(nx, ny, |i, j| j * (nx + 1) + i);
    with_labels(2, nodes, elements, |c| {
        if c[0] < 1e-9 {
            BoundaryLabel::Clamped
        } else if c[0] > 48.0 - 1e-9 {
            BoundaryLabel::Traction
        } else {
            BoundaryLabel::Free
        }
    })
}

fn annulus<T: Real>(a: f64, b: f64, nr: usize, nt: usize) -> Result<PrimalMesh<T>> {
    let mut nodes = Vec::with_capacity((nr + 1) * (nt + 1));
    for l in 0..=nt {
        let theta = FRAC_PI_2 * l as f64 / nt as f64;
        let (s, c) = if l == 0 {
            (0.0, 1.0)
        } else if l == nt {
            (1.0, 0.0)
        } else {
            theta.sin_cos()
        };
        for k in 0..=nr {
            let r = if k == nr { b } else { a + (b - a) * k as f64 / nr as f64 };
            nodes.push(p2(r * c, r * s));
        }
    }
    let elements = split_quads(nr, nt, |k, l| l * (nr + 1) + k);
    let mid = 0.5 * (a + b);
    with_labels(2, nodes, elements, |c| {
        if c[1].abs() < 1e-12 {
            BoundaryLabel::RollerY
        } else if c[0].abs() < 1e-12 {
            BoundaryLabel::RollerX
        } else if (c[0] * c[0] + c[1] * c[1]).sqrt() < mid {
            BoundaryLabel::Traction
        } else {
            BoundaryLabel::Free
        }
    })
}

fn block<T: Real>(nx: usize, ny: usize, nz: usize) -> Result<PrimalMesh<T>> {
    let idx = |i: usize, j: usize, k: usize| (k * (ny + 1) + j) * (nx + 1) + i;
    let mut nodes = Vec::with_capacity((nx + 1) * (ny + 1) * (nz + 1));
    for k in 0..=nz {
        for j in 0..=ny {
            for i in 0..=nx {
                nodes.push([
                    T::lit(BLOCK_HALF_WIDTH * i as f64 / nx as f64),
                    T::lit(BLOCK_HALF_WIDTH * j as f64 / ny as f64),
                    T::lit(BLOCK_HEIGHT * k as f64 / nz as f64),
                ]);
            }
        }
    }
    // Kuhn subdivision: one tetrahedron per axis ordering, all sharing the
    // hex diagonal, so neighbouring hexes stay conforming.
    const ORDERS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut elements = Vec::with_capacity(6 * nx * ny * nz);
    for k in 0..nz {
        for j in 0..ny {
            for i in 0..nx {
                for order in &ORDERS {
                    let mut c = [i, j, k];
                    let mut tet = vec![idx(c[0], c[1], c[2])];
                    for &axis in order {
                        c[axis] += 1;
                        tet.push(idx(c[0], c[1], c[2]));
                    }
                    let pts: Vec<Point<T>> = tet.iter().map(|&n| nodes[n]).collect();
                    if signed_measure(3, &pts) < T::zero() {
                        tet.swap(2, 3);
                    }
                    elements.push(tet);
                }
            }
        }
    }
    with_labels(3, nodes, elements, |c| {
        let tol = 1e-9;
        if c[2] < tol {
            BoundaryLabel::Clamped
        } else if c[0] < tol {
            BoundaryLabel::RollerX
        } else if c[1] < tol {
            BoundaryLabel::RollerY
        } else if c[2] > BLOCK_HEIGHT - tol && c[0] < BLOCK_PATCH_HALF && c[1] < BLOCK_PATCH_HALF {
            BoundaryLabel::Traction
        } else {
            BoundaryLabel::Free
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    /// Shoelace formula on the Cook corners.
    pub(crate) fn shoelace() -> f64 {
        let c = COOK_CORNERS;
        (0..4).map(|i| c[i][0] * c[(i + 1) % 4][1] - c[(i + 1) % 4][0] * c[i][1]).sum::<f64>() / 2.0
    }

    #[test]
    fn cook_two_per_side() {
        let m = generate_benchmark_mesh::<f64>(&Geometry::Cook, &Resolution::PerSide(2)).unwrap();
        assert_eq!(m.num_elements(), 8);
        assert_eq!(m.num_nodes(), 9);
        assert_eq!(shoelace(), 1440.0);
        assert!((m.total_measure() - shoelace()).abs() < 1e-12 * shoelace());
    }

    #[test]
    fn annulus_area_converges_from_below() {
        let exact = 3.0 * PI / 4.0;
        let mut last = 0.0;
        for n in [2, 4, 8, 16] {
            let m = generate_benchmark_mesh::<f64>(&Geometry::Annulus { a: 1.0, b: 2.0 }, &Resolution::PerSide(n))
                .unwrap();
            let area = m.total_measure();
            assert!(area < exact && area > last);
            last = area;
            for p in m.nodes() {
                let r = (p[0] * p[0] + p[1] * p[1]).sqrt();
                assert!(r > 1.0 - 1e-14 && r < 2.0 + 1e-14);
            }
        }
        assert!((exact - last) / exact < 1e-2);
    }

    #[test]
    fn annulus_nodes_on_arcs() {
        let m = generate_benchmark_mesh::<f64>(&Geometry::Annulus { a: 1.0, b: 2.0 }, &Resolution::Polar(3, 5))
            .unwrap();
        for f in m.boundary() {
            if f.label == BoundaryLabel::Traction {
                for &n in &f.nodes {
                    let p = m.node(n);
                    assert!(((p[0] * p[0] + p[1] * p[1]).sqrt() - 1.0).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn block_quarter_has_750_tets() {
        let m = generate_benchmark_mesh::<f64>(&Geometry::BlockQuarter, &Resolution::PerSide(5)).unwrap();
        assert_eq!(m.num_elements(), 750);
        assert!((m.total_measure() - 125_000.0).abs() < 1e-12 * 125_000.0);
        let loaded = m.boundary().iter().filter(|f| f.label == BoundaryLabel::Traction).count();
        assert_eq!(loaded, 2);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(generate_benchmark_mesh::<f64>(&Geometry::Annulus { a: 2.0, b: 1.0 }, &Resolution::PerSide(2)).is_err());
        assert!(generate_benchmark_mesh::<f64>(&Geometry::Cook, &Resolution::PerSide(0)).is_err());
        assert!(generate_benchmark_mesh::<f64>(&Geometry::Cook, &Resolution::Grid3(1, 1, 1)).is_err());
    }

    #[test]
    fn generic_over_f32() {
        let m = generate_benchmark_mesh::<f32>(&Geometry::Cook, &Resolution::PerSide(4)).unwrap();
        assert!((m.total_measure() - 1440.0).abs() < 1e-3);
    }
}
