//! Random perturbation of interior nodes.
//!
//! Each interior node `i` and coordinate `c` draws `r in [-1, 1]` from a
//! SplitMix64 stream seeded with `seed ^ ((i << 2 | c) * 0x9E3779B97F4A7C15)`;
//! `r = 2 * (next_u64 >> 11) / 2^53 - 1`. The node moves by `r * density * size_c`
//! where `size_c` is the smallest extent along `c` among the bounding boxes of
//! the incident elements.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use super::PrimalMesh;
use crate::{Error, Real, Result};

const MAX_RETRIES: usize = 10;

fn draw(seed: u64, node: usize, coord: usize) -> f64 {
    let key = ((node as u64) << 2) | coord as u64;
    let mut rng = SplitMix64::seed_from_u64(seed ^ key.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let bits = rng.next_u64() >> 11;
    2.0 * (bits as f64) / (1u64 << 53) as f64 - 1.0
}

pub fn distort_mesh<T: Real>(mesh: &PrimalMesh<T>, density: f64, seed: u64) -> Result<PrimalMesh<T>> {
    if !(0.0..=0.5).contains(&density) {
        return Err(Error::InvalidInput(format!("distortion density {density} outside [0, 0.5]")));
    }
    let dim = mesh.dim();
    let n = mesh.num_nodes();
    let on_boundary = mesh.boundary_nodes();

    let mut size = vec![[T::infinity(); 3]; n];
    for e in 0..mesh.num_elements() {
        let pts = mesh.element_points(e);
        for c in 0..dim {
            let lo = pts.iter().map(|p| p[c]).fold(T::infinity(), T::min);
            let hi = pts.iter().map(|p| p[c]).fold(T::neg_infinity(), T::max);
            for &v in mesh.element(e) {
                size[v][c] = size[v][c].min(hi - lo);
            }
        }
    }

    let d = T::lit(density);
    let offset: Vec<[T; 3]> = (0..n)
        .map(|i| {
            let mut o = [T::zero(); 3];
            if !on_boundary[i] {
                for c in 0..dim {
                    o[c] = T::lit(draw(seed, i, c)) * d * size[i][c];
                }
            }
            o
        })
        .collect();

    let mut factor = vec![T::one(); n];
    let half = T::lit(0.5);
    for _ in 0..=MAX_RETRIES {
        let nodes: Vec<[T; 3]> = (0..n)
            .map(|i| {
                let p = mesh.node(i);
                [
                    p[0] + factor[i] * offset[i][0],
                    p[1] + factor[i] * offset[i][1],
                    p[2] + factor[i] * offset[i][2],
                ]
            })
            .collect();
        match mesh.with_nodes(nodes) {
            Ok(m) => return Ok(m),
            Err(Error::DegenerateElement { .. }) => {
                let trial = PrimalMeshProbe { mesh, offset: &offset, factor: &factor };
                let bad = trial.inverted_elements();
                for e in bad {
                    for &v in mesh.element(e) {
                        if !on_boundary[v] {
                            factor[v] *= half;
                        }
                    }
                }
            }
            Err(e) => return Err(e),
        }
    }
    let probe = PrimalMeshProbe { mesh, offset: &offset, factor: &factor };
    let node = probe
        .inverted_elements()
        .into_iter()
        .flat_map(|e| mesh.element(e).to_vec())
        .find(|&v| !on_boundary[v])
        .unwrap_or(0);
    Err(Error::Distortion { node })
}

struct PrimalMeshProbe<'a, T> {
    mesh: &'a PrimalMesh<T>,
    offset: &'a [[T; 3]],
    factor: &'a [T],
}

impl<T: Real> PrimalMeshProbe<'_, T> {
    fn inverted_elements(&self) -> Vec<usize> {
        let dim = self.mesh.dim();
        (0..self.mesh.num_elements())
            .filter(|&e| {
                let pts: Vec<[T; 3]> = self
                    .mesh
                    .element(e)
                    .iter()
                    .map(|&v| {
                        let p = self.mesh.node(v);
                        let (o, f) = (self.offset[v], self.factor[v]);
                        [p[0] + f * o[0], p[1] + f * o[1], p[2] + f * o[2]]
                    })
                    .collect();
                !(crate::geom::signed_measure(dim, &pts) > T::zero())
            })
            .collect()
    }
}
