use super::model::HyperelasticModel;
use crate::assembly::apply_dirichlet;
use crate::sparse::{norm2, LdlFactor};
use crate::{Error, Real, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonOptions {
    /// Uniform load increments.
    pub steps: usize,
    /// On `‖R‖ / ‖load‖` over free dofs, against the full load so that
    /// small increments do not push the target below round-off.
    pub tol: f64,
    /// Also converged once `‖Δu‖ ≤ step_tol ‖u‖` with the residual within
    /// `1000 tol`: for very stiff bulk moduli the residual stalls at round-off.
    pub step_tol: f64,
    pub max_iterations: usize,
    /// Successive halvings of a failing increment before giving up.
    pub max_halvings: usize,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions { steps: 10, tol: 1e-9, step_tol: 1e-12, max_iterations: 25, max_halvings: 8 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoadStep {
    pub factor: f64,
    pub iterations: usize,
    /// Relative residual after each iteration, starting with the initial one.
    pub residuals: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct NonlinearSolution<T> {
    pub displacement: Vec<T>,
    pub steps: Vec<LoadStep>,
    /// Rejected increments.
    pub halvings: usize,
}

fn free_norm<T: Real>(v: &[T], constrained: &[bool]) -> f64 {
    v.iter().zip(constrained).filter(|(_, &c)| !c).map(|(x, _)| x.as_f64() * x.as_f64()).sum::<f64>().sqrt()
}

fn newton<T: Real>(
    model: &HyperelasticModel<'_, T>,
    u: &mut [T],
    factor: T,
    opts: &NewtonOptions,
) -> Result<LoadStep> {
    let constrained = model.dofmap.constrained();
    let scale = free_norm(&model.load, constrained).max(f64::MIN_POSITIVE);
    let mut residuals = Vec::new();
    let mut stalled = false;
    for it in 0..=opts.max_iterations {
        let (r, k) = model.residual_tangent(u, factor, true)?;
        let rel = free_norm(&r, constrained) / scale;
        residuals.push(rel);
        if rel <= opts.tol || (stalled && rel <= 1e3 * opts.tol) || free_norm(&r, constrained) == 0.0 {
            return Ok(LoadStep { factor: factor.as_f64(), iterations: it, residuals });
        }
        if it == opts.max_iterations {
            break;
        }
        let minus: Vec<T> = r.iter().map(|&v| -v).collect();
        let (kc, rhs) = apply_dirichlet(&k.expect("tangent"), &minus, constrained, None);
        let factorized = LdlFactor::new(&kc)?;
        let du = factorized.solve_refined(&kc, &rhs, 1);
        if norm2(&du).as_f64().is_nan() {
            return Err(Error::NonConvergence { what: "newton", detail: "NaN update".into() });
        }
        stalled = norm2(&du).as_f64() <= opts.step_tol * norm2(u).as_f64();
        for (x, d) in u.iter_mut().zip(du) {
            *x += d;
        }
    }
    Err(Error::NonConvergence {
        what: "newton",
        detail: format!(
            "load factor {factor}: residual history [{}]",
            residuals.iter().map(|r| format!("{r:.3e}")).collect::<Vec<_>>().join(", ")
        ),
    })
}

/// Uniform load stepping with adaptive halving of failing increments.
pub fn newton_load_stepping<T: Real>(
    model: &HyperelasticModel<'_, T>,
    opts: &NewtonOptions,
) -> Result<NonlinearSolution<T>> {
    if opts.steps == 0 {
        return Err(Error::InvalidInput("load stepping needs at least one step".into()));
    }
    let mut u = vec![T::zero(); model.num_dofs()];
    let mut steps = Vec::new();
    let mut t = 0.0f64;
    let mut dt = 1.0 / opts.steps as f64;
    let mut halvings = 0;
    let mut consecutive = 0;
    while t < 1.0 - 1e-12 {
        let target = if t + dt > 1.0 - 1e-9 { 1.0 } else { t + dt };
        let mut trial = u.clone();
        match newton(model, &mut trial, T::lit(target), opts) {
            Ok(step) => {
                u = trial;
                t = target;
                steps.push(step);
                consecutive = 0;
            }
            Err(e @ (Error::InvertedDomain { .. } | Error::NonConvergence { .. } | Error::Singular { .. })) => {
                consecutive += 1;
                halvings += 1;
                if consecutive > opts.max_halvings {
                    return Err(Error::NonConvergence {
                        what: "load stepping",
                        detail: format!("increment at t = {t} failed after {} halvings: {e}", opts.max_halvings),
                    });
                }
                dt *= 0.5;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(NonlinearSolution { displacement: u, steps, halvings })
}
