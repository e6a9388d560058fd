//! Discretized action, its gradient, and its Hessian in reduced coordinates.
//!
//! With `h = 1/M` and `L = N·M` samples of `z_0`,
//!
//! `A = N [ Σ_n |z_{n+1} - z_n|² / (2h) + (h/2) Σ_{s=1}^{N-1} Σ_n 1/|z_n - z_{n+sM}| ]`,
//!
//! the kinetic term by forward differences over each grid cell and the
//! potential by the trapezoid rule over the period. The factor `N` and the
//! sum over shifts `s` account for all strands of the choreography.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::path::{reduce_gradient, reduced_map, LoopPath};
use super::problem::ChoreographyProblem;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ActionTerms {
    pub kinetic: f64,
    pub potential: f64,
}

impl ActionTerms {
    pub fn total(&self) -> f64 {
        self.kinetic + self.potential
    }
}

/// Kinetic and potential parts of the action of `samples` with time step `dt`.
pub fn action_terms(samples: &[Complex64], bodies: usize, samples_per_unit: usize, dt: f64) -> ActionTerms {
    let len = samples.len();
    let nf = bodies as f64;
    let mut kinetic = 0.0;
    let mut potential = 0.0;
    for n in 0..len {
        kinetic += (samples[(n + 1) % len] - samples[n]).norm_sqr();
        for s in 1..bodies {
            potential += 1.0 / (samples[n] - samples[(n + s * samples_per_unit) % len]).norm();
        }
    }
    ActionTerms {
        kinetic: nf * kinetic / (2.0 * dt),
        potential: nf * 0.5 * dt * potential,
    }
}

/// Fails when two strands come closer than a tenth of the separation floor.
pub fn check_collisions(path: &LoopPath, min_separation: f64) -> Result<()> {
    let (distance, n, first, second) = path.min_separation();
    if distance < 0.1 * min_separation {
        return Err(Error::Collision {
            time: n as f64 * path.step(),
            first,
            second,
            distance,
        });
    }
    Ok(())
}

fn check_shape(path: &LoopPath, problem: &ChoreographyProblem) -> Result<()> {
    if path.bodies() != problem.bodies() || path.samples_per_unit() != problem.samples_per_unit {
        return Err(Error::invalid(format!(
            "path has N = {}, M = {} but the problem has N = {}, M = {}",
            path.bodies(),
            path.samples_per_unit(),
            problem.bodies(),
            problem.samples_per_unit
        )));
    }
    Ok(())
}

pub fn action(path: &LoopPath, problem: &ChoreographyProblem) -> Result<f64> {
    check_shape(path, problem)?;
    check_collisions(path, problem.tolerances.min_separation)?;
    Ok(action_terms(path.samples(), path.bodies(), path.samples_per_unit(), path.step()).total())
}

/// Gradient with respect to every sample, as `∂A/∂x_n + i ∂A/∂y_n`.
pub fn action_gradient(path: &LoopPath, problem: &ChoreographyProblem) -> Result<Vec<Complex64>> {
    check_shape(path, problem)?;
    check_collisions(path, problem.tolerances.min_separation)?;
    let len = path.len() as isize;
    let h = path.step();
    let nf = path.bodies() as f64;
    let m = path.samples_per_unit() as isize;
    Ok((0..len)
        .map(|n| {
            let z = path.at(n);
            let mut g = (z * 2.0 - path.at(n + 1) - path.at(n - 1)) / h;
            for s in 1..path.bodies() as isize {
                let d = z - path.at(n + s * m);
                g -= d * (h / d.norm().powi(3));
            }
            g * nf
        })
        .collect())
}

/// Gradient with respect to the reduced coordinates of a symmetric loop.
pub fn reduced_gradient(path: &LoopPath, problem: &ChoreographyProblem) -> Result<Vec<f64>> {
    Ok(reduce_gradient(&action_gradient(path, problem)?))
}

/// Dense Hessian with respect to the reduced coordinates.
pub fn reduced_hessian(path: &LoopPath, problem: &ChoreographyProblem) -> Result<DMatrix<f64>> {
    check_shape(path, problem)?;
    check_collisions(path, problem.tolerances.min_separation)?;
    let len = path.len();
    let h = path.step();
    let nf = path.bodies() as f64;
    let m = path.samples_per_unit();
    let map = reduced_map(len);
    let mut hess = DMatrix::<f64>::zeros(len, len);
    // Adds `value` to the full entry (p, q), pushed through the reduction.
    let mut add = |p: usize, q: usize, value: f64| {
        if let (Some((a, sa)), Some((b, sb))) = (map[p], map[q]) {
            hess[(a, b)] += sa * sb * value;
        }
    };
    let kinetic = nf / h;
    for n in 0..len {
        let next = (n + 1) % len;
        for c in 0..2 {
            let (p, q) = (2 * n + c, 2 * next + c);
            add(p, p, kinetic);
            add(q, q, kinetic);
            add(p, q, -kinetic);
            add(q, p, -kinetic);
        }
    }
    // Ordered pairs (n, n+sM) visit each unordered pair twice.
    let coefficient = 0.5 * nf * h;
    for n in 0..len {
        for s in 1..path.bodies() {
            let other = (n + s * m) % len;
            let d = path.samples()[n] - path.samples()[other];
            let r2 = d.norm_sqr();
            let r5 = r2 * r2 * r2.sqrt();
            let v = [d.re, d.im];
            for a in 0..2 {
                for b in 0..2 {
                    let q = (3.0 * v[a] * v[b] - if a == b { r2 } else { 0.0 }) / r5 * coefficient;
                    add(2 * n + a, 2 * n + b, q);
                    add(2 * other + a, 2 * other + b, q);
                    add(2 * n + a, 2 * other + b, -q);
                    add(2 * other + a, 2 * n + b, -q);
                }
            }
        }
    }
    Ok(hess)
}

/// Radius at which the uniformly rotating regular `N`-gon with period `N` is
/// an exact critical point of the discrete action on an `M`-point grid.
pub fn discrete_circle_radius(bodies: usize, samples_per_unit: usize) -> f64 {
    let n = bodies as f64;
    let h = 1.0 / samples_per_unit as f64;
    let w = std::f64::consts::TAU / n;
    let force: f64 = (1..bodies)
        .map(|k| 1.0 / (std::f64::consts::PI * k as f64 / n).sin())
        .sum::<f64>()
        / 4.0;
    (force * h * h / (2.0 - 2.0 * (w * h).cos())).cbrt()
}
