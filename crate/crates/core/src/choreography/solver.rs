//! Constrained minimization of the discrete action.
//!
//! The reduced coordinates of a symmetric loop are optimized directly, so the
//! symmetry holds exactly at every iterate. The sign constraints are simple
//! bounds on `Im z_0(j/2)` and are kept by clamping. A projected L-BFGS run on
//! a coarse grid is followed by damped Newton steps, and the result is carried
//! to finer grids by interpolation, with Newton steps on each.

use std::collections::VecDeque;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::action::{action, reduced_gradient, reduced_hessian};
use super::path::{reduced_im_index, LoopPath};
use super::problem::{ChoreographyProblem, MIN_SAMPLES_PER_UNIT};
use super::seed::seed_path;
use super::symmetry::half_integer_index;
use crate::combinatorics::SignSequence;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    pub lbfgs_max_iter: usize,
    pub lbfgs_memory: usize,
    /// Gradient norm at which the coarse L-BFGS stage hands over to Newton.
    pub lbfgs_gradient_tol: f64,
    pub newton_max_iter: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            lbfgs_max_iter: 20_000,
            lbfgs_memory: 20,
            lbfgs_gradient_tol: 1e-6,
            newton_max_iter: 60,
        }
    }
}

/// One accepted optimizer step.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveStep {
    pub samples_per_unit: usize,
    pub action: f64,
    pub gradient_norm: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub omega: SignSequence,
    pub path: LoopPath,
    pub action: f64,
    pub gradient_norm: f64,
    pub converged: bool,
    pub iterations: usize,
    pub seed: u64,
    /// Accepted steps in order; not persisted.
    #[serde(skip)]
    pub history: Vec<SolveStep>,
}

impl Trajectory {
    pub fn bodies(&self) -> usize {
        self.path.bodies()
    }

    pub fn samples_per_unit(&self) -> usize {
        self.path.samples_per_unit()
    }
}

pub fn solve(problem: &ChoreographyProblem, seed: u64) -> Result<Trajectory> {
    solve_with(problem, seed, &SolverOptions::default())
}

/// Grid densities from the coarsest (at least 32, halving while even) to `M`.
fn grid_ladder(target: usize) -> Vec<usize> {
    let mut ladder = vec![target];
    let mut m = target;
    while m.is_multiple_of(4) && m / 2 >= MIN_SAMPLES_PER_UNIT {
        m /= 2;
        ladder.push(m);
    }
    ladder.reverse();
    ladder
}

pub fn solve_with(problem: &ChoreographyProblem, seed: u64, options: &SolverOptions) -> Result<Trajectory> {
    let ladder = grid_ladder(problem.samples_per_unit);
    let coarse = problem.on_grid(ladder[0])?;
    let start = seed_path(&coarse, seed)?;
    let mut state = Stage::new(coarse, start.to_reduced())?;
    state.lbfgs(options)?;
    state.newton(options)?;
    for &m in &ladder[1..] {
        let path = state.path()?.refined();
        state = Stage::continue_from(state, problem.on_grid(m)?, path.to_reduced())?;
        state.newton(options)?;
    }
    let gradient_norm = state.gradient_norm;
    let converged = gradient_norm < problem.tolerances.gradient_tol;
    if !converged {
        return Err(Error::SolverNonConvergence {
            iterations: state.iterations,
            gradient_norm,
        });
    }
    Ok(Trajectory {
        omega: problem.omega.clone(),
        path: state.path()?,
        action: state.value,
        gradient_norm,
        converged,
        iterations: state.iterations,
        seed,
        history: state.history,
    })
}

/// Coordinates, action and gradient of an accepted trial.
type Point = (Vec<f64>, f64, Vec<f64>);

/// Optimizer state on one grid.
struct Stage {
    problem: ChoreographyProblem,
    x: Vec<f64>,
    value: f64,
    gradient: Vec<f64>,
    gradient_norm: f64,
    /// Reduced index and sign of each constrained coordinate.
    bounds: Vec<(usize, f64)>,
    iterations: usize,
    history: Vec<SolveStep>,
}

impl Stage {
    fn new(problem: ChoreographyProblem, x: Vec<f64>) -> Result<Self> {
        Self::build(problem, x, 0, Vec::new())
    }

    fn continue_from(previous: Stage, problem: ChoreographyProblem, x: Vec<f64>) -> Result<Self> {
        Self::build(problem, x, previous.iterations, previous.history)
    }

    fn build(problem: ChoreographyProblem, x: Vec<f64>, iterations: usize, history: Vec<SolveStep>) -> Result<Self> {
        let bodies = problem.bodies();
        let half = bodies * problem.samples_per_unit / 2;
        let probe = LoopPath::from_reduced(bodies, problem.samples_per_unit, &x)?;
        let bounds = (1..bodies)
            .map(|j| {
                let n = half_integer_index(&probe, j);
                (reduced_im_index(half, n), f64::from(problem.omega.get(j)))
            })
            .collect();
        let mut stage = Self {
            problem,
            x,
            value: f64::NAN,
            gradient: Vec::new(),
            gradient_norm: f64::NAN,
            bounds,
            iterations,
            history,
        };
        stage.project_in_place();
        let (value, gradient) = stage.evaluate(&stage.x)?.ok_or_else(|| stage.collision_error())?;
        stage.set(stage.x.clone(), value, gradient);
        Ok(stage)
    }

    fn path_of(&self, x: &[f64]) -> Result<LoopPath> {
        LoopPath::from_reduced(self.problem.bodies(), self.problem.samples_per_unit, x)
    }

    fn path(&self) -> Result<LoopPath> {
        self.path_of(&self.x)
    }

    fn collision_error(&self) -> Error {
        match self.path() {
            Ok(path) => {
                let (distance, n, first, second) = path.min_separation();
                Error::Collision {
                    time: n as f64 * path.step(),
                    first,
                    second,
                    distance,
                }
            }
            Err(e) => e,
        }
    }

    /// Action and gradient, or `None` when the loop violates the separation floor.
    fn evaluate(&self, x: &[f64]) -> Result<Option<(f64, Vec<f64>)>> {
        let path = self.path_of(x)?;
        if path.min_separation().0 < self.problem.tolerances.min_separation {
            return Ok(None);
        }
        match (action(&path, &self.problem), reduced_gradient(&path, &self.problem)) {
            (Ok(a), Ok(g)) => Ok(Some((a, g))),
            (Err(Error::Collision { .. }), _) | (_, Err(Error::Collision { .. })) => Ok(None),
            (Err(e), _) | (_, Err(e)) => Err(e),
        }
    }

    fn project_in_place(&mut self) {
        let floor = self.problem.tolerances.omega_floor;
        for &(i, s) in &self.bounds {
            if self.x[i] * s < floor {
                self.x[i] = s * floor;
            }
        }
    }

    fn projected(&self, mut x: Vec<f64>) -> Vec<f64> {
        let floor = self.problem.tolerances.omega_floor;
        for &(i, s) in &self.bounds {
            if x[i] * s < floor {
                x[i] = s * floor;
            }
        }
        x
    }

    /// Bound coordinates sitting on the floor with the gradient pushing outward.
    fn active(&self, gradient: &[f64]) -> Vec<usize> {
        let floor = self.problem.tolerances.omega_floor;
        self.bounds
            .iter()
            .filter(|&&(i, s)| self.x[i] * s <= floor * (1.0 + 1e-12) && gradient[i] * s > 0.0)
            .map(|&(i, _)| i)
            .collect()
    }

    fn projected_gradient(&self, gradient: &[f64]) -> Vec<f64> {
        let mut g = gradient.to_vec();
        for i in self.active(gradient) {
            g[i] = 0.0;
        }
        g
    }

    fn set(&mut self, x: Vec<f64>, value: f64, gradient: Vec<f64>) {
        self.x = x;
        self.value = value;
        self.gradient_norm = norm(&self.projected_gradient(&gradient));
        self.gradient = gradient;
        self.history.push(SolveStep {
            samples_per_unit: self.problem.samples_per_unit,
            action: value,
            gradient_norm: self.gradient_norm,
        });
    }

    fn lbfgs(&mut self, options: &SolverOptions) -> Result<()> {
        let mut memory: VecDeque<(Vec<f64>, Vec<f64>, f64)> = VecDeque::new();
        for _ in 0..options.lbfgs_max_iter {
            if self.gradient_norm < options.lbfgs_gradient_tol {
                break;
            }
            let g = self.projected_gradient(&self.gradient);
            let active = self.active(&self.gradient);
            let mut d = two_loop(&g, &memory);
            for &i in &active {
                d[i] = 0.0;
            }
            if dot(&d, &g) >= 0.0 {
                memory.clear();
                d = g.iter().map(|v| -v).collect();
            }
            let first_step = if memory.is_empty() {
                (1e-2 / norm(&d).max(1e-300)).min(1.0)
            } else {
                1.0
            };
            match self.line_search(&d, first_step)? {
                Some((x, value, gradient)) => {
                    let s: Vec<f64> = x.iter().zip(&self.x).map(|(a, b)| a - b).collect();
                    let y: Vec<f64> = gradient.iter().zip(&self.gradient).map(|(a, b)| a - b).collect();
                    let sy = dot(&s, &y);
                    self.iterations += 1;
                    self.set(x, value, gradient);
                    if sy > 1e-12 * norm(&s) * norm(&y) {
                        memory.push_back((s, y, 1.0 / sy));
                        if memory.len() > options.lbfgs_memory {
                            memory.pop_front();
                        }
                    }
                }
                None if memory.is_empty() => break,
                None => memory.clear(),
            }
        }
        Ok(())
    }

    /// Backtracking Armijo search along `d` with projection.
    fn line_search(&self, d: &[f64], first_step: f64) -> Result<Option<Point>> {
        let mut alpha = first_step;
        for _ in 0..60 {
            let trial = self.projected(self.x.iter().zip(d).map(|(x, d)| x + alpha * d).collect());
            if let Some((value, gradient)) = self.evaluate(&trial)? {
                let decrease: f64 = self
                    .gradient
                    .iter()
                    .zip(trial.iter().zip(&self.x))
                    .map(|(g, (a, b))| g * (a - b))
                    .sum();
                if value < self.value && value <= self.value + 1e-4 * decrease {
                    return Ok(Some((trial, value, gradient)));
                }
            }
            alpha *= 0.5;
        }
        Ok(None)
    }

    /// Levenberg–Marquardt damped Newton iteration to the gradient tolerance.
    fn newton(&mut self, options: &SolverOptions) -> Result<()> {
        let tol = self.problem.tolerances.gradient_tol;
        let mut mu = 0.0;
        for _ in 0..options.newton_max_iter {
            if self.gradient_norm < tol {
                return Ok(());
            }
            let path = self.path()?;
            let mut hess = reduced_hessian(&path, &self.problem)?;
            let mut g = DVector::from_vec(self.gradient.clone());
            for i in self.active(&self.gradient) {
                hess.row_mut(i).fill(0.0);
                hess.column_mut(i).fill(0.0);
                hess[(i, i)] = 1.0;
                g[i] = 0.0;
            }
            let scale = hess.diagonal().amax();
            let mu_floor = 1e-10 * scale;
            let mut accepted = false;
            while mu <= 1e6 * scale {
                if let Some(step) = damped_step(&hess, &g, mu) {
                    let trial = self.projected(self.x.iter().zip(step.iter()).map(|(x, p)| x + p).collect());
                    if let Some((value, gradient)) = self.evaluate(&trial)? {
                        let trial_norm = norm(&self.projected_gradient(&gradient));
                        let slack = ACTION_NOISE * self.value.abs();
                        if value < self.value || (value <= self.value + slack && trial_norm < self.gradient_norm) {
                            self.iterations += 1;
                            self.set(trial, value, gradient);
                            mu = if mu * 0.1 < mu_floor { 0.0 } else { mu * 0.1 };
                            accepted = true;
                            break;
                        }
                    }
                }
                mu = (mu * 10.0).max(mu_floor);
            }
            if !accepted {
                break;
            }
        }
        if self.gradient_norm < tol {
            Ok(())
        } else {
            Err(Error::SolverNonConvergence {
                iterations: self.iterations,
                gradient_norm: self.gradient_norm,
            })
        }
    }
}

/// Relative rounding noise of an action evaluation. A step that lowers the
/// gradient norm is accepted when the action rises by less than this; near a
/// degenerate critical point the true change is below the noise.
const ACTION_NOISE: f64 = 1e-12;

/// Solves `(H + μI) p = -g` by Cholesky; `None` when not positive definite.
fn damped_step(hess: &DMatrix<f64>, g: &DVector<f64>, mu: f64) -> Option<DVector<f64>> {
    let mut a = hess.clone();
    for i in 0..a.nrows() {
        a[(i, i)] += mu;
    }
    let chol = a.cholesky()?;
    Some(-chol.solve(g))
}

fn two_loop(g: &[f64], memory: &VecDeque<(Vec<f64>, Vec<f64>, f64)>) -> Vec<f64> {
    let mut q = g.to_vec();
    let mut alphas = Vec::with_capacity(memory.len());
    for (s, y, rho) in memory.iter().rev() {
        let a = rho * dot(s, &q);
        for (qi, yi) in q.iter_mut().zip(y) {
            *qi -= a * yi;
        }
        alphas.push(a);
    }
    if let Some((s, y, _)) = memory.back() {
        let gamma = dot(s, y) / dot(y, y);
        for qi in q.iter_mut() {
            *qi *= gamma;
        }
    }
    for ((s, y, rho), a) in memory.iter().zip(alphas.into_iter().rev()) {
        let b = rho * dot(y, &q);
        for (qi, si) in q.iter_mut().zip(s) {
            *qi += (a - b) * si;
        }
    }
    q.iter().map(|v| -v).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
