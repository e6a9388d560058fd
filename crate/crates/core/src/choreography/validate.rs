//! Property checks on a solved loop: equations of motion, separation, sign
//! pattern, monotonicity, endpoint conditions, axis crossings, energy.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::path::LoopPath;
use super::problem::ChoreographyProblem;
use super::symmetry::{half_integer_imaginary_parts, half_integer_index};
use crate::error::{Error, Result};

/// Largest symmetry defect accepted.
const SYMMETRY_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub samples_per_unit: usize,
    /// Max over the grid of `|z̈_0 - Σ_s force|`, `z̈_0` by the five-point stencil.
    pub max_residual: f64,
    pub residual_tol: f64,
    pub residual_ok: bool,
    pub min_separation: f64,
    pub separation_ok: bool,
    /// `Im z_0(j/2)` for `j = 1..N-1`.
    pub half_integer_imaginary: Vec<f64>,
    pub omega_ok: bool,
    /// Smallest `Re ż_0` over grid times in `(0, N/2)`.
    pub min_forward_velocity: f64,
    pub monotone_ok: bool,
    /// `Re ż_0` at `t = 0` and `t = N/2`.
    pub endpoint_velocity: [f64; 2],
    pub endpoints_ok: bool,
    /// Sign changes of `Im z_0` over `(j/2, (j+1)/2)`, `j = 0..N-1`.
    pub axis_crossings: Vec<usize>,
    pub expected_crossings: Vec<usize>,
    pub crossings_ok: bool,
    /// Max minus min of the total energy over the grid.
    pub energy_spread: f64,
    pub energy_tol: f64,
    pub energy_ok: bool,
    pub symmetry_defect: f64,
    pub symmetry_ok: bool,
    pub passed: bool,
}

impl ValidationReport {
    /// Names of the failed checks.
    pub fn failures(&self) -> Vec<&'static str> {
        [
            ("residual", self.residual_ok),
            ("separation", self.separation_ok),
            ("omega", self.omega_ok),
            ("monotone", self.monotone_ok),
            ("endpoints", self.endpoints_ok),
            ("crossings", self.crossings_ok),
            ("energy", self.energy_ok),
            ("symmetry", self.symmetry_ok),
        ]
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(name, _)| name)
        .collect()
    }
}

/// Acceleration demanded by the Newton equations for strand 0 at sample `n`.
fn force(path: &LoopPath, n: isize) -> Complex64 {
    let m = path.samples_per_unit() as isize;
    let z = path.at(n);
    (1..path.bodies() as isize)
        .map(|s| {
            let d = z - path.at(n + s * m);
            -d / d.norm().powi(3)
        })
        .sum()
}

/// Total energy of all bodies at grid time `n h`.
fn energy(path: &LoopPath, n: isize) -> f64 {
    let m = path.samples_per_unit() as isize;
    let bodies = path.bodies() as isize;
    let mut kinetic = 0.0;
    let mut potential = 0.0;
    for j in 0..bodies {
        let z = path.at(n + j * m);
        kinetic += 0.5 * path.velocity(n + j * m).norm_sqr();
        for k in j + 1..bodies {
            potential += 1.0 / (z - path.at(n + k * m)).norm();
        }
    }
    kinetic - potential
}

/// Expected crossings of arc `j`: one when `ω_j ω_{j+1} = -1`, with
/// `ω_0 = ω_N = 0`.
pub fn expected_axis_crossings(signs: &[i8]) -> Vec<usize> {
    let n = signs.len() + 1;
    let get = |j: usize| if j == 0 || j == n { 0 } else { signs[j - 1] };
    (0..n).map(|j| usize::from(get(j) * get(j + 1) == -1)).collect()
}

fn axis_crossings(path: &LoopPath) -> Vec<usize> {
    let bodies = path.bodies();
    let half_unit = path.samples_per_unit() / 2;
    (0..bodies)
        .map(|j| {
            let (a, b) = (j * half_unit, (j + 1) * half_unit);
            // Endpoints at t = 0 and t = N/2 lie on the axis and are skipped.
            let lo = if j == 0 { a + 1 } else { a };
            let hi = if j + 1 == bodies { b - 1 } else { b };
            let signs: Vec<f64> = (lo..=hi)
                .map(|n| path.samples()[n].im)
                .filter(|v| *v != 0.0)
                .map(f64::signum)
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        })
        .collect()
}

pub fn validate(path: &LoopPath, problem: &ChoreographyProblem) -> Result<ValidationReport> {
    if path.bodies() != problem.bodies() || path.samples_per_unit() != problem.samples_per_unit {
        return Err(Error::invalid("trajectory does not match the problem grid"));
    }
    let t = &problem.tolerances;
    let len = path.len() as isize;
    let half = path.half();

    let max_residual = (0..len)
        .into_par_iter()
        .map(|n| (path.acceleration(n) - force(path, n)).norm())
        .reduce(|| 0.0, f64::max);
    let unit = path.samples_per_unit() as isize;
    let energies: Vec<f64> = (0..unit).into_par_iter().map(|n| energy(path, n)).collect();
    let energy_spread = energies.iter().copied().fold(f64::NEG_INFINITY, f64::max)
        - energies.iter().copied().fold(f64::INFINITY, f64::min);

    let min_separation = path.min_separation().0;
    let half_integer_imaginary = half_integer_imaginary_parts(path);
    let omega_ok = half_integer_imaginary
        .iter()
        .zip(problem.omega.signs())
        .all(|(&im, &s)| im * f64::from(s) > 0.0);
    let min_forward_velocity = (1..half as isize)
        .map(|n| path.velocity(n).re)
        .fold(f64::INFINITY, f64::min);
    let endpoint_velocity = [path.velocity(0).re, path.velocity(half as isize).re];
    let axis_crossings = axis_crossings(path);
    let expected_crossings = expected_axis_crossings(problem.omega.signs());
    let symmetry_defect = path.symmetry_defect();
    debug_assert_eq!(half_integer_index(path, path.bodies()), half);

    let residual_ok = max_residual <= t.residual_tol;
    let separation_ok = min_separation >= t.min_separation;
    let monotone_ok = min_forward_velocity >= -t.velocity_tol;
    let endpoints_ok = endpoint_velocity.iter().all(|v| v.abs() <= t.velocity_tol);
    let crossings_ok = axis_crossings == expected_crossings;
    let energy_ok = energy_spread <= t.energy_tol;
    let symmetry_ok = symmetry_defect <= SYMMETRY_TOL;
    let passed = residual_ok
        && separation_ok
        && omega_ok
        && monotone_ok
        && endpoints_ok
        && crossings_ok
        && energy_ok
        && symmetry_ok;
    Ok(ValidationReport {
        samples_per_unit: path.samples_per_unit(),
        max_residual,
        residual_tol: t.residual_tol,
        residual_ok,
        min_separation,
        separation_ok,
        half_integer_imaginary,
        omega_ok,
        min_forward_velocity,
        monotone_ok,
        endpoint_velocity,
        endpoints_ok,
        axis_crossings,
        expected_crossings,
        crossings_ok,
        energy_spread,
        energy_tol: t.energy_tol,
        energy_ok,
        symmetry_defect,
        symmetry_ok,
        passed,
    })
}
