//! Initial loops inside the topological class of a sign sequence.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::path::LoopPath;
use super::problem::ChoreographyProblem;
use super::symmetry::omega_enforce;
use crate::error::Result;

/// Radius of the rotating `N`-gon with period `N`.
pub fn kepler_radius(bodies: usize) -> f64 {
    let n = bodies as f64;
    let force: f64 = (1..bodies).map(|k| 1.0 / (PI * k as f64 / n).sin()).sum::<f64>() / 4.0;
    (force / (TAU / n).powi(2)).cbrt()
}

/// Relative size of the random smooth perturbation added to the seed.
const PERTURBATION: f64 = 1e-2;

/// Smoothing passes applied to the piecewise-linear vertical profile.
const SMOOTHING_PASSES: usize = 50;

/// A symmetric loop with `Re z_0` increasing on `(0, N/2)` and
/// `Im z_0(j/2) = ω_j r/2`, plus a small smooth random perturbation drawn
/// from `seed`.
pub fn seed_path(problem: &ChoreographyProblem, seed: u64) -> Result<LoopPath> {
    let bodies = problem.bodies();
    let m = problem.samples_per_unit;
    let n = bodies as f64;
    let r = kepler_radius(bodies);
    let half = bodies * m / 2;
    let h = problem.step();

    // Piecewise-linear profile through (j/2, ω_j r/2), zero at both ends.
    let mut knots = vec![0.0];
    knots.extend(problem.omega.signs().iter().map(|&s| f64::from(s) * r / 2.0));
    knots.push(0.0);
    let mut y: Vec<f64> = (0..=half)
        .map(|k| {
            let u = 2.0 * k as f64 * h;
            let i = (u.floor() as usize).min(bodies - 1);
            let frac = u - i as f64;
            knots[i] * (1.0 - frac) + knots[i + 1] * frac
        })
        .collect();
    for _ in 0..SMOOTHING_PASSES * m / 32 {
        let prev = y.clone();
        for k in 1..half {
            y[k] = 0.5 * prev[k] + 0.25 * (prev[k - 1] + prev[k + 1]);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let modes: Vec<(f64, f64)> = (2..6)
        .map(|_| {
            (
                rng.gen_range(-PERTURBATION..PERTURBATION) * r,
                rng.gen_range(-PERTURBATION..PERTURBATION) * r,
            )
        })
        .collect();
    let mut x = vec![0.0; bodies * m];
    for k in 0..=half {
        let t = k as f64 * h;
        let a = TAU * t / n;
        let mut re = -r * a.cos();
        let mut im = y[k];
        for (i, &(c, s)) in modes.iter().enumerate() {
            let b = (i + 2) as f64 * a;
            re += c * b.cos();
            im += s * b.sin();
        }
        x[k] = re;
        if k > 0 && k < half {
            x[half + k] = im;
        }
    }
    let path = LoopPath::from_reduced(bodies, m, &x)?;
    omega_enforce(&path, &problem.omega, problem.tolerances.omega_floor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::choreography::symmetry::satisfies_omega;
    use crate::combinatorics::SignSequence;

    #[test]
    fn seeds_sit_in_the_right_class() {
        for omega in ["+-", "+-+", "+--", "++--", "+-+-+"] {
            let omega: SignSequence = omega.parse().unwrap();
            let p = ChoreographyProblem::new(omega.clone(), 32).unwrap();
            let s = seed_path(&p, 7).unwrap();
            assert!(satisfies_omega(&s, &omega));
            assert!(s.symmetry_defect() < 1e-14);
            assert!(s.min_separation().0 > 1e-2, "{omega}");
            let k = s.half();
            assert!((1..k).all(|n| s.samples()[n + 1].re > s.samples()[n - 1].re));
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let p = ChoreographyProblem::new("+-+".parse().unwrap(), 32).unwrap();
        assert_eq!(seed_path(&p, 3).unwrap(), seed_path(&p, 3).unwrap());
        assert_ne!(seed_path(&p, 3).unwrap(), seed_path(&p, 4).unwrap());
    }

    #[test]
    fn kepler_radius_matches_the_discrete_limit() {
        let fine = crate::choreography::action::discrete_circle_radius(3, 4096);
        assert!((kepler_radius(3) - fine).abs() < 1e-6);
    }
}
