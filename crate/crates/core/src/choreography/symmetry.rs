//! Projection onto symmetric loops and the sign constraints at half-integer
//! times.

use num_complex::Complex64;

use super::path::LoopPath;
use crate::combinatorics::SignSequence;
use crate::error::{Error, Result};

/// Nearest loop with `z_0(t) = conj z_0(-t)` on the grid.
///
/// Combined with the choreography relation this also gives
/// `z_j(t) = conj z_{N-1-j}(1-t)`, so one averaging enforces all three
/// identities.
pub fn symmetry_project(path: &LoopPath) -> LoopPath {
    let samples: Vec<Complex64> = (0..path.len() as isize)
        .map(|n| (path.at(n) + path.at(-n).conj()) * 0.5)
        .collect();
    LoopPath::new(path.bodies(), path.samples_per_unit(), samples).expect("same shape")
}

/// Sample index of time `j/2`.
pub fn half_integer_index(path: &LoopPath, j: usize) -> usize {
    j * path.samples_per_unit() / 2
}

/// `Im z_0(j/2)` for `j = 1..N-1`.
pub fn half_integer_imaginary_parts(path: &LoopPath) -> Vec<f64> {
    (1..path.bodies())
        .map(|j| path.samples()[half_integer_index(path, j)].im)
        .collect()
}

/// True when every `Im z_0(j/2)` is nonzero with sign `ω_j`.
pub fn satisfies_omega(path: &LoopPath, omega: &SignSequence) -> bool {
    half_integer_imaginary_parts(path)
        .iter()
        .zip(omega.signs())
        .all(|(&im, &s)| im * f64::from(s) > 0.0)
}

/// Restores the sign of `Im z_0(j/2)` to `ω_j` for every `j`.
///
/// A wrong-signed value has its whole run of wrong-signed samples inside
/// `((j-1)/2, (j+1)/2)` reflected across the real axis; afterwards values
/// smaller than `floor` in magnitude are pushed out to `ω_j·floor`. The
/// mirrored half of the loop is updated to keep the path symmetric.
pub fn omega_enforce(path: &LoopPath, omega: &SignSequence, floor: f64) -> Result<LoopPath> {
    if omega.bodies() != path.bodies() {
        return Err(Error::invalid(format!(
            "sign sequence for {} bodies applied to a {}-body loop",
            omega.bodies(),
            path.bodies()
        )));
    }
    let mut samples = path.samples().to_vec();
    let len = samples.len();
    let half_unit = path.samples_per_unit() / 2;
    let set = |samples: &mut Vec<Complex64>, n: usize, z: Complex64| {
        samples[n] = z;
        samples[(len - n) % len] = z.conj();
    };
    for j in 1..path.bodies() {
        let sign = f64::from(omega.get(j));
        let centre = j * half_unit;
        if samples[centre].im * sign < 0.0 {
            let lo = centre - half_unit;
            let hi = centre + half_unit;
            let mut a = centre;
            while a > lo + 1 && samples[a - 1].im * sign < 0.0 {
                a -= 1;
            }
            let mut b = centre;
            while b + 1 < hi && samples[b + 1].im * sign < 0.0 {
                b += 1;
            }
            for n in a..=b {
                let z = samples[n].conj();
                set(&mut samples, n, z);
            }
        }
        if samples[centre].im * sign < floor {
            let z = Complex64::new(samples[centre].re, sign * floor);
            set(&mut samples, centre, z);
        }
    }
    LoopPath::new(path.bodies(), path.samples_per_unit(), samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::TAU;

    fn random_loop(bodies: usize, m: usize, seed: u64) -> LoopPath {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let samples = (0..bodies * m)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        LoopPath::new(bodies, m, samples).unwrap()
    }

    fn figure(bodies: usize, m: usize, amplitude: f64) -> LoopPath {
        LoopPath::from_fn(bodies, m, |t| {
            let a = TAU * t / bodies as f64;
            Complex64::new(-a.cos(), amplitude * (2.0 * a).sin())
        })
        .unwrap()
    }

    #[test]
    fn projection_gives_all_identities() {
        let p = symmetry_project(&random_loop(4, 32, 3));
        assert!(p.symmetry_defect() < 1e-15);
        assert_eq!(p.samples()[0].im, 0.0);
        assert!(p.samples()[p.half()].im.abs() < 1e-15);
        // z_j(t) = conj z_{N-1-j}(1 - t) on grid times.
        let m = 32isize;
        for j in 0..4usize {
            for n in 0..m {
                let lhs = p.strand(j, n);
                let rhs = p.strand(3 - j, m - n).conj();
                assert!((lhs - rhs).norm() < 1e-14);
            }
        }
        // Re ż_j(0) = -Re ż_{N-j}(0) by centered differences.
        let velocity = |j: usize| (p.strand(j, 1) - p.strand(j, -1)).re;
        for j in 0..4usize {
            assert!((velocity(j) + velocity((4 - j) % 4)).abs() < 1e-14);
        }
    }

    #[test]
    fn projection_is_idempotent() {
        let p = symmetry_project(&random_loop(3, 32, 8));
        let q = symmetry_project(&p);
        for (a, b) in p.samples().iter().zip(q.samples()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn enforcement_flips_and_floors() {
        // Im z_0(t) = 0.3 sin(4πt/3) is positive at t = 1/2 and negative at t = 1.
        let p = symmetry_project(&figure(3, 32, 0.3));
        let good: SignSequence = "+-".parse().unwrap();
        assert!(satisfies_omega(&p, &good));
        let same = omega_enforce(&p, &good, 1e-3).unwrap();
        assert_eq!(same, p);

        let flipped: SignSequence = "++".parse().unwrap();
        let q = omega_enforce(&p, &flipped, 1e-3).unwrap();
        assert!(satisfies_omega(&q, &flipped));
        assert!(q.symmetry_defect() < 1e-15);
        assert!(q.samples()[16].im > 0.0 && q.samples()[32].im > 0.0);

        let flat = figure(3, 32, 0.0);
        let r = omega_enforce(&flat, &"-+".parse().unwrap(), 1e-2).unwrap();
        assert_eq!(half_integer_imaginary_parts(&r), vec![-1e-2, 1e-2]);
    }

    #[test]
    fn all_constraints_hold_after_enforcement() {
        for seed in 0..20 {
            let p = symmetry_project(&random_loop(5, 32, seed));
            let omega = SignSequence::from_bits(5, seed % 16).unwrap();
            let q = omega_enforce(&p, &omega, 1e-3).unwrap();
            assert!(satisfies_omega(&q, &omega));
            assert!(half_integer_imaginary_parts(&q).iter().all(|v| v.abs() >= 1e-3));
        }
    }
}
