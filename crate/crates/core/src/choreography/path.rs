//! Sampled loops `z_0` over one full period and their symmetric reduction.
//!
//! A loop holds `L = N·M` samples `z_0(n h)`, `h = 1/M`. Strand `j` is `z_0`
//! shifted by `j·M` samples. Loops symmetric under `z_0(t) = conj z_0(-t)` are
//! determined by `Re z_0(nh)` for `0 ≤ n ≤ K` and `Im z_0(nh)` for `0 < n < K`,
//! `K = L/2`; this is the reduced coordinate vector used by the solver.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LoopPath {
    bodies: usize,
    samples_per_unit: usize,
    samples: Vec<Complex64>,
}

impl LoopPath {
    pub fn new(bodies: usize, samples_per_unit: usize, samples: Vec<Complex64>) -> Result<Self> {
        if bodies < 2 || samples_per_unit < 2 || !samples_per_unit.is_multiple_of(2) {
            return Err(Error::invalid("loop needs at least 2 bodies and an even grid density"));
        }
        if samples.len() != bodies * samples_per_unit {
            return Err(Error::invalid(format!(
                "expected {} samples for N = {bodies}, M = {samples_per_unit}, got {}",
                bodies * samples_per_unit,
                samples.len()
            )));
        }
        if samples.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::invalid("loop samples must be finite"));
        }
        Ok(Self {
            bodies,
            samples_per_unit,
            samples,
        })
    }

    /// Samples `f(n h)` for `n = 0..N·M`.
    pub fn from_fn(bodies: usize, samples_per_unit: usize, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let h = 1.0 / samples_per_unit as f64;
        Self::new(
            bodies,
            samples_per_unit,
            (0..bodies * samples_per_unit).map(|n| f(n as f64 * h)).collect(),
        )
    }

    pub fn bodies(&self) -> usize {
        self.bodies
    }

    pub fn samples_per_unit(&self) -> usize {
        self.samples_per_unit
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn step(&self) -> f64 {
        1.0 / self.samples_per_unit as f64
    }

    /// Half the sample count.
    pub fn half(&self) -> usize {
        self.samples.len() / 2
    }

    /// `z_0` at sample `n`, periodic in `n`.
    pub fn at(&self, n: isize) -> Complex64 {
        self.samples[n.rem_euclid(self.samples.len() as isize) as usize]
    }

    /// `z_j` at sample `n`.
    pub fn strand(&self, j: usize, n: isize) -> Complex64 {
        self.at(n + (j * self.samples_per_unit) as isize)
    }

    /// `z_0(t)` by periodic four-point cubic interpolation.
    pub fn eval(&self, t: f64) -> Complex64 {
        let u = t * self.samples_per_unit as f64;
        let base = u.floor();
        let s = u - base;
        let n = base as isize;
        let (p0, p1, p2, p3) = (self.at(n - 1), self.at(n), self.at(n + 1), self.at(n + 2));
        // Lagrange weights on nodes -1, 0, 1, 2.
        let w0 = -s * (s - 1.0) * (s - 2.0) / 6.0;
        let w1 = (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0;
        let w2 = -(s + 1.0) * s * (s - 2.0) / 2.0;
        let w3 = (s + 1.0) * s * (s - 1.0) / 6.0;
        p0 * w0 + p1 * w1 + p2 * w2 + p3 * w3
    }

    /// `z_j(t) = z_0(t + j)`.
    pub fn eval_strand(&self, j: usize, t: f64) -> Complex64 {
        self.eval(t + j as f64)
    }

    /// Velocity at sample `n` by the fourth-order centered difference.
    pub fn velocity(&self, n: isize) -> Complex64 {
        let m = self.samples_per_unit as f64;
        (-self.at(n + 2) + self.at(n + 1) * 8.0 - self.at(n - 1) * 8.0 + self.at(n - 2)) * (m / 12.0)
    }

    /// Acceleration at sample `n` by the fourth-order five-point stencil.
    pub fn acceleration(&self, n: isize) -> Complex64 {
        let m = self.samples_per_unit as f64;
        (-self.at(n + 2) + self.at(n + 1) * 16.0 - self.at(n) * 30.0 + self.at(n - 1) * 16.0 - self.at(n - 2))
            * (m * m / 12.0)
    }

    /// Same curve on a grid twice as fine, by cubic midpoint interpolation.
    pub fn refined(&self) -> Self {
        let mut samples = Vec::with_capacity(2 * self.samples.len());
        for n in 0..self.samples.len() as isize {
            samples.push(self.at(n));
            let mid = (-self.at(n - 1) + self.at(n) * 9.0 + self.at(n + 1) * 9.0 - self.at(n + 2)) / 16.0;
            samples.push(mid);
        }
        Self {
            bodies: self.bodies,
            samples_per_unit: 2 * self.samples_per_unit,
            samples,
        }
    }

    /// Smallest distance between two strands over all samples, with the
    /// sample index and strand pair where it occurs.
    pub fn min_separation(&self) -> (f64, usize, usize, usize) {
        let mut best = (f64::INFINITY, 0, 0, 0);
        for n in 0..self.samples.len() {
            for s in 1..self.bodies {
                let d = (self.samples[n] - self.at((n + s * self.samples_per_unit) as isize)).norm();
                if d < best.0 {
                    best = (d, n, 0, s);
                }
            }
        }
        // Sample n = kM + r of strand 0 is strand k at sample r.
        let (d, n, _, s) = best;
        let m = self.samples_per_unit;
        let first = n / m;
        let second = (first + s) % self.bodies;
        (d, n % m, first.min(second), first.max(second))
    }

    /// Largest deviation from `z_0(t) = conj z_0(-t)` over the grid.
    pub fn symmetry_defect(&self) -> f64 {
        (0..self.samples.len() as isize)
            .map(|n| (self.at(n) - self.at(-n).conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Reduced coordinates; meaningful for symmetric loops.
    pub fn to_reduced(&self) -> Vec<f64> {
        let k = self.half();
        let mut x = Vec::with_capacity(self.samples.len());
        x.extend(self.samples[..=k].iter().map(|z| z.re));
        x.extend(self.samples[1..k].iter().map(|z| z.im));
        x
    }

    /// Symmetric loop from reduced coordinates.
    pub fn from_reduced(bodies: usize, samples_per_unit: usize, x: &[f64]) -> Result<Self> {
        let len = bodies * samples_per_unit;
        if x.len() != len {
            return Err(Error::invalid(format!(
                "expected {len} reduced coordinates, got {}",
                x.len()
            )));
        }
        let k = len / 2;
        let mut samples = vec![Complex64::default(); len];
        for n in 0..=k {
            let im = if n == 0 || n == k { 0.0 } else { x[k + n] };
            samples[n] = Complex64::new(x[n], im);
        }
        for n in 1..k {
            samples[len - n] = samples[n].conj();
        }
        Self::new(bodies, samples_per_unit, samples)
    }
}

/// Index of `Im z_0(n h)` in the reduced vector, for `0 < n < K`.
pub fn reduced_im_index(half: usize, n: usize) -> usize {
    debug_assert!(n > 0 && n < half);
    half + n
}

/// Folds a full gradient (`∂/∂x + i ∂/∂y` per sample) onto reduced
/// coordinates through `z_{L-n} = conj z_n`.
pub fn reduce_gradient(full: &[Complex64]) -> Vec<f64> {
    let len = full.len();
    let k = len / 2;
    let mut g = vec![0.0; len];
    for n in 0..=k {
        g[n] += full[n].re;
    }
    for n in 1..k {
        g[k + n] += full[n].im;
        g[n] += full[len - n].re;
        g[k + n] -= full[len - n].im;
    }
    g
}

/// For each full real coordinate (`2n` = Re, `2n+1` = Im of sample `n`), the
/// reduced index and sign it depends on, or `None` when it is pinned to 0.
pub fn reduced_map(len: usize) -> Vec<Option<(usize, f64)>> {
    let k = len / 2;
    let mut map = vec![None; 2 * len];
    for n in 0..len {
        let (m, im_sign) = if n <= k { (n, 1.0) } else { (len - n, -1.0) };
        map[2 * n] = Some((m, 1.0));
        if m != 0 && m != k {
            map[2 * n + 1] = Some((k + m, im_sign));
        }
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn ellipse(bodies: usize, m: usize) -> LoopPath {
        LoopPath::from_fn(bodies, m, |t| {
            let a = TAU * t / bodies as f64;
            Complex64::new(-a.cos(), 0.5 * a.sin() + 0.1 * (2.0 * a).sin())
        })
        .unwrap()
    }

    #[test]
    fn reduced_round_trip() {
        let p = ellipse(3, 32);
        assert!(p.symmetry_defect() < 1e-14);
        let back = LoopPath::from_reduced(3, 32, &p.to_reduced()).unwrap();
        for (a, b) in p.samples().iter().zip(back.samples()) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn interpolation_and_derivatives() {
        let p = ellipse(4, 64);
        let exact = |t: f64| {
            let a = TAU * t / 4.0;
            Complex64::new(-a.cos(), 0.5 * a.sin() + 0.1 * (2.0 * a).sin())
        };
        for &t in &[0.013, 1.37, 3.99] {
            assert!((p.eval(t) - exact(t)).norm() < 1e-6);
        }
        let w = TAU / 4.0;
        let v = p.velocity(10);
        let t = 10.0 / 64.0;
        let exact_v = Complex64::new(
            w * (w * t).sin(),
            0.5 * w * (w * t).cos() + 0.2 * w * (2.0 * w * t).cos(),
        );
        assert!((v - exact_v).norm() < 1e-6);
        let refined = p.refined();
        assert_eq!(refined.len(), 2 * p.len());
        assert!((refined.at(21) - exact(21.0 / 128.0)).norm() < 1e-6);
    }

    #[test]
    fn map_matches_gradient_folding() {
        let len = 12;
        let full: Vec<Complex64> = (0..len).map(|n| Complex64::new(n as f64, (n * n) as f64)).collect();
        let folded = reduce_gradient(&full);
        let mut via_map = vec![0.0; len];
        for (p, entry) in reduced_map(len).into_iter().enumerate() {
            if let Some((r, s)) = entry {
                let value = if p % 2 == 0 { full[p / 2].re } else { full[p / 2].im };
                via_map[r] += s * value;
            }
        }
        assert_eq!(folded, via_map);
    }

    #[test]
    fn separation_reports_strands() {
        let p = ellipse(3, 32);
        let (d, n, a, b) = p.min_separation();
        assert!(d > 0.0 && n < 32 && a < b && b < 3);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(LoopPath::new(3, 32, vec![Complex64::default(); 10]).is_err());
        assert!(LoopPath::new(3, 31, vec![Complex64::default(); 93]).is_err());
    }
}
