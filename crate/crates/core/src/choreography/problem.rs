//! Problem definition: body count, sign pattern, grid, and tolerances.

use serde::{Deserialize, Serialize};

use crate::combinatorics::SignSequence;
use crate::error::{Error, Result};

/// Smallest supported grid density.
pub const MIN_SAMPLES_PER_UNIT: usize = 32;

/// `residual_tol = RESIDUAL_CONSTANT / M²`. Over every sign class with
/// N = 3..7 at M = 64, 128, 256, `M² · residual` ranges from 0.1 (the circle)
/// to about 24000 (loops with separation near 0.13); the bound keeps ~1.7×
/// headroom over the largest.
pub const RESIDUAL_CONSTANT: f64 = 40_000.0;

/// `energy_tol = ENERGY_CONSTANT / M²`; the same study gives `M² · spread`
/// up to about 1730.
pub const ENERGY_CONSTANT: f64 = 3_000.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Reduced-gradient norm at which the solver stops.
    pub gradient_tol: f64,
    /// Bound on the 4th-order Newton-equation residual.
    pub residual_tol: f64,
    /// Bound on the spread of the energy over the grid.
    pub energy_tol: f64,
    /// Hard floor on pairwise distances.
    pub min_separation: f64,
    /// Floor on `|Im z_0(j/2)|` imposed by the sign projection.
    pub omega_floor: f64,
    /// Slack for `Re ż_0 > 0` on `(0, N/2)` and `Re ż_0 = 0` at the ends.
    pub velocity_tol: f64,
}

impl Tolerances {
    pub fn for_grid(samples_per_unit: usize) -> Self {
        let m2 = (samples_per_unit * samples_per_unit) as f64;
        Self {
            gradient_tol: 1e-9,
            residual_tol: RESIDUAL_CONSTANT / m2,
            energy_tol: ENERGY_CONSTANT / m2,
            min_separation: 1e-3,
            omega_floor: 1e-3,
            velocity_tol: 1e-6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChoreographyProblem {
    pub omega: SignSequence,
    /// Grid points per unit time `M`; the period `N` holds `N·M` samples.
    pub samples_per_unit: usize,
    pub tolerances: Tolerances,
}

impl ChoreographyProblem {
    pub fn new(omega: SignSequence, samples_per_unit: usize) -> Result<Self> {
        let problem = Self {
            omega,
            samples_per_unit,
            tolerances: Tolerances::for_grid(samples_per_unit),
        };
        problem.check()?;
        Ok(problem)
    }

    pub fn with_tolerances(mut self, tolerances: Tolerances) -> Result<Self> {
        self.tolerances = tolerances;
        self.check()?;
        Ok(self)
    }

    pub fn bodies(&self) -> usize {
        self.omega.bodies()
    }

    pub fn step(&self) -> f64 {
        1.0 / self.samples_per_unit as f64
    }

    /// The same problem on another grid, with grid-dependent tolerances rescaled.
    pub fn on_grid(&self, samples_per_unit: usize) -> Result<Self> {
        let fresh = Tolerances::for_grid(samples_per_unit);
        let base = Tolerances::for_grid(self.samples_per_unit);
        let scale = |value: f64, default_here: f64, default_there: f64| value / default_here * default_there;
        let t = self.tolerances;
        let tolerances = Tolerances {
            residual_tol: scale(t.residual_tol, base.residual_tol, fresh.residual_tol),
            energy_tol: scale(t.energy_tol, base.energy_tol, fresh.energy_tol),
            ..t
        };
        Self {
            omega: self.omega.clone(),
            samples_per_unit,
            tolerances,
        }
        .with_tolerances(tolerances)
    }

    fn check(&self) -> Result<()> {
        if self.bodies() < 3 {
            return Err(Error::invalid("choreographies need at least 3 bodies"));
        }
        let m = self.samples_per_unit;
        if m < MIN_SAMPLES_PER_UNIT || !m.is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "grid density must be even and at least {MIN_SAMPLES_PER_UNIT}, got {m}"
            )));
        }
        let t = &self.tolerances;
        let positive = [
            t.gradient_tol,
            t.residual_tol,
            t.energy_tol,
            t.min_separation,
            t.omega_floor,
            t.velocity_tol,
        ];
        if positive.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::invalid("tolerances must be positive and finite"));
        }
        Ok(())
    }
}
