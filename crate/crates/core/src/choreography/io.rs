//! Versioned JSON persistence of solved trajectories.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::path::LoopPath;
use super::solver::Trajectory;
use super::validate::ValidationReport;
use crate::combinatorics::SignSequence;
use crate::error::{Error, Result};

pub const TRAJECTORY_FORMAT: &str = "choreo-trajectory";
pub const TRAJECTORY_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryFile {
    pub format: String,
    pub version: u32,
    pub bodies: usize,
    pub omega: SignSequence,
    pub samples_per_unit: usize,
    /// `z_0(n/M)` for `n = 0..N·M` as `[re, im]`.
    pub samples: Vec<[f64; 2]>,
    pub action: f64,
    pub gradient_norm: f64,
    pub converged: bool,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationReport>,
}

impl TrajectoryFile {
    pub fn new(trajectory: &Trajectory, validation: Option<ValidationReport>) -> Self {
        Self {
            format: TRAJECTORY_FORMAT.to_string(),
            version: TRAJECTORY_VERSION,
            bodies: trajectory.bodies(),
            omega: trajectory.omega.clone(),
            samples_per_unit: trajectory.samples_per_unit(),
            samples: trajectory.path.samples().iter().map(|z| [z.re, z.im]).collect(),
            action: trajectory.action,
            gradient_norm: trajectory.gradient_norm,
            converged: trajectory.converged,
            seed: trajectory.seed,
            validation,
        }
    }

    pub fn path(&self) -> Result<LoopPath> {
        LoopPath::new(
            self.bodies,
            self.samples_per_unit,
            self.samples.iter().map(|&[re, im]| Complex64::new(re, im)).collect(),
        )
    }

    pub fn trajectory(&self) -> Result<Trajectory> {
        Ok(Trajectory {
            omega: self.omega.clone(),
            path: self.path()?,
            action: self.action,
            gradient_norm: self.gradient_norm,
            converged: self.converged,
            iterations: 0,
            seed: self.seed,
            history: Vec::new(),
        })
    }

    fn check(&self) -> Result<()> {
        if self.format != TRAJECTORY_FORMAT {
            return Err(Error::invalid(format!(
                "not a trajectory file (format {:?})",
                self.format
            )));
        }
        if self.version != TRAJECTORY_VERSION {
            return Err(Error::invalid(format!(
                "unsupported trajectory version {} (expected {TRAJECTORY_VERSION})",
                self.version
            )));
        }
        if self.omega.bodies() != self.bodies {
            return Err(Error::invalid("sign sequence length does not match the body count"));
        }
        self.path().map(|_| ())
    }
}

pub fn save_trajectory(path: impl AsRef<Path>, file: &TrajectoryFile) -> Result<()> {
    fs::write(path, serde_json::to_string_pretty(file)?)?;
    Ok(())
}

pub fn load_trajectory(path: impl AsRef<Path>) -> Result<TrajectoryFile> {
    let file: TrajectoryFile = serde_json::from_str(&fs::read_to_string(path)?)?;
    file.check()?;
    Ok(file)
}
