//! Simple choreographies as minimizers of a discretized action over
//! symmetric loops with prescribed signs at half-integer times.

mod action;
mod io;
mod path;
mod problem;
mod seed;
mod solver;
mod svg;
mod symmetry;
mod validate;

pub use action::{
    action, action_gradient, action_terms, check_collisions, discrete_circle_radius, reduced_gradient, reduced_hessian,
    ActionTerms,
};
pub use io::{load_trajectory, save_trajectory, TrajectoryFile, TRAJECTORY_FORMAT, TRAJECTORY_VERSION};
pub use path::{reduce_gradient, LoopPath};
pub use problem::{ChoreographyProblem, Tolerances, ENERGY_CONSTANT, MIN_SAMPLES_PER_UNIT, RESIDUAL_CONSTANT};
pub use seed::{kepler_radius, seed_path};
pub use solver::{solve, solve_with, SolveStep, SolverOptions, Trajectory};
pub use svg::render_svg;
pub use symmetry::{
    half_integer_imaginary_parts, half_integer_index, omega_enforce, satisfies_omega, symmetry_project,
};
pub use validate::{validate, ValidationReport};
