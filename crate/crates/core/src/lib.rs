pub mod braid;
pub mod choreography;
pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod extract;
pub mod spectral;

pub use error::{Error, Result};
