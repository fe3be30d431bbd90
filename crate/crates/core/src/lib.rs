pub mod cli;
pub mod dsf;
pub mod error;
mod linalg;
pub mod minreal;
pub mod ratcore;
pub mod sslib;
pub mod tol;

pub use error::{Error, Result};
pub use tol::Tolerances;
