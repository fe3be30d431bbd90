//! Real polynomial, rational-function and rational-matrix arithmetic.
//!
//! Everything here works in double precision with explicit tolerances.
//! Rational functions are kept reduced: common numerator/denominator roots
//! are cancelled and denominators are monic.

mod inverse;
mod matrix;
mod pole_residue;
mod poly;
mod rational;

pub use inverse::rmat_inverse;
pub use matrix::{
    limit_at_infinity, residue_at, rmat_equal, rmat_eval, rmat_from_coeffs, rmat_poles,
    RationalMatrix, EQUALITY_SAMPLES,
};
pub use pole_residue::{from_pole_residue, to_pole_residue, PoleResidueForm};
pub use poly::{format_value, poly_mul, poly_real_roots, Polynomial, Roots};
pub(crate) use rational::CommonDenominator;
pub use rational::{rat_reduce, Properness, RationalFunction, DEFAULT_TOL_ROOT, NOISE_FLOOR};
