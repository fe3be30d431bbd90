//! Inverse of a square rational matrix.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::matrix::{limit_at_infinity, RationalMatrix};
use super::rational::RationalFunction;
use crate::error::{Error, Result};
use crate::linalg;
use crate::sslib::{minimal_realization, observer_realization, transfer_function, StateSpace};

/// Relative rank threshold for discarding hidden modes of the inverse.
const MINIMAL_TOL: f64 = 1e-8;

/// Inverse of a square rational matrix.
///
/// A biproper `M = D + C(sI - A)^{-1}B` is realized in observer form and
/// inverted as `D^{-1} - D^{-1}C(sI - A + BD^{-1}C)^{-1}BD^{-1}`; polynomials
/// are only formed for the minimal part of that realization. Other matrices
/// fall back to Gauss–Jordan elimination over rational functions.
pub fn rmat_inverse(m: &RationalMatrix, tol_root: f64) -> Result<RationalMatrix> {
    let n = m.rows();
    if n != m.cols() {
        return Err(Error::ShapeMismatch {
            expected: "square matrix".into(),
            found: format!("{}x{}", m.rows(), m.cols()),
        });
    }
    if n > 0 && m.is_proper() {
        let d = limit_at_infinity(m)?;
        let sv = linalg::svd(&d).s;
        if sv[n - 1] > 1e-8 * sv[0].max(1.0) {
            return biproper_inverse(m, &d, tol_root);
        }
    }
    gauss_jordan(m, tol_root)
}

fn biproper_inverse(m: &RationalMatrix, d: &DMatrix<f64>, tol_root: f64) -> Result<RationalMatrix> {
    let ss = observer_realization(m)?;
    let d_inv = d
        .clone()
        .try_inverse()
        .ok_or(Error::SingularRationalMatrix)?;
    let b_inv = &ss.b * &d_inv;
    let inverse = StateSpace::new(&ss.a - &b_inv * &ss.c, b_inv, -(&d_inv * &ss.c), d_inv)?;
    transfer_function(&minimal_realization(&inverse, MINIMAL_TOL), tol_root)
}

/// Gauss–Jordan elimination over rational functions, pivoting on the largest
/// magnitude at an off-pole sample point.
fn gauss_jordan(m: &RationalMatrix, tol_root: f64) -> Result<RationalMatrix> {
    let n = m.rows();
    let probe = Complex64::new(m.sample_points(1, tol_root)[0] + 0.37, 0.61);
    let magnitude = |f: &RationalFunction| f.eval(probe).map_or(0.0, |z| z.norm());
    let mut a = m.clone();
    let mut inv = RationalMatrix::identity(n);
    for col in 0..n {
        let pivot_row = (col..n)
            .filter(|&r| !a.get(r, col).is_zero())
            .max_by(|&x, &y| magnitude(a.get(x, col)).total_cmp(&magnitude(a.get(y, col))))
            .ok_or(Error::SingularRationalMatrix)?;
        if pivot_row != col {
            for j in 0..n {
                let t = a.get(col, j).clone();
                a.set(col, j, a.get(pivot_row, j).clone());
                a.set(pivot_row, j, t);
                let t = inv.get(col, j).clone();
                inv.set(col, j, inv.get(pivot_row, j).clone());
                inv.set(pivot_row, j, t);
            }
        }
        let pivot_inv = a.get(col, col).recip(tol_root)?;
        for j in 0..n {
            let v = a.get(col, j).mul(&pivot_inv, tol_root)?;
            a.set(col, j, v);
            let v = inv.get(col, j).mul(&pivot_inv, tol_root)?;
            inv.set(col, j, v);
        }
        for r in 0..n {
            if r == col || a.get(r, col).is_zero() {
                continue;
            }
            let factor = a.get(r, col).clone();
            for j in 0..n {
                let v = a
                    .get(r, j)
                    .sub(&factor.mul(a.get(col, j), tol_root)?, tol_root)?;
                a.set(r, j, v);
                let v = inv
                    .get(r, j)
                    .sub(&factor.mul(inv.get(col, j), tol_root)?, tol_root)?;
                inv.set(r, j, v);
            }
        }
    }
    Ok(inv)
}
