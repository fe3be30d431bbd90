//! Realizations of proper rational matrices and their minimal parts.

use nalgebra::{DMatrix, DVector};

use super::StateSpace;
use crate::error::Result;
use crate::linalg;
use crate::ratcore::{limit_at_infinity, poly_mul, CommonDenominator, Polynomial, RationalMatrix};

/// Row-by-row observer-form realization of a proper rational matrix; fails
/// with `ImproperMatrix` otherwise.
///
/// Row `i` gets a companion block for the least common multiple of its
/// denominators, so the result is generally not minimal.
pub fn observer_realization(m: &RationalMatrix) -> Result<StateSpace> {
    let d = limit_at_infinity(m)?;
    let (rows, cols) = m.shape();
    let dens: Vec<Polynomial> = (0..rows)
        .map(|i| {
            let mut lcm = CommonDenominator::default();
            for j in 0..cols {
                lcm.include(&[m.get(i, j).den()]);
            }
            lcm.poly()
        })
        .collect();
    let order: usize = dens.iter().map(Polynomial::degree).sum();
    let mut a = DMatrix::zeros(order, order);
    let mut b = DMatrix::zeros(order, cols);
    let mut c = DMatrix::zeros(rows, order);
    let mut offset = 0;
    for (i, den) in dens.iter().enumerate() {
        let k = den.degree();
        if k == 0 {
            continue;
        }
        for r in 0..k {
            if r > 0 {
                a[(offset + r, offset + r - 1)] = 1.0;
            }
            a[(offset + r, offset + k - 1)] = -den.coeff(r);
        }
        c[(i, offset + k - 1)] = 1.0;
        for j in 0..cols {
            let f = m.get(i, j);
            if f.is_zero() {
                continue;
            }
            let scale = den.div_rem(f.den())?.0;
            let num = &poly_mul(f.num(), &scale) - &den.scale(d[(i, j)]);
            for r in 0..k {
                b[(offset + r, j)] = num.coeff(r);
            }
        }
        offset += k;
    }
    StateSpace::new(a, b, c, d)
}

/// Orthonormal basis of the Krylov space of `(A, B)` by block Arnoldi with
/// reorthogonalization. Directions whose residual falls below `tol` times
/// the norm of the block they came from are dropped.
fn krylov_basis(a: &DMatrix<f64>, b: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    let n = a.nrows();
    let mut basis: Vec<DVector<f64>> = Vec::new();
    let mut block = b.clone();
    while basis.len() < n && block.ncols() > 0 {
        let reference = block.norm();
        if reference == 0.0 {
            break;
        }
        for _ in 0..2 {
            for v in &basis {
                let proj = v.transpose() * &block;
                block -= v * proj;
            }
        }
        let svd = linalg::svd(&block);
        let rank = svd
            .s
            .iter()
            .filter(|&&s| s > tol * reference)
            .count()
            .min(n - basis.len());
        let fresh: Vec<DVector<f64>> = (0..rank).map(|k| svd.u.column(k).into_owned()).collect();
        if fresh.is_empty() {
            break;
        }
        block = a * DMatrix::from_columns(&fresh);
        basis.extend(fresh);
    }
    if basis.is_empty() {
        DMatrix::zeros(n, 0)
    } else {
        DMatrix::from_columns(&basis)
    }
}

/// Controllable and observable part of `ss`, by orthogonal projection onto
/// the Krylov space of `(A, B)` and then that of `(A^T, C^T)`.
pub fn minimal_realization(ss: &StateSpace, tol_rank: f64) -> StateSpace {
    let v = krylov_basis(&ss.a, &ss.b, tol_rank);
    let a1 = v.transpose() * &ss.a * &v;
    let b1 = v.transpose() * &ss.b;
    let c1 = &ss.c * &v;
    let w = krylov_basis(&a1.transpose(), &c1.transpose(), tol_rank);
    StateSpace {
        a: w.transpose() * &a1 * &w,
        b: w.transpose() * b1,
        c: c1 * &w,
        d: ss.d.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::{rmat_equal, RationalFunction};
    use crate::sslib::transfer_function;

    #[test]
    fn observer_form_reproduces_matrix() {
        let m = RationalMatrix::new(
            2,
            2,
            vec![
                RationalFunction::first_order(1.0, -1.0)
                    .add(&RationalFunction::constant(2.0), 1e-8)
                    .unwrap(),
                RationalFunction::first_order(3.0, -2.0),
                RationalFunction::zero(),
                RationalFunction::first_order(-1.0, -3.0),
            ],
        )
        .unwrap();
        let ss = observer_realization(&m).unwrap();
        assert_eq!(ss.order(), 3);
        assert!(rmat_equal(&transfer_function(&ss, 1e-8).unwrap(), &m, 1e-10).unwrap());
    }

    #[test]
    fn drops_hidden_modes() {
        // Mode -2 is uncontrollable and mode -3 unobservable.
        let a = DMatrix::from_diagonal(&DVector::from_vec(vec![-1.0, -2.0, -3.0]));
        let b = DMatrix::from_column_slice(3, 1, &[1.0, 0.0, 1.0]);
        let c = DMatrix::from_row_slice(1, 3, &[1.0, 1.0, 0.0]);
        let ss = StateSpace::strictly_proper(a, b, c).unwrap();
        let min = minimal_realization(&ss, 1e-8);
        assert_eq!(min.order(), 1);
        assert!((min.a[(0, 0)] + 1.0).abs() < 1e-12);
        let g = transfer_function(&min, 1e-8).unwrap();
        assert!(rmat_equal(&g, &transfer_function(&ss, 1e-8).unwrap(), 1e-10).unwrap());
    }
}
