//! Dense decompositions computed with faer.
//!
//! nalgebra's SVD can return inaccurate singular vectors for nearly
//! rank-deficient input, and its Schur iteration can fail to terminate.

use faer::Mat;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Left singular vectors and singular values of a thin SVD, nonincreasing.
pub(crate) struct Svd {
    pub u: DMatrix<f64>,
    pub s: DVector<f64>,
}

pub(crate) fn svd(m: &DMatrix<f64>) -> Svd {
    let (rows, cols) = m.shape();
    let k = rows.min(cols);
    if k == 0 {
        return Svd {
            u: DMatrix::zeros(rows, 0),
            s: DVector::zeros(0),
        };
    }
    let f = Mat::<f64>::from_fn(rows, cols, |i, j| m[(i, j)]);
    let d = f.thin_svd().expect("SVD of a finite matrix converges");
    let (u, s) = (d.U(), d.S().column_vector());
    Svd {
        u: DMatrix::from_fn(rows, k, |i, j| u[(i, j)]),
        s: DVector::from_fn(k, |i, _| s[i]),
    }
}

/// Singular values of a complex matrix, nonincreasing.
pub(crate) fn singular_values(m: &DMatrix<Complex64>) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let f = Mat::<faer::c64>::from_fn(m.nrows(), m.ncols(), |i, j| {
        let z = m[(i, j)];
        faer::c64::new(z.re, z.im)
    });
    f.singular_values()
        .expect("SVD of a finite matrix converges")
}

/// Eigenvalues of a real square matrix.
pub(crate) fn eigenvalues(a: &DMatrix<f64>) -> Vec<Complex64> {
    if a.is_empty() {
        return Vec::new();
    }
    let f = Mat::<f64>::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)]);
    f.eigenvalues()
        .expect("eigenvalues of a finite matrix converge")
        .into_iter()
        .map(|z| Complex64::new(z.re, z.im))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nearly_rank_one_block_is_reconstructed() {
        let m = DMatrix::from_column_slice(
            6,
            2,
            &[
                -0.03635275517679418,
                0.008896299526340936,
                -0.04717642345568876,
                -0.03388743234537908,
                0.13826326050005194,
                0.08248880332034733,
                -0.061337492008423755,
                0.015010600941986514,
                -0.07960011511176152,
                -0.05717778750374762,
                0.23328965286803033,
                0.13918219650344812,
            ],
        );
        let d = svd(&m);
        let coords = d.u.transpose() * &m;
        assert!((&d.u * &coords - &m).amax() < 1e-15);
        assert!((coords.row(1).norm() - d.s[1]).abs() < 1e-15);
        assert!(d.s[1] < 1e-12);
    }

    #[test]
    fn complex_singular_values() {
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(0.0, 3.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(-4.0, 0.0),
            ],
        );
        let s = singular_values(&m);
        assert!((s[0] - 4.0).abs() < 1e-14 && (s[1] - 3.0).abs() < 1e-14);
    }
}
