use nalgebra::{DMatrix, DVector};

use super::zeros::numerical_rank;
use super::{PartitionedRealization, StateSpace};
use crate::error::{Error, Result};

/// Transforms `(A, B, C)` to `(T A T^-1, T B, [I_p 0])` with `T = [C; N]`,
/// where the rows of `N` are an orthonormal basis of the orthogonal
/// complement of the row space of `C`.
///
/// The complement is built by Gram–Schmidt over the standard basis, so when
/// `C` selects states the transform is a permutation. When `C` is square
/// (`p = n`) no hidden states remain and `h = 0` is returned.
pub fn output_normal_form(ss: &StateSpace, tol_rank: f64) -> Result<PartitionedRealization> {
    if ss.d.iter().any(|&x| x != 0.0) {
        return Err(Error::NonzeroFeedthrough);
    }
    let (p, n) = ss.c.shape();
    if p > n {
        return Err(Error::RankDeficientC {
            rank: numerical_rank(&ss.c.map(Into::into), tol_rank),
            rows: p,
        });
    }
    let rank = numerical_rank(&ss.c.map(Into::into), tol_rank);
    if rank < p {
        return Err(Error::RankDeficientC { rank, rows: p });
    }
    if is_leading_identity(&ss.c) {
        return PartitionedRealization::from_blocks(&ss.a, &ss.b, p);
    }
    let complement = row_space_complement(&ss.c);
    let mut t = DMatrix::zeros(n, n);
    t.view_mut((0, 0), (p, n)).copy_from(&ss.c);
    for (k, row) in complement.iter().enumerate() {
        t.set_row(p + k, &row.transpose());
    }
    let t_inv = t
        .clone()
        .try_inverse()
        .ok_or(Error::RankDeficientC { rank, rows: p })?;
    let a = &t * &ss.a * &t_inv;
    let b = &t * &ss.b;
    PartitionedRealization::from_blocks(&a, &b, p)
}

fn is_leading_identity(c: &DMatrix<f64>) -> bool {
    c.iter().enumerate().all(|(k, &x)| {
        // column-major index
        let (i, j) = (k % c.nrows(), k / c.nrows());
        x == if i == j { 1.0 } else { 0.0 }
    })
}

fn row_space_complement(c: &DMatrix<f64>) -> Vec<DVector<f64>> {
    let (p, n) = c.shape();
    let mut basis: Vec<DVector<f64>> = Vec::with_capacity(n);
    for i in 0..p {
        let mut v = c.row(i).transpose();
        orthogonalize(&mut v, &basis);
        let norm = v.norm();
        basis.push(v / norm);
    }
    let mut complement = Vec::with_capacity(n - p);
    let mut candidates: Vec<usize> = (0..n).collect();
    while complement.len() < n - p {
        // Unit vector with the largest residual against the basis; ties go
        // to the lowest index.
        let (pos, v) = candidates
            .iter()
            .enumerate()
            .map(|(pos, &k)| {
                let mut v = DVector::zeros(n);
                v[k] = 1.0;
                orthogonalize(&mut v, &basis);
                (pos, v)
            })
            .reduce(|best, next| {
                if next.1.norm() > best.1.norm() + 1e-12 {
                    next
                } else {
                    best
                }
            })
            .expect("candidates remain while the basis is incomplete");
        candidates.remove(pos);
        let v = &v / v.norm();
        basis.push(v.clone());
        complement.push(v);
    }
    complement
}

fn orthogonalize(v: &mut DVector<f64>, basis: &[DVector<f64>]) {
    // Two passes of modified Gram–Schmidt.
    for _ in 0..2 {
        for q in basis {
            let proj = q.dot(v);
            *v -= q * proj;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::rmat_equal;
    use crate::sslib::transfer_function;

    fn sample_system() -> StateSpace {
        let a = DMatrix::from_row_slice(3, 3, &[-1.0, 0.5, 0.0, 0.2, -2.0, 1.0, 0.0, 0.3, -3.0]);
        let b = DMatrix::from_row_slice(3, 1, &[1.0, 0.0, 2.0]);
        StateSpace::strictly_proper(a, b, DMatrix::zeros(1, 3)).unwrap()
    }

    #[test]
    fn identity_output_passes_through() {
        let mut ss = sample_system();
        ss.c = DMatrix::from_row_slice(1, 3, &[1.0, 0.0, 0.0]);
        let part = output_normal_form(&ss, 1e-8).unwrap();
        assert_eq!(part.a(), ss.a);
        assert_eq!(part.b(), ss.b);
    }

    #[test]
    fn reordered_output_is_a_permutation() {
        let mut ss = sample_system();
        ss.c = DMatrix::from_row_slice(1, 3, &[0.0, 0.0, 1.0]);
        let part = output_normal_form(&ss, 1e-8).unwrap();
        // Every entry of the transformed A is an entry of the original.
        for x in part.a().iter() {
            assert!(ss.a.iter().any(|y| (x - y).abs() < 1e-15));
        }
        assert_eq!(part.a11[(0, 0)], -3.0);
        let g0 = transfer_function(&ss, 1e-8).unwrap();
        let g1 = transfer_function(&part.assemble(), 1e-8).unwrap();
        assert!(rmat_equal(&g0, &g1, 1e-10).unwrap());
    }

    #[test]
    fn full_observation_has_no_hidden_states() {
        let mut ss = sample_system();
        ss.c = DMatrix::from_row_slice(3, 3, &[1.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 2.0]);
        let part = output_normal_form(&ss, 1e-8).unwrap();
        assert_eq!(part.hidden(), 0);
    }

    #[test]
    fn rank_deficient_output() {
        let mut ss = sample_system();
        ss.c = DMatrix::from_row_slice(2, 3, &[1.0, 2.0, 0.0, 2.0, 4.0, 0.0]);
        assert_eq!(
            output_normal_form(&ss, 1e-8),
            Err(Error::RankDeficientC { rank: 1, rows: 2 })
        );
    }
}
