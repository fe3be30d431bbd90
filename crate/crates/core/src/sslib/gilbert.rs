use nalgebra::DMatrix;

use super::StateSpace;
use crate::error::Result;
use crate::linalg;
use crate::ratcore::{to_pole_residue, RationalMatrix};

/// Rank factorization `K = E F` of one residue matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct GilbertFactors {
    /// `p x r`, columns are scaled left singular vectors.
    pub e: DMatrix<f64>,
    /// `r x m`, `F = (E^T E)^-1 E^T K`.
    pub f: DMatrix<f64>,
}

impl GilbertFactors {
    pub fn rank(&self) -> usize {
        self.e.ncols()
    }
}

/// Factors `k` as `E F` with `rank(k)` columns in `E`.
///
/// Columns of `E` are left singular vectors scaled by their singular values.
/// Each column's sign is chosen so that its largest-magnitude entry has the
/// sign of the dominant entry of the dominant column of `k`.
pub fn rank_factor(k: &DMatrix<f64>, tol_rank: f64) -> GilbertFactors {
    let (p, m) = k.shape();
    let svd = linalg::svd(k);
    let sigma_max = svd.s.iter().copied().fold(0.0, f64::max);
    let rank = svd
        .s
        .iter()
        .filter(|&&s| sigma_max > 0.0 && s > tol_rank * sigma_max)
        .count();
    if rank == 0 {
        return GilbertFactors {
            e: DMatrix::zeros(p, 0),
            f: DMatrix::zeros(0, m),
        };
    }
    let target_sign = dominant_entry_sign(k);
    let mut e = DMatrix::zeros(p, rank);
    for col in 0..rank {
        let mut v = svd.u.column(col) * svd.s[col];
        let lead = v.iter().copied().fold(
            0.0_f64,
            |best, x| if x.abs() > best.abs() { x } else { best },
        );
        if lead.signum() != target_sign {
            v = -v;
        }
        e.set_column(col, &v);
    }
    let et = e.transpose();
    let gram = &et * &e;
    let f = gram
        .try_inverse()
        .expect("columns of E are orthogonal and nonzero")
        * et
        * k;
    GilbertFactors { e, f }
}

fn dominant_entry_sign(k: &DMatrix<f64>) -> f64 {
    let col = (0..k.ncols())
        .max_by(|&a, &b| k.column(a).norm().total_cmp(&k.column(b).norm()))
        .unwrap_or(0);
    let lead =
        k.column(col).iter().copied().fold(
            0.0_f64,
            |best, x| if x.abs() > best.abs() { x } else { best },
        );
    if lead < 0.0 {
        -1.0
    } else {
        1.0
    }
}

/// Gilbert's minimal realization of a proper matrix with simple real poles:
/// `A` is diagonal with each pole repeated `rank(K_i)` times, `C` and `B`
/// stack the rank factors and `D` is the value at infinity.
pub fn gilbert_realization(
    m: &RationalMatrix,
    tol_pole: f64,
    tol_root: f64,
    tol_rank: f64,
) -> Result<StateSpace> {
    let prf = to_pole_residue(m, tol_pole, tol_root)?;
    let factors: Vec<GilbertFactors> = prf
        .residues
        .iter()
        .map(|k| rank_factor(k, tol_rank))
        .collect();
    let n: usize = factors.iter().map(GilbertFactors::rank).sum();
    let (p, q) = m.shape();
    let mut a = DMatrix::zeros(n, n);
    let mut b = DMatrix::zeros(n, q);
    let mut c = DMatrix::zeros(p, n);
    let mut offset = 0;
    for (&lambda, fac) in prf.poles.iter().zip(&factors) {
        let r = fac.rank();
        for k in 0..r {
            a[(offset + k, offset + k)] = lambda;
        }
        c.view_mut((0, offset), (p, r)).copy_from(&fac.e);
        b.view_mut((offset, 0), (r, q)).copy_from(&fac.f);
        offset += r;
    }
    StateSpace::new(a, b, c, prf.constant)
}

/// McMillan degree of a proper matrix with simple real poles: the sum of
/// the residue ranks.
pub fn mcmillan_degree(
    m: &RationalMatrix,
    tol_pole: f64,
    tol_root: f64,
    tol_rank: f64,
) -> Result<usize> {
    let prf = to_pole_residue(m, tol_pole, tol_root)?;
    Ok(prf
        .residues
        .iter()
        .map(|k| rank_factor(k, tol_rank).rank())
        .sum())
}
