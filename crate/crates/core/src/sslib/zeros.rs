use nalgebra::DMatrix;
use num_complex::Complex64;

use super::StateSpace;
use crate::linalg;

/// Sample points used to estimate the normal rank of a transfer matrix.
pub const NORMAL_RANK_SAMPLES: usize = 8;

/// Number of singular values above `tol_rank` times the largest.
pub fn numerical_rank(m: &DMatrix<Complex64>, tol_rank: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = linalg::singular_values(m);
    let max = sv.first().copied().unwrap_or(0.0);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&x| x > tol_rank * max).count()
}

fn eval_transfer(ss: &StateSpace, s: Complex64) -> Option<DMatrix<Complex64>> {
    let n = ss.order();
    let a = ss.a.map(Complex64::from);
    let resolvent = (DMatrix::<Complex64>::identity(n, n) * s - a).try_inverse()?;
    Some(
        ss.c.map(Complex64::from) * resolvent * ss.b.map(Complex64::from)
            + ss.d.map(Complex64::from),
    )
}

/// Normal rank of `G(s) = C (sI - A)^-1 B + D`, taken as the largest rank over
/// [`NORMAL_RANK_SAMPLES`] deterministic points right of the spectrum.
pub fn normal_rank(ss: &StateSpace, tol_rank: f64) -> usize {
    let radius = spectral_radius(&ss.a);
    (1..=NORMAL_RANK_SAMPLES)
        .filter_map(|k| eval_transfer(ss, Complex64::new(1.0 + radius + k as f64, 0.0)))
        .map(|g| numerical_rank(&g, tol_rank))
        .max()
        .unwrap_or(0)
}

pub(crate) fn spectral_radius(a: &DMatrix<f64>) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    linalg::eigenvalues(a)
        .iter()
        .fold(0.0, |m, z| m.max(z.norm()))
}

/// True when the Rosenbrock matrix `[[A - s0 I, B], [C, D]]` loses rank at
/// `s0` relative to its normal rank `n + normal_rank(G)`.
pub fn is_invariant_zero(ss: &StateSpace, s0: Complex64, tol_rank: f64) -> bool {
    let n = ss.order();
    let (p, m) = ss.d.shape();
    let mut rosenbrock = DMatrix::<Complex64>::zeros(n + p, n + m);
    for i in 0..n {
        for j in 0..n {
            rosenbrock[(i, j)] =
                Complex64::from(ss.a[(i, j)]) - if i == j { s0 } else { Complex64::from(0.0) };
        }
        for j in 0..m {
            rosenbrock[(i, n + j)] = ss.b[(i, j)].into();
        }
    }
    for i in 0..p {
        for j in 0..n {
            rosenbrock[(n + i, j)] = ss.c[(i, j)].into();
        }
        for j in 0..m {
            rosenbrock[(n + i, n + j)] = ss.d[(i, j)].into();
        }
    }
    numerical_rank(&rosenbrock, tol_rank) < n + normal_rank(ss, tol_rank)
}
