use nalgebra::{DMatrix, DVector};

use super::{GilbertData, RStar};
use crate::error::{Error, Result};
use crate::sslib::PartitionedRealization;

/// `N(lambda_i) E_i` for every pole, with `N(lambda) = diag((lambda - r_j) / (lambda - a))`.
fn weighted_directions(g: &GilbertData, r: &[f64]) -> Result<Vec<DVector<f64>>> {
    if r.len() != g.measured() {
        return Err(Error::ShapeMismatch {
            expected: format!("R* of size {}", g.measured()),
            found: format!("{}", r.len()),
        });
    }
    g.poles
        .iter()
        .zip(&g.e)
        .map(|(&lambda, e)| {
            let denom = lambda - g.shift;
            if denom == 0.0 {
                return Err(Error::PoleAtZeroWithoutShift);
            }
            Ok(DVector::from_fn(e.len(), |j, _| {
                (lambda - r[j]) / denom * e[j]
            }))
        })
        .collect()
}

/// Per-pole flags: `true` when `R*` cancels the pole, i.e.
/// `max|N(lambda_i) E_i| <= tol * max|E_i|`.
pub fn cancellation_check(g: &GilbertData, r: &RStar, tol: f64) -> Result<Vec<bool>> {
    let weighted = weighted_directions(g, &r.materialize())?;
    Ok(weighted
        .iter()
        .zip(&g.e)
        .map(|(w, e)| w.amax() <= tol * e.amax())
        .collect())
}

/// Realization of `[Q P]` with the given `R*`, keeping only the hidden modes
/// that `R*` does not cancel. Its order is `p` plus the surviving poles.
pub fn realize(g: &GilbertData, r: &RStar, tol: f64) -> Result<PartitionedRealization> {
    let keep = cancellation_check(g, r, tol)?
        .into_iter()
        .map(|c| !c)
        .collect::<Vec<_>>();
    build(g, &r.materialize(), &keep)
}

/// Same as [`realize`] but keeps every pole as a hidden mode. Cancelled poles
/// become unobservable modes with zero `A12` columns.
pub fn realize_unpruned(g: &GilbertData, r: &RStar) -> Result<PartitionedRealization> {
    build(g, &r.materialize(), &vec![true; g.len()])
}

fn build(g: &GilbertData, r: &[f64], keep: &[bool]) -> Result<PartitionedRealization> {
    let weighted = weighted_directions(g, r)?;
    let p = g.measured();
    let m = g.d1.ncols() - p;
    let kept: Vec<usize> = (0..g.len()).filter(|&i| keep[i]).collect();
    let h = kept.len();

    let mut a11 = g.d1.columns(0, p).into_owned();
    for (j, &rj) in r.iter().enumerate() {
        a11[(j, j)] += rj;
    }
    let b1 = g.d1.columns(p, m).into_owned();
    let mut a12 = DMatrix::zeros(p, h);
    let mut a21 = DMatrix::zeros(h, p);
    let mut a22 = DMatrix::zeros(h, h);
    let mut b2 = DMatrix::zeros(h, m);
    for (k, &i) in kept.iter().enumerate() {
        a12.set_column(k, &weighted[i]);
        a21.row_mut(k).copy_from(&g.f[i].columns(0, p));
        b2.row_mut(k).copy_from(&g.f[i].columns(p, m));
        a22[(k, k)] = g.poles[i];
    }
    PartitionedRealization::new(a11, a12, a21, a22, b1, b2)
}
