use nalgebra::{DMatrix, DVector, RowDVector};
use serde::{Deserialize, Serialize};

use crate::dsf::{structure_limits, Dsf};
use crate::error::{Error, Result};
use crate::ratcore::to_pole_residue;
use crate::sslib::rank_factor;
use crate::tol::Tolerances;

/// How the variable `s` in `[sQ sP]` is replaced before the residues are taken.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub enum ShiftMode {
    /// Use `(s - a)` with `a = 1 + max|pole|` only when `0` is a pole.
    #[default]
    Auto,
    /// Always use `(s - a)` with the given `a`. `Fixed(0.0)` disables shifting.
    Fixed(f64),
}

/// Rank-one modes of `(s - a)[Q P]`: `sum E_i F_i / (s - lambda_i) + D1`.
#[derive(Debug, Clone, PartialEq)]
pub struct GilbertData {
    /// Distinct real poles of `[Q P]`, descending.
    pub poles: Vec<f64>,
    /// Length-`p` residue directions. Entries below `tol_orth * max|E_i|` are
    /// exactly zero.
    pub e: Vec<DVector<f64>>,
    /// Length-`p + m` row factors with `E_i F_i = K_i`.
    pub f: Vec<RowDVector<f64>>,
    /// Residues `K_i` of the (shifted) `[sQ sP]`.
    pub residues: Vec<DMatrix<f64>>,
    /// `lim s [Q P]` as `s -> infinity`.
    pub d1: DMatrix<f64>,
    /// The shift `a`, `0` when none was applied.
    pub shift: f64,
}

impl GilbertData {
    /// Number of poles `l`.
    pub fn len(&self) -> usize {
        self.poles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poles.is_empty()
    }

    pub fn measured(&self) -> usize {
        self.d1.nrows()
    }

    /// Indices `j` with `E_i[j] != 0`.
    pub fn support(&self, i: usize) -> Vec<usize> {
        self.e[i]
            .iter()
            .enumerate()
            .filter(|(_, x)| **x != 0.0)
            .map(|(j, _)| j)
            .collect()
    }
}

/// Residue decomposition of `[sQ sP]`, shifted to `(s - a)[Q P]` when the
/// shift mode asks for it.
pub fn extract_modes(d: &Dsf, shift: ShiftMode, tol: &Tolerances) -> Result<GilbertData> {
    let qp = d.qp();
    let prf = to_pole_residue(&qp, tol.tol_pole, tol.tol_root)?;
    let max_modulus = prf.poles.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let has_zero_pole = prf.poles.iter().any(|x| x.abs() < tol.tol_pole);
    let a = match shift {
        ShiftMode::Auto if has_zero_pole => 1.0 + max_modulus,
        ShiftMode::Auto => 0.0,
        ShiftMode::Fixed(a) => {
            if !a.is_finite() || prf.poles.iter().any(|x| (x - a).abs() < tol.tol_pole) {
                return Err(if a == 0.0 {
                    Error::PoleAtZeroWithoutShift
                } else {
                    Error::InvalidShift(a)
                });
            }
            a
        }
    };

    let limits = structure_limits(d, tol.tol_root)?;
    let d1 = concat_columns(&limits.a11_offdiag, &limits.b1);

    let mut e = Vec::with_capacity(prf.poles.len());
    let mut f = Vec::with_capacity(prf.poles.len());
    let mut residues = Vec::with_capacity(prf.poles.len());
    for (&lambda, k_plain) in prf.poles.iter().zip(&prf.residues) {
        // (s - a) K / (s - lambda) = K + (lambda - a) K / (s - lambda)
        let k = k_plain * (lambda - a);
        let fac = rank_factor(&k, tol.tol_rank);
        match fac.rank() {
            1 => {}
            0 => {
                return Err(Error::InvalidDsf(format!(
                    "residue at pole {lambda} vanishes"
                )))
            }
            rank => return Err(Error::ResidueRankExceedsOne { pole: lambda, rank }),
        }
        let mut ei: DVector<f64> = fac.e.column(0).into_owned();
        let floor = tol.tol_orth * ei.amax();
        ei.apply(|x| {
            if x.abs() <= floor {
                *x = 0.0
            }
        });
        let fi = (ei.transpose() * &k) / ei.norm_squared();
        e.push(ei);
        f.push(fi);
        residues.push(k);
    }
    Ok(GilbertData {
        poles: prf.poles,
        e,
        f,
        residues,
        d1,
        shift: a,
    })
}

pub(crate) fn concat_columns(left: &DMatrix<f64>, right: &DMatrix<f64>) -> DMatrix<f64> {
    let (p, m1) = left.shape();
    let m2 = right.ncols();
    let mut out = DMatrix::zeros(p, m1 + m2);
    out.view_mut((0, 0), (p, m1)).copy_from(left);
    out.view_mut((0, m1), (p, m2)).copy_from(right);
    out
}
