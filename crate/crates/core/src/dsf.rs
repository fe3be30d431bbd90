//! Dynamical structure functions `[Q, P]` of partitioned realizations.
//!
//! For a realization in output-normal form, eliminating the hidden states
//! gives `sY = W Y + V U` with
//!
//! ```text
//! W = A11 + A12 (sI - A22)^-1 A21,   V = B1 + A12 (sI - A22)^-1 B2.
//! ```
//!
//! With `R = diag(W)`, the structure function is `Q = (sI - R)^-1 (W - R)`
//! and `P = (sI - R)^-1 V`, so that `Y = Q Y + P U`.

use std::fmt;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::ratcore::{
    from_pole_residue, limit_at_infinity, rat_reduce, rmat_equal, PoleResidueForm, Polynomial,
    RationalFunction, RationalMatrix,
};
use crate::sslib::{
    minimal_realization, observer_realization, resolvent, transfer_function,
    PartitionedRealization, StateSpace,
};

/// Relative rank threshold for discarding hidden modes of the closed loop.
const DSF_MINIMAL_TOL: f64 = 1e-8;

/// The pair `[Q, P]`: `Q` is `p x p` with an identically zero diagonal, `P`
/// is `p x m`, and every entry of both is strictly proper.
#[derive(Debug, Clone, PartialEq)]
pub struct Dsf {
    q: RationalMatrix,
    p: RationalMatrix,
}

impl Dsf {
    pub fn new(q: RationalMatrix, p: RationalMatrix) -> Result<Self> {
        let n = q.rows();
        if q.cols() != n || p.rows() != n || n == 0 || p.cols() == 0 {
            return Err(Error::ShapeMismatch {
                expected: "Q p x p and P p x m with p, m >= 1".into(),
                found: format!("Q {}x{}, P {}x{}", q.rows(), q.cols(), p.rows(), p.cols()),
            });
        }
        if let Some(i) = (0..n).find(|&i| !q.get(i, i).is_zero()) {
            return Err(Error::InvalidDsf(format!(
                "Q[{i}][{i}] is not identically zero"
            )));
        }
        for (name, m) in [("Q", &q), ("P", &p)] {
            if let Some(((i, j), _)) = m.entries().find(|(_, f)| !f.is_strictly_proper()) {
                return Err(Error::InvalidDsf(format!(
                    "{name}[{i}][{j}] is not strictly proper"
                )));
            }
        }
        Ok(Self { q, p })
    }

    /// Builds `Q = sum KQ_i / (s - lambda_i)`, `P = sum KP_i / (s - lambda_i)`.
    pub fn from_pole_residue(
        poles: &[f64],
        kq: &[DMatrix<f64>],
        kp: &[DMatrix<f64>],
        tol_root: f64,
    ) -> Result<Self> {
        if poles.len() != kq.len() || poles.len() != kp.len() || poles.is_empty() {
            return Err(Error::ShapeMismatch {
                expected: format!("{} residue matrices for Q and P", poles.len()),
                found: format!("{} and {}", kq.len(), kp.len()),
            });
        }
        let (p, m) = (kq[0].nrows(), kp[0].ncols());
        let build = |ks: &[DMatrix<f64>], cols: usize| -> Result<RationalMatrix> {
            if ks.iter().any(|k| k.shape() != (p, cols)) {
                return Err(Error::ShapeMismatch {
                    expected: format!("{p}x{cols} residues"),
                    found: "inconsistent residue shapes".into(),
                });
            }
            from_pole_residue(
                &PoleResidueForm {
                    poles: poles.to_vec(),
                    residues: ks.to_vec(),
                    constant: DMatrix::zeros(p, cols),
                },
                tol_root,
            )
        };
        Self::new(build(kq, p)?, build(kp, m)?)
    }

    pub fn q(&self) -> &RationalMatrix {
        &self.q
    }

    pub fn p(&self) -> &RationalMatrix {
        &self.p
    }

    /// Number of measured states `p`.
    pub fn measured(&self) -> usize {
        self.q.rows()
    }

    pub fn inputs(&self) -> usize {
        self.p.cols()
    }

    /// `[Q P]`.
    pub fn qp(&self) -> RationalMatrix {
        self.q.hcat(&self.p).expect("Q and P share a row count")
    }
}

impl fmt::Display for Dsf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Q =")?;
        write!(f, "{}", self.q)?;
        writeln!(f, "P =")?;
        write!(f, "{}", self.p)
    }
}

/// `A11 - diag(A11)` and `B1` recovered from the high-frequency behaviour of
/// `[Q, P]`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureLimits {
    pub a11_offdiag: DMatrix<f64>,
    pub b1: DMatrix<f64>,
}

/// Which entries of `Q` and `P` are structurally nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanStructure {
    pub q_adj: DMatrix<bool>,
    pub p_adj: DMatrix<bool>,
}

/// `W` and `V` of a partitioned realization, as reduced rational matrices.
pub fn internal_transfer(
    part: &PartitionedRealization,
    tol_root: f64,
) -> Result<(RationalMatrix, RationalMatrix)> {
    let (num_w, num_v, chi) = internal_numerators(part);
    let reduce = |nums: &[Vec<Polynomial>]| {
        RationalMatrix::try_from_fn(nums.len(), nums[0].len(), |i, j| {
            rat_reduce(nums[i][j].clone(), chi.clone(), tol_root)
        })
    };
    Ok((reduce(&num_w)?, reduce(&num_v)?))
}

type Numerators = Vec<Vec<Polynomial>>;

/// Numerators of `W` and `V` over the common denominator `det(sI - A22)`.
fn internal_numerators(part: &PartitionedRealization) -> (Numerators, Numerators, Polynomial) {
    let res = resolvent(&part.a22);
    let w_terms = res.sandwich(&part.a12, &part.a21);
    let v_terms = res.sandwich(&part.a12, &part.b2);
    let numerators = |constant: &DMatrix<f64>, terms: &[DMatrix<f64>]| -> Numerators {
        (0..constant.nrows())
            .map(|i| {
                (0..constant.ncols())
                    .map(|j| {
                        let adj = Polynomial::new(terms.iter().map(|t| t[(i, j)]).collect());
                        &res.charpoly.scale(constant[(i, j)]) + &adj
                    })
                    .collect()
            })
            .collect()
    };
    (
        numerators(&part.a11, &w_terms),
        numerators(&part.b1, &v_terms),
        res.charpoly.clone(),
    )
}

/// Dynamical structure function of a partitioned realization.
pub fn compute_dsf(part: &PartitionedRealization, tol_root: f64) -> Result<Dsf> {
    let (num_w, num_v, chi) = internal_numerators(part);
    let p = part.measured();
    // Row i of [Q P] is [W - R, V] row i divided by (s - W_ii); with
    // W_ii = n_ii / chi that is n_ij / (s chi - n_ii).
    let row_den: Vec<Polynomial> = (0..p)
        .map(|i| &(&Polynomial::s() * &chi) - &num_w[i][i])
        .collect();
    let q = RationalMatrix::try_from_fn(p, p, |i, j| {
        if i == j {
            Ok(RationalFunction::zero())
        } else {
            rat_reduce(num_w[i][j].clone(), row_den[i].clone(), tol_root)
        }
    })?;
    let pm = RationalMatrix::try_from_fn(p, part.inputs(), |i, j| {
        rat_reduce(num_v[i][j].clone(), row_den[i].clone(), tol_root)
    })?;
    Dsf::new(q, pm)
}

/// `G = (I - Q)^-1 P`, from a realization of `[Q P]` with the loop
/// `y = Qy + Pu` closed and hidden modes removed.
pub fn dsf_to_transfer(d: &Dsf, tol_root: f64) -> Result<RationalMatrix> {
    let p = d.measured();
    let open = observer_realization(&d.qp())?;
    let bq = open.b.columns(0, p).into_owned();
    let bp = open.b.columns(p, d.inputs()).into_owned();
    let closed = StateSpace::strictly_proper(&open.a + &bq * &open.c, bp, open.c.clone())?;
    transfer_function(&minimal_realization(&closed, DSF_MINIMAL_TOL), tol_root)
}

/// `lim s Q(s)` and `lim s P(s)` as `s -> infinity`.
pub fn structure_limits(d: &Dsf, tol_root: f64) -> Result<StructureLimits> {
    let mut a11_offdiag = limit_at_infinity(&d.q().mul_s(tol_root)?)?;
    a11_offdiag.fill_diagonal(0.0);
    let b1 = limit_at_infinity(&d.p().mul_s(tol_root)?)?;
    Ok(StructureLimits { a11_offdiag, b1 })
}

/// Nonzero pattern of `Q` and `P`. An entry is nonzero when some numerator
/// coefficient exceeds `tol_struct` times the largest numerator coefficient
/// anywhere in `[Q P]`.
pub fn boolean_structure(d: &Dsf, tol_struct: f64) -> BooleanStructure {
    let scale = d
        .q()
        .entries()
        .chain(d.p().entries())
        .map(|(_, f)| f.num().max_abs_coeff())
        .fold(0.0, f64::max);
    let floor = tol_struct * scale;
    let pattern = |m: &RationalMatrix| {
        DMatrix::from_fn(m.rows(), m.cols(), |i, j| {
            m.get(i, j).num().coeffs().iter().any(|c| c.abs() > floor)
        })
    };
    let mut q_adj = pattern(d.q());
    q_adj.fill_diagonal(false);
    BooleanStructure {
        q_adj,
        p_adj: pattern(d.p()),
    }
}

/// True when the realization reproduces `d` exactly (as rational matrices).
pub fn consistency_check(
    part: &PartitionedRealization,
    d: &Dsf,
    tol_eval: f64,
    tol_root: f64,
) -> Result<bool> {
    if part.measured() != d.measured() || part.inputs() != d.inputs() {
        return Err(Error::ShapeMismatch {
            expected: format!("p = {}, m = {}", d.measured(), d.inputs()),
            found: format!("p = {}, m = {}", part.measured(), part.inputs()),
        });
    }
    let derived = compute_dsf(part, tol_root)?;
    Ok(rmat_equal(derived.q(), d.q(), tol_eval)? && rmat_equal(derived.p(), d.p(), tol_eval)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::RationalFunction as Rf;

    fn diag(v: &[f64]) -> DMatrix<f64> {
        DMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(v))
    }

    #[test]
    fn decoupled_measured_states() {
        let part =
            PartitionedRealization::from_blocks(&diag(&[-1.0, -2.0]), &DMatrix::identity(2, 2), 2)
                .unwrap();
        let d = compute_dsf(&part, 1e-8).unwrap();
        assert!(d.q().entries().all(|(_, f)| f.is_zero()));
        assert_eq!(d.p().get(0, 0), &Rf::first_order(1.0, -1.0));
        assert_eq!(d.p().get(1, 1), &Rf::first_order(1.0, -2.0));
        assert!(d.p().get(0, 1).is_zero());
        let bs = boolean_structure(&d, 1e-9);
        assert!(bs.q_adj.iter().all(|&x| !x));
    }

    #[test]
    fn rejects_nonzero_diagonal() {
        let q = RationalMatrix::new(1, 1, vec![Rf::first_order(1.0, -1.0)]).unwrap();
        let p = RationalMatrix::new(1, 1, vec![Rf::first_order(1.0, -1.0)]).unwrap();
        assert!(matches!(Dsf::new(q, p), Err(Error::InvalidDsf(_))));
    }

    #[test]
    fn rejects_biproper_entries() {
        let q = RationalMatrix::zeros(1, 1);
        let p = RationalMatrix::new(1, 1, vec![Rf::constant(1.0)]).unwrap();
        assert!(matches!(Dsf::new(q, p), Err(Error::InvalidDsf(_))));
    }

    #[test]
    fn zero_q_gives_g_equal_p() {
        let q = RationalMatrix::zeros(2, 2);
        let p = RationalMatrix::new(
            2,
            1,
            vec![Rf::first_order(1.0, -4.0), Rf::first_order(2.0, -1.0)],
        )
        .unwrap();
        let d = Dsf::new(q, p.clone()).unwrap();
        assert!(rmat_equal(&dsf_to_transfer(&d, 1e-8).unwrap(), &p, 1e-12).unwrap());
        let lim = structure_limits(&d, 1e-8).unwrap();
        assert_eq!(lim.a11_offdiag, DMatrix::zeros(2, 2));
        assert_eq!(lim.b1, DMatrix::from_row_slice(2, 1, &[1.0, 2.0]));
    }

    #[test]
    fn one_hidden_state_chain() {
        // y1 <- z <- y2: A12 = [1; 0], A21 = [0 1].
        let a = DMatrix::from_row_slice(3, 3, &[-1.0, 0.0, 1.0, 0.0, -2.0, 0.0, 0.0, 1.0, -3.0]);
        let b = DMatrix::from_row_slice(3, 1, &[0.0, 1.0, 0.0]);
        let part = PartitionedRealization::from_blocks(&a, &b, 2).unwrap();
        let d = compute_dsf(&part, 1e-8).unwrap();
        // Q12 = 1 / ((s + 1)(s + 3)), a relative-degree-two path.
        let q12 = d.q().get(0, 1);
        assert_eq!(q12.relative_degree(), Some(2));
        assert!((q12.eval_real(0.0).unwrap() - 1.0 / 3.0).abs() < 1e-12);
        let lim = structure_limits(&d, 1e-8).unwrap();
        assert_eq!(lim.a11_offdiag, DMatrix::zeros(2, 2));
        assert!(consistency_check(&part, &d, 1e-9, 1e-8).unwrap());
        let mut perturbed = part.clone();
        perturbed.a22[(0, 0)] += 0.1;
        assert!(!consistency_check(&perturbed, &d, 1e-9, 1e-8).unwrap());
    }
}
