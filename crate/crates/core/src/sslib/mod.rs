//! State-space models and the realization machinery built on them.

mod gilbert;
mod normal_form;
mod reduce;
mod transfer;
mod zeros;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

pub use gilbert::{gilbert_realization, mcmillan_degree, rank_factor, GilbertFactors};
pub use normal_form::output_normal_form;
pub use reduce::{minimal_realization, observer_realization};
pub use transfer::{resolvent, transfer_function, Resolvent};
pub use zeros::{is_invariant_zero, normal_rank, numerical_rank, NORMAL_RANK_SAMPLES};

/// Continuous-time model `x' = Ax + Bu`, `y = Cx + Du`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSpace {
    pub a: DMatrix<f64>,
    pub b: DMatrix<f64>,
    pub c: DMatrix<f64>,
    pub d: DMatrix<f64>,
}

impl StateSpace {
    /// Validates dimensions. An order-zero model (pure feedthrough) is
    /// accepted so that constant transfer matrices have a realization.
    pub fn new(a: DMatrix<f64>, b: DMatrix<f64>, c: DMatrix<f64>, d: DMatrix<f64>) -> Result<Self> {
        let n = a.nrows();
        let (p, m) = d.shape();
        if a.ncols() != n || b.nrows() != n || c.ncols() != n || b.ncols() != m || c.nrows() != p {
            return Err(Error::InvalidDimensions(format!(
                "A {:?}, B {:?}, C {:?}, D {:?}",
                a.shape(),
                b.shape(),
                c.shape(),
                d.shape()
            )));
        }
        if m == 0 || p == 0 {
            return Err(Error::InvalidDimensions(
                "need at least one input and one output".into(),
            ));
        }
        Ok(Self { a, b, c, d })
    }

    /// Strictly proper model with zero feedthrough.
    pub fn strictly_proper(a: DMatrix<f64>, b: DMatrix<f64>, c: DMatrix<f64>) -> Result<Self> {
        let d = DMatrix::zeros(c.nrows(), b.ncols());
        Self::new(a, b, c, d)
    }

    pub fn order(&self) -> usize {
        self.a.nrows()
    }

    pub fn inputs(&self) -> usize {
        self.b.ncols()
    }

    pub fn outputs(&self) -> usize {
        self.c.nrows()
    }
}

/// Realization in output-normal form: output map `[I_p 0]`, states split into
/// `p` measured and `h` hidden.
///
/// `h = 0` is allowed, in which case `a12`, `a21`, `a22` and `b2` are empty.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionedRealization {
    pub a11: DMatrix<f64>,
    pub a12: DMatrix<f64>,
    pub a21: DMatrix<f64>,
    pub a22: DMatrix<f64>,
    pub b1: DMatrix<f64>,
    pub b2: DMatrix<f64>,
}

impl PartitionedRealization {
    pub fn new(
        a11: DMatrix<f64>,
        a12: DMatrix<f64>,
        a21: DMatrix<f64>,
        a22: DMatrix<f64>,
        b1: DMatrix<f64>,
        b2: DMatrix<f64>,
    ) -> Result<Self> {
        let p = a11.nrows();
        let h = a22.nrows();
        let m = b1.ncols();
        let ok = a11.ncols() == p
            && a12.shape() == (p, h)
            && a21.shape() == (h, p)
            && a22.ncols() == h
            && b1.nrows() == p
            && b2.shape() == (h, m)
            && p > 0
            && m > 0;
        if !ok {
            return Err(Error::InvalidDimensions(format!(
                "A11 {:?}, A12 {:?}, A21 {:?}, A22 {:?}, B1 {:?}, B2 {:?}",
                a11.shape(),
                a12.shape(),
                a21.shape(),
                a22.shape(),
                b1.shape(),
                b2.shape()
            )));
        }
        Ok(Self {
            a11,
            a12,
            a21,
            a22,
            b1,
            b2,
        })
    }

    /// Splits a full model whose output map is exactly `[I_p 0]`.
    pub fn from_blocks(a: &DMatrix<f64>, b: &DMatrix<f64>, p: usize) -> Result<Self> {
        let n = a.nrows();
        if p == 0 || p > n || a.ncols() != n || b.nrows() != n {
            return Err(Error::InvalidDimensions(format!(
                "cannot partition A {:?}, B {:?} with p = {p}",
                a.shape(),
                b.shape()
            )));
        }
        let h = n - p;
        Self::new(
            a.view((0, 0), (p, p)).into_owned(),
            a.view((0, p), (p, h)).into_owned(),
            a.view((p, 0), (h, p)).into_owned(),
            a.view((p, p), (h, h)).into_owned(),
            b.view((0, 0), (p, b.ncols())).into_owned(),
            b.view((p, 0), (h, b.ncols())).into_owned(),
        )
    }

    pub fn measured(&self) -> usize {
        self.a11.nrows()
    }

    pub fn hidden(&self) -> usize {
        self.a22.nrows()
    }

    pub fn inputs(&self) -> usize {
        self.b1.ncols()
    }

    pub fn order(&self) -> usize {
        self.measured() + self.hidden()
    }

    pub fn a(&self) -> DMatrix<f64> {
        let (p, h) = (self.measured(), self.hidden());
        let mut a = DMatrix::zeros(p + h, p + h);
        a.view_mut((0, 0), (p, p)).copy_from(&self.a11);
        a.view_mut((0, p), (p, h)).copy_from(&self.a12);
        a.view_mut((p, 0), (h, p)).copy_from(&self.a21);
        a.view_mut((p, p), (h, h)).copy_from(&self.a22);
        a
    }

    pub fn b(&self) -> DMatrix<f64> {
        let (p, h, m) = (self.measured(), self.hidden(), self.inputs());
        let mut b = DMatrix::zeros(p + h, m);
        b.view_mut((0, 0), (p, m)).copy_from(&self.b1);
        b.view_mut((p, 0), (h, m)).copy_from(&self.b2);
        b
    }

    /// `[I_p 0]`.
    pub fn c(&self) -> DMatrix<f64> {
        let (p, h) = (self.measured(), self.hidden());
        DMatrix::from_fn(p, p + h, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    /// The full model `(A, B, [I_p 0], 0)`.
    pub fn assemble(&self) -> StateSpace {
        StateSpace::strictly_proper(self.a(), self.b(), self.c())
            .expect("partition blocks are consistent")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn assemble_and_split() {
        let a = DMatrix::from_fn(4, 4, |i, j| (i * 4 + j) as f64);
        let b = DMatrix::from_fn(4, 2, |i, j| (i + 10 * j) as f64);
        let part = PartitionedRealization::from_blocks(&a, &b, 3).unwrap();
        assert_eq!(part.hidden(), 1);
        let ss = part.assemble();
        assert_eq!(ss.a, a);
        assert_eq!(ss.b, b);
        assert_eq!(
            ss.c,
            DMatrix::from_row_slice(3, 4, &[1., 0., 0., 0., 0., 1., 0., 0., 0., 0., 1., 0.])
        );
    }

    #[test]
    fn no_hidden_states() {
        let a = DMatrix::from_diagonal_element(2, 2, -1.0);
        let b = DMatrix::identity(2, 2);
        let part = PartitionedRealization::from_blocks(&a, &b, 2).unwrap();
        assert_eq!(part.hidden(), 0);
        assert_eq!(part.a12.shape(), (2, 0));
        assert_eq!(part.assemble().order(), 2);
    }

    #[test]
    fn dimension_errors() {
        let a = DMatrix::zeros(2, 2);
        assert!(
            StateSpace::strictly_proper(a.clone(), DMatrix::zeros(3, 1), DMatrix::zeros(1, 2))
                .is_err()
        );
        assert!(PartitionedRealization::from_blocks(&a, &DMatrix::zeros(2, 1), 3).is_err());
    }
}
