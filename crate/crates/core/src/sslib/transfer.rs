use nalgebra::DMatrix;

use super::StateSpace;
use crate::error::Result;
use crate::ratcore::{rat_reduce, Polynomial, RationalMatrix};

/// `(sI - A)^{-1} = adj(s) / chi(s)` with `adj(s) = sum_k coeffs[k] s^k`.
#[derive(Debug, Clone)]
pub struct Resolvent {
    /// Characteristic polynomial `det(sI - A)`, monic.
    pub charpoly: Polynomial,
    /// Matrix coefficients of the adjugate, ascending in `s`.
    pub adjugate: Vec<DMatrix<f64>>,
}

impl Resolvent {
    /// Matrix coefficients of `L adj(s) R`, ascending in `s`.
    pub fn sandwich(&self, left: &DMatrix<f64>, right: &DMatrix<f64>) -> Vec<DMatrix<f64>> {
        self.adjugate.iter().map(|m| left * m * right).collect()
    }
}

/// Faddeev–LeVerrier recursion for the characteristic polynomial and the
/// adjugate of `sI - A`.
pub fn resolvent(a: &DMatrix<f64>) -> Resolvent {
    let n = a.nrows();
    if n == 0 {
        return Resolvent {
            charpoly: Polynomial::one(),
            adjugate: Vec::new(),
        };
    }
    // adj(sI - A) = sum_{k=1}^{n} M_k s^{n-k},  M_1 = I,
    // M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(A M_k) / k.
    let mut chi = vec![0.0; n + 1];
    chi[n] = 1.0;
    let mut adjugate = vec![DMatrix::zeros(n, n); n];
    let mut m = DMatrix::identity(n, n);
    for k in 1..=n {
        if k > 1 {
            m = a * &m + DMatrix::identity(n, n) * chi[n - k + 1];
        }
        chi[n - k] = -(a * &m).trace() / k as f64;
        adjugate[n - k] = m.clone();
    }
    Resolvent {
        charpoly: Polynomial::new(chi),
        adjugate,
    }
}

/// `G(s) = C (sI - A)^{-1} B + D` as a reduced rational matrix.
pub fn transfer_function(ss: &StateSpace, tol_root: f64) -> Result<RationalMatrix> {
    let res = resolvent(&ss.a);
    let terms = res.sandwich(&ss.c, &ss.b);
    RationalMatrix::try_from_fn(ss.outputs(), ss.inputs(), |i, j| {
        let adj = Polynomial::new(terms.iter().map(|t| t[(i, j)]).collect());
        let num = &adj + &res.charpoly.scale(ss.d[(i, j)]);
        rat_reduce(num, res.charpoly.clone(), tol_root)
    })
}
