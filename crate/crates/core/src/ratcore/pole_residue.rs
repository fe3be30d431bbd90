use nalgebra::DMatrix;

use super::matrix::{limit_at_infinity, residue_at, rmat_poles, RationalMatrix};
use super::poly::{poly_mul, Polynomial};
use super::rational::rat_reduce;
use crate::error::{Error, Result};

/// Simple-pole expansion `M(s) = sum_i K_i / (s - lambda_i) + D`.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleResidueForm {
    /// Distinct real poles in descending order.
    pub poles: Vec<f64>,
    /// One residue matrix per pole.
    pub residues: Vec<DMatrix<f64>>,
    /// Value at infinity.
    pub constant: DMatrix<f64>,
}

impl PoleResidueForm {
    pub fn shape(&self) -> (usize, usize) {
        self.constant.shape()
    }

    /// Evaluates the expansion at a complex point.
    pub fn eval(&self, s: num_complex::Complex64) -> DMatrix<num_complex::Complex64> {
        let mut out = self.constant.map(|x| num_complex::Complex64::new(x, 0.0));
        for (&lambda, k) in self.poles.iter().zip(&self.residues) {
            let w = (s - lambda).inv();
            out += k.map(|x| w * x);
        }
        out
    }
}

/// Partial-fraction expansion of a proper matrix with simple real poles.
pub fn to_pole_residue(
    m: &RationalMatrix,
    tol_pole: f64,
    tol_root: f64,
) -> Result<PoleResidueForm> {
    let constant = limit_at_infinity(m)?;
    let poles = rmat_poles(m, tol_pole, tol_root)?;
    let residues = poles
        .iter()
        .map(|&lambda| residue_at(m, lambda, tol_pole, tol_root))
        .collect::<Result<Vec<_>>>()?;
    // Every denominator root lies at one of the poles; the multiplicity check
    // in `residue_at` rejects any entry where it is not simple.
    for ((i, j), f) in m.entries() {
        let roots = f.den_roots(tol_root);
        if let Some(&(pole, _)) = roots.real.iter().find(|r| r.1 > 1) {
            return Err(Error::RepeatedPole {
                pole,
                row: i,
                col: j,
            });
        }
    }
    Ok(PoleResidueForm {
        poles,
        residues,
        constant,
    })
}

/// Rebuilds `sum_i K_i / (s - lambda_i) + D` as a reduced rational matrix.
pub fn from_pole_residue(prf: &PoleResidueForm, tol_root: f64) -> Result<RationalMatrix> {
    let (rows, cols) = prf.shape();
    RationalMatrix::try_from_fn(rows, cols, |i, j| {
        let active: Vec<(f64, f64)> = prf
            .poles
            .iter()
            .zip(&prf.residues)
            .map(|(&l, k)| (l, k[(i, j)]))
            .filter(|&(_, k)| k != 0.0)
            .collect();
        let den = Polynomial::from_roots(&active.iter().map(|a| a.0).collect::<Vec<_>>());
        let mut num = den.scale(prf.constant[(i, j)]);
        for (idx, &(_, k)) in active.iter().enumerate() {
            let others: Vec<f64> = active
                .iter()
                .enumerate()
                .filter(|&(o, _)| o != idx)
                .map(|(_, a)| a.0)
                .collect();
            num = &num + &poly_mul(&Polynomial::constant(k), &Polynomial::from_roots(&others));
        }
        rat_reduce(num, den, tol_root)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::matrix::rmat_equal;
    use crate::ratcore::rational::RationalFunction;

    #[test]
    fn constant_matrix() {
        let c = DMatrix::from_row_slice(2, 1, &[1.0, -2.0]);
        let prf = to_pole_residue(&RationalMatrix::from_constant(&c), 1e-6, 1e-8).unwrap();
        assert!(prf.poles.is_empty());
        assert_eq!(prf.constant, c);
    }

    #[test]
    fn repeated_pole_rejected() {
        let f = RationalFunction::new(Polynomial::one(), Polynomial::from_roots(&[-1.0, -1.0]))
            .unwrap();
        let m = RationalMatrix::new(1, 1, vec![f]).unwrap();
        assert!(matches!(
            to_pole_residue(&m, 1e-6, 1e-8),
            Err(Error::RepeatedPole { .. })
        ));
    }

    #[test]
    fn two_pole_round_trip() {
        let prf = PoleResidueForm {
            poles: vec![-1.0, -3.0],
            residues: vec![
                DMatrix::from_row_slice(1, 2, &[2.0, 0.0]),
                DMatrix::from_row_slice(1, 2, &[1.0, -1.0]),
            ],
            constant: DMatrix::from_row_slice(1, 2, &[0.0, 0.5]),
        };
        let m = from_pole_residue(&prf, 1e-8).unwrap();
        let back = to_pole_residue(&m, 1e-6, 1e-8).unwrap();
        assert_eq!(back.poles.len(), 2);
        for (a, b) in back.residues.iter().zip(&prf.residues) {
            assert!((a - b).amax() < 1e-12);
        }
        assert!(rmat_equal(&from_pole_residue(&back, 1e-8).unwrap(), &m, 1e-10).unwrap());
    }
}
