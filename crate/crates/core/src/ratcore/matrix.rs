use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::poly::{poly_mul, Polynomial};
use super::rational::{rat_reduce, sum_of_products, RationalFunction};
use crate::error::{Error, Result};

/// Number of deterministic sample points used by equality checks.
pub const EQUALITY_SAMPLES: usize = 16;

/// Matrix of reduced rational functions, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<RationalFunction>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<RationalFunction>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                expected: format!("{rows}x{cols} = {} entries", rows * cols),
                found: format!("{} entries", entries.len()),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> RationalFunction,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn try_from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Result<RationalFunction>,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j)?);
            }
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| RationalFunction::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            RationalFunction::constant(if i == j { 1.0 } else { 0.0 })
        })
    }

    pub fn from_constant(m: &DMatrix<f64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |i, j| {
            RationalFunction::constant(m[(i, j)])
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &RationalFunction {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, f: RationalFunction) {
        self.entries[i * self.cols + j] = f;
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &RationalFunction)> {
        let cols = self.cols;
        self.entries
            .iter()
            .enumerate()
            .map(move |(k, f)| ((k / cols, k % cols), f))
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                expected: format!("{}x{}", self.rows, self.cols),
                found: format!("{}x{}", other.rows, other.cols),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self, tol_root: f64) -> Result<Self> {
        self.check_shape(other)?;
        Self::try_from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).add(other.get(i, j), tol_root)
        })
    }

    pub fn sub(&self, other: &Self, tol_root: f64) -> Result<Self> {
        self.check_shape(other)?;
        Self::try_from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).sub(other.get(i, j), tol_root)
        })
    }

    /// Matrix product.
    pub fn mul(&self, other: &Self, tol_root: f64) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                expected: format!("{} rows", self.cols),
                found: format!("{} rows", other.rows),
            });
        }
        Self::try_from_fn(self.rows, other.cols, |i, j| {
            sum_of_products(
                (0..self.cols).map(|k| (self.get(i, k), other.get(k, j))),
                tol_root,
            )
        })
    }

    /// Multiplies every entry by the polynomial `p`.
    pub fn mul_poly(&self, p: &Polynomial, tol_root: f64) -> Result<Self> {
        Self::try_from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).mul_poly(p, tol_root)
        })
    }

    /// `s * M`.
    pub fn mul_s(&self, tol_root: f64) -> Result<Self> {
        self.mul_poly(&Polynomial::s(), tol_root)
    }

    /// Horizontal concatenation `[self other]`.
    pub fn hcat(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch {
                expected: format!("{} rows", self.rows),
                found: format!("{} rows", other.rows),
            });
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    /// Columns `start..end`.
    pub fn columns(&self, start: usize, end: usize) -> Self {
        Self::from_fn(self.rows, end - start, |i, j| {
            self.get(i, start + j).clone()
        })
    }

    pub fn is_proper(&self) -> bool {
        self.entries.iter().all(RationalFunction::is_proper)
    }

    pub fn is_strictly_proper(&self) -> bool {
        self.entries
            .iter()
            .all(RationalFunction::is_strictly_proper)
    }

    fn first_improper(&self) -> Option<(usize, usize)> {
        self.entries()
            .find(|(_, f)| !f.is_proper())
            .map(|(ij, _)| ij)
    }

    /// Largest pole magnitude over all entries, including complex poles.
    pub fn max_pole_modulus(&self, tol_root: f64) -> f64 {
        self.entries
            .iter()
            .filter(|f| f.den().degree() > 0)
            .flat_map(|f| {
                let r = f.den_roots(tol_root);
                r.real
                    .iter()
                    .map(|x| x.0.abs())
                    .chain(r.complex.iter().map(|x| x.0.norm()))
                    .collect::<Vec<_>>()
            })
            .fold(0.0, f64::max)
    }

    /// Deterministic off-pole real sample points `sigma + k`, `k = 1..=count`,
    /// with `sigma = 1 + max|pole|`.
    pub fn sample_points(&self, count: usize, tol_root: f64) -> Vec<f64> {
        let sigma = 1.0 + self.max_pole_modulus(tol_root);
        (1..=count).map(|k| sigma + k as f64).collect()
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[ {} ]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Distinct real poles over all entries, sorted in descending order
/// (closest to the right half-plane first), merged within `tol_pole`.
pub fn rmat_poles(m: &RationalMatrix, tol_pole: f64, tol_root: f64) -> Result<Vec<f64>> {
    let mut poles: Vec<f64> = Vec::new();
    let mut complex_entries = Vec::new();
    for ((i, j), f) in m.entries() {
        if f.den().degree() == 0 {
            continue;
        }
        let roots = f.den_roots(tol_root);
        if !roots.complex.is_empty() {
            complex_entries.push((i, j));
            continue;
        }
        for &(r, _) in &roots.real {
            if !poles.iter().any(|p| (p - r).abs() <= tol_pole) {
                poles.push(r);
            }
        }
    }
    if !complex_entries.is_empty() {
        return Err(Error::ComplexPolesUnsupported {
            entries: complex_entries,
        });
    }
    poles.sort_by(|a, b| b.total_cmp(a));
    Ok(poles)
}

/// Entrywise `lim_{s -> lambda} (s - lambda) M(s)` at a pole that is simple in
/// every entry.
pub fn residue_at(
    m: &RationalMatrix,
    lambda: f64,
    tol_pole: f64,
    tol_root: f64,
) -> Result<DMatrix<f64>> {
    let mut out = DMatrix::zeros(m.rows, m.cols);
    for ((i, j), f) in m.entries() {
        out[(i, j)] =
            f.residue_at(lambda, tol_pole, tol_root)
                .map_err(|_| Error::RepeatedPole {
                    pole: lambda,
                    row: i,
                    col: j,
                })?;
    }
    Ok(out)
}

/// Entrywise value at infinity of a proper matrix.
pub fn limit_at_infinity(m: &RationalMatrix) -> Result<DMatrix<f64>> {
    if let Some((row, col)) = m.first_improper() {
        return Err(Error::ImproperMatrix { row, col });
    }
    Ok(DMatrix::from_fn(m.rows, m.cols, |i, j| {
        m.get(i, j).limit_at_infinity().unwrap_or(0.0)
    }))
}

/// Entrywise evaluation at a complex point.
pub fn rmat_eval(m: &RationalMatrix, s0: Complex64) -> Result<DMatrix<Complex64>> {
    let mut out = DMatrix::zeros(m.rows, m.cols);
    for ((i, j), f) in m.entries() {
        out[(i, j)] = f.eval(s0).ok_or_else(|| Error::EvaluationAtPole {
            point: s0.to_string(),
            row: i,
            col: j,
        })?;
    }
    Ok(out)
}

/// Rational equality of two same-shape matrices.
///
/// Each entry pair is compared by cross-multiplication `n1*d2 - n2*d1`
/// coefficient-wise relative to the coefficient scale; entries failing that
/// test are compared at [`EQUALITY_SAMPLES`] deterministic off-pole points.
pub fn rmat_equal(a: &RationalMatrix, b: &RationalMatrix, tol_eval: f64) -> Result<bool> {
    a.check_shape(b)?;
    let mut pending = Vec::new();
    for ((i, j), fa) in a.entries() {
        let fb = b.get(i, j);
        if !cross_equal(fa, fb, tol_eval) {
            pending.push((i, j));
        }
    }
    if pending.is_empty() {
        return Ok(true);
    }
    let tol_root = super::rational::DEFAULT_TOL_ROOT;
    let sigma = 1.0
        + a.max_pole_modulus(tol_root)
            .max(b.max_pole_modulus(tol_root));
    for (i, j) in pending {
        for k in 1..=EQUALITY_SAMPLES {
            let s = Complex64::new(sigma + k as f64, 0.0);
            let (Some(x), Some(y)) = (a.get(i, j).eval(s), b.get(i, j).eval(s)) else {
                return Ok(false);
            };
            if (x - y).norm() > tol_eval * 1f64.max(x.norm()).max(y.norm()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn cross_equal(a: &RationalFunction, b: &RationalFunction, tol: f64) -> bool {
    let lhs = poly_mul(a.num(), b.den());
    let rhs = poly_mul(b.num(), a.den());
    let scale = 1f64.max(lhs.max_abs_coeff()).max(rhs.max_abs_coeff());
    (&lhs - &rhs).max_abs_coeff() <= tol * scale
}

/// Builds a rational matrix from per-entry numerator/denominator pairs.
pub fn rmat_from_coeffs(
    rows: usize,
    cols: usize,
    entries: impl IntoIterator<Item = (Polynomial, Polynomial)>,
    tol_root: f64,
) -> Result<RationalMatrix> {
    let entries = entries
        .into_iter()
        .map(|(n, d)| rat_reduce(n, d, tol_root))
        .collect::<Result<Vec<_>>>()?;
    RationalMatrix::new(rows, cols, entries)
}
