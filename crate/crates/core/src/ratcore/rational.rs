//! Reduced real rational functions `num(s) / den(s)`.

use std::fmt;

use num_complex::Complex64;

use super::poly::{poly_mul, poly_real_roots, Polynomial, Roots};
use crate::error::{Error, Result};

/// Coefficients at or below this fraction of the largest coefficient of the
/// pair are roundoff and are zeroed during reduction.
pub const NOISE_FLOOR: f64 = 1e-12;

/// Default root-cancellation tolerance.
pub const DEFAULT_TOL_ROOT: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Properness {
    StrictlyProper,
    /// Proper with a nonzero value at infinity.
    Biproper,
    Improper,
}

/// A rational function in reduced form with a monic denominator.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn zero() -> Self {
        Self {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: f64) -> Self {
        Self {
            num: Polynomial::constant(c),
            den: Polynomial::one(),
        }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        Self {
            num: p,
            den: Polynomial::one(),
        }
    }

    /// `gain / (s - pole)`.
    pub fn first_order(gain: f64, pole: f64) -> Self {
        if gain == 0.0 {
            return Self::zero();
        }
        Self {
            num: Polynomial::constant(gain),
            den: Polynomial::linear(pole),
        }
    }

    /// Reduces `num / den` with the default root tolerance.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        rat_reduce(num, den, DEFAULT_TOL_ROOT)
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn properness(&self) -> Properness {
        if self.num.is_zero() || self.num.degree() < self.den.degree() {
            Properness::StrictlyProper
        } else if self.num.degree() == self.den.degree() {
            Properness::Biproper
        } else {
            Properness::Improper
        }
    }

    pub fn is_proper(&self) -> bool {
        self.properness() != Properness::Improper
    }

    pub fn is_strictly_proper(&self) -> bool {
        self.properness() == Properness::StrictlyProper
    }

    /// `deg(den) - deg(num)`; `None` for the zero function.
    pub fn relative_degree(&self) -> Option<isize> {
        (!self.is_zero()).then(|| self.den.degree() as isize - self.num.degree() as isize)
    }

    /// Value as `s -> infinity`; errors on improper functions.
    pub fn limit_at_infinity(&self) -> Option<f64> {
        match self.properness() {
            Properness::StrictlyProper => Some(0.0),
            Properness::Biproper => Some(self.num.leading() / self.den.leading()),
            Properness::Improper => None,
        }
    }

    pub fn den_roots(&self, tol_root: f64) -> Roots {
        poly_real_roots(&self.den, tol_root).unwrap_or_default()
    }

    pub fn eval(&self, s: Complex64) -> Option<Complex64> {
        let d = self.den.eval_complex(s);
        let scale: f64 = self
            .den
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| c.abs() * s.norm().powi(k as i32))
            .sum();
        if d.norm() <= 1e-14 * scale {
            return None;
        }
        Some(self.num.eval_complex(s) / d)
    }

    pub fn eval_real(&self, s: f64) -> Option<f64> {
        self.eval(Complex64::new(s, 0.0)).map(|z| z.re)
    }

    /// Residue at a simple pole `lambda`, or 0 when `lambda` is not a pole.
    ///
    /// Poles within `tol_pole` of `lambda` are considered to be at `lambda`.
    pub fn residue_at(
        &self,
        lambda: f64,
        tol_pole: f64,
        tol_root: f64,
    ) -> std::result::Result<f64, usize> {
        if self.is_zero() || self.den.degree() == 0 {
            return Ok(0.0);
        }
        let roots = self.den_roots(tol_root);
        let hit = roots
            .real
            .iter()
            .filter(|(r, _)| (r - lambda).abs() <= tol_pole)
            .min_by(|a, b| (a.0 - lambda).abs().total_cmp(&(b.0 - lambda).abs()));
        match hit {
            None => Ok(0.0),
            Some(&(_, k)) if k > 1 => Err(k),
            Some(&(root, _)) => {
                // num(r) / den'(r) evaluated at the computed root.
                Ok(self.num.eval(root) / self.den.derivative().eval(root))
            }
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.scale(-1.0),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: f64) -> Self {
        if c == 0.0 {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, rhs: &Self, tol_root: f64) -> Result<Self> {
        if self.is_zero() {
            return Ok(rhs.clone());
        }
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        if self.den == rhs.den {
            return rat_reduce(&self.num + &rhs.num, self.den.clone(), tol_root);
        }
        let (common, a, b) = split_common_factor(&self.den, &rhs.den, tol_root);
        let num = &poly_mul(&self.num, &b) + &poly_mul(&rhs.num, &a);
        let den = poly_mul(&common, &poly_mul(&a, &b));
        rat_reduce(num, den, tol_root)
    }

    pub fn sub(&self, rhs: &Self, tol_root: f64) -> Result<Self> {
        self.add(&rhs.neg(), tol_root)
    }

    pub fn mul(&self, rhs: &Self, tol_root: f64) -> Result<Self> {
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero());
        }
        rat_reduce(
            poly_mul(&self.num, &rhs.num),
            poly_mul(&self.den, &rhs.den),
            tol_root,
        )
    }

    pub fn mul_poly(&self, p: &Polynomial, tol_root: f64) -> Result<Self> {
        rat_reduce(poly_mul(&self.num, p), self.den.clone(), tol_root)
    }

    pub fn div(&self, rhs: &Self, tol_root: f64) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        rat_reduce(
            poly_mul(&self.num, &rhs.den),
            poly_mul(&self.den, &rhs.num),
            tol_root,
        )
    }

    pub fn recip(&self, tol_root: f64) -> Result<Self> {
        Self::constant(1.0).div(self, tol_root)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Reduces `num / den`: cancels common roots within `tol_root`, makes the
/// denominator monic and rescales the numerator to match.
pub fn rat_reduce(num: Polynomial, den: Polynomial, tol_root: f64) -> Result<RationalFunction> {
    let den = den.trimmed(NOISE_FLOOR);
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let lead = den.leading();
    let den = den.scale(1.0 / lead);
    let num = num.scale(1.0 / lead);
    let floor = NOISE_FLOOR * num.max_abs_coeff().max(den.max_abs_coeff());
    let num = Polynomial::new(
        num.coeffs()
            .iter()
            .map(|&c| if c.abs() <= floor { 0.0 } else { c })
            .collect(),
    );
    if num.is_zero() {
        return Ok(RationalFunction::zero());
    }
    if den.degree() == 0 || num.degree() == 0 {
        return Ok(RationalFunction { num, den });
    }
    let num_roots = poly_real_roots(&num, tol_root)?;
    let den_roots = poly_real_roots(&den, tol_root)?;
    let split = match_roots(&num_roots, &den_roots, tol_root);
    if split.common_count == 0 {
        return Ok(RationalFunction { num, den });
    }
    // Divide the shared factor out instead of rebuilding from roots, so the
    // remaining coefficients keep their original accuracy.
    let common = split.common.rebuild();
    let num = num.div_rem(&common)?.0;
    let den = den.div_rem(&common)?.0;
    Ok(RationalFunction { num, den })
}

/// Common multiple of monic denominators, kept as distinct factor
/// polynomials with multiplicities so no roots are recomputed.
///
/// Factors are matched by coefficients, which is exact for the shared row or
/// matrix denominators that arise in practice; other common roots are left to
/// the final reduction.
#[derive(Debug, Clone, Default)]
pub(crate) struct CommonDenominator {
    factors: Vec<(Polynomial, usize)>,
}

fn same_poly(a: &Polynomial, b: &Polynomial) -> bool {
    let scale = a.max_abs_coeff().max(b.max_abs_coeff());
    a.degree() == b.degree() && (a - b).max_abs_coeff() <= 1e-12 * scale
}

fn count_factors<'a>(dens: &[&'a Polynomial]) -> Vec<(&'a Polynomial, usize)> {
    let mut counts: Vec<(&Polynomial, usize)> = Vec::new();
    for &d in dens.iter().filter(|d| d.degree() > 0) {
        match counts.iter_mut().find(|(f, _)| same_poly(f, d)) {
            Some(entry) => entry.1 += 1,
            None => counts.push((d, 1)),
        }
    }
    counts
}

impl CommonDenominator {
    /// Makes the product of `dens` divide this multiple.
    pub(crate) fn include(&mut self, dens: &[&Polynomial]) {
        for (d, k) in count_factors(dens) {
            match self.factors.iter_mut().find(|(f, _)| same_poly(f, d)) {
                Some(entry) => entry.1 = entry.1.max(k),
                None => self.factors.push((d.clone(), k)),
            }
        }
    }

    /// The multiple divided by the product of `dens`.
    pub(crate) fn cofactor(&self, dens: &[&Polynomial]) -> Polynomial {
        let used = count_factors(dens);
        self.factors.iter().fold(Polynomial::one(), |acc, (f, k)| {
            let taken = used
                .iter()
                .find(|(d, _)| same_poly(d, f))
                .map_or(0, |u| u.1);
            (taken..*k).fold(acc, |a, _| poly_mul(&a, f))
        })
    }

    pub(crate) fn poly(&self) -> Polynomial {
        self.cofactor(&[])
    }
}

/// `sum_k a_k * b_k` over one common denominator, reduced once.
pub(crate) fn sum_of_products<'a>(
    terms: impl IntoIterator<Item = (&'a RationalFunction, &'a RationalFunction)>,
    tol_root: f64,
) -> Result<RationalFunction> {
    let terms: Vec<_> = terms
        .into_iter()
        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
        .collect();
    if terms.is_empty() {
        return Ok(RationalFunction::zero());
    }
    let mut common = CommonDenominator::default();
    for (a, b) in &terms {
        common.include(&[&a.den, &b.den]);
    }
    let num = terms.iter().fold(Polynomial::zero(), |acc, (a, b)| {
        let term = poly_mul(
            &poly_mul(&a.num, &b.num),
            &common.cofactor(&[&a.den, &b.den]),
        );
        &acc + &term
    });
    rat_reduce(num, common.poly(), tol_root)
}

/// Root multiset with explicit multiplicities, real and upper-half complex.
#[derive(Debug, Clone, Default)]
struct RootSet {
    real: Vec<(f64, usize)>,
    pairs: Vec<(Complex64, usize)>,
}

impl RootSet {
    fn from_roots(r: &Roots) -> Self {
        Self {
            real: r.real.clone(),
            pairs: r.upper_complex().copied().collect(),
        }
    }

    fn rebuild(&self) -> Polynomial {
        let real: Vec<f64> = self
            .real
            .iter()
            .flat_map(|&(r, k)| std::iter::repeat_n(r, k))
            .collect();
        let pairs: Vec<Complex64> = self
            .pairs
            .iter()
            .flat_map(|&(z, k)| std::iter::repeat_n(z, k))
            .collect();
        poly_mul(
            &Polynomial::from_roots(&real),
            &Polynomial::from_conjugate_pairs(&pairs),
        )
    }
}

struct RootSplit {
    common: RootSet,
    common_count: usize,
    left_rest: RootSet,
    right_rest: RootSet,
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
}

fn match_roots(left: &Roots, right: &Roots, tol: f64) -> RootSplit {
    let mut l = RootSet::from_roots(left);
    let mut r = RootSet::from_roots(right);
    let mut common = RootSet::default();
    let mut count = 0;
    for (lz, lk) in l.real.iter_mut() {
        if let Some((rz, rk)) = r
            .real
            .iter_mut()
            .filter(|(rz, rk)| *rk > 0 && close((*lz).into(), (*rz).into(), tol))
            .min_by(|a, b| (a.0 - *lz).abs().total_cmp(&(b.0 - *lz).abs()))
        {
            let k = (*lk).min(*rk);
            common.real.push((*rz, k));
            *lk -= k;
            *rk -= k;
            count += k;
        }
    }
    for (lz, lk) in l.pairs.iter_mut() {
        if let Some((rz, rk)) = r
            .pairs
            .iter_mut()
            .filter(|(rz, rk)| *rk > 0 && close(*lz, *rz, tol))
            .min_by(|a, b| (a.0 - *lz).norm().total_cmp(&(b.0 - *lz).norm()))
        {
            let k = (*lk).min(*rk);
            common.pairs.push((*rz, k));
            *lk -= k;
            *rk -= k;
            count += 2 * k;
        }
    }
    l.real.retain(|x| x.1 > 0);
    l.pairs.retain(|x| x.1 > 0);
    r.real.retain(|x| x.1 > 0);
    r.pairs.retain(|x| x.1 > 0);
    RootSplit {
        common,
        common_count: count,
        left_rest: l,
        right_rest: r,
    }
}

/// Splits two monic denominators as `a_full = g * a`, `b_full = g * b`.
fn split_common_factor(
    a_full: &Polynomial,
    b_full: &Polynomial,
    tol_root: f64,
) -> (Polynomial, Polynomial, Polynomial) {
    if a_full.degree() == 0 || b_full.degree() == 0 {
        return (Polynomial::one(), a_full.clone(), b_full.clone());
    }
    let (Ok(ar), Ok(br)) = (
        poly_real_roots(a_full, tol_root),
        poly_real_roots(b_full, tol_root),
    ) else {
        return (Polynomial::one(), a_full.clone(), b_full.clone());
    };
    let split = match_roots(&ar, &br, tol_root);
    if split.common_count == 0 {
        return (Polynomial::one(), a_full.clone(), b_full.clone());
    }
    (
        split.common.rebuild(),
        split.left_rest.rebuild().scale(a_full.leading()),
        split.right_rest.rebuild().scale(b_full.leading()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[f64]) -> Polynomial {
        Polynomial::new(c.to_vec())
    }

    #[test]
    fn exact_cancellation() {
        let num = Polynomial::from_roots(&[-1.0, -2.0]);
        let r = rat_reduce(num, Polynomial::linear(-2.0), 1e-8).unwrap();
        assert_eq!(r.den(), &Polynomial::one());
        assert!((r.num().coeff(0) - 1.0).abs() < 1e-12);
        assert!((r.num().coeff(1) - 1.0).abs() < 1e-12);
        assert_eq!(r.num().degree(), 1);
    }

    #[test]
    fn proportional_is_constant() {
        let r = rat_reduce(p(&[4.0, 2.0]), p(&[2.0, 1.0]), 1e-8).unwrap();
        assert_eq!(r.den().degree(), 0);
        assert!((r.num().coeff(0) - 2.0).abs() < 1e-12);
        assert_eq!(r.num().degree(), 0);
    }

    #[test]
    fn zero_denominator() {
        assert_eq!(
            rat_reduce(p(&[1.0]), Polynomial::zero(), 1e-8),
            Err(Error::ZeroDenominator)
        );
    }

    #[test]
    fn denominator_made_monic() {
        let r = rat_reduce(p(&[3.0]), p(&[2.0, 2.0]), 1e-8).unwrap();
        assert_eq!(r.den().coeffs(), &[1.0, 1.0]);
        assert_eq!(r.num().coeffs(), &[1.5]);
    }

    #[test]
    fn complex_common_factor_cancels() {
        let q = p(&[2.0, 2.0, 1.0]); // s^2 + 2s + 2, roots -1 +- i
        let num = poly_mul(&q, &p(&[3.0, 1.0]));
        let den = poly_mul(&q, &Polynomial::from_roots(&[-1.0, -5.0]));
        let r = rat_reduce(num, den, 1e-8).unwrap();
        assert_eq!(r.num().degree(), 1);
        assert_eq!(r.den().degree(), 2);
        assert!((r.eval_real(1.0).unwrap() - 4.0 / 12.0).abs() < 1e-12);
    }

    #[test]
    fn addition_uses_common_denominator() {
        let a = RationalFunction::first_order(1.0, -1.0);
        let b = RationalFunction::first_order(-1.0, -1.0);
        assert!(a.add(&b, 1e-8).unwrap().is_zero());
        // 1/((s+1)(s+2)) + 1/(s+1) = (s+3)/((s+1)(s+2))
        let c = RationalFunction::new(p(&[1.0]), Polynomial::from_roots(&[-1.0, -2.0])).unwrap();
        let sum = c.add(&a, 1e-8).unwrap();
        assert_eq!(sum.den().degree(), 2);
        assert!((sum.eval_real(0.0).unwrap() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn properness() {
        let s = RationalFunction::from_poly(Polynomial::s());
        assert_eq!(s.properness(), Properness::Improper);
        assert_eq!(s.limit_at_infinity(), None);
        let f = RationalFunction::new(p(&[0.0, 2.0]), p(&[4.0, 1.0])).unwrap();
        assert_eq!(f.properness(), Properness::Biproper);
        assert_eq!(f.limit_at_infinity(), Some(2.0));
        assert!(RationalFunction::zero().is_strictly_proper());
    }

    #[test]
    fn residues() {
        let f = RationalFunction::first_order(1.0, -2.0);
        assert!((f.residue_at(-2.0, 1e-6, 1e-8).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(f.residue_at(-3.0, 1e-6, 1e-8), Ok(0.0));
        let double =
            RationalFunction::new(p(&[1.0]), Polynomial::from_roots(&[-1.0, -1.0])).unwrap();
        assert_eq!(double.residue_at(-1.0, 1e-6, 1e-8), Err(2));
    }
}
