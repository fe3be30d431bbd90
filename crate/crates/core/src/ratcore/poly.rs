//! Real polynomials in ascending-degree coefficient order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg;

/// Polynomial with real coefficients; `coeffs[k]` multiplies `s^k`.
///
/// Trailing (highest-degree) zero coefficients are always stripped, so the
/// zero polynomial has an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1.0)
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `s`.
    pub fn s() -> Self {
        Self::new(vec![0.0, 1.0])
    }

    /// `s - root`.
    pub fn linear(root: f64) -> Self {
        Self::new(vec![-root, 1.0])
    }

    /// Monic polynomial with the given real roots.
    ///
    /// The product is accumulated in double-double arithmetic, so every
    /// coefficient is rounded once. Clustered roots are sensitive to any
    /// extra rounding.
    pub fn from_roots(roots: &[f64]) -> Self {
        let mut acc = vec![(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![(0.0, 0.0); acc.len() + 1];
            for (k, &c) in acc.iter().enumerate() {
                next[k + 1] = dd_add(next[k + 1], c);
                next[k] = dd_add(next[k], dd_scale(c, -r));
            }
            acc = next;
        }
        Self::new(acc.into_iter().map(|(hi, lo)| hi + lo).collect())
    }

    /// Monic polynomial with roots `z` and `conj(z)` for every entry.
    pub fn from_conjugate_pairs(pairs: &[Complex64]) -> Self {
        pairs.iter().fold(Self::one(), |acc, z| {
            poly_mul(&acc, &Self::new(vec![z.norm_sqr(), -2.0 * z.re, 1.0]))
        })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> f64 {
        self.coeffs.last().copied().unwrap_or(0.0)
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn eval(&self, s: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * s + c)
    }

    pub fn eval_complex(&self, s: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * s + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        )
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Divides through by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            0.0 => self.clone(),
            lead => self.scale(1.0 / lead),
        }
    }

    /// Drops high-order coefficients whose magnitude is at most
    /// `rel * max|coeff|`, and zeroes every coefficient below that floor.
    pub fn trimmed(&self, rel: f64) -> Self {
        let floor = rel * self.max_abs_coeff();
        Self::new(
            self.coeffs
                .iter()
                .map(|&c| if c.abs() <= floor { 0.0 } else { c })
                .collect(),
        )
    }

    /// Polynomial long division, returning `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        if divisor.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.coeffs.len() < divisor.coeffs.len() {
            return Ok((Self::zero(), self.clone()));
        }
        let dd = divisor.degree();
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0.0; self.coeffs.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = rem[k + dd] / lead;
            quot[k] = q;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= q * d;
            }
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0.0 {
                continue;
            }
            let sign = if c < 0.0 { "-" } else { "+" };
            if first {
                if c < 0.0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = format_value(c.abs());
            match k {
                0 => write!(f, "{mag}")?,
                _ if mag != "1" => write!(f, "{mag}")?,
                _ => {}
            }
            match k {
                0 => {}
                1 => write!(f, "s")?,
                _ => write!(f, "s^{k}")?,
            }
        }
        Ok(())
    }
}

/// Compact decimal rendering: integers without a fractional part, other
/// values to six decimals with trailing zeros removed.
pub fn format_value(x: f64) -> String {
    let rounded = x.round();
    if (x - rounded).abs() <= 1e-9 * x.abs().max(1.0) {
        return format!("{}", rounded as i64);
    }
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

/// Product of two polynomials.
pub fn poly_mul(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() || b.is_zero() {
        return Polynomial::zero();
    }
    let mut out = vec![0.0; a.coeffs.len() + b.coeffs.len() - 1];
    for (i, &x) in a.coeffs.iter().enumerate() {
        for (j, &y) in b.coeffs.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    Polynomial::new(out)
}

fn poly_add(a: &Polynomial, b: &Polynomial, sign: f64) -> Polynomial {
    let n = a.coeffs.len().max(b.coeffs.len());
    Polynomial::new((0..n).map(|k| a.coeff(k) + sign * b.coeff(k)).collect())
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        poly_add(self, rhs, 1.0)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        poly_add(self, rhs, -1.0)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        poly_mul(self, rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(-1.0)
    }
}

/// Roots of a real polynomial, grouped by multiplicity.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Roots {
    /// Real roots in ascending order with multiplicities.
    pub real: Vec<(f64, usize)>,
    /// Non-real roots (both members of each conjugate pair) with multiplicities.
    pub complex: Vec<(Complex64, usize)>,
}

impl Roots {
    pub fn count(&self) -> usize {
        self.real.iter().map(|r| r.1).sum::<usize>()
            + self.complex.iter().map(|r| r.1).sum::<usize>()
    }

    /// Complex roots with positive imaginary part, one per conjugate pair.
    pub fn upper_complex(&self) -> impl Iterator<Item = &(Complex64, usize)> {
        self.complex.iter().filter(|(z, _)| z.im > 0.0)
    }
}

/// Roots of `p` via eigenvalues of its balanced companion matrix, polished by
/// Newton steps.
///
/// Eigenvalues closer than `sqrt(tol_root) * (1 + |z|)` are merged into one
/// root of higher multiplicity, reported at the cluster mean; a cluster whose
/// imaginary part is within the same bound is treated as real.
pub fn poly_real_roots(p: &Polynomial, tol_root: f64) -> Result<Roots> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let raw = raw_roots(p);
    let mut roots = cluster_roots(&raw, tol_root.sqrt());
    // A k-fold root is a simple root of the (k-1)-th derivative.
    let polish_at = |z: Complex64, k: usize| {
        let target = (1..k).fold(p.clone(), |q, _| q.derivative());
        polish(&target, &target.derivative(), z)
    };
    for (r, k) in roots.real.iter_mut() {
        *r = polish_at(Complex64::new(*r, 0.0), *k).re;
    }
    for (z, k) in roots.complex.iter_mut() {
        *z = polish_at(*z, *k);
    }
    roots.real.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(roots)
}

fn raw_roots(p: &Polynomial) -> Vec<Complex64> {
    // Leading zeros at s = 0 are peeled off exactly.
    let zeros_at_origin = p.coeffs.iter().take_while(|&&c| c == 0.0).count();
    let reduced = Polynomial::new(p.coeffs[zeros_at_origin..].to_vec());
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros_at_origin];
    let n = reduced.degree();
    if n == 0 {
        return roots;
    }
    let monic = reduced.monic();
    if n == 1 {
        roots.push(Complex64::new(-monic.coeff(0), 0.0));
        return roots;
    }
    let mut companion = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        companion[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        companion[(i, n - 1)] = -monic.coeff(i);
    }
    balance(&mut companion);
    roots.extend(linalg::eigenvalues(&companion));
    roots
}

/// Parlett–Reinsch diagonal balancing, in place.
fn balance(m: &mut DMatrix<f64>) {
    const RADIX: f64 = 2.0;
    let n = m.nrows();
    let mut converged = false;
    while !converged {
        converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += m[(j, i)].abs();
                    r += m[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= RADIX * RADIX;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= RADIX * RADIX;
            }
            if (c + r) / f < 0.95 * s {
                converged = false;
                for j in 0..n {
                    m[(i, j)] /= f;
                    m[(j, i)] *= f;
                }
            }
        }
    }
}

fn polish(p: &Polynomial, dp: &Polynomial, mut z: Complex64) -> Complex64 {
    let mut residual = p.eval_complex(z).norm();
    for _ in 0..8 {
        let d = dp.eval_complex(z);
        if d.norm() == 0.0 || residual == 0.0 {
            break;
        }
        let candidate = z - p.eval_complex(z) / d;
        let r = p.eval_complex(candidate).norm();
        // Also stops on NaN.
        if r.partial_cmp(&residual) != Some(std::cmp::Ordering::Less) {
            break;
        }
        z = candidate;
        residual = r;
    }
    z
}

fn cluster_roots(raw: &[Complex64], radius: f64) -> Roots {
    let near =
        |a: Complex64, b: Complex64| (a - b).norm() <= radius * (1.0 + a.norm().max(b.norm()));
    // Single-linkage grouping.
    let mut group: Vec<usize> = (0..raw.len()).collect();
    fn find(group: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while group[r] != r {
            r = group[r];
        }
        group[i] = r;
        r
    }
    for i in 0..raw.len() {
        for j in (i + 1)..raw.len() {
            if near(raw[i], raw[j]) {
                let (a, b) = (find(&mut group, i), find(&mut group, j));
                group[a.max(b)] = a.min(b);
            }
        }
    }
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    let mut seen: Vec<usize> = Vec::new();
    for (i, &z) in raw.iter().enumerate() {
        let root = find(&mut group, i);
        match seen.iter().position(|&s| s == root) {
            Some(k) => {
                clusters[k].0 += z;
                clusters[k].1 += 1;
            }
            None => {
                seen.push(root);
                clusters.push((z, 1));
            }
        }
    }
    let mut roots = Roots::default();
    for (sum, k) in clusters {
        let z = sum / k as f64;
        if z.im.abs() <= radius * (1.0 + z.norm()) {
            roots.real.push((z.re, k));
        } else {
            roots.complex.push((z, k));
        }
    }
    roots.real.sort_by(|a, b| a.0.total_cmp(&b.0));
    roots
        .complex
        .sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    roots
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn dd_add(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    let (s, e) = two_sum(a.0, b.0);
    two_sum(s, e + a.1 + b.1)
}

fn dd_scale(a: (f64, f64), x: f64) -> (f64, f64) {
    let p = a.0 * x;
    let e = a.0.mul_add(x, -p) + a.1 * x;
    two_sum(p, e)
}
