//! Exact integer polynomials and truncated power series.

use std::fmt::{self, Write as _};
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("divisor has zero constant term")]
    ZeroConstantTerm,
    #[error("division is not exact over the integers")]
    Inexact,
    #[error("truncation degrees differ: {0} vs {1}")]
    DegreeMismatch(usize, usize),
}

/// A polynomial with exact integer coefficients; `coeffs[d]` is the
/// coefficient of `x^d`. Trailing zeros are trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![BigInt::one()] }
    }

    /// `c · x^d`.
    pub fn monomial(c: i64, d: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = BigInt::from(c);
        Poly::new(coeffs)
    }

    /// `1 - x^d`.
    pub fn one_minus_x_pow(d: usize) -> Self {
        &Poly::one() - &Poly::monomial(1, d)
    }

    /// `1 + x + … + x^d`.
    pub fn geometric(d: usize) -> Self {
        Poly::new(vec![BigInt::one(); d + 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, d: usize) -> BigInt {
        self.coeffs.get(d).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn product<'a>(factors: impl IntoIterator<Item = &'a Poly>) -> Poly {
        factors.into_iter().fold(Poly::one(), |acc, f| &acc * f)
    }

    /// Exact long division; fails unless `divisor` divides `self` in ℤ[x].
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly, SeriesError> {
        let Some(dd) = divisor.degree() else {
            return Err(SeriesError::Inexact);
        };
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let Some(top) = self.degree() else {
            return Ok(Poly::zero());
        };
        if top < dd {
            return Err(SeriesError::Inexact);
        }
        let mut quot = vec![BigInt::zero(); top - dd + 1];
        for q in (0..=top - dd).rev() {
            let c = &rem[q + dd];
            if c.is_zero() {
                continue;
            }
            if !(c % lead).is_zero() {
                return Err(SeriesError::Inexact);
            }
            let factor = c / lead;
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[q + i] -= &factor * dc;
            }
            quot[q] = factor;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(SeriesError::Inexact);
        }
        Ok(Poly::new(quot))
    }

    pub fn truncate(&self, degree: usize) -> TruncatedSeries {
        TruncatedSeries::from_poly(self, degree)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|d| self.coeff(d) + rhs.coeff(d)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|d| self.coeff(d) - rhs.coeff(d)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match d {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}")?;
                    }
                    if d == 1 {
                        f.write_str("x")?;
                    } else {
                        write!(f, "x^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// A power series known exactly up to `x^degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(degree: usize) -> Self {
        TruncatedSeries { coeffs: vec![BigInt::zero(); degree + 1] }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>, degree: usize) -> Self {
        coeffs.resize(degree + 1, BigInt::zero());
        TruncatedSeries { coeffs }
    }

    pub fn from_u64(coeffs: &[u64]) -> Self {
        assert!(!coeffs.is_empty());
        TruncatedSeries { coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect() }
    }

    pub fn from_poly(p: &Poly, degree: usize) -> Self {
        Self::from_coeffs(p.coeffs.iter().take(degree + 1).cloned().collect(), degree)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> &BigInt {
        &self.coeffs[d]
    }

    pub(crate) fn coeff_mut(&mut self, d: usize) -> &mut BigInt {
        &mut self.coeffs[d]
    }

    fn same_degree(&self, other: &Self) -> Result<(), SeriesError> {
        if self.degree() != other.degree() {
            return Err(SeriesError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.same_degree(other)?;
        let d = self.degree();
        let mut out = vec![BigInt::zero(); d + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=d - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// `self / divisor` up to the truncation degree. The constant term of the
    /// divisor must be nonzero and every quotient coefficient must be integral.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, SeriesError> {
        self.same_degree(divisor)?;
        let c0 = &divisor.coeffs[0];
        if c0.is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let d = self.degree();
        let mut out: Vec<BigInt> = Vec::with_capacity(d + 1);
        for k in 0..=d {
            let mut acc = self.coeffs[k].clone();
            for i in 1..=k {
                acc -= &divisor.coeffs[i] * &out[k - i];
            }
            if !(&acc % c0).is_zero() {
                return Err(SeriesError::Inexact);
            }
            out.push(acc / c0);
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Expands `numer / ∏ denominators` to degree `degree`.
    pub fn expand_rational(numer: &Poly, denominators: &[Poly], degree: usize) -> Result<Self, SeriesError> {
        let mut s = TruncatedSeries::from_poly(numer, degree);
        for den in denominators {
            s = s.div_exact(&TruncatedSeries::from_poly(den, degree))?;
        }
        Ok(s)
    }

    /// `degree<TAB>coefficient` lines, degree ascending.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (d, c) in self.coeffs.iter().enumerate() {
            let _ = writeln!(out, "{d}\t{c}");
        }
        out
    }
}

/// `(1+x)(1+x+x²)⋯(1+x+⋯+x^n)`: the length generating polynomial of the
/// finite Coxeter group A_n.
pub fn r0free_polynomial(n: usize) -> Poly {
    Poly::product(&(1..=n).map(Poly::geometric).collect::<Vec<_>>())
}

/// The Poincaré series of Ã_n,
/// `∏_{i=1}^{n}(1+⋯+x^i) / ∏_{i=1}^{n}(1-x^i)`, to degree `degree`.
pub fn poincare_affine_a(n: usize, degree: usize) -> TruncatedSeries {
    let dens: Vec<Poly> = (1..=n).map(Poly::one_minus_x_pow).collect();
    TruncatedSeries::expand_rational(&r0free_polynomial(n), &dens, degree)
        .expect("denominators 1 - x^i have unit constant term")
}
