use std::fmt;
use std::ops::{Add, Mul, Sub};

use num::{BigRational, One, Signed, Zero};

use super::to_f64;

/// Dense polynomial with exact rational coefficients, index = degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolynomial {
    coeffs: Vec<BigRational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RationalPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        RationalPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `c * y^n`
    pub fn monomial(c: BigRational, n: usize) -> Self {
        let mut v = vec![BigRational::zero(); n + 1];
        v[n] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> BigRational {
        self.coeffs.get(n).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, y: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * y + c;
        }
        acc
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(to_f64).collect()
    }

    pub fn eval_f64(&self, y: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * y + to_f64(c))
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    /// ∫₀¹ p(y) dy
    pub fn integral_unit(&self) -> BigRational {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c / BigRational::from_integer((i + 1).into()))
            .fold(BigRational::zero(), |a, b| a + b)
    }
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn add(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn sub(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn mul(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut v = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        RationalPolynomial::new(v)
    }
}

/// Ascending powers, e.g. `-3/2 + 2·y`.
impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}·")?;
                    }
                    if i == 1 {
                        write!(f, "y")?;
                    } else {
                        write!(f, "y^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn normalizes_trailing_zeros() {
        let p = RationalPolynomial::new(vec![int(1), int(0), int(0)]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(RationalPolynomial::new(vec![int(0)]).degree(), None);
    }

    #[test]
    fn display() {
        let p = RationalPolynomial::new(vec![rat(-3, 2), int(2)]);
        assert_eq!(p.to_string(), "-3/2 + 2·y");
        let q = RationalPolynomial::new(vec![rat(-5, 2), int(6), int(0), int(-4)]);
        assert_eq!(q.to_string(), "-5/2 + 6·y - 4·y^3");
        assert_eq!(RationalPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn arithmetic() {
        let p = RationalPolynomial::new(vec![int(1), int(1)]);
        let q = &p * &p;
        assert_eq!(q, RationalPolynomial::new(vec![int(1), int(2), int(1)]));
        assert!((&q - &q).is_zero());
        assert_eq!(q.eval(&rat(1, 2)), rat(9, 4));
        assert_eq!(q.integral_unit(), rat(7, 3));
        assert_eq!(q.derivative(), RationalPolynomial::new(vec![int(2), int(2)]));
    }
}
