use num::complex::Complex64;

/// Truncated Laurent series Σ_{e ≥ val} c_e t^e, known exactly (up to rounding)
/// for exponents below `prec`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeries {
    val: i32,
    prec: i32,
    coeffs: Vec<Complex64>,
}

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

impl LaurentSeries {
    pub fn zero(prec: i32) -> Self {
        LaurentSeries { val: prec, prec, coeffs: Vec::new() }
    }

    pub fn constant(c: Complex64, prec: i32) -> Self {
        Self::from_coeffs(0, prec, vec![c])
    }

    /// c·t
    pub fn linear(c: Complex64, prec: i32) -> Self {
        Self::from_coeffs(1, prec, vec![c])
    }

    /// Coefficients starting at exponent `val`, truncated or zero-padded to `prec`.
    pub fn from_coeffs(val: i32, prec: i32, mut coeffs: Vec<Complex64>) -> Self {
        let len = (prec - val).max(0) as usize;
        coeffs.resize(len, ZERO);
        let mut s = LaurentSeries { val, prec, coeffs };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| *c != ZERO);
        match lead {
            Some(0) => {}
            Some(p) => {
                self.coeffs.drain(..p);
                self.val += p as i32;
            }
            None => {
                self.coeffs.clear();
                self.val = self.prec;
            }
        }
    }

    pub fn valuation(&self) -> i32 {
        self.val
    }

    pub fn precision(&self) -> i32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of t^e (zero below the valuation). Panics if e ≥ precision.
    pub fn coeff(&self, e: i32) -> Complex64 {
        assert!(e < self.prec, "coefficient t^{e} not known (precision {})", self.prec);
        if e < self.val {
            ZERO
        } else {
            self.coeffs[(e - self.val) as usize]
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let prec = self.prec.min(rhs.prec);
        let val = self.val.min(rhs.val).min(prec);
        let coeffs = (val..prec)
            .map(|e| {
                let a = if e >= self.val { self.coeffs[(e - self.val) as usize] } else { ZERO };
                let b = if e >= rhs.val { rhs.coeffs[(e - rhs.val) as usize] } else { ZERO };
                a + b
            })
            .collect();
        Self::from_coeffs(val, prec, coeffs)
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            val: self.val,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_coeffs(self.val, self.prec, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            let prec = (self.prec + rhs.val).min(rhs.prec + self.val);
            return Self::zero(prec);
        }
        let val = self.val + rhs.val;
        let prec = (self.prec + rhs.val).min(rhs.prec + self.val);
        let n = (prec - val).max(0) as usize;
        let mut out = vec![ZERO; n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            for (j, b) in rhs.coeffs.iter().enumerate().take(n - i) {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(val, prec, out)
    }

    /// Multiplicative inverse; `None` if the series is (numerically) zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.coeffs.len();
        let a0 = self.coeffs[0];
        let mut b = vec![ZERO; n];
        b[0] = a0.inv();
        for m in 1..n {
            let mut s = ZERO;
            for i in 1..=m {
                s += self.coeffs[i] * b[m - i];
            }
            b[m] = -s * b[0];
        }
        Some(Self::from_coeffs(-self.val, self.prec - 2 * self.val, b))
    }

    pub fn div(&self, rhs: &Self) -> Option<Self> {
        Some(self.mul(&rhs.inv()?))
    }

    /// e^{c₀ + c₁t}, exact to the given precision.
    pub fn exp_linear(c0: Complex64, c1: Complex64, prec: i32) -> Self {
        let n = prec.max(0) as usize;
        let mut coeffs = Vec::with_capacity(n);
        let mut term = c0.exp();
        for m in 0..n {
            coeffs.push(term);
            term = term * c1 / (m as f64 + 1.0);
        }
        Self::from_coeffs(0, prec, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn geometric_inverse() {
        // 1/(t − t²) = t⁻¹(1 + t + t² + …)
        let s = LaurentSeries::from_coeffs(1, 10, vec![c(1.0), c(-1.0)]);
        let inv = s.inv().unwrap();
        assert_eq!(inv.valuation(), -1);
        assert_eq!(inv.precision(), 8);
        for e in -1..8 {
            assert!((inv.coeff(e) - c(1.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn pole_cancellation() {
        // (e^t − 1)/t − 1 = t/2 + t²/6 + …
        let e = LaurentSeries::exp_linear(c(0.0), c(1.0), 12);
        let num = e.sub(&LaurentSeries::constant(c(1.0), 12));
        let q = num.div(&LaurentSeries::linear(c(1.0), 12)).unwrap();
        let r = q.sub(&LaurentSeries::constant(c(1.0), 12));
        assert_eq!(r.valuation(), 1);
        assert!((r.coeff(1) - c(0.5)).norm() < 1e-15);
        assert!((r.coeff(2) - c(1.0 / 6.0)).norm() < 1e-15);
    }

    #[test]
    fn product_precision() {
        let a = LaurentSeries::from_coeffs(-2, 5, vec![c(1.0)]);
        let b = LaurentSeries::from_coeffs(1, 6, vec![c(2.0)]);
        let p = a.mul(&b);
        assert_eq!(p.valuation(), -1);
        assert_eq!(p.precision(), 4);
        assert_eq!(p.coeff(-1), c(2.0));
    }
}
