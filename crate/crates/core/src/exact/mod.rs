//! Exact rational arithmetic: Pochhammer symbols, terminating hypergeometric
//! sums, dissection coefficients, polynomials and Euler products.

mod euler;
mod hyper;
mod poly;

pub use euler::{euler_product, primes_up_to, EulerKind, EulerProduct};
pub use hyper::{
    c_coeff, hyp2f1_chu_vandermonde, hyp2f1_direct, hyp3f2_closed_low, hyp3f2_closed_m0,
    hyp3f2_closed_top, hyp3f2_terminating, hyp3f2_unit, lemma_half_closed, lemma_value_half,
    pochhammer,
};
pub use poly::RationalPolynomial;

pub use num::BigRational;
use num::{BigInt, One, ToPrimitive, Zero};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// n!! for n ≥ -1 (with (-1)!! = 0!! = 1).
pub fn double_factorial(n: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut i = n;
    while i > 1 {
        acc *= BigInt::from(i);
        i -= 2;
    }
    acc
}

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn sign(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_combinatorics() {
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(double_factorial(7), BigInt::from(105));
        assert_eq!(double_factorial(-1), BigInt::from(1));
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(rat(2, -4), rat(-1, 2));
    }
}
