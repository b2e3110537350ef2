use num::{BigInt, BigRational, One, Zero};

use super::{binomial, factorial, int, sign};
use crate::error::{Error, Result};

/// Rising factorial (a)_n = a(a+1)…(a+n−1).
pub fn pochhammer(a: &BigRational, n: u32) -> BigRational {
    let mut acc = BigRational::one();
    let mut t = a.clone();
    for _ in 0..n {
        acc *= &t;
        t += BigRational::one();
    }
    acc
}

fn check_denominator(c: &BigRational, n: u32) -> Result<()> {
    let mut t = c.clone();
    for i in 0..n {
        if t.is_zero() {
            return Err(Error::Domain(format!("(c)_{n} vanishes at factor {i}")));
        }
        t += BigRational::one();
    }
    Ok(())
}

/// ₂F₁(−n, b; c; 1) = (c−b)_n / (c)_n.
pub fn hyp2f1_chu_vandermonde(n: u32, b: &BigRational, c: &BigRational) -> Result<BigRational> {
    check_denominator(c, n)?;
    Ok(pochhammer(&(c - b), n) / pochhammer(c, n))
}

/// ₂F₁(−n, b; c; 1) as the direct terminating sum.
pub fn hyp2f1_direct(n: u32, b: &BigRational, c: &BigRational) -> Result<BigRational> {
    check_denominator(c, n)?;
    let minus_n = int(-(n as i64));
    Ok(hyp_sum(&[minus_n, b.clone()], std::slice::from_ref(c), n))
}

/// Σ_{j=0}^{terms} Π(a_i)_j / (Π(b_i)_j · j!), built term by term.
fn hyp_sum(a: &[BigRational], b: &[BigRational], terms: u32) -> BigRational {
    let mut term = BigRational::one();
    let mut acc = BigRational::zero();
    for j in 0..=terms {
        acc += &term;
        let jj = int(j as i64);
        for ai in a {
            term *= ai + &jj;
        }
        for bi in b {
            term /= bi + &jj;
        }
        term /= &jj + BigRational::one();
        if term.is_zero() {
            break;
        }
    }
    acc
}

/// ₃F₂(a₁,a₂,a₃; b₁,b₂; 1) where a₁ = −n terminates the sum.
pub fn hyp3f2_unit(n: u32, a: [&BigRational; 2], b: [&BigRational; 2]) -> Result<BigRational> {
    for bi in b {
        check_denominator(bi, n)?;
    }
    let minus_n = int(-(n as i64));
    Ok(hyp_sum(
        &[minus_n, a[0].clone(), a[1].clone()],
        &[b[0].clone(), b[1].clone()],
        n,
    ))
}

/// ₃F₂(1−k, k+2, m+1; m+2, 2; 1) by direct summation of k terms.
pub fn hyp3f2_terminating(k: u32, m: u32) -> Result<BigRational> {
    if k == 0 {
        return Err(Error::Domain("k = 0 gives a nonterminating series".into()));
    }
    hyp3f2_unit(
        k - 1,
        [&int(k as i64 + 2), &int(m as i64 + 1)],
        [&int(m as i64 + 2), &int(2)],
    )
}

/// ₃F₂(1−k, k+2, 1/2; 3/2, 2; 1) by direct summation.
pub fn lemma_value_half(k: u32) -> Result<BigRational> {
    if k == 0 {
        return Err(Error::Domain("k must be positive".into()));
    }
    let half = BigRational::new(1.into(), 2.into());
    let three_half = BigRational::new(3.into(), 2.into());
    hyp3f2_unit(k - 1, [&int(k as i64 + 2), &half], [&three_half, &int(2)])
}

/// Closed form of [`lemma_value_half`]: 1/(k+1) for even k, 1/k for odd k.
pub fn lemma_half_closed(k: u32) -> BigRational {
    let k = k as i64;
    if k % 2 == 0 {
        BigRational::new(1.into(), (k + 1).into())
    } else {
        BigRational::new(1.into(), k.into())
    }
}

/// Closed form of `hyp3f2_terminating(k, 0)`.
pub fn hyp3f2_closed_m0(k: u32) -> BigRational {
    let k = k as i64;
    if k % 2 == 0 {
        BigRational::zero()
    } else {
        BigRational::new(2.into(), (k * (k + 1)).into())
    }
}

/// Closed form of `hyp3f2_terminating(k, m)` for 1 ≤ m ≤ k.
pub fn hyp3f2_closed_low(k: u32, m: u32) -> BigRational {
    let (k, m) = (k as i64, m as i64);
    BigRational::new(((m + 1) * sign(k + 1)).into(), (k * (k + 1)).into())
}

/// Closed form of `hyp3f2_terminating(k, k+1)`.
pub fn hyp3f2_closed_top(k: u32) -> BigRational {
    let kk = k as i64;
    let num: BigInt = BigInt::from(2 * sign(kk + 1))
        * factorial(k - 1)
        * factorial(k + 2)
        * (binomial(2 * kk + 1, kk + 1) - BigInt::one());
    BigRational::new(num, factorial(2 * k + 2))
}

/// Dissection coefficient c_{j,k} = (1/j)·C(k−1, j−1)·C(k+j, j−1).
pub fn c_coeff(j: u32, k: u32) -> Result<BigRational> {
    if j == 0 || j > k {
        return Err(Error::Domain(format!("c_coeff needs 1 <= j <= k, got j={j}, k={k}")));
    }
    let (j, k) = (j as i64, k as i64);
    Ok(BigRational::new(
        binomial(k - 1, j - 1) * binomial(k + j, j - 1),
        j.into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&int(1), 3), int(6));
        assert_eq!(pochhammer(&int(-2), 3), int(0));
        assert_eq!(pochhammer(&rat(1, 2), 2), rat(3, 4));
        assert_eq!(pochhammer(&rat(7, 3), 0), int(1));
    }

    #[test]
    fn chu_vandermonde_examples() {
        assert_eq!(hyp2f1_chu_vandermonde(2, &int(3), &int(1)).unwrap(), int(1));
        assert_eq!(hyp2f1_chu_vandermonde(1, &int(1), &int(2)).unwrap(), rat(1, 2));
        assert_eq!(hyp2f1_chu_vandermonde(0, &int(7), &int(3)).unwrap(), int(1));
        assert!(hyp2f1_chu_vandermonde(3, &int(1), &int(-1)).is_err());
    }

    #[test]
    fn hyp3f2_examples() {
        assert_eq!(hyp3f2_terminating(1, 1).unwrap(), int(1));
        assert_eq!(hyp3f2_terminating(2, 3).unwrap(), rat(-3, 5));
        assert_eq!(hyp3f2_terminating(3, 0).unwrap(), rat(1, 6));
        assert!(hyp3f2_terminating(0, 1).is_err());
    }

    #[test]
    fn hyp3f2_brute_force_k2() {
        // Two terms: 1 + (−1)(4)(m+1)/((m+2)(2)(1)).
        for m in 0..10i64 {
            let expect = int(1) - BigRational::new((4 * (m + 1)).into(), (2 * (m + 2)).into());
            assert_eq!(hyp3f2_terminating(2, m as u32).unwrap(), expect);
        }
    }

    #[test]
    fn half_lemma_examples() {
        assert_eq!(lemma_value_half(2).unwrap(), rat(1, 3));
        assert_eq!(lemma_value_half(3).unwrap(), rat(1, 3));
        assert_eq!(lemma_value_half(1).unwrap(), int(1));
    }

    #[test]
    fn c_coeff_examples() {
        assert_eq!(c_coeff(1, 1).unwrap(), int(1));
        assert_eq!(c_coeff(2, 2).unwrap(), int(2));
        assert_eq!(c_coeff(3, 3).unwrap(), int(5));
        let row: Vec<_> = (1..=4).map(|j| c_coeff(j, 4).unwrap()).collect();
        assert_eq!(row, vec![int(1), int(9), int(21), int(14)]);
        assert!(c_coeff(3, 2).is_err());
        assert!(c_coeff(0, 2).is_err());
    }

    proptest! {
        #[test]
        fn c_coeff_is_integer(k in 1u32..=40, jj in 0u32..40) {
            let j = 1 + jj % k;
            let c = c_coeff(j, k).unwrap();
            prop_assert!(c.is_integer());
            // j·c = C(k−1,j−1)·C(k+j,j−1) with binomials from Pascal's rule
            let mut pascal = vec![vec![BigInt::one()]];
            for n in 1..=(2 * k as usize) {
                let prev = &pascal[n - 1];
                let mut row = vec![BigInt::one(); n + 1];
                for i in 1..n {
                    row[i] = &prev[i - 1] + &prev[i];
                }
                pascal.push(row);
            }
            let lhs = pascal[(k - 1) as usize][(j - 1) as usize].clone()
                * pascal[(k + j) as usize][(j - 1) as usize].clone();
            prop_assert_eq!(c * int(j as i64), BigRational::from_integer(lhs));
        }

        #[test]
        fn chu_vandermonde_parity(k in 1u32..=50) {
            let direct = hyp2f1_direct(k, &int(k as i64 + 1), &int(1)).unwrap();
            prop_assert_eq!(direct, int(sign(k as i64)));
        }

        #[test]
        fn chu_vandermonde_matches_direct(n in 0u32..12, b in -20i64..20, c in 1i64..20, d in 1i64..5) {
            let b = BigRational::new(b.into(), d.into());
            let c = BigRational::new(c.into(), 3.into());
            prop_assert_eq!(
                hyp2f1_chu_vandermonde(n, &b, &c).unwrap(),
                hyp2f1_direct(n, &b, &c).unwrap()
            );
        }

        #[test]
        fn hyp3f2_low_lemma(k in 1u32..=40, mm in 0u32..40) {
            let m = 1 + mm % k;
            prop_assert_eq!(hyp3f2_terminating(k, m).unwrap(), hyp3f2_closed_low(k, m));
        }

        #[test]
        fn hyp3f2_top_and_m0_lemmas(k in 1u32..=40) {
            prop_assert_eq!(hyp3f2_terminating(k, k + 1).unwrap(), hyp3f2_closed_top(k));
            prop_assert_eq!(hyp3f2_terminating(k, 0).unwrap(), hyp3f2_closed_m0(k));
            prop_assert_eq!(lemma_value_half(k).unwrap(), lemma_half_closed(k));
        }
    }
}
