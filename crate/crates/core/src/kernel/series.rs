use num::{BigRational, One, Zero};

use super::{fourier_poly, SymmetryClass};
use crate::exact::{factorial, hyp3f2_terminating, int, sign, to_f64};

/// W_G^k(x) = Σ_m r_m (2πx)^{2m}, i.e. β_{m,k} = r_m (2π)^{2m}.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelSeries {
    pub group: SymmetryClass,
    pub k: u32,
    pub coeffs: Vec<BigRational>,
}

impl KernelSeries {
    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(to_f64).collect()
    }

    pub fn eval(&self, x: f64) -> f64 {
        let t = 2.0 * std::f64::consts::PI * x;
        let t2 = t * t;
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * t2 + to_f64(c))
    }

    /// First nonzero (m, r_m).
    pub fn leading(&self) -> Option<(usize, &BigRational)> {
        self.coeffs.iter().enumerate().find(|(_, c)| !c.is_zero())
    }
}

fn delta0(m: usize) -> BigRational {
    if m == 0 {
        BigRational::one()
    } else {
        BigRational::zero()
    }
}

fn usp_coeffs(k: u32, num_terms: usize) -> Vec<BigRational> {
    let kk = k as i64;
    (0..num_terms)
        .map(|m| {
            let mut bracket = int(sign(kk));
            if k >= 1 {
                let f = hyp3f2_terminating(k, m as u32).expect("k >= 1");
                bracket += int(kk * (kk + 1)) / int(m as i64 + 1) * f;
            }
            let pref = int(sign(m as i64)) / BigRational::from_integer(factorial(2 * m as u32 + 1));
            delta0(m) - pref * bracket
        })
        .collect()
}

/// Taylor coefficients at 0 via the hypergeometric representation, with SO⁺ and U
/// obtained from the symplectic ones.
pub fn kernel_series(group: SymmetryClass, k: u32, num_terms: usize) -> KernelSeries {
    let coeffs = match group {
        SymmetryClass::USp => usp_coeffs(k, num_terms),
        SymmetryClass::SOPlus => {
            if k == 0 {
                usp_coeffs(0, num_terms)
                    .into_iter()
                    .enumerate()
                    .map(|(m, r)| delta0(m) * int(2) - r)
                    .collect()
            } else {
                usp_coeffs(k - 1, num_terms)
            }
        }
        SymmetryClass::U => {
            if k == 0 {
                (0..num_terms).map(delta0).collect()
            } else {
                let a = kernel_series(SymmetryClass::USp, k, num_terms).coeffs;
                let b = kernel_series(SymmetryClass::SOPlus, k, num_terms).coeffs;
                a.into_iter()
                    .zip(b)
                    .map(|(x, y)| (x + y) / int(2))
                    .collect()
            }
        }
    };
    KernelSeries { group, k, coeffs }
}

/// Same coefficients from the moments of P: r_m = δ₀(m) + 2(−1)^m/(2m)! · Σ_i p_i/(i+2m+1).
pub fn kernel_series_moments(group: SymmetryClass, k: u32, num_terms: usize) -> KernelSeries {
    let fk = fourier_poly(group, k);
    let coeffs = (0..num_terms)
        .map(|m| {
            let moment = fk
                .poly
                .coeffs()
                .iter()
                .enumerate()
                .map(|(i, p)| p / int((i + 2 * m + 1) as i64))
                .fold(BigRational::zero(), |a, b| a + b);
            delta0(m)
                + int(2 * sign(m as i64)) / BigRational::from_integer(factorial(2 * m as u32)) * moment
        })
        .collect();
    KernelSeries { group, k, coeffs }
}
