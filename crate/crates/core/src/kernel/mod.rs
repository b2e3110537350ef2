//! Fourier-side polynomials P_G^k and the kernels W_G^k(x).

mod closed;
mod eval;
mod series;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num::{BigRational, One, Zero};
use serde::{Deserialize, Serialize};

pub use closed::{closed_form_eval, ClosedForm, Trig, TrigTerm};
pub use eval::monomial_cos_integrals;
pub use series::{kernel_series, kernel_series_moments, KernelSeries};

use crate::exact::{c_coeff, int, rat, sign, RationalPolynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymmetryClass {
    U,
    USp,
    SOPlus,
}

impl SymmetryClass {
    pub const ALL: [SymmetryClass; 3] = [SymmetryClass::U, SymmetryClass::USp, SymmetryClass::SOPlus];

    pub fn name(self) -> &'static str {
        match self {
            SymmetryClass::U => "u",
            SymmetryClass::USp => "usp",
            SymmetryClass::SOPlus => "so",
        }
    }
}

impl fmt::Display for SymmetryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SymmetryClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "u" | "unitary" => Ok(SymmetryClass::U),
            "usp" | "sympl" | "symplectic" => Ok(SymmetryClass::USp),
            "so" | "so+" | "soplus" | "orth" | "orthogonal" => Ok(SymmetryClass::SOPlus),
            other => Err(format!("unknown symmetry class '{other}' (expected u, usp or so)")),
        }
    }
}

/// Ŵ(y) = δ₀(y) + P(|y|)·χ_[−1,1](y).
#[derive(Clone, Debug)]
pub struct FourierKernel {
    pub group: SymmetryClass,
    pub k: u32,
    pub delta_coeff: BigRational,
    pub poly: RationalPolynomial,
    poly_f64: Vec<f64>,
    series_f64: Vec<f64>,
}

const SERIES_TERMS: usize = 24;
/// Below this |2πx| the Taylor series at 0 is used.
pub const SERIES_SWITCH: f64 = 0.5;

fn usp_poly(k: u32) -> RationalPolynomial {
    if k == 0 {
        return RationalPolynomial::constant(rat(-1, 2));
    }
    let kk = k as i64;
    let mut coeffs = vec![BigRational::zero(); 2 * k as usize];
    coeffs[0] = rat(-(2 * kk + 1), 2);
    let kk1 = int(kk * (kk + 1));
    for j in 1..=k {
        let c = c_coeff(j, k).expect("1 <= j <= k");
        let deg = 2 * j as usize - 1;
        coeffs[deg] = -&kk1 * int(sign(j as i64)) * c / int(deg as i64);
    }
    RationalPolynomial::new(coeffs)
}

fn so_poly(k: u32) -> RationalPolynomial {
    if k == 0 {
        RationalPolynomial::constant(rat(1, 2))
    } else {
        usp_poly(k - 1)
    }
}

fn u_poly(k: u32) -> RationalPolynomial {
    if k == 0 {
        RationalPolynomial::zero()
    } else {
        (&usp_poly(k) + &so_poly(k)).scale(&rat(1, 2))
    }
}

/// Build P_G^k exactly.
pub fn fourier_poly(group: SymmetryClass, k: u32) -> FourierKernel {
    let poly = match group {
        SymmetryClass::USp => usp_poly(k),
        SymmetryClass::SOPlus => so_poly(k),
        SymmetryClass::U => u_poly(k),
    };
    let series = kernel_series(group, k, SERIES_TERMS);
    FourierKernel {
        group,
        k,
        delta_coeff: BigRational::one(),
        poly_f64: poly.to_f64_coeffs(),
        series_f64: series.to_f64_coeffs(),
        poly,
    }
}

impl FourierKernel {
    pub fn poly_f64(&self) -> &[f64] {
        &self.poly_f64
    }

    /// W(x) = 1 + 2∫₀¹ P(y) cos(2πxy) dy.
    pub fn eval(&self, x: f64) -> f64 {
        let t = 2.0 * std::f64::consts::PI * x.abs();
        if !t.is_finite() {
            return 1.0;
        }
        if t < SERIES_SWITCH {
            let t2 = t * t;
            return self.series_f64.iter().rev().fold(0.0, |acc, c| acc * t2 + c);
        }
        self.eval_fourier(t)
    }

    /// Fourier-route evaluation at t = 2π|x| without the series branch.
    pub fn eval_fourier(&self, t: f64) -> f64 {
        if self.poly_f64.is_empty() {
            return 1.0;
        }
        let ints = monomial_cos_integrals(self.poly_f64.len() - 1, t);
        let s: f64 = self.poly_f64.iter().zip(&ints).map(|(p, i)| p * i).sum();
        1.0 + 2.0 * s
    }

    /// Degree and endpoint predictions for this (group, k).
    pub fn check_endpoints(&self) -> Result<(), String> {
        let k = self.k as i64;
        let p = &self.poly;
        let deg = p.degree();
        let at0 = p.eval(&BigRational::zero());
        let at1 = p.eval(&BigRational::one());
        let (want_deg, want0, want1) = match (self.group, self.k) {
            (SymmetryClass::U, 0) => (None, int(0), int(0)),
            (SymmetryClass::USp, 0) => (Some(0), rat(-1, 2), rat(-1, 2)),
            (SymmetryClass::SOPlus, 0) => (Some(0), rat(1, 2), rat(1, 2)),
            (SymmetryClass::SOPlus, 1) => (Some(0), rat(-1, 2), rat(-1, 2)),
            (SymmetryClass::U, _) => (Some(2 * k as usize - 1), int(-k), int(0)),
            (SymmetryClass::USp, _) => {
                (Some(2 * k as usize - 1), rat(-(2 * k + 1), 2), rat(sign(k + 1), 2))
            }
            (SymmetryClass::SOPlus, _) => {
                (Some(2 * k as usize - 3), rat(-(2 * k - 1), 2), rat(sign(k), 2))
            }
        };
        if deg != want_deg || at0 != want0 || at1 != want1 {
            return Err(format!(
                "({}, k={}): degree {:?} P(0)={} P(1)={}, expected {:?} {} {}",
                self.group, self.k, deg, at0, at1, want_deg, want0, want1
            ));
        }
        Ok(())
    }
}

fn kernel_cache() -> &'static Mutex<HashMap<(SymmetryClass, u32), Arc<FourierKernel>>> {
    static CACHE: OnceLock<Mutex<HashMap<(SymmetryClass, u32), Arc<FourierKernel>>>> =
        OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared, lazily built kernel for (group, k).
pub fn kernel(group: SymmetryClass, k: u32) -> Arc<FourierKernel> {
    let mut cache = kernel_cache().lock().expect("kernel cache poisoned");
    cache
        .entry((group, k))
        .or_insert_with(|| Arc::new(fourier_poly(group, k)))
        .clone()
}

pub fn kernel_eval(group: SymmetryClass, k: u32, x: f64) -> f64 {
    kernel(group, k).eval(x)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RelationsReport {
    pub checks: usize,
    pub violations: Vec<String>,
}

impl RelationsReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn compare_polys(report: &mut RelationsReport, label: &str, lhs: &RationalPolynomial, rhs: &RationalPolynomial) {
    let n = lhs.coeffs().len().max(rhs.coeffs().len());
    for d in 0..n {
        report.checks += 1;
        if lhs.coeff(d) != rhs.coeff(d) {
            report
                .violations
                .push(format!("{label}: degree {d}: {} != {}", lhs.coeff(d), rhs.coeff(d)));
        }
    }
}

/// Coefficient-level check of P_SO⁺^k = P_USp^{k−1}, P_U^k = (P_USp^k + P_SO⁺^k)/2,
/// and of the degree/endpoint predictions.
pub fn relations_check(k_max: u32) -> RelationsReport {
    let mut report = RelationsReport::default();
    let half = rat(1, 2);
    for k in 0..=k_max {
        let usp = fourier_poly(SymmetryClass::USp, k);
        let so = fourier_poly(SymmetryClass::SOPlus, k);
        let u = fourier_poly(SymmetryClass::U, k);
        if k >= 1 {
            let prev = fourier_poly(SymmetryClass::USp, k - 1);
            compare_polys(&mut report, &format!("(so, k={k}) vs (usp, k={})", k - 1), &so.poly, &prev.poly);
        }
        let avg = (&usp.poly + &so.poly).scale(&half);
        let avg = if k == 0 { RationalPolynomial::zero() } else { avg };
        compare_polys(&mut report, &format!("(u, k={k}) vs average"), &u.poly, &avg);
        if k == 0 {
            let sum = &usp.poly + &so.poly;
            compare_polys(&mut report, "(usp+so, k=0) vs 0", &sum, &RationalPolynomial::zero());
        }
        for kern in [&usp, &so, &u] {
            report.checks += 1;
            if let Err(e) = kern.check_endpoints() {
                report.violations.push(e);
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[(i64, i64)]) -> RationalPolynomial {
        RationalPolynomial::new(c.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn table_rows() {
        use SymmetryClass::*;
        assert_eq!(fourier_poly(USp, 3).poly, poly(&[(-7, 2), (12, 1), (0, 1), (-20, 1), (0, 1), (12, 1)]));
        assert_eq!(fourier_poly(U, 2).poly, poly(&[(-2, 1), (4, 1), (0, 1), (-2, 1)]));
        assert_eq!(fourier_poly(SOPlus, 0).poly, poly(&[(1, 2)]));
        assert_eq!(
            fourier_poly(USp, 4).poly,
            poly(&[(-9, 2), (20, 1), (0, 1), (-60, 1), (0, 1), (84, 1), (0, 1), (-40, 1)])
        );
    }

    #[test]
    fn relations_hold() {
        let r = relations_check(12);
        assert!(r.ok(), "{:?}", r.violations);
        assert!(r.checks > 100);
    }

    #[test]
    fn kernel_eval_examples() {
        use SymmetryClass::*;
        assert!((kernel_eval(SOPlus, 0, 0.0) - 2.0).abs() < 1e-15);
        assert!(kernel_eval(USp, 1, 0.0).abs() < 1e-15);
        let pi = std::f64::consts::PI;
        assert!((kernel_eval(U, 1, 0.5) - (1.0 - 4.0 / (pi * pi))).abs() < 1e-14);
    }

    #[test]
    fn evenness_and_decay() {
        for g in SymmetryClass::ALL {
            for k in 0..=5 {
                for &x in &[0.03, 0.3, 1.7, 4.2] {
                    assert_eq!(kernel_eval(g, k, x), kernel_eval(g, k, -x));
                }
                let d1 = (kernel_eval(g, k, 100.5) - 1.0).abs();
                assert!(d1 < 1e-2, "{g} {k} {d1}");
                let d2 = (kernel_eval(g, k, 1000.5) - 1.0).abs();
                assert!(d2 <= d1 / 5.0 || d1 < 1e-12, "{g} {k} {d1} {d2}");
            }
        }
    }

    #[test]
    fn parse_group() {
        assert_eq!("USp".parse::<SymmetryClass>().unwrap(), SymmetryClass::USp);
        assert!("so-".parse::<SymmetryClass>().is_err());
    }
}
