use std::sync::OnceLock;

use num::{BigRational, Zero};

use super::SymmetryClass;
use crate::error::{Error, Result};
use crate::exact::{factorial, int, rat, sign, to_f64};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trig {
    One,
    /// sin(2u)
    Sin2,
    /// cos(2u)
    Cos2,
    /// sin²(u)
    SinSq,
}

/// coef · trig(u) / u^pow with u = πx.
#[derive(Clone, Debug)]
pub struct TrigTerm {
    pub coef: BigRational,
    pub trig: Trig,
    pub pow: u32,
}

fn t(n: i64, d: i64, trig: Trig, pow: u32) -> TrigTerm {
    TrigTerm { coef: rat(n, d), trig, pow }
}

use Trig::*;

fn usp_terms(k: u32) -> Option<Vec<TrigTerm>> {
    Some(match k {
        // 1 − sin(2πx)/(2πx)
        0 => vec![t(1, 1, One, 0), t(-1, 2, Sin2, 1)],
        // 1 + sin(2πx)/(2πx) − 2sin²(πx)/(πx)²
        1 => vec![t(1, 1, One, 0), t(1, 2, Sin2, 1), t(-2, 1, SinSq, 2)],
        // 1 − sin/(2πx) − 24(1−sin²)/(2πx)² + 48sin/(2πx)³ − 96sin²/(2πx)⁴
        2 => vec![
            t(1, 1, One, 0),
            t(-1, 2, Sin2, 1),
            t(-24, 4, One, 2),
            t(24, 4, SinSq, 2),
            t(48, 8, Sin2, 3),
            t(-96, 16, SinSq, 4),
        ],
        // 1 + sin/(2πx) − 12sin²/(πx)² − 240sin/(2πx)³ − 15(6−10sin²)/(πx)⁴
        //   + 2880sin/(2πx)⁵ − 90sin²/(πx)⁶
        3 => vec![
            t(1, 1, One, 0),
            t(1, 2, Sin2, 1),
            t(-12, 1, SinSq, 2),
            t(-240, 8, Sin2, 3),
            t(-90, 1, One, 4),
            t(150, 1, SinSq, 4),
            t(2880, 32, Sin2, 5),
            t(-90, 1, SinSq, 6),
        ],
        // 1 − sin/(2πx) − 10(1+cos)/(πx)² + 90sin/(πx)³ − 15(3−31cos)/(πx)⁴
        //   − 1470sin/(πx)⁵ − 315(1+9cos)/(πx)⁶ + 3150sin/(πx)⁷ − 1575(1−cos)/(πx)⁸
        4 => vec![
            t(1, 1, One, 0),
            t(-1, 2, Sin2, 1),
            t(-10, 1, One, 2),
            t(-10, 1, Cos2, 2),
            t(90, 1, Sin2, 3),
            t(-45, 1, One, 4),
            t(465, 1, Cos2, 4),
            t(-1470, 1, Sin2, 5),
            t(-315, 1, One, 6),
            t(-2835, 1, Cos2, 6),
            t(3150, 1, Sin2, 7),
            t(-1575, 1, One, 8),
            t(1575, 1, Cos2, 8),
        ],
        _ => return None,
    })
}

fn so_terms(k: u32) -> Option<Vec<TrigTerm>> {
    Some(match k {
        // 1 + sin(2πx)/(2πx)
        0 => vec![t(1, 1, One, 0), t(1, 2, Sin2, 1)],
        // 1 − sin(2πx)/(2πx)
        1 => vec![t(1, 1, One, 0), t(-1, 2, Sin2, 1)],
        // the SO⁺ displays for k = 2, 3, 4 coincide with USp at k − 1
        2..=4 => usp_terms(k - 1)?,
        _ => return None,
    })
}

fn u_terms(k: u32) -> Option<Vec<TrigTerm>> {
    Some(match k {
        0 => vec![t(1, 1, One, 0)],
        // 1 − sin²(πx)/(πx)²
        1 => vec![t(1, 1, One, 0), t(-1, 1, SinSq, 2)],
        // 1 − (2+cos)/(πx)² + 3sin/(πx)³ + 3(cos−1)/(2(πx)⁴)
        2 => vec![
            t(1, 1, One, 0),
            t(-2, 1, One, 2),
            t(-1, 1, Cos2, 2),
            t(3, 1, Sin2, 3),
            t(3, 2, Cos2, 4),
            t(-3, 2, One, 4),
        ],
        _ => return None,
    })
}

/// Taylor coefficients of trig(u) up to degree n.
fn trig_taylor(trig: Trig, n: usize) -> Vec<BigRational> {
    let mut c = vec![BigRational::zero(); n + 1];
    match trig {
        One => c[0] = int(1),
        Sin2 => {
            for d in (1..=n).step_by(2) {
                let m = (d - 1) / 2;
                c[d] = int(sign(m as i64)) * pow2(d) / BigRational::from_integer(factorial(d as u32));
            }
        }
        Cos2 | SinSq => {
            for d in (0..=n).step_by(2) {
                let m = d / 2;
                c[d] = int(sign(m as i64)) * pow2(d) / BigRational::from_integer(factorial(d as u32));
            }
            if trig == SinSq {
                c[0] -= int(1);
                for v in c.iter_mut() {
                    *v = -v.clone() / int(2);
                }
            }
        }
    }
    c
}

fn pow2(d: usize) -> BigRational {
    BigRational::from_integer(num::BigInt::from(1) << d)
}

const TAYLOR_TERMS: usize = 90;
/// Direct trigonometric evaluation for |πx| at or above this value.
const DIRECT_SWITCH: f64 = 2.5;

/// A displayed trigonometric kernel formula with its exact expansion at 0.
#[derive(Clone, Debug)]
pub struct ClosedForm {
    pub group: SymmetryClass,
    pub k: u32,
    pub terms: Vec<TrigTerm>,
    taylor: Vec<f64>,
}

impl ClosedForm {
    pub fn new(group: SymmetryClass, k: u32) -> Result<Self> {
        let terms = match group {
            SymmetryClass::U => u_terms(k),
            SymmetryClass::USp => usp_terms(k),
            SymmetryClass::SOPlus => so_terms(k),
        }
        .ok_or_else(|| Error::Unsupported(format!("no closed form for ({group}, k={k})")))?;
        let max_pow = terms.iter().map(|t| t.pow as usize).max().unwrap_or(0);
        // Laurent coefficients indexed by power + max_pow.
        let width = TAYLOR_TERMS + max_pow + 1;
        let mut laurent = vec![BigRational::zero(); width];
        for term in &terms {
            let shift = max_pow - term.pow as usize;
            for (d, c) in trig_taylor(term.trig, width - 1 - shift).into_iter().enumerate() {
                laurent[d + shift] += &term.coef * c;
            }
        }
        if let Some(p) = laurent[..max_pow].iter().position(|c| !c.is_zero()) {
            return Err(Error::Domain(format!(
                "({group}, k={k}) closed form has a pole of order {}",
                max_pow - p
            )));
        }
        let taylor = laurent[max_pow..].iter().map(to_f64).collect();
        Ok(ClosedForm { group, k, terms, taylor })
    }

    pub fn eval(&self, x: f64) -> f64 {
        let u = std::f64::consts::PI * x.abs();
        if u < DIRECT_SWITCH {
            self.eval_taylor(u)
        } else {
            self.eval_direct(u)
        }
    }

    fn eval_taylor(&self, u: f64) -> f64 {
        self.taylor.iter().rev().fold(0.0, |acc, c| acc * u + c)
    }

    fn eval_direct(&self, u: f64) -> f64 {
        let (s2, c2) = (2.0 * u).sin_cos();
        let sq = u.sin().powi(2);
        self.terms
            .iter()
            .map(|term| {
                let tr = match term.trig {
                    One => 1.0,
                    Sin2 => s2,
                    Cos2 => c2,
                    SinSq => sq,
                };
                to_f64(&term.coef) * tr / u.powi(term.pow as i32)
            })
            .sum()
    }
}

fn cached(group: SymmetryClass, k: u32) -> Result<&'static ClosedForm> {
    static CACHE: [OnceLock<ClosedForm>; 15] = [const { OnceLock::new() }; 15];
    let g = match group {
        SymmetryClass::U => 0,
        SymmetryClass::USp => 1,
        SymmetryClass::SOPlus => 2,
    };
    if k > 4 {
        return Err(Error::Unsupported(format!("no closed form for ({group}, k={k})")));
    }
    let slot = &CACHE[g * 5 + k as usize];
    if let Some(cf) = slot.get() {
        return Ok(cf);
    }
    let cf = ClosedForm::new(group, k)?;
    Ok(slot.get_or_init(|| cf))
}

/// Displayed closed form of W_G^k (k ≤ 2 for U, k ≤ 4 otherwise).
pub fn closed_form_eval(group: SymmetryClass, k: u32, x: f64) -> Result<f64> {
    Ok(cached(group, k)?.eval(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::kernel_eval;
    use std::f64::consts::PI;

    #[test]
    fn examples() {
        use SymmetryClass::*;
        assert_eq!(closed_form_eval(U, 0, 7.3).unwrap(), 1.0);
        let v = closed_form_eval(USp, 0, 0.25).unwrap();
        assert!((v - (1.0 - 2.0 / PI)).abs() < 1e-15);
        assert!(closed_form_eval(SOPlus, 1, 0.0).unwrap().abs() < 1e-15);
        assert!(closed_form_eval(U, 3, 0.1).is_err());
        assert!(closed_form_eval(USp, 5, 0.1).is_err());
    }

    #[test]
    fn branches_agree_near_switch() {
        for g in SymmetryClass::ALL {
            let kmax = if g == SymmetryClass::U { 2 } else { 4 };
            for k in 0..=kmax {
                let cf = ClosedForm::new(g, k).unwrap();
                for &u in &[2.3, 2.5, 2.8] {
                    let taylor = cf.eval_taylor(u);
                    let direct = cf.eval_direct(u);
                    assert!((taylor - direct).abs() < 1e-11, "{g} {k} {u}: {taylor} {direct}");
                }
            }
        }
    }

    #[test]
    fn matches_fourier_route() {
        for g in SymmetryClass::ALL {
            let kmax = if g == SymmetryClass::U { 2 } else { 4 };
            for k in 0..=kmax {
                for i in 0..=1000 {
                    let x = -5.0 + 0.01 * i as f64;
                    let d = (closed_form_eval(g, k, x).unwrap() - kernel_eval(g, k, x)).abs();
                    assert!(d < 1e-10, "{g} {k} {x} {d}");
                }
            }
        }
    }
}
