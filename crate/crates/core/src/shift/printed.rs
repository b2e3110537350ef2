use std::sync::OnceLock;

use num::complex::Complex64;
use num::{BigRational, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, to_f64};

/// h(y) = Σ_λ p_λ(y) e^{−λy} / (C·yⁿ) with integer polynomial coefficients.
#[derive(Clone, Debug)]
pub struct ExpPoly {
    pub parts: Vec<(i64, Vec<i64>)>,
    pub denom_const: i64,
    pub denom_pow: u32,
    taylor: Vec<Complex64>,
}

const TAYLOR_TERMS: usize = 80;
/// Taylor branch below this |y|.
const TAYLOR_RADIUS: f64 = 6.0;

impl ExpPoly {
    pub fn new(parts: Vec<(i64, Vec<i64>)>, denom_const: i64, denom_pow: u32) -> Result<Self> {
        let n = denom_pow as usize;
        let width = n + TAYLOR_TERMS;
        let mut num = vec![BigRational::zero(); width];
        for (lambda, poly) in &parts {
            for (i, &p) in poly.iter().enumerate() {
                let mut term = int(p);
                for m in 0..width - i {
                    if m > 0 {
                        term = term * int(-lambda) / int(m as i64);
                    }
                    num[i + m] += &term;
                }
            }
        }
        if let Some(d) = num[..n].iter().position(|c| !c.is_zero()) {
            return Err(Error::Domain(format!("pole of order {} at y = 0", n - d)));
        }
        let c = int(denom_const);
        let taylor = num[n..]
            .iter()
            .map(|v| Complex64::new(to_f64(&(v / &c)), 0.0))
            .collect();
        Ok(ExpPoly { parts, denom_const, denom_pow, taylor })
    }

    pub fn eval(&self, y: Complex64) -> Complex64 {
        if y.norm() < TAYLOR_RADIUS {
            self.eval_taylor(y)
        } else {
            self.eval_direct(y)
        }
    }

    pub fn eval_taylor(&self, y: Complex64) -> Complex64 {
        self.taylor.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * y + c)
    }

    pub fn eval_direct(&self, y: Complex64) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for (lambda, poly) in &self.parts {
            let p = poly
                .iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * y + c as f64);
            s += p * (-y * *lambda as f64).exp();
        }
        s / (y.powu(self.denom_pow) * self.denom_const as f64)
    }
}

/// Printed limit functions, as functions of the external variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Printed {
    /// (1 − w − e^{−w})/w², i.e. 𝒫(x) at w = 2πix
    UnitaryP,
    /// −(y³ − 2y² + 6 − e^{−y}(y² + 6y + 6))/(6y⁴)
    UnitaryH2,
    /// (e^{−w} − 1)/w
    SymplG0,
    /// (−we^{−w} − 3w − 4e^{−w} + 4)/(4w²)
    SymplG1,
    /// (y³e^{−y} − 5y³ + 12y²e^{−y} + 12y² + 48ye^{−y} + 48e^{−y} − 48)/(48y⁴)
    SymplH2,
    SymplH3,
    SymplH4,
    /// (e^{−2w} − 1)/w
    OrthH1,
    /// (−2ye^{−2y} − 6y − 4e^{−2y} + 4)/y²
    OrthH2,
    OrthH3,
    OrthH4,
}

impl Printed {
    pub fn exp_poly(self) -> ExpPoly {
        let (parts, c, n): (Vec<(i64, Vec<i64>)>, i64, u32) = match self {
            Printed::UnitaryP => (vec![(0, vec![1, -1]), (1, vec![-1])], 1, 2),
            Printed::UnitaryH2 => (vec![(0, vec![-6, 0, 2, -1]), (1, vec![6, 6, 1])], 6, 4),
            Printed::SymplG0 => (vec![(0, vec![-1]), (1, vec![1])], 1, 1),
            Printed::SymplG1 => (vec![(0, vec![4, -3]), (1, vec![-4, -1])], 4, 2),
            Printed::SymplH2 => (vec![(0, vec![-48, 0, 12, -5]), (1, vec![48, 48, 12, 1])], 48, 4),
            // [(−7y⁵+24y⁴−240y²+2880) + e^{−y}(−y⁵−24y⁴−240y³−1200y²−2880y−2880)]/(5760y⁶)
            Printed::SymplH3 => (
                vec![
                    (0, vec![2880, 0, -240, 0, 24, -7]),
                    (1, vec![-2880, -2880, -1200, -240, -24, -1]),
                ],
                5760,
                6,
            ),
            // [(−9y⁷+40y⁶−720y⁴+20160y²−403200)
            //   + e^{−y}(y⁷+40y⁶+720y⁵+7440y⁴+47040y³+181440y²+403200y+403200)]/(9676800y⁸)
            Printed::SymplH4 => (
                vec![
                    (0, vec![-403200, 0, 20160, 0, -720, 0, 40, -9]),
                    (1, vec![403200, 403200, 181440, 47040, 7440, 720, 40, 1]),
                ],
                9676800,
                8,
            ),
            Printed::OrthH1 => (vec![(0, vec![-1]), (2, vec![1])], 1, 1),
            Printed::OrthH2 => (vec![(0, vec![4, -6]), (2, vec![-4, -2])], 1, 2),
            // (−5y³+6y²−6+e^{−2y}(y³+6y²+12y+6))/y⁴
            Printed::OrthH3 => (vec![(0, vec![-6, 0, 6, -5]), (2, vec![6, 12, 6, 1])], 1, 4),
            // [(−7y⁵+12y⁴−30y²+90) − e^{−2y}(y⁵+12y⁴+60y³+150y²+180y+90)]/y⁶
            Printed::OrthH4 => (
                vec![
                    (0, vec![90, 0, -30, 0, 12, -7]),
                    (2, vec![-90, -180, -150, -60, -12, -1]),
                ],
                1,
                6,
            ),
        };
        ExpPoly::new(parts, c, n).expect("printed limit functions are regular at 0")
    }

    pub const ALL: [Printed; 11] = [
        Printed::UnitaryP,
        Printed::UnitaryH2,
        Printed::SymplG0,
        Printed::SymplG1,
        Printed::SymplH2,
        Printed::SymplH3,
        Printed::SymplH4,
        Printed::OrthH1,
        Printed::OrthH2,
        Printed::OrthH3,
        Printed::OrthH4,
    ];

    fn cached(self) -> &'static ExpPoly {
        static CACHE: [OnceLock<ExpPoly>; 11] = [const { OnceLock::new() }; 11];
        let idx = Printed::ALL.iter().position(|p| *p == self).expect("listed");
        CACHE[idx].get_or_init(|| self.exp_poly())
    }

    pub fn eval(self, w: Complex64) -> Complex64 {
        self.cached().eval(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn unitary_p_matches_x_form() {
        let h = Printed::UnitaryP.exp_poly();
        for &x in &[0.05, 0.37, 1.3, 2.9] {
            let w = Complex64::new(0.0, 2.0 * PI * x);
            let direct = (Complex64::new(-1.0, 2.0 * PI * x) + Complex64::new(0.0, -2.0 * PI * x).exp())
                / (4.0 * PI * PI * x * x);
            assert!((h.eval(w) - direct).norm() < 1e-13, "{x}");
        }
    }

    #[test]
    fn taylor_and_direct_branches_agree() {
        for p in Printed::ALL {
            let h = p.exp_poly();
            for &(r, phi) in &[(5.5, 1.5707963), (6.0, 1.2), (5.8, 2.5), (6.2, -1.4)] {
                let y = Complex64::from_polar(r, phi);
                let a = h.eval_taylor(y);
                let b = h.eval_direct(y);
                let scale = a.norm().max(1e-3);
                assert!((a - b).norm() < 1e-10 * scale, "{p:?} {y}: {a} {b}");
            }
        }
    }

    #[test]
    fn rejects_pole() {
        assert!(ExpPoly::new(vec![(0, vec![1])], 1, 1).is_err());
    }
}
