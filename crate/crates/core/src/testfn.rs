//! Test functions with known Fourier transforms and the two routes for ∫ f·W_G^k.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::kernel::{kernel, SymmetryClass};
use crate::quad::integrate;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum TestFunction {
    /// f(x) = (sin πax / πax)², f̂(y) = max(0, 1 − |y|/a)/a
    Fejer { a: f64 },
    /// f(x) = f̂(x) = e^{−πx²}
    Gaussian,
}

impl TestFunction {
    pub fn fejer(a: f64) -> Self {
        assert!(a > 0.0 && a.is_finite(), "fejer parameter must be positive");
        TestFunction::Fejer { a }
    }

    pub fn f(&self, x: f64) -> f64 {
        match *self {
            TestFunction::Fejer { a } => {
                let z = PI * a * x;
                if z.abs() < 1e-4 {
                    let z2 = z * z;
                    1.0 - z2 / 3.0 + 2.0 * z2 * z2 / 45.0
                } else {
                    let s = z.sin() / z;
                    s * s
                }
            }
            TestFunction::Gaussian => (-PI * x * x).exp(),
        }
    }

    pub fn fhat(&self, y: f64) -> f64 {
        match *self {
            TestFunction::Fejer { a } => (1.0 - y.abs() / a).max(0.0) / a,
            TestFunction::Gaussian => (-PI * y * y).exp(),
        }
    }

    /// ∫ f = f̂(0).
    pub fn integral(&self) -> f64 {
        self.fhat(0.0)
    }

    /// Half-width of the support of f̂, if compact.
    pub fn fhat_support(&self) -> Option<f64> {
        match *self {
            TestFunction::Fejer { a } => Some(a),
            TestFunction::Gaussian => None,
        }
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TestFunction::Fejer { a } => write!(f, "fejer:{a}"),
            TestFunction::Gaussian => write!(f, "gaussian"),
        }
    }
}

impl FromStr for TestFunction {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("gaussian") {
            return Ok(TestFunction::Gaussian);
        }
        if let Some(rest) = s.strip_prefix("fejer:") {
            let a: f64 = rest
                .parse()
                .map_err(|_| format!("bad fejer parameter '{rest}'"))?;
            if !(a > 0.0 && a.is_finite()) {
                return Err(format!("fejer parameter must be positive, got {a}"));
            }
            return Ok(TestFunction::Fejer { a });
        }
        Err(format!("unknown test function '{s}' (expected fejer:<a> or gaussian)"))
    }
}

/// f̂(0) + 2∫₀¹ f̂(y) P(y) dy.
pub fn integrate_fw_fourier(tf: &TestFunction, group: SymmetryClass, k: u32) -> f64 {
    let kern = kernel(group, k);
    let p = kern.poly_f64();
    match *tf {
        TestFunction::Fejer { a } => {
            // ∫₀^{min(a,1)} (1 − y/a) yⁱ dy / a in closed form
            let s: f64 = p
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let i1 = (i + 1) as f64;
                    let i2 = (i + 2) as f64;
                    let m = if a <= 1.0 {
                        a.powi(i as i32) / (i1 * i2)
                    } else {
                        (1.0 / i1 - 1.0 / (a * i2)) / a
                    };
                    c * m
                })
                .sum();
            tf.fhat(0.0) + 2.0 * s
        }
        TestFunction::Gaussian => {
            if p.is_empty() {
                return tf.fhat(0.0);
            }
            let poly = |y: f64| p.iter().rev().fold(0.0, |acc, c| acc * y + c);
            let r = integrate(|y| tf.fhat(y) * poly(y), 0.0, 1.0, 4, 1e-14, 200_000);
            tf.fhat(0.0) + 2.0 * r.value
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct DirectIntegral {
    pub value: f64,
    /// Quadrature error estimate plus the rigorous tail bound.
    pub error: f64,
    pub x0: f64,
    pub tol_met: bool,
}

/// ∫_{x₀}^∞ sin²(πax)/(πax)² dx.
fn fejer_tail(a: f64, x0: f64) -> f64 {
    let b = 2.0 * PI * a;
    let z = b * x0;
    // π/2 − Si(z) = F(z)cos z + G(z) sin z, asymptotic for large z
    let (mut fz, mut gz) = (0.0, 0.0);
    let (mut tf, mut tg) = (1.0 / z, 1.0 / (z * z));
    for n in 0..30 {
        fz += tf;
        gz += tg;
        let n2 = (2 * n + 1) as f64;
        let nf = -n2 * (n2 + 1.0) / (z * z);
        let ng = -(n2 + 1.0) * (n2 + 2.0) / (z * z);
        if (tf * nf).abs() > tf.abs() || (tf * nf).abs() < 1e-20 * fz.abs() {
            break;
        }
        tf *= nf;
        tg *= ng;
    }
    let si_tail = fz * z.cos() + gz * z.sin();
    let cos_tail = (b * x0).cos() / x0 - b * si_tail;
    (1.0 / x0 - cos_tail) / (2.0 * PI * PI * a * a)
}

/// Adaptive quadrature of f(x)·W(x) over [−X₀, X₀] plus the f·1 tail in closed form.
pub fn integrate_fw_direct(tf: &TestFunction, group: SymmetryClass, k: u32, tol: f64) -> DirectIntegral {
    let tol = tol.max(1e-10);
    let kern = kernel(group, k);
    let p = kern.poly_f64();
    let p1: f64 = p.iter().sum();
    let dp0 = p.get(1).copied().unwrap_or(0.0).abs();
    let dp1: f64 = p.iter().enumerate().map(|(i, c)| i as f64 * c).sum::<f64>().abs();
    let d2: f64 = p.iter().enumerate().map(|(i, c)| (i * i.saturating_sub(1)) as f64 * c.abs()).sum();
    // |W − 1| ≤ |P(1)|/(πx) + D/(2πx)², D = 2(|P'(0)| + |P'(1)| + ∫|P''|)
    let dd = 2.0 * (dp0 + dp1 + d2);
    let wmax = 1.0 + 2.0 * p.iter().enumerate().map(|(i, c)| c.abs() / (i + 1) as f64).sum::<f64>();

    let (x0, tail_value, tail_bound) = match *tf {
        TestFunction::Fejer { a } => {
            let aa = PI * PI * a * a;
            let bound = |x0: f64| {
                2.0 * (p1.abs() / PI / aa / (2.0 * x0 * x0) + dd / (4.0 * PI * PI) / aa / (3.0 * x0 * x0 * x0))
            };
            let mut x0 = 50.0 / a;
            while bound(x0) > tol / 2.0 && x0 < 1e7 {
                x0 *= 1.25;
            }
            (x0, 2.0 * fejer_tail(a, x0), bound(x0))
        }
        TestFunction::Gaussian => {
            let bound = |x0: f64| wmax * (-PI * x0 * x0).exp() / (PI * x0);
            let mut x0 = 1.0;
            while bound(x0) > tol / 2.0 {
                x0 += 0.5;
            }
            (x0, 0.0, bound(x0))
        }
    };
    let panel = match *tf {
        TestFunction::Fejer { a } => 0.5 / a.max(1.0),
        TestFunction::Gaussian => 0.5,
    };
    let panels = (x0 / panel).ceil() as usize;
    let r = integrate(
        |x| tf.f(x) * kern.eval(x),
        0.0,
        x0,
        panels,
        tol / 4.0,
        20 * 15 * panels + 2_000_000,
    );
    let value = 2.0 * r.value + tail_value;
    let error = 2.0 * r.error + tail_bound;
    DirectIntegral {
        value,
        error,
        x0,
        tol_met: r.converged && error <= tol,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::integrate;

    #[test]
    fn evaluation_examples() {
        let f1 = TestFunction::fejer(1.0);
        assert_eq!(f1.f(0.0), 1.0);
        assert_eq!(f1.fhat(0.0), 1.0);
        let g = TestFunction::Gaussian;
        assert_eq!(g.fhat(0.7), g.f(0.7));
        assert!((g.f(0.7) - (-0.49 * PI).exp()).abs() < 1e-16);
        // series branch is continuous with the direct formula
        let x = 1e-4 / PI;
        let direct = ((PI * x).sin() / (PI * x)).powi(2);
        assert!((f1.f(x) - direct).abs() < 1e-15);
    }

    #[test]
    fn fejer_integral_is_fhat0() {
        for a in [0.5, 1.0, 2.0] {
            let tf = TestFunction::fejer(a);
            let x0 = 400.0 / a;
            let body = integrate(|x| tf.f(x), 0.0, x0, (2.0 * x0 * a) as usize, 1e-12, 10_000_000);
            let total = 2.0 * body.value + 2.0 * fejer_tail(a, x0);
            assert!((total - 1.0 / a).abs() < 1e-10, "a={a}: {total}");
        }
    }

    #[test]
    fn fourier_examples() {
        let f1 = TestFunction::fejer(1.0);
        assert!((integrate_fw_fourier(&f1, SymmetryClass::U, 1) - 1.0 / 3.0).abs() < 1e-15);
        assert!((integrate_fw_fourier(&f1, SymmetryClass::USp, 0) - 0.5).abs() < 1e-15);
        assert_eq!(integrate_fw_fourier(&TestFunction::Gaussian, SymmetryClass::U, 0), 1.0);
    }

    #[test]
    fn direct_examples() {
        let f1 = TestFunction::fejer(1.0);
        let d = integrate_fw_direct(&f1, SymmetryClass::U, 1, 1e-9);
        assert!(d.tol_met);
        assert!((d.value - 1.0 / 3.0).abs() < 1e-8, "{d:?}");
        let d = integrate_fw_direct(&f1, SymmetryClass::USp, 0, 1e-9);
        assert!((d.value - 0.5).abs() < 1e-8, "{d:?}");
        let g = TestFunction::Gaussian;
        let d = integrate_fw_direct(&g, SymmetryClass::SOPlus, 2, 1e-9);
        assert!((d.value - integrate_fw_fourier(&g, SymmetryClass::SOPlus, 2)).abs() < 1e-8);
    }

    #[test]
    fn parse() {
        assert_eq!("fejer:0.5".parse::<TestFunction>().unwrap(), TestFunction::fejer(0.5));
        assert_eq!("gaussian".parse::<TestFunction>().unwrap(), TestFunction::Gaussian);
        assert!("fejer:-1".parse::<TestFunction>().is_err());
        assert!("box".parse::<TestFunction>().is_err());
    }
}
