use std::fmt;
use std::str::FromStr;

use super::expr::ShiftExpr;
use super::printed::Printed;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinCase {
    UnitaryK1,
    UnitaryK2,
    SymplK1,
    SymplK2,
    OrthK1,
    OrthK2,
}

impl BuiltinCase {
    pub const ALL: [BuiltinCase; 6] = [
        BuiltinCase::UnitaryK1,
        BuiltinCase::UnitaryK2,
        BuiltinCase::SymplK1,
        BuiltinCase::SymplK2,
        BuiltinCase::OrthK1,
        BuiltinCase::OrthK2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinCase::UnitaryK1 => "unitary_k1",
            BuiltinCase::UnitaryK2 => "unitary_k2",
            BuiltinCase::SymplK1 => "sympl_k1",
            BuiltinCase::SymplK2 => "sympl_k2",
            BuiltinCase::OrthK1 => "orth_k1",
            BuiltinCase::OrthK2 => "orth_k2",
        }
    }

    /// The printed closed form the limit should reproduce.
    pub fn printed(self) -> Printed {
        match self {
            BuiltinCase::UnitaryK1 => Printed::UnitaryP,
            BuiltinCase::UnitaryK2 => Printed::UnitaryH2,
            BuiltinCase::SymplK1 => Printed::SymplG1,
            BuiltinCase::SymplK2 => Printed::SymplH2,
            BuiltinCase::OrthK1 => Printed::OrthH1,
            BuiltinCase::OrthK2 => Printed::OrthH2,
        }
    }
}

impl fmt::Display for BuiltinCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BuiltinCase {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        BuiltinCase::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown builtin expression '{s}'"))
    }
}

fn s(i: usize) -> ShiftExpr {
    ShiftExpr::shift(i)
}

fn w() -> ShiftExpr {
    ShiftExpr::w()
}

/// Rescaled main-term expression (X^{−α} ↦ e^{−a}, arithmetic constants set to 1).
pub fn builtin_expression(case: BuiltinCase) -> ShiftExpr {
    match case {
        BuiltinCase::UnitaryK1 => unitary_k1(),
        BuiltinCase::UnitaryK2 => unitary_k2(),
        BuiltinCase::SymplK1 => sympl_k1(),
        BuiltinCase::SymplK2 => sympl_k2(),
        BuiltinCase::OrthK1 => orth_k1(),
        BuiltinCase::OrthK2 => orth_k2(),
    }
}

/// −1/(2a(a+w)) − e^{−2a}/(2a(a−w)) + e^{−a−w}/((a−w)(a+w)), each ζ(1+z) taken as 1/z.
fn unitary_k1() -> ShiftExpr {
    let (a, w) = (s(0), w());
    -1.0 / (2.0 * &a * (&a + &w)) - ShiftExpr::exp(&[(0, -2.0)], 0.0) / (2.0 * &a * (&a - &w))
        + ShiftExpr::exp(&[(0, -1.0)], -1.0) / ((&a - &w) * (&a + &w))
}

/// The unitary k = 1 bracket with ζ(1+z) = 1/z + γ and ζ′/ζ(1+z) = −1/(z(1+γz)),
/// at scale L = log T; tends to the 1/z model as L → ∞.
pub fn unitary_k1_zeta_model(log_t: f64) -> ShiftExpr {
    let (a, w) = (s(0), w());
    let l = log_t;
    // ζ(1 + u/L)/L and (ζ′/ζ)(1 + u/L)/L
    let zeta = |u: ShiftExpr| 1.0 / &u + EULER_GAMMA / l;
    let logder = |u: ShiftExpr| -1.0 / (&u * (1.0 + EULER_GAMMA / l * &u));
    zeta(2.0 * &a) * logder(&a + &w)
        + ShiftExpr::exp(&[(0, -2.0)], 0.0) * zeta(-2.0 * &a) * logder(-(&a - &w))
        - ShiftExpr::exp(&[(0, -1.0)], -1.0) * zeta(&a - &w) * zeta(-(&a + &w))
}

fn sympl_k1() -> ShiftExpr {
    let (a, w) = (s(0), w());
    let two_a = 2.0 * &a;
    let two_w = 2.0 * &w;
    (-(&a) - 3.0 * &w) / (&two_a * &two_w * (&a + &w))
        + ShiftExpr::exp(&[(0, -1.0)], 0.0) * (&a - 3.0 * &w) / (-(&two_a) * &two_w * (-(&a) + &w))
        + ShiftExpr::exp(&[], -1.0) * (&a + &w) / (&two_a * &two_w * (&a - &w))
        + ShiftExpr::exp(&[(0, -1.0)], -1.0) * (-(&a) + &w)
            / (-(&two_a) * &two_w * (-(&a) - &w))
}

fn orth_k1() -> ShiftExpr {
    let (a, w) = (s(0), w());
    let two_w = 2.0 * &w;
    (&a - &w) / ((&a + &w) * &two_w)
        + ShiftExpr::exp(&[(0, -2.0)], 0.0) * (-(&a) - &w) / ((-(&a) + &w) * &two_w)
        + ShiftExpr::exp(&[], -2.0) * (-(&a) - &w) / ((&a - &w) * &two_w)
        + ShiftExpr::exp(&[(0, -2.0)], -2.0) * (&a - &w) / ((-(&a) - &w) * &two_w)
}

type Term3 = fn(&ShiftExpr, &ShiftExpr, &ShiftExpr) -> ShiftExpr;

/// f(A,B,D) + X^{−A}f(−A,B,D) + X^{−B}f(A,−B,D) + X^{−D}g(A,B,D) + X^{−A−B}f(−A,−B,D)
/// + X^{−A−D}g(−A,B,D) + X^{−B−D}g(A,−B,D) + X^{−A−B−D}g(−A,−B,D), with X^{−u} = e^{−λu}.
fn eight_term(f: Term3, g: Term3, lambda: f64) -> ShiftExpr {
    let (a, b, d) = (s(0), s(1), w());
    let (na, nb) = (-(&a), -(&b));
    let x = |sh: &[(usize, f64)], dw: f64| {
        let sh: Vec<_> = sh.iter().map(|&(i, c)| (i, c * lambda)).collect();
        ShiftExpr::exp(&sh, dw * lambda)
    };
    f(&a, &b, &d)
        + x(&[(0, -1.0)], 0.0) * f(&na, &b, &d)
        + x(&[(1, -1.0)], 0.0) * f(&a, &nb, &d)
        + x(&[], -1.0) * g(&a, &b, &d)
        + x(&[(0, -1.0), (1, -1.0)], 0.0) * f(&na, &nb, &d)
        + x(&[(0, -1.0)], -1.0) * g(&na, &b, &d)
        + x(&[(1, -1.0)], -1.0) * g(&a, &nb, &d)
        + x(&[(0, -1.0), (1, -1.0)], -1.0) * g(&na, &nb, &d)
}

fn sympl_k2() -> ShiftExpr {
    fn f(a: &ShiftExpr, b: &ShiftExpr, d: &ShiftExpr) -> ShiftExpr {
        (-(a * b) - 3.0 * a * d - 3.0 * b * d - 5.0 * d * d)
            / ((2.0 * a) * (2.0 * b) * (2.0 * d) * (a + b) * (a + d) * (b + d))
    }
    fn g(a: &ShiftExpr, b: &ShiftExpr, d: &ShiftExpr) -> ShiftExpr {
        -((a + d) * (b + d)) / ((2.0 * a) * (2.0 * b) * (-2.0 * d) * (a + b) * (a - d) * (b - d))
    }
    eight_term(f, g, 1.0)
}

fn orth_k2() -> ShiftExpr {
    fn f(a: &ShiftExpr, b: &ShiftExpr, d: &ShiftExpr) -> ShiftExpr {
        (a * b - a * d - b * d - 3.0 * d * d) / (2.0 * d * (a + b) * (a + d) * (b + d))
    }
    fn g(a: &ShiftExpr, b: &ShiftExpr, d: &ShiftExpr) -> ShiftExpr {
        (a + d) * (b + d) / ((-2.0 * d) * (a + b) * (a - d) * (b - d))
    }
    eight_term(f, g, 2.0)
}

/// Ten-term |ζ|⁴ main term in shifts A, B, F, G (= s₀…s₃) and D = w.
fn unitary_k2() -> ShiftExpr {
    fn r1(a: &ShiftExpr, b: &ShiftExpr, d: &ShiftExpr, f: &ShiftExpr, g: &ShiftExpr) -> ShiftExpr {
        (-2.0 * d - f - g) / ((a + f) * (a + g) * (b + f) * (b + g) * (d + f) * (d + g))
    }
    fn r6(a: &ShiftExpr, b: &ShiftExpr, d: &ShiftExpr, f: &ShiftExpr, g: &ShiftExpr) -> ShiftExpr {
        -(d + g) / ((a - d) * (a + g) * (b - d) * (b + g) * (-(f) - d) * (-(f) + g))
    }
    let (a, b, f, g, d) = (s(0), s(1), s(2), s(3), w());
    let (na, nb, nf, ng) = (-(&a), -(&b), -(&f), -(&g));
    let e = |sh: &[usize], dw: f64| {
        let v: Vec<_> = sh.iter().map(|&i| (i, -1.0)).collect();
        ShiftExpr::exp(&v, dw)
    };
    r1(&a, &b, &d, &f, &g)
        + e(&[0, 2], 0.0) * r1(&nf, &b, &d, &na, &g)
        + e(&[0, 3], 0.0) * r1(&ng, &b, &d, &f, &na)
        + e(&[1, 2], 0.0) * r1(&a, &nf, &d, &nb, &g)
        + e(&[1, 3], 0.0) * r1(&a, &ng, &d, &f, &nb)
        + e(&[2], -1.0) * r6(&a, &b, &d, &f, &g)
        + e(&[3], -1.0) * r6(&a, &b, &d, &g, &f)
        + e(&[0, 1, 2, 3], 0.0) * r1(&nf, &ng, &d, &na, &nb)
        + e(&[0, 2, 3], -1.0) * r6(&nf, &b, &d, &g, &na)
        + e(&[1, 2, 3], -1.0) * r6(&a, &nf, &d, &g, &nb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::complex::Complex64;

    #[test]
    fn names_round_trip() {
        for c in BuiltinCase::ALL {
            assert_eq!(c.name().parse::<BuiltinCase>().unwrap(), c);
        }
        assert!("unitary_k3".parse::<BuiltinCase>().is_err());
    }

    #[test]
    fn symbol_counts() {
        assert_eq!(builtin_expression(BuiltinCase::UnitaryK1).n_shifts(), 1);
        assert_eq!(builtin_expression(BuiltinCase::SymplK2).n_shifts(), 2);
        assert_eq!(builtin_expression(BuiltinCase::UnitaryK2).n_shifts(), 4);
    }

    #[test]
    fn direct_evaluation_near_zero_approaches_printed() {
        // independent of the Laurent machinery: plain evaluation at small shifts,
        // symmetrized in t to cancel the linear term (poles reach order 5 for unitary_k2)
        let w = Complex64::new(0.4, 1.9);
        for c in BuiltinCase::ALL {
            let e = builtin_expression(c);
            let n = e.n_shifts();
            let at = |t: f64| {
                let shifts: Vec<_> = (0..n)
                    .map(|i| Complex64::new(t * (1.0 + 0.37 * i as f64), 0.8 * t * (i as f64 - 1.3)))
                    .collect();
                e.eval(&shifts, w)
            };
            let t = if c == BuiltinCase::UnitaryK2 { 1e-2 } else { 2e-3 };
            let v = 0.5 * (at(t) + at(-t));
            let p = c.printed().eval(w);
            assert!((v - p).norm() < 1e-3, "{c}: {v} vs {p}");
        }
    }
}
