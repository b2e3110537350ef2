use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num::complex::Complex64;

use super::laurent::LaurentSeries;
use crate::error::{Error, Result};

/// Σ aᵢ sᵢ + b·w + c, the exponent of an exponential node.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm {
    pub shifts: Vec<(usize, f64)>,
    pub w: f64,
    pub c: Complex64,
}

#[derive(Debug)]
pub enum Node {
    Const(Complex64),
    Shift(usize),
    W,
    Add(ShiftExpr, ShiftExpr),
    Sub(ShiftExpr, ShiftExpr),
    Mul(ShiftExpr, ShiftExpr),
    Div(ShiftExpr, ShiftExpr),
    Neg(ShiftExpr),
    Exp(LinearForm),
}

/// Expression in shift symbols s₀, s₁, … and one external symbol w.
#[derive(Clone, Debug)]
pub struct ShiftExpr(Arc<Node>);

impl ShiftExpr {
    fn node(n: Node) -> Self {
        ShiftExpr(Arc::new(n))
    }

    pub fn constant(c: f64) -> Self {
        Self::node(Node::Const(Complex64::new(c, 0.0)))
    }

    pub fn complex(c: Complex64) -> Self {
        Self::node(Node::Const(c))
    }

    pub fn shift(i: usize) -> Self {
        Self::node(Node::Shift(i))
    }

    pub fn w() -> Self {
        Self::node(Node::W)
    }

    /// exp(Σ aᵢ sᵢ + b·w)
    pub fn exp(shifts: &[(usize, f64)], w: f64) -> Self {
        Self::node(Node::Exp(LinearForm {
            shifts: shifts.to_vec(),
            w,
            c: Complex64::new(0.0, 0.0),
        }))
    }

    pub fn exp_form(form: LinearForm) -> Self {
        Self::node(Node::Exp(form))
    }

    /// Number of shift symbols referenced (max index + 1).
    pub fn n_shifts(&self) -> usize {
        match &*self.0 {
            Node::Const(_) | Node::W => 0,
            Node::Shift(i) => i + 1,
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
                a.n_shifts().max(b.n_shifts())
            }
            Node::Neg(a) => a.n_shifts(),
            Node::Exp(f) => f.shifts.iter().map(|(i, _)| i + 1).max().unwrap_or(0),
        }
    }

    /// Direct numerical evaluation at given shift values.
    pub fn eval(&self, shifts: &[Complex64], w: Complex64) -> Complex64 {
        match &*self.0 {
            Node::Const(c) => *c,
            Node::Shift(i) => shifts[*i],
            Node::W => w,
            Node::Add(a, b) => a.eval(shifts, w) + b.eval(shifts, w),
            Node::Sub(a, b) => a.eval(shifts, w) - b.eval(shifts, w),
            Node::Mul(a, b) => a.eval(shifts, w) * b.eval(shifts, w),
            Node::Div(a, b) => a.eval(shifts, w) / b.eval(shifts, w),
            Node::Neg(a) => -a.eval(shifts, w),
            Node::Exp(f) => {
                let e: Complex64 = f.shifts.iter().map(|(i, a)| shifts[*i] * *a).sum::<Complex64>()
                    + w * f.w
                    + f.c;
                e.exp()
            }
        }
    }

    /// Laurent expansion in t along sᵢ = dirᵢ·t; leaves carry precision `cap`.
    pub fn laurent(&self, dir: &[Complex64], w: Complex64, cap: i32) -> Result<LaurentSeries> {
        Ok(match &*self.0 {
            Node::Const(c) => LaurentSeries::constant(*c, cap),
            Node::Shift(i) => LaurentSeries::linear(dir[*i], cap),
            Node::W => LaurentSeries::constant(w, cap),
            Node::Add(a, b) => a.laurent(dir, w, cap)?.add(&b.laurent(dir, w, cap)?),
            Node::Sub(a, b) => a.laurent(dir, w, cap)?.sub(&b.laurent(dir, w, cap)?),
            Node::Mul(a, b) => a.laurent(dir, w, cap)?.mul(&b.laurent(dir, w, cap)?),
            Node::Div(a, b) => {
                let den = b.laurent(dir, w, cap)?;
                a.laurent(dir, w, cap)?
                    .div(&den)
                    .ok_or_else(|| Error::Domain("denominator vanishes along this direction".into()))?
            }
            Node::Neg(a) => a.laurent(dir, w, cap)?.neg(),
            Node::Exp(f) => {
                let c1: Complex64 = f.shifts.iter().map(|(i, a)| dir[*i] * *a).sum();
                LaurentSeries::exp_linear(w * f.w + f.c, c1, cap)
            }
        })
    }
}

impl From<f64> for ShiftExpr {
    fn from(c: f64) -> Self {
        ShiftExpr::constant(c)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $node:ident) => {
        impl $tr for ShiftExpr {
            type Output = ShiftExpr;
            fn $m(self, rhs: ShiftExpr) -> ShiftExpr {
                ShiftExpr::node(Node::$node(self, rhs))
            }
        }
        impl $tr<&ShiftExpr> for &ShiftExpr {
            type Output = ShiftExpr;
            fn $m(self, rhs: &ShiftExpr) -> ShiftExpr {
                ShiftExpr::node(Node::$node(self.clone(), rhs.clone()))
            }
        }
        impl $tr<ShiftExpr> for &ShiftExpr {
            type Output = ShiftExpr;
            fn $m(self, rhs: ShiftExpr) -> ShiftExpr {
                ShiftExpr::node(Node::$node(self.clone(), rhs))
            }
        }
        impl $tr<&ShiftExpr> for ShiftExpr {
            type Output = ShiftExpr;
            fn $m(self, rhs: &ShiftExpr) -> ShiftExpr {
                ShiftExpr::node(Node::$node(self, rhs.clone()))
            }
        }
        impl $tr<f64> for ShiftExpr {
            type Output = ShiftExpr;
            fn $m(self, rhs: f64) -> ShiftExpr {
                ShiftExpr::node(Node::$node(self, ShiftExpr::constant(rhs)))
            }
        }
        impl $tr<f64> for &ShiftExpr {
            type Output = ShiftExpr;
            fn $m(self, rhs: f64) -> ShiftExpr {
                ShiftExpr::node(Node::$node(self.clone(), ShiftExpr::constant(rhs)))
            }
        }
        impl $tr<ShiftExpr> for f64 {
            type Output = ShiftExpr;
            fn $m(self, rhs: ShiftExpr) -> ShiftExpr {
                ShiftExpr::node(Node::$node(ShiftExpr::constant(self), rhs))
            }
        }
        impl $tr<&ShiftExpr> for f64 {
            type Output = ShiftExpr;
            fn $m(self, rhs: &ShiftExpr) -> ShiftExpr {
                ShiftExpr::node(Node::$node(ShiftExpr::constant(self), rhs.clone()))
            }
        }
    };
}

binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

impl Neg for ShiftExpr {
    type Output = ShiftExpr;
    fn neg(self) -> ShiftExpr {
        ShiftExpr::node(Node::Neg(self))
    }
}

impl Neg for &ShiftExpr {
    type Output = ShiftExpr;
    fn neg(self) -> ShiftExpr {
        ShiftExpr::node(Node::Neg(self.clone()))
    }
}
