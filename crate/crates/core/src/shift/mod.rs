//! Regularized limits of shifted main-term expressions and the resulting kernels.

mod builtin;
mod expr;
mod laurent;
mod printed;

use std::f64::consts::PI;

use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use builtin::{builtin_expression, unitary_k1_zeta_model, BuiltinCase, EULER_GAMMA};
pub use expr::{LinearForm, Node, ShiftExpr};
pub use laurent::LaurentSeries;
pub use printed::{ExpPoly, Printed};

use crate::error::{Error, Result};
use crate::kernel::{kernel_eval, SymmetryClass};

/// Seed for the random expansion directions.
pub const DIRECTION_SEED: u64 = 0x5eed_0001;

#[derive(Clone, Debug, Serialize)]
pub struct ShiftLimit {
    pub value: (f64, f64),
    /// max over directions of max_{e<0} |c_e| / |c_0|
    pub max_pole_rel: f64,
    /// max over directions of |c_0(d) − c_0(first)| / |c_0(first)|
    pub spread_rel: f64,
    pub n_directions: usize,
}

impl ShiftLimit {
    pub fn complex(&self) -> Complex64 {
        Complex64::new(self.value.0, self.value.1)
    }
}

fn random_direction(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| {
            let r = rng.random_range(0.5..1.5);
            let phi = rng.random_range(-PI..PI);
            Complex64::from_polar(r, phi)
        })
        .collect()
}

fn rel(a: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        a / scale
    } else {
        a
    }
}

/// Limit of `expr` as all shifts → 0 at fixed w, taken along `n_directions`
/// random lines sᵢ = cᵢt. Fails if a pole survives or the directions disagree.
pub fn limit_shifts_zero(expr: &ShiftExpr, w: Complex64, n_directions: usize, tol: f64) -> Result<ShiftLimit> {
    if n_directions < 2 {
        return Err(Error::Domain("need at least two directions".into()));
    }
    let n = expr.n_shifts();
    let mut rng = ChaCha8Rng::seed_from_u64(DIRECTION_SEED);
    let mut first: Option<Complex64> = None;
    let mut max_pole_rel: f64 = 0.0;
    let mut spread_rel: f64 = 0.0;
    for _ in 0..n_directions {
        let dir = random_direction(&mut rng, n);
        let mut cap = 8;
        let series = loop {
            let s = expr.laurent(&dir, w, cap)?;
            if s.precision() >= 1 {
                break s;
            }
            if cap >= 128 {
                return Err(Error::Domain("expansion precision exhausted".into()));
            }
            cap += 8;
        };
        let c0 = series.coeff(0);
        let pole = (series.valuation().min(0)..0)
            .map(|e| series.coeff(e).norm())
            .fold(0.0, f64::max);
        let pr = rel(pole, c0.norm());
        max_pole_rel = max_pole_rel.max(pr);
        if pr > tol {
            return Err(Error::NotRegular(format!(
                "pole coefficient {pole:e} against |c0| = {:e} at w = {w}",
                c0.norm()
            )));
        }
        match first {
            None => first = Some(c0),
            Some(f) => {
                let d = rel((c0 - f).norm(), f.norm());
                spread_rel = spread_rel.max(d);
                if d > tol {
                    return Err(Error::DirectionDependent(format!("{c0} vs {f} at w = {w}")));
                }
            }
        }
    }
    let v = first.expect("n_directions >= 2");
    Ok(ShiftLimit {
        value: (v.re, v.im),
        max_pole_rel,
        spread_rel,
        n_directions,
    })
}

/// W = 1 + coef·h(scale·πix): the density-to-kernel combination for (group, k).
#[derive(Clone, Copy, Debug)]
pub struct ChainCase {
    pub group: SymmetryClass,
    pub k: u32,
    pub coef: f64,
    pub printed: Option<Printed>,
    pub scale: f64,
    pub builtin: Option<BuiltinCase>,
}

impl ChainCase {
    pub fn w_at(&self, x: f64) -> Complex64 {
        Complex64::new(0.0, self.scale * PI * x)
    }

    /// Even part of the real part of the combination at x, from the printed h.
    pub fn eval(&self, x: f64) -> f64 {
        match self.printed {
            None => 1.0,
            Some(p) => {
                let re = |x: f64| 1.0 + self.coef * p.eval(self.w_at(x)).re;
                0.5 * (re(x) + re(-x))
            }
        }
    }
}

pub fn chain_case(group: SymmetryClass, k: u32) -> Option<ChainCase> {
    use SymmetryClass::*;
    let c = |coef: f64, printed: Option<Printed>, scale: f64, builtin: Option<BuiltinCase>| ChainCase {
        group,
        k,
        coef,
        printed,
        scale,
        builtin,
    };
    Some(match (group, k) {
        (U, 0) => c(0.0, None, 2.0, None),
        (U, 1) => c(2.0, Some(Printed::UnitaryP), 2.0, Some(BuiltinCase::UnitaryK1)),
        (U, 2) => c(24.0, Some(Printed::UnitaryH2), 2.0, Some(BuiltinCase::UnitaryK2)),
        (USp, 0) => c(1.0, Some(Printed::SymplG0), 2.0, None),
        (USp, 1) => c(4.0, Some(Printed::SymplG1), 2.0, Some(BuiltinCase::SymplK1)),
        (USp, 2) => c(48.0, Some(Printed::SymplH2), 2.0, Some(BuiltinCase::SymplK2)),
        (USp, 3) => c(2.0 * 2880.0, Some(Printed::SymplH3), 2.0, None),
        (USp, 4) => c(2.0 * 4838400.0, Some(Printed::SymplH4), 2.0, None),
        (SOPlus, 1) => c(0.5, Some(Printed::OrthH1), 1.0, Some(BuiltinCase::OrthK1)),
        (SOPlus, 2) => c(0.25, Some(Printed::OrthH2), 1.0, Some(BuiltinCase::OrthK2)),
        (SOPlus, 3) => c(0.5, Some(Printed::OrthH3), 1.0, None),
        (SOPlus, 4) => c(0.5, Some(Printed::OrthH4), 1.0, None),
        _ => return None,
    })
}

/// All (group, k) with a printed combination.
pub fn chain_cases() -> Vec<ChainCase> {
    SymmetryClass::ALL
        .into_iter()
        .flat_map(|g| (0..=4).filter_map(move |k| chain_case(g, k)))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub group: SymmetryClass,
    pub k: u32,
    pub n_points: usize,
    pub max_err: f64,
    pub worst_x: f64,
}

impl ChainReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.max_err < tol
    }
}

/// Compare the printed combination against `kernel_eval` on `x_grid`.
pub fn kernel_chain_check(group: SymmetryClass, k: u32, x_grid: &[f64]) -> Result<ChainReport> {
    let case = chain_case(group, k)
        .ok_or_else(|| Error::Unsupported(format!("no printed combination for ({group}, k={k})")))?;
    let mut report = ChainReport { group, k, n_points: x_grid.len(), max_err: 0.0, worst_x: f64::NAN };
    for &x in x_grid {
        let err = (case.eval(x) - kernel_eval(group, k, x)).abs();
        if !(err <= report.max_err) {
            report.max_err = err;
            report.worst_x = x;
        }
    }
    Ok(report)
}

/// Same comparison with h replaced by the numerically computed shift limit of the
/// builtin expression (x = 0 excluded, where w = 0).
pub fn kernel_chain_check_limit(group: SymmetryClass, k: u32, x_grid: &[f64], n_directions: usize) -> Result<ChainReport> {
    let case = chain_case(group, k)
        .ok_or_else(|| Error::Unsupported(format!("no printed combination for ({group}, k={k})")))?;
    let builtin = case
        .builtin
        .ok_or_else(|| Error::Unsupported(format!("no builtin expression for ({group}, k={k})")))?;
    let expr = builtin_expression(builtin);
    let mut report = ChainReport { group, k, n_points: 0, max_err: 0.0, worst_x: f64::NAN };
    for &x in x_grid.iter().filter(|x| **x != 0.0) {
        let re = |x: f64| -> Result<f64> {
            let lim = limit_shifts_zero(&expr, case.w_at(x), n_directions, 1e-9)?;
            Ok(1.0 + case.coef * lim.value.0)
        };
        let v = 0.5 * (re(x)? + re(-x)?);
        let err = (v - kernel_eval(group, k, x)).abs();
        report.n_points += 1;
        if !(err <= report.max_err) {
            report.max_err = err;
            report.worst_x = x;
        }
    }
    Ok(report)
}

/// Grid a, a+step, …, b (inclusive up to rounding).
pub fn grid(a: f64, b: f64, step: f64) -> Vec<f64> {
    let n = ((b - a) / step + 1e-9).floor() as usize;
    (0..=n).map(|i| a + step * i as f64).collect()
}

/// Twenty external points: ten on the imaginary axis, ten off it, all with |w| ≥ 0.5.
pub fn sample_w() -> Vec<Complex64> {
    let mut v: Vec<_> = [0.6, 1.3, 2.2, 3.1, 4.5]
        .iter()
        .flat_map(|&y| [Complex64::new(0.0, y), Complex64::new(0.0, -y)])
        .collect();
    v.extend((0..10).map(|j| Complex64::from_polar(0.5 + 0.45 * j as f64, 0.2 + 0.61 * j as f64)));
    v
}
