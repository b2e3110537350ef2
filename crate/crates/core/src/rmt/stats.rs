//! Goodness-of-fit helpers and quadrature oracles for small N.

use std::f64::consts::PI;

use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::mcmc::weyl_log_density;
use crate::kernel::SymmetryClass;
use crate::quad::integrate;

#[derive(Clone, Debug, Serialize)]
pub struct TestOutcome {
    pub statistic: f64,
    pub critical: f64,
    pub passed: bool,
}

/// Asymptotic Kolmogorov 1% critical value of √n·D.
pub const KS_CRIT_1PCT: f64 = 1.627_6;

/// One-sample Kolmogorov–Smirnov test at the 1% level.
pub fn ks_test(samples: &[f64], cdf: impl Fn(f64) -> f64) -> TestOutcome {
    let mut x = samples.to_vec();
    x.sort_by(f64::total_cmp);
    let n = x.len() as f64;
    let d = x
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let f = cdf(v);
            (f - i as f64 / n).max((i as f64 + 1.0) / n - f)
        })
        .fold(0.0, f64::max);
    let critical = KS_CRIT_1PCT / n.sqrt();
    TestOutcome { statistic: d, critical, passed: d < critical }
}

/// Two-sample χ² homogeneity test on equal-width bins over [lo, hi], 1% level.
pub fn chi2_two_sample(a: &[f64], b: &[f64], lo: f64, hi: f64, bins: usize) -> TestOutcome {
    let hist = |v: &[f64]| {
        let mut h = vec![0.0; bins];
        for &x in v {
            let i = (((x - lo) / (hi - lo)) * bins as f64).floor();
            h[(i.max(0.0) as usize).min(bins - 1)] += 1.0;
        }
        h
    };
    let (ha, hb) = (hist(a), hist(b));
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (ka, kb) = ((nb / na).sqrt(), (na / nb).sqrt());
    let mut stat = 0.0;
    let mut used = 0;
    for (x, y) in ha.iter().zip(&hb) {
        if x + y > 0.0 {
            stat += (ka * x - kb * y).powi(2) / (x + y);
            used += 1;
        }
    }
    let df = (used.max(2) - 1) as f64;
    let critical = ChiSquared::new(df).expect("positive df").inverse_cdf(0.99);
    TestOutcome { statistic: stat, critical, passed: stat < critical }
}

/// Angle CDFs of the N = 1 groups.
pub fn cdf_u1(t: f64) -> f64 {
    ((t + PI) / (2.0 * PI)).clamp(0.0, 1.0)
}

pub fn cdf_so2(t: f64) -> f64 {
    (t / PI).clamp(0.0, 1.0)
}

/// SU(2) = USp(2): density (2/π)sin²θ on [0, π].
pub fn cdf_su2(t: f64) -> f64 {
    ((t - t.sin() * t.cos()) / PI).clamp(0.0, 1.0)
}

const QUAD_TOL: f64 = 1e-12;

fn angle_range(group: SymmetryClass) -> (f64, f64) {
    match group {
        SymmetryClass::U => (-PI, PI),
        _ => (0.0, PI),
    }
}

/// E[g(θ)] under the Weyl density for N = 1 or 2, by nested adaptive quadrature.
pub fn weyl_expectation(group: SymmetryClass, n: usize, g: impl Fn(&[f64]) -> f64) -> f64 {
    let (lo, hi) = angle_range(group);
    let q = |h: &dyn Fn(f64) -> f64| integrate(h, lo, hi, 16, QUAD_TOL, 1_000_000).value;
    match n {
        1 => {
            let dens = |t: f64| weyl_log_density(group, &[t]).exp();
            q(&|t| g(&[t]) * dens(t)) / q(&dens)
        }
        2 => {
            let dens = |a: f64, b: f64| weyl_log_density(group, &[a, b]).exp();
            let num = q(&|a| q(&|b| g(&[a, b]) * dens(a, b)));
            let den = q(&|a| q(&|b| dens(a, b)));
            num / den
        }
        _ => panic!("quadrature oracle covers N ≤ 2"),
    }
}
