//! Weighted one-level density of zeta zeros over t ∈ [T, 2T].

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::rs::z_unchecked;
use super::table::ZeroTable;
use crate::error::{Error, Result};
use crate::kernel::SymmetryClass;
use crate::testfn::{integrate_fw_fourier, TestFunction};

/// |f| < WINDOW_TOL·f(0) outside the zero window.
pub const WINDOW_TOL: f64 = 1e-6;
const PANEL: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalizer {
    Empirical,
    Theory,
}

impl fmt::Display for Normalizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Normalizer::Empirical => "empirical",
            Normalizer::Theory => "theory",
        })
    }
}

impl FromStr for Normalizer {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "empirical" => Ok(Normalizer::Empirical),
            "theory" => Ok(Normalizer::Theory),
            _ => Err(format!("unknown normalizer '{s}' (empirical|theory)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ZetaConfig {
    pub ks: Vec<u32>,
    pub t: f64,
    pub tf: TestFunction,
    /// defaults to 0.05·2π/log T
    pub grid_step: Option<f64>,
    pub normalizer: Normalizer,
    /// rescale by log(t/2π)/2π at each t instead of log T/2π
    pub local_scaling: bool,
    pub window_tol: f64,
}

impl ZetaConfig {
    pub fn new(ks: &[u32], t: f64, tf: TestFunction) -> Self {
        ZetaConfig {
            ks: ks.to_vec(),
            t,
            tf,
            grid_step: None,
            normalizer: Normalizer::Empirical,
            local_scaling: false,
            window_tol: WINDOW_TOL,
        }
    }

    pub fn max_step(&self) -> f64 {
        0.05 * 2.0 * PI / self.t.ln()
    }

    fn scale_at(&self, t: f64) -> f64 {
        if self.local_scaling {
            (t / (2.0 * PI)).ln() / (2.0 * PI)
        } else {
            self.t.ln() / (2.0 * PI)
        }
    }

    /// Largest zero window in t units, over t ∈ [T, 2T].
    pub fn window_t(&self) -> f64 {
        window_x(&self.tf, self.window_tol) / self.scale_at(self.t)
    }

    /// Heights the zero table must cover.
    pub fn required_range(&self) -> (f64, f64) {
        let d = self.window_t();
        (self.t - d, 2.0 * self.t + d)
    }
}

/// x beyond which |f(x)| < tol·f(0).
pub fn window_x(tf: &TestFunction, tol: f64) -> f64 {
    match *tf {
        TestFunction::Fejer { a } => 1.0 / (PI * a * tol.sqrt()),
        TestFunction::Gaussian => ((1.0 / tol).ln() / PI).sqrt(),
    }
}

/// Bound on Σ_{|x_γ| > x_w} f(x_γ) at unit zero density.
pub fn tail_bound(tf: &TestFunction, xw: f64) -> f64 {
    match *tf {
        TestFunction::Fejer { a } => 2.0 / (PI * PI * a * a * xw),
        TestFunction::Gaussian => (-PI * xw * xw).exp() / (PI * xw),
    }
}

/// Σ_{|γ − t| ≤ window} f(c(γ − t)).
pub fn zero_sum(table: &ZeroTable, tf: &TestFunction, c: f64, t: f64, window: f64) -> f64 {
    table.between(t - window, t + window).iter().map(|g| tf.f(c * (g - t))).sum()
}

#[derive(Clone, Debug, Serialize)]
pub struct ZetaEstimate {
    pub k: u32,
    pub t: f64,
    pub value: f64,
    /// set to the discretization bound (the estimate is deterministic)
    pub stderr: f64,
    /// grid points
    pub n_samples: usize,
    pub ess: f64,
    pub reference: f64,
    pub rel_err: f64,
    pub grid_step: f64,
    /// |E_h − E_2h|
    pub discretization_bound: f64,
    /// bias from zeros outside the window
    pub tail_bound: f64,
    pub window: f64,
    pub normalizer: Normalizer,
    pub local_scaling: bool,
    /// (1/T)∫_T^{2T} Z^{2k}
    pub moment: f64,
}

#[derive(Clone, Default)]
struct Sums {
    // per k: fine and coarse trapezoid sums of w·S and w, plus Σ(τw)²
    a: Vec<f64>,
    b: Vec<f64>,
    a2: Vec<f64>,
    b2: Vec<f64>,
    sq: Vec<f64>,
}

impl Sums {
    fn new(nk: usize) -> Self {
        Sums { a: vec![0.0; nk], b: vec![0.0; nk], a2: vec![0.0; nk], b2: vec![0.0; nk], sq: vec![0.0; nk] }
    }

    fn add(&mut self, o: &Sums) {
        for i in 0..self.a.len() {
            self.a[i] += o.a[i];
            self.b[i] += o.b[i];
            self.a2[i] += o.a2[i];
            self.b2[i] += o.b2[i];
            self.sq[i] += o.sq[i];
        }
    }
}

/// (1/norm)∫_T^{2T} Σ_γ f(c(γ − t))·Z(t)^{2k} dt for each k, trapezoid in t.
pub fn weighted_density_zeta(cfg: &ZetaConfig, table: &ZeroTable) -> Result<Vec<ZetaEstimate>> {
    if let Some(&k) = cfg.ks.iter().find(|&&k| k > 2) {
        return Err(Error::Unsupported(format!("k = {k}: zeta references stop at k = 2")));
    }
    match cfg.tf.fhat_support() {
        Some(a) if a <= 1.0 => {}
        _ => return Err(Error::Domain("zeta density needs f̂ supported in [−1, 1]".into())),
    }
    if !(cfg.t >= 100.0) {
        return Err(Error::Domain("T must be at least 100".into()));
    }
    let hmax = cfg.max_step();
    let h0 = cfg.grid_step.unwrap_or(hmax);
    if !(h0 > 0.0) || h0 > hmax * (1.0 + 1e-12) {
        return Err(Error::Domain(format!("grid step {h0} exceeds 0.05·2π/log T = {hmax}")));
    }
    let (lo, hi) = cfg.required_range();
    table.require(lo, hi)?;

    let mut m = (cfg.t / h0).ceil() as usize;
    m += m % 2;
    let h = cfg.t / m as f64;
    let xw = window_x(&cfg.tf, cfg.window_tol);
    let nk = cfg.ks.len();
    let n_panels = (m + 1).div_ceil(PANEL);
    let panels: Vec<Sums> = (0..n_panels)
        .into_par_iter()
        .map(|p| {
            let mut s = Sums::new(nk);
            for i in p * PANEL..((p + 1) * PANEL).min(m + 1) {
                let t = cfg.t + h * i as f64;
                let c = cfg.scale_at(t);
                let sum = zero_sum(table, &cfg.tf, c, t, xw / c);
                let z2 = z_unchecked(t).powi(2);
                let edge = i == 0 || i == m;
                let tau = if edge { 0.5 } else { 1.0 };
                for (j, &k) in cfg.ks.iter().enumerate() {
                    let w = z2.powi(k as i32);
                    s.a[j] += tau * w * sum;
                    s.b[j] += tau * w;
                    s.sq[j] += (tau * w).powi(2);
                    if i % 2 == 0 {
                        s.a2[j] += tau * w * sum;
                        s.b2[j] += tau * w;
                    }
                }
            }
            s
        })
        .collect();
    let mut tot = Sums::new(nk);
    for p in &panels {
        tot.add(p);
    }
    let log_t = cfg.t.ln();
    let tail = tail_bound(&cfg.tf, xw);
    let mut out = Vec::with_capacity(nk);
    for (j, &k) in cfg.ks.iter().enumerate() {
        let (fine, coarse) = match cfg.normalizer {
            Normalizer::Empirical => (tot.a[j] / tot.b[j], tot.a2[j] / tot.b2[j]),
            Normalizer::Theory => {
                let norm = match k {
                    0 => cfg.t,
                    1 => cfg.t * log_t,
                    _ => cfg.t * log_t.powi(4) / (2.0 * PI * PI),
                };
                (tot.a[j] * h / norm, tot.a2[j] * 2.0 * h / norm)
            }
        };
        let disc = (fine - coarse).abs();
        let reference = integrate_fw_fourier(&cfg.tf, SymmetryClass::U, k);
        out.push(ZetaEstimate {
            k,
            t: cfg.t,
            value: fine,
            stderr: disc,
            n_samples: m + 1,
            ess: tot.b[j] * tot.b[j] / tot.sq[j],
            reference,
            rel_err: (fine - reference).abs() / reference.abs(),
            grid_step: h,
            discretization_bound: disc,
            tail_bound: tail,
            window: xw / cfg.scale_at(cfg.t),
            normalizer: cfg.normalizer,
            local_scaling: cfg.local_scaling,
            moment: tot.b[j] * h / cfg.t,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_and_tail() {
        let tf = TestFunction::fejer(1.0);
        let xw = window_x(&tf, 1e-6);
        assert!((tf.f(xw) * 1e6 - 1.0).abs() < 1.0);
        assert!((xw - 318.31).abs() < 0.01);
        assert!(tail_bound(&tf, xw) < 1e-3);
    }

    #[test]
    fn empty_window_contributes_nothing() {
        let table = ZeroTable::new(vec![1000.0, 1010.0], None).unwrap();
        let tf = TestFunction::fejer(1.0);
        assert_eq!(zero_sum(&table, &tf, 1.0, 1005.0, 2.0), 0.0);
        assert!(zero_sum(&table, &tf, 1.0, 1005.0, 6.0) > 0.0);
    }

    #[test]
    fn argument_checks() {
        let table = ZeroTable::new(vec![1000.0, 1010.0], None).unwrap();
        let cfg = ZetaConfig::new(&[3], 1e3, TestFunction::fejer(1.0));
        assert!(weighted_density_zeta(&cfg, &table).is_err());
        let cfg = ZetaConfig::new(&[1], 1e3, TestFunction::fejer(2.0));
        assert!(weighted_density_zeta(&cfg, &table).is_err());
        let cfg = ZetaConfig::new(&[1], 1e3, TestFunction::fejer(1.0));
        assert!(matches!(weighted_density_zeta(&cfg, &table), Err(Error::Coverage { .. })));
        let mut cfg = ZetaConfig::new(&[1], 1e3, TestFunction::fejer(1.0));
        cfg.grid_step = Some(1.0);
        assert!(weighted_density_zeta(&cfg, &table).is_err());
    }
}
