//! Monte Carlo over Haar-random classical compact groups.

mod mcmc;
mod sample;
pub mod stats;

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub use mcmc::{weyl_log_density, ChainDiagnostics, WeylChain};
pub use sample::{
    haar_so_even, haar_unitary, haar_usp, sample, sample_so_even, sample_unitary, sample_usp, so_angles,
    symplectic_defect, unitary_abs_angles, unitary_angles, usp_angles, EigenangleSample, Resampled,
};

use crate::error::{Error, Result};
use crate::kernel::SymmetryClass;
use crate::testfn::{integrate_fw_fourier, TestFunction};

/// Samples per deterministic batch; batch b draws from ChaCha stream b.
pub const BATCH: usize = 1000;
pub const MAX_K: u32 = 4;
pub const MIN_SAMPLES: usize = 100;
pub const ESS_FLOOR: f64 = 50.0;

pub const MCMC_BURN_IN: usize = 2000;
pub const MCMC_THINNING: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sampler {
    Qr,
    Mcmc,
}

#[derive(Clone, Debug, Serialize)]
pub struct Estimate {
    pub group: SymmetryClass,
    pub n: usize,
    pub k: u32,
    pub value: f64,
    pub stderr: f64,
    pub n_samples: usize,
    /// (Σw)²/Σw²
    pub ess: f64,
    pub reference: f64,
    pub rel_err: f64,
    pub low_ess: bool,
    pub resampled: u64,
}

impl Estimate {
    pub fn abs_err(&self) -> f64 {
        (self.value - self.reference).abs()
    }

    /// |value − reference| < max(floor, 3·stderr)
    pub fn within(&self, floor: f64) -> bool {
        self.abs_err() < floor.max(3.0 * self.stderr)
    }
}

#[derive(Clone, Debug)]
pub struct RmtConfig {
    pub group: SymmetryClass,
    pub n: usize,
    pub ks: Vec<u32>,
    pub tf: TestFunction,
    pub n_samples: usize,
    pub seed: u64,
    /// worker threads; 0 = rayon default
    pub workers: usize,
    pub sampler: Sampler,
    pub allow_high_k: bool,
}

impl RmtConfig {
    pub fn new(group: SymmetryClass, n: usize, ks: &[u32], tf: TestFunction, n_samples: usize, seed: u64) -> Self {
        RmtConfig {
            group,
            n,
            ks: ks.to_vec(),
            tf,
            n_samples,
            seed,
            workers: 0,
            sampler: Sampler::Qr,
            allow_high_k: false,
        }
    }
}

/// Σ_j f(scale·θ_j) with the sum over all eigenangles: U scale N/2π; for SO/USp
/// scale N/π and each ±θ pair counted twice.
pub fn density_statistic(group: SymmetryClass, n: usize, tf: &TestFunction, angles: &[f64]) -> f64 {
    let (scale, mult) = match group {
        SymmetryClass::U => (n as f64 / (2.0 * PI), 1.0),
        _ => (n as f64 / PI, 2.0),
    };
    mult * angles.iter().map(|t| tf.f(scale * t)).sum::<f64>()
}

/// Weighted sums in units of e^{max_lw}, mergeable in any grouping.
#[derive(Clone, Debug)]
struct Accumulator {
    max_lw: f64,
    count: usize,
    sw: f64,
    sws: f64,
    sw2: f64,
    sw2s: f64,
    sw2s2: f64,
}

impl Accumulator {
    fn new() -> Self {
        Accumulator { max_lw: f64::NEG_INFINITY, count: 0, sw: 0.0, sws: 0.0, sw2: 0.0, sw2s: 0.0, sw2s2: 0.0 }
    }

    fn rescale(&mut self, to: f64) {
        if self.count == 0 {
            self.max_lw = to;
            return;
        }
        let r = (self.max_lw - to).exp();
        self.sw *= r;
        self.sws *= r;
        self.sw2 *= r * r;
        self.sw2s *= r * r;
        self.sw2s2 *= r * r;
        self.max_lw = to;
    }

    fn push(&mut self, lw: f64, s: f64) {
        if lw > self.max_lw {
            self.rescale(lw);
        }
        let w = (lw - self.max_lw).exp();
        self.count += 1;
        self.sw += w;
        self.sws += w * s;
        self.sw2 += w * w;
        self.sw2s += w * w * s;
        self.sw2s2 += w * w * s * s;
    }

    fn merge(&mut self, other: &Accumulator) {
        if other.count == 0 {
            return;
        }
        let m = self.max_lw.max(other.max_lw);
        self.rescale(m);
        let mut o = other.clone();
        o.rescale(m);
        self.count += o.count;
        self.sw += o.sw;
        self.sws += o.sws;
        self.sw2 += o.sw2;
        self.sw2s += o.sw2s;
        self.sw2s2 += o.sw2s2;
    }

    fn ratio(&self) -> f64 {
        self.sws / self.sw
    }

    /// Delta-method standard error of Σw·S/Σw for i.i.d. draws.
    fn delta_stderr(&self) -> f64 {
        let r = self.ratio();
        let v = (self.sw2s2 - 2.0 * r * self.sw2s + r * r * self.sw2) / (self.sw * self.sw);
        let n = self.count as f64;
        (v.max(0.0) * n / (n - 1.0)).sqrt()
    }

    fn ess(&self) -> f64 {
        self.sw * self.sw / self.sw2
    }
}

/// Standard error of the pooled ratio treating batches as the independent units.
fn batch_means_stderr(batches: &[Accumulator], total: &Accumulator) -> f64 {
    let r = total.ratio();
    let b = batches.len() as f64;
    let mut s = 0.0;
    for acc in batches {
        let mut a = acc.clone();
        a.rescale(total.max_lw);
        s += (a.sws - r * a.sw).powi(2);
    }
    (s * b / (b - 1.0)).sqrt() / total.sw
}

/// Draws of batch b: independent QR draws, or one Weyl chain with its own burn-in.
fn for_each_in_batch(
    group: SymmetryClass,
    n: usize,
    sampler: Sampler,
    seed: u64,
    b: usize,
    len: usize,
    signed: bool,
    mut f: impl FnMut(&EigenangleSample),
) -> Result<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(b as u64);
    let mut resampled = Resampled::default();
    match sampler {
        Sampler::Qr => {
            for _ in 0..len {
                f(&sample(group, n, signed, &mut rng, &mut resampled));
            }
        }
        Sampler::Mcmc => {
            let mut chain = WeylChain::new(group, n, MCMC_BURN_IN, MCMC_THINNING, &mut rng)?;
            for _ in 0..len {
                f(&chain.next_sample(&mut rng));
            }
        }
    }
    Ok(resampled.0)
}

fn batch_len(total: usize, b: usize) -> usize {
    BATCH.min(total - b * BATCH)
}

/// `count` draws in deterministic batch order.
pub fn draw_samples(
    group: SymmetryClass,
    n: usize,
    sampler: Sampler,
    count: usize,
    seed: u64,
) -> Result<Vec<EigenangleSample>> {
    let batches: Vec<Vec<EigenangleSample>> = (0..count.div_ceil(BATCH))
        .into_par_iter()
        .map(|b| {
            let mut out = Vec::with_capacity(BATCH);
            for_each_in_batch(group, n, sampler, seed, b, batch_len(count, b), true, |s| out.push(s.clone()))?;
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(batches.into_iter().flatten().collect())
}

fn run_batch(cfg: &RmtConfig, b: usize, len: usize) -> Result<(Vec<Accumulator>, u64)> {
    let mut accs = vec![Accumulator::new(); cfg.ks.len()];
    let resampled = for_each_in_batch(cfg.group, cfg.n, cfg.sampler, cfg.seed, b, len, false, |s| {
        let stat = density_statistic(cfg.group, cfg.n, &cfg.tf, &s.angles);
        for (acc, &k) in accs.iter_mut().zip(&cfg.ks) {
            acc.push(s.log_weight(k), stat);
        }
    })?;
    Ok((accs, resampled))
}

/// Self-normalized weighted one-level density estimates for every k in `cfg.ks`
/// from one shared set of draws. The result does not depend on the worker count.
pub fn weighted_density_estimates(cfg: &RmtConfig) -> Result<Vec<Estimate>> {
    if cfg.n == 0 {
        return Err(Error::Domain("N must be at least 1".into()));
    }
    if cfg.n_samples < MIN_SAMPLES {
        return Err(Error::Domain(format!("need at least {MIN_SAMPLES} samples")));
    }
    if let Some(&k) = cfg.ks.iter().find(|&&k| k > MAX_K && !cfg.allow_high_k) {
        return Err(Error::Domain(format!("k = {k} exceeds {MAX_K}; pass the high-k override")));
    }
    let n_batches = cfg.n_samples.div_ceil(BATCH);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Domain(e.to_string()))?;
    let batches: Vec<(Vec<Accumulator>, u64)> = pool.install(|| {
        (0..n_batches)
            .into_par_iter()
            .map(|b| run_batch(cfg, b, batch_len(cfg.n_samples, b)))
            .collect::<Result<_>>()
    })?;
    let resampled = batches.iter().map(|b| b.1).sum();
    let mut out = Vec::with_capacity(cfg.ks.len());
    for (i, &k) in cfg.ks.iter().enumerate() {
        let per_batch: Vec<Accumulator> = batches.iter().map(|b| b.0[i].clone()).collect();
        let mut total = Accumulator::new();
        for a in &per_batch {
            total.merge(a);
        }
        let value = if k == 0 {
            // weight ≡ 1: plain mean
            total.sws / total.count as f64
        } else {
            total.ratio()
        };
        let stderr = match cfg.sampler {
            Sampler::Qr => total.delta_stderr(),
            Sampler::Mcmc => batch_means_stderr(&per_batch, &total),
        };
        let reference = integrate_fw_fourier(&cfg.tf, cfg.group, k);
        let ess = total.ess();
        out.push(Estimate {
            group: cfg.group,
            n: cfg.n,
            k,
            value,
            stderr,
            n_samples: total.count,
            ess,
            reference,
            rel_err: if reference != 0.0 { (value - reference).abs() / reference.abs() } else { f64::NAN },
            low_ess: ess < ESS_FLOOR,
            resampled,
        });
    }
    Ok(out)
}

pub fn weighted_density_estimate(
    group: SymmetryClass,
    n: usize,
    k: u32,
    tf: TestFunction,
    n_samples: usize,
    seed: u64,
) -> Result<Estimate> {
    let cfg = RmtConfig::new(group, n, &[k], tf, n_samples, seed);
    Ok(weighted_density_estimates(&cfg)?.remove(0))
}

/// Exact finite-N value of the estimator target for N = 1, from the Weyl density.
pub fn small_n_oracle(group: SymmetryClass, k: u32, tf: &TestFunction) -> f64 {
    let w = |t: &[f64]| (2.0 - 2.0 * t[0].cos()).powi(k as i32);
    let num = stats::weyl_expectation(group, 1, |t| w(t) * density_statistic(group, 1, tf, t));
    num / stats::weyl_expectation(group, 1, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accumulator_merge_is_grouping_free() {
        let data: Vec<(f64, f64)> = (0..40).map(|i| (((i * 37) % 11) as f64 * 30.0 - 100.0, i as f64 * 0.1)).collect();
        let mut one = Accumulator::new();
        for &(lw, s) in &data {
            one.push(lw, s);
        }
        let mut parts = Accumulator::new();
        for chunk in data.chunks(7) {
            let mut a = Accumulator::new();
            for &(lw, s) in chunk {
                a.push(lw, s);
            }
            parts.merge(&a);
        }
        assert!((one.ratio() - parts.ratio()).abs() < 1e-12);
        assert!((one.ess() - parts.ess()).abs() < 1e-9);
    }

    #[test]
    fn worker_count_does_not_change_value() {
        let mut cfg = RmtConfig::new(SymmetryClass::USp, 4, &[0, 1, 2], TestFunction::fejer(1.0), 2500, 11);
        cfg.workers = 1;
        let a = weighted_density_estimates(&cfg).unwrap();
        cfg.workers = 3;
        let b = weighted_density_estimates(&cfg).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.value.to_bits(), y.value.to_bits());
        }
    }

    #[test]
    fn k_zero_is_plain_mean() {
        let cfg = RmtConfig::new(SymmetryClass::SOPlus, 3, &[0], TestFunction::fejer(1.0), 300, 5);
        let e = weighted_density_estimates(&cfg).unwrap().remove(0);
        assert!((e.ess - 300.0).abs() < 1e-9);
    }

    #[test]
    fn argument_checks() {
        let tf = TestFunction::fejer(1.0);
        assert!(weighted_density_estimate(SymmetryClass::U, 4, 5, tf, 1000, 1).is_err());
        assert!(weighted_density_estimate(SymmetryClass::U, 4, 1, tf, 50, 1).is_err());
        let mut cfg = RmtConfig::new(SymmetryClass::U, 4, &[5], tf, 200, 1);
        cfg.allow_high_k = true;
        assert!(weighted_density_estimates(&cfg).is_ok());
    }
}
