//! Metropolis sampler on eigenangle vectors targeting the Weyl densities.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use super::sample::EigenangleSample;
use crate::error::{Error, Result};
use crate::kernel::SymmetryClass;

/// Unnormalized log Weyl density of N angles in [0, π] (SO(2N), USp(2N)) or
/// (−π, π] (U(N)).
pub fn weyl_log_density(group: SymmetryClass, angles: &[f64]) -> f64 {
    let mut s = 0.0;
    for (j, &a) in angles.iter().enumerate() {
        for &b in &angles[j + 1..] {
            s += match group {
                SymmetryClass::U => (2.0 - 2.0 * (a - b).cos()).ln(),
                _ => 2.0 * (a.cos() - b.cos()).abs().ln(),
            };
        }
        if group == SymmetryClass::USp {
            s += 2.0 * a.sin().abs().ln();
        }
    }
    s
}

/// Contribution of angle j to the log density, given the others.
fn local_log_density(group: SymmetryClass, angles: &[f64], j: usize, t: f64) -> f64 {
    let c = t.cos();
    let mut s = if group == SymmetryClass::USp { 2.0 * t.sin().abs().ln() } else { 0.0 };
    for (i, &b) in angles.iter().enumerate() {
        if i != j {
            s += 2.0 * (c - b.cos()).abs().ln();
        }
    }
    s
}

fn reflect(t: f64) -> f64 {
    let r = t.rem_euclid(2.0 * PI);
    if r > PI {
        2.0 * PI - r
    } else {
        r
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainDiagnostics {
    pub step: f64,
    pub acceptance: f64,
    /// set when the post-burn-in acceptance left [0.1, 0.6]
    pub out_of_range: bool,
}

/// Single-site random-walk Metropolis with reflecting walls at 0 and π.
#[derive(Clone, Debug)]
pub struct WeylChain {
    group: SymmetryClass,
    angles: Vec<f64>,
    step: f64,
    thinning: usize,
    proposed: u64,
    accepted: u64,
}

impl WeylChain {
    pub fn new<R: Rng + ?Sized>(
        group: SymmetryClass,
        n: usize,
        burn_in: usize,
        thinning: usize,
        rng: &mut R,
    ) -> Result<Self> {
        if group == SymmetryClass::U {
            return Err(Error::Unsupported("Weyl sampler covers SO(2N) and USp(2N) only".into()));
        }
        if n == 0 || burn_in == 0 || thinning == 0 {
            return Err(Error::Domain("N, burn-in and thinning must be positive".into()));
        }
        let angles = (0..n).map(|j| PI * (j as f64 + 0.5) / n as f64).collect();
        let mut chain = WeylChain { group, angles, step: 0.5, thinning, proposed: 0, accepted: 0 };
        let block = 50;
        for done in (0..burn_in).step_by(block) {
            chain.proposed = 0;
            chain.accepted = 0;
            for _ in done..(done + block).min(burn_in) {
                chain.sweep(rng);
            }
            let rate = chain.acceptance();
            if rate < 0.2 {
                chain.step *= 0.7;
            } else if rate > 0.5 {
                chain.step = (chain.step * 1.3).min(PI);
            }
        }
        chain.proposed = 0;
        chain.accepted = 0;
        Ok(chain)
    }

    fn sweep<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        for j in 0..self.angles.len() {
            let old = self.angles[j];
            let z: f64 = rng.sample(StandardNormal);
            let new = reflect(old + self.step * z);
            let d = local_log_density(self.group, &self.angles, j, new)
                - local_log_density(self.group, &self.angles, j, old);
            self.proposed += 1;
            if d >= 0.0 || rng.random::<f64>() < d.exp() {
                self.angles[j] = new;
                self.accepted += 1;
            }
        }
    }

    pub fn acceptance(&self) -> f64 {
        if self.proposed == 0 {
            0.0
        } else {
            self.accepted as f64 / self.proposed as f64
        }
    }

    pub fn diagnostics(&self) -> ChainDiagnostics {
        let acceptance = self.acceptance();
        ChainDiagnostics { step: self.step, acceptance, out_of_range: !(0.1..=0.6).contains(&acceptance) }
    }

    /// Advance `thinning` sweeps and return the current state.
    pub fn next_sample<R: Rng + ?Sized>(&mut self, rng: &mut R) -> EigenangleSample {
        loop {
            for _ in 0..self.thinning {
                self.sweep(rng);
            }
            if let Some(s) = EigenangleSample::from_angles(self.angles.clone()) {
                return s;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn local_update_is_consistent_with_full_density() {
        let th = [0.3, 1.1, 2.0, 2.9];
        for g in [SymmetryClass::SOPlus, SymmetryClass::USp] {
            let mut moved = th;
            moved[2] = 0.7;
            let full = weyl_log_density(g, &moved) - weyl_log_density(g, &th);
            let local = local_log_density(g, &th, 2, 0.7) - local_log_density(g, &th, 2, 2.0);
            assert!((full - local).abs() < 1e-12);
        }
    }

    #[test]
    fn reflection_stays_in_range() {
        for t in [-7.0, -0.1, 0.5, 3.3, 9.9] {
            let r = reflect(t);
            assert!((0.0..=PI).contains(&r));
        }
    }

    #[test]
    fn tuned_acceptance_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut c = WeylChain::new(SymmetryClass::USp, 6, 500, 2, &mut rng).unwrap();
        for _ in 0..200 {
            c.next_sample(&mut rng);
        }
        assert!(!c.diagnostics().out_of_range, "{:?}", c.diagnostics());
    }
}
