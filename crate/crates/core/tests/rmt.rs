use std::f64::consts::PI;

use num::complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wold::kernel::SymmetryClass::{self, SOPlus, USp, U};
use wold::rmt::stats::{cdf_so2, cdf_su2, cdf_u1, chi2_two_sample, ks_test, weyl_expectation};
use wold::rmt::*;
use wold::testfn::TestFunction;

fn first_angles(group: SymmetryClass, sampler: Sampler, m: usize, seed: u64) -> Vec<f64> {
    draw_samples(group, 1, sampler, m, seed).unwrap().iter().map(|s| s.angles[0]).collect()
}

fn mean_and_stderr(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let m = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, (var / n).sqrt())
}

#[test]
fn n1_angle_laws_qr() {
    let u = first_angles(U, Sampler::Qr, 100_000, 1);
    assert!(u.iter().all(|t| (-PI..=PI).contains(t)));
    assert!(ks_test(&u, cdf_u1).passed);
    assert!(ks_test(&first_angles(SOPlus, Sampler::Qr, 100_000, 2), cdf_so2).passed);
    let s = first_angles(USp, Sampler::Qr, 100_000, 3);
    assert!(ks_test(&s, cdf_su2).passed);
    let c: Vec<f64> = s.iter().map(|t| 2.0 * t.cos()).collect();
    let (m, se) = mean_and_stderr(&c);
    assert!(m.abs() < 3.0 * se, "{m} ± {se}");
}

#[test]
fn n1_angle_laws_mcmc() {
    assert!(ks_test(&first_angles(USp, Sampler::Mcmc, 20_000, 4), cdf_su2).passed);
    assert!(ks_test(&first_angles(SOPlus, Sampler::Mcmc, 20_000, 5), cdf_so2).passed);
}

#[test]
fn n2_expectations_match_quadrature() {
    let sum = |t: &[f64]| t.iter().map(|x| 2.0 - 2.0 * x.cos()).sum::<f64>();
    let prod = |t: &[f64]| t.iter().map(|x| 2.0 - 2.0 * x.cos()).product::<f64>();
    let cases: [(SymmetryClass, &dyn Fn(&[f64]) -> f64, u64); 3] = [(U, &sum, 6), (U, &prod, 7), (SOPlus, &prod, 8)];
    for (g, h, seed) in cases {
        let v: Vec<f64> = draw_samples(g, 2, Sampler::Qr, 100_000, seed).unwrap().iter().map(|s| h(&s.angles)).collect();
        let (m, se) = mean_and_stderr(&v);
        let exact = weyl_expectation(g, 2, h);
        assert!((m - exact).abs() < 3.0 * se, "{g}: {m} ± {se} vs {exact}");
    }
}

#[test]
fn trace_second_moment() {
    // E|Tr A|² = ∫|Σe^{iθ}|² against the Weyl density, = 1 for every N
    let tr2 = |t: &[f64]| {
        let z: Complex64 = t.iter().map(|x| Complex64::from_polar(1.0, *x)).sum();
        z.norm_sqr()
    };
    for n in [1, 2] {
        assert!((weyl_expectation(U, n, tr2) - 1.0).abs() < 1e-9);
    }
    for (n, seed) in [(1, 9), (2, 10), (7, 11)] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v: Vec<f64> = (0..100_000).map(|_| haar_unitary(n, &mut rng).trace().norm_sqr()).collect();
        let (m, se) = mean_and_stderr(&v);
        assert!((m - 1.0).abs() < 3.0 * se, "N={n}: {m} ± {se}");
    }
}

#[test]
fn accepted_so_draws_have_unit_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..2000 {
        assert!((haar_so_even(3, &mut rng).determinant() - 1.0).abs() < 1e-8);
    }
}

#[test]
fn usp_one_k1_small_window_oracle() {
    let tf = TestFunction::fejer(0.2);
    let e = weighted_density_estimate(USp, 1, 1, tf, 100_000, 13).unwrap();
    let exact = small_n_oracle(USp, 1, &tf);
    assert!((e.value - exact).abs() < 3.0 * e.stderr, "{} ± {} vs {exact}", e.value, e.stderr);
}

#[test]
fn mcmc_histogram_matches_qr() {
    let qr: Vec<f64> = draw_samples(USp, 4, Sampler::Qr, 20_000, 14).unwrap().into_iter().flat_map(|s| s.angles).collect();
    let mc: Vec<f64> = draw_samples(USp, 4, Sampler::Mcmc, 20_000, 15).unwrap().into_iter().flat_map(|s| s.angles).collect();
    let t = chi2_two_sample(&qr, &mc, 0.0, PI, 30);
    assert!(t.passed, "{t:?}");
}

#[test]
fn convergence_trend_in_n() {
    let tf = TestFunction::fejer(1.0);
    for g in [U, USp, SOPlus] {
        let mut prev: Option<(f64, f64)> = None;
        for n in [8, 16, 32] {
            let cfg = RmtConfig::new(g, n, &[0, 1], tf, 20_000, 16);
            let est = weighted_density_estimates(&cfg).unwrap();
            for e in &est {
                if e.k != 1 {
                    continue;
                }
                if let Some((err, se)) = prev {
                    assert!(e.abs_err() <= err + 2.0 * 3.0 * (se + e.stderr), "{g} N={n}");
                }
                prev = Some((e.abs_err(), e.stderr));
            }
        }
    }
}

#[test]
fn determinism_across_runs_and_workers() {
    let tf = TestFunction::fejer(1.0);
    let mut cfg = RmtConfig::new(U, 10, &[1], tf, 3000, 17);
    let a = weighted_density_estimates(&cfg).unwrap()[0].value;
    cfg.workers = 2;
    let b = weighted_density_estimates(&cfg).unwrap()[0].value;
    assert_eq!(a.to_bits(), b.to_bits());
}

#[test]
fn estimator_weights_are_finite() {
    for g in [U, SOPlus, USp] {
        for s in draw_samples(g, 5, Sampler::Qr, 2000, 18).unwrap() {
            assert!(s.log_weight(4).is_finite());
            assert_eq!(s.angles.len(), 5);
        }
    }
}
