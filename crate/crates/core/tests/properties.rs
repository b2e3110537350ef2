use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, Zero};
use proptest::prelude::*;

use wold::exact::RationalPolynomial;
use wold::kernel::{closed_form_eval, fourier_poly, kernel_eval, SymmetryClass};
use wold::rmt::{weighted_density_estimates, RmtConfig};
use wold::shift::LaurentSeries;
use wold::testfn::TestFunction;
use wold::zeta::ZeroTable;

const GROUPS: [SymmetryClass; 3] = [SymmetryClass::U, SymmetryClass::USp, SymmetryClass::SOPlus];

fn rational() -> impl Strategy<Value = BigRational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn polynomial() -> impl Strategy<Value = RationalPolynomial> {
    prop::collection::vec(rational(), 0..6).prop_map(RationalPolynomial::new)
}

fn well_formed(p: &RationalPolynomial) -> bool {
    let c = p.coeffs();
    let reduced = c.iter().all(|r| r.denom().is_positive() && num::Integer::gcd(r.numer(), r.denom()).is_one());
    let trimmed = c.last().map_or(true, |r| !r.is_zero());
    let degree = match p.degree() {
        None => c.is_empty(),
        Some(d) => d + 1 == c.len(),
    };
    reduced && trimmed && degree
}

fn closed_form_k_max(group: SymmetryClass) -> u32 {
    match group {
        SymmetryClass::U => 2,
        _ => 4,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_ops_stay_normalized(p in polynomial(), q in polynomial(), y in rational()) {
        let sum = &p + &q;
        let diff = &p - &q;
        let prod = &p * &q;
        for r in [&p, &q, &sum, &diff, &prod] {
            prop_assert!(well_formed(r));
        }
        prop_assert_eq!(sum.eval(&y), p.eval(&y) + q.eval(&y));
        prop_assert_eq!(diff.eval(&y), p.eval(&y) - q.eval(&y));
        prop_assert_eq!(prod.eval(&y), p.eval(&y) * q.eval(&y));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn fourier_rows_satisfy_endpoint_rules(k in 1u32..=30) {
        for g in GROUPS {
            let kern = fourier_poly(g, k);
            prop_assert!(kern.check_endpoints().is_ok(), "{:?}", kern.check_endpoints());
            prop_assert!(well_formed(&kern.poly));
        }
    }

    #[test]
    fn kernels_are_even_and_match_closed_forms(x in -6.0f64..6.0, gi in 0usize..3, k in 0u32..=4) {
        let g = GROUPS[gi];
        let k = k.min(closed_form_k_max(g));
        let w = kernel_eval(g, k, x);
        prop_assert!(w.is_finite());
        prop_assert!((w - kernel_eval(g, k, -x)).abs() < 1e-12);
        let c = closed_form_eval(g, k, x).unwrap();
        prop_assert!((w - c).abs() < 1e-10, "({}, {}) at {}: {} vs {}", g, k, x, w, c);
    }

    #[test]
    fn test_functions_even_bounded(x in -50.0f64..50.0, a in 0.1f64..4.0) {
        for tf in [TestFunction::fejer(a), TestFunction::Gaussian] {
            let fx = tf.f(x);
            prop_assert!(fx >= 0.0 && fx <= 1.0 + 1e-15);
            prop_assert_eq!(fx, tf.f(-x));
            prop_assert_eq!(tf.fhat(x), tf.fhat(-x));
            prop_assert!(tf.fhat(x) >= 0.0 && tf.fhat(x) <= tf.integral());
            // decay bound f(x) ≤ C/(1 + x²)
            prop_assert!(fx * (1.0 + x * x) <= 1.0 + 1.0 / (a * a));
        }
        if let Some(s) = TestFunction::fejer(a).fhat_support() {
            prop_assert_eq!(TestFunction::fejer(a).fhat(s + x.abs() + 1e-9), 0.0);
        }
    }

    #[test]
    fn laurent_division_inverts_multiplication(
        av in -3i32..=2,
        bv in -3i32..=2,
        a in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 6),
        b in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 6),
    ) {
        let prec = 8;
        let mk = |v: Vec<(f64, f64)>| v.into_iter().map(|(r, i)| Complex64::new(r, i)).collect::<Vec<_>>();
        let mut b = mk(b);
        b[0] = Complex64::new(1.0, 0.5);
        let a = LaurentSeries::from_coeffs(av, prec, mk(a));
        let b = LaurentSeries::from_coeffs(bv, prec, b);
        let ab = a.mul(&b);
        prop_assert_eq!(ab.valuation(), a.valuation() + b.valuation());
        let back = ab.div(&b).unwrap();
        for e in a.valuation()..back.precision().min(a.precision()) {
            prop_assert!((back.coeff(e) - a.coeff(e)).norm() < 1e-9);
        }
        let s = a.add(&b).sub(&b);
        for e in a.valuation()..s.precision() {
            prop_assert!((s.coeff(e) - a.coeff(e)).norm() < 1e-12);
        }
    }

    #[test]
    fn zero_table_requires_strict_ascent(v in prop::collection::vec(10.0f64..100.0, 2..20)) {
        let ascending = v.windows(2).all(|w| w[1] > w[0]);
        prop_assert_eq!(ZeroTable::new(v.clone(), None).is_ok(), ascending);
        let mut sorted = v;
        sorted.sort_by(f64::total_cmp);
        sorted.dedup();
        prop_assert!(ZeroTable::new(sorted, None).is_ok());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn estimates_deterministic_across_workers(seed in any::<u64>(), gi in 0usize..3, n in 2usize..6) {
        let g = GROUPS[gi];
        let mut cfg = RmtConfig::new(g, n, &[0, 1, 2], TestFunction::fejer(1.0), 300, seed);
        cfg.workers = 1;
        let one = weighted_density_estimates(&cfg).unwrap();
        cfg.workers = 3;
        let three = weighted_density_estimates(&cfg).unwrap();
        for (a, b) in one.iter().zip(&three) {
            prop_assert_eq!(a.value.to_bits(), b.value.to_bits());
            prop_assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
            prop_assert!(a.stderr >= 0.0);
            prop_assert!(a.ess > 0.0 && a.ess <= a.n_samples as f64 * (1.0 + 1e-12));
            if a.reference != 0.0 {
                prop_assert_eq!(a.rel_err, (a.value - a.reference).abs() / a.reference.abs());
            }
        }
        // k = 0 carries unit weights
        prop_assert!((one[0].ess - one[0].n_samples as f64).abs() < 1e-6);
    }
}
