use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EulerKind {
    /// ∏ (1 − 1/(p(p+1)))
    AQuadratic,
    /// ∏ (1 − (4p² − 3p + 1)/(p³(p+1)))
    BQuadratic,
    /// ∏ (1 − p⁻²) = 1/ζ(2)
    InvZeta2,
}

impl EulerKind {
    fn factor_gap(self, p: f64) -> f64 {
        match self {
            EulerKind::AQuadratic => 1.0 / (p * (p + 1.0)),
            EulerKind::BQuadratic => (4.0 * p * p - 3.0 * p + 1.0) / (p * p * p * (p + 1.0)),
            EulerKind::InvZeta2 => 1.0 / (p * p),
        }
    }

    /// c with 0 < 1 − factor ≤ c/p² for every prime p.
    fn gap_constant(self) -> f64 {
        match self {
            EulerKind::AQuadratic | EulerKind::InvZeta2 => 1.0,
            EulerKind::BQuadratic => 4.0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EulerProduct {
    pub value: f64,
    /// The full product lies in [value − tail_bound, value].
    pub tail_bound: f64,
    pub cutoff: u64,
    pub tol_met: bool,
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Partial Euler product over primes ≤ `prime_cutoff`, accumulated in the
/// log domain, with a rigorous bound on the omitted tail.
pub fn euler_product(kind: EulerKind, prime_cutoff: u64, tail_tol: f64) -> EulerProduct {
    let cutoff = prime_cutoff.max(2);
    let log_sum: f64 = primes_up_to(cutoff)
        .into_iter()
        .map(|p| (-kind.factor_gap(p as f64)).ln_1p())
        .sum();
    let value = log_sum.exp();
    // |log(1−a)| ≤ a/(1−a) with a ≤ c/p², and Σ_{n>P} n⁻² ≤ 1/P.
    let c = kind.gap_constant();
    let pf = cutoff as f64;
    let log_tail = c / (pf * (1.0 - c / ((pf + 1.0) * (pf + 1.0))));
    let tail_bound = value * -(-log_tail).exp_m1();
    EulerProduct {
        value,
        tail_bound,
        cutoff,
        tol_met: tail_bound <= tail_tol,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cutoffs_are_exact_products() {
        let a = euler_product(EulerKind::AQuadratic, 3, 1.0);
        assert!((a.value - 55.0 / 72.0).abs() < 1e-15);
        let b = euler_product(EulerKind::BQuadratic, 2, 1.0);
        assert!((b.value - 13.0 / 24.0).abs() < 1e-15);
    }

    #[test]
    fn inv_zeta2_converges() {
        let r = euler_product(EulerKind::InvZeta2, 1_000_000, 1e-6);
        let target = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);
        assert!(r.tol_met);
        assert!((r.value - target).abs() < 1e-6);
        assert!(r.value >= target && r.value - r.tail_bound <= target);
    }

    #[test]
    fn reports_bound_when_tol_unreachable() {
        let r = euler_product(EulerKind::BQuadratic, 10, 1e-12);
        assert!(!r.tol_met);
        assert!(r.tail_bound > 1e-12);
    }

    #[test]
    fn primes() {
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(primes_up_to(1_000_000).len(), 78498);
    }
}
