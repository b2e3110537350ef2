use num::complex::Complex64;

/// I_n(t) = ∫₀¹ yⁿ cos(ty) dy for n = 0..=n_max, t ≥ 0.
///
/// Uses E_n = ∫₀¹ yⁿ e^{ity} dy. Upward recurrence E_n = (e^{it} − nE_{n−1})/(it)
/// is stable for n ≤ t; downward E_n = (e^{it} − itE_{n+1})/(n+1) for n ≥ t;
/// Taylor series in t when t < 1.
pub fn monomial_cos_integrals(n_max: usize, t: f64) -> Vec<f64> {
    let t = t.abs();
    if t < 1.0 {
        return (0..=n_max).map(|n| taylor_cos(n, t)).collect();
    }
    let eit = Complex64::new(t.cos(), t.sin());
    let it = Complex64::new(0.0, t);
    let mut e = vec![Complex64::new(0.0, 0.0); n_max + 1];
    let up_to = (t.floor() as usize).min(n_max);
    e[0] = Complex64::new(t.sin() / t, (1.0 - t.cos()) / t);
    for n in 1..=up_to {
        e[n] = (eit - e[n - 1] * n as f64) / it;
    }
    if up_to < n_max {
        let start = n_max + 40 + t.ceil() as usize;
        let mut cur = eit / (start as f64 + 1.0);
        for n in (up_to + 1..start).rev() {
            cur = (eit - it * cur) / (n as f64 + 1.0);
            if n <= n_max {
                e[n] = cur;
            }
        }
    }
    e.into_iter().map(|z| z.re).collect()
}

/// Σ_m (−1)^m t^{2m} / ((2m)!(n+2m+1)), accurate for t < 1.
pub fn taylor_cos(n: usize, t: f64) -> f64 {
    let t2 = t * t;
    let mut term = 1.0;
    let mut acc = 0.0;
    for m in 0..40 {
        let c = term / (n + 2 * m + 1) as f64;
        acc += c;
        if c.abs() < 1e-18 * acc.abs().max(1e-300) {
            break;
        }
        term *= -t2 / (((2 * m + 1) * (2 * m + 2)) as f64);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Composite Simpson with many panels as an independent oracle.
    fn simpson(n: usize, t: f64) -> f64 {
        let m = 20000;
        let h = 1.0 / m as f64;
        let f = |y: f64| y.powi(n as i32) * (t * y).cos();
        let mut s = f(0.0) + f(1.0);
        for i in 1..m {
            let y = i as f64 * h;
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(y);
        }
        s * h / 3.0
    }

    #[test]
    fn matches_quadrature() {
        for &t in &[0.0, 0.3, 0.99, 1.0, 2.5, 7.0, 19.5, 40.0, 123.0] {
            let v = monomial_cos_integrals(25, t);
            for n in 0..=25 {
                let q = simpson(n, t);
                assert!((v[n] - q).abs() < 1e-11, "n={n} t={t}: {} vs {q}", v[n]);
            }
        }
    }

    #[test]
    fn switchover_overlap() {
        // Taylor and the recurrences agree where both are usable.
        for &t in &[1.0, 1.2, 1.6, 2.0] {
            let rec = monomial_cos_integrals(12, t);
            for (n, r) in rec.iter().enumerate() {
                assert!((r - taylor_cos(n, t)).abs() < 1e-13, "n={n} t={t}");
            }
        }
    }

    #[test]
    fn closed_values() {
        let t: f64 = 3.0;
        let v = monomial_cos_integrals(1, t);
        assert!((v[0] - t.sin() / t).abs() < 1e-15);
        let i1 = t.sin() / t + (t.cos() - 1.0) / (t * t);
        assert!((v[1] - i1).abs() < 1e-15);
    }
}
