//! Riemann–Siegel Z(t) with the first remainder term.

use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const RS_MIN_T: f64 = 50.0;

/// θ(t) by its asymptotic series.
pub fn theta(t: f64) -> f64 {
    let t2 = t * t;
    t / 2.0 * (t / (2.0 * PI)).ln() - t / 2.0 - PI / 8.0 + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t * t2)
        + 31.0 / (80640.0 * t2 * t2 * t)
}

/// θ′(t)
pub fn theta_prime(t: f64) -> f64 {
    0.5 * (t / (2.0 * PI)).ln() - 1.0 / (48.0 * t * t)
}

/// Ψ(p) = cos(2π(p² − p − 1/16)) / cos(2πp), with the removable singularities at
/// p = 1/4, 3/4 bridged by symmetric averaging.
fn psi(p: f64) -> f64 {
    let den = (2.0 * PI * p).cos();
    if den.abs() < 1e-7 {
        let h = 1e-4;
        return 0.5 * (psi(p - h) + psi(p + h));
    }
    (2.0 * PI * (p * p - p - 1.0 / 16.0)).cos() / den
}

/// Z(t) for t ≥ 50 (unchecked).
pub fn z_unchecked(t: f64) -> f64 {
    let a = (t / (2.0 * PI)).sqrt();
    let m = a.floor() as usize;
    let th = theta(t);
    let mut s = 0.0;
    for n in 1..=m {
        let nf = n as f64;
        s += (th - t * nf.ln()).cos() / nf.sqrt();
    }
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
    2.0 * s + sign * a.sqrt().recip() * psi(a - m as f64)
}

pub fn riemann_siegel_z(t: f64) -> Result<f64> {
    if !(t >= RS_MIN_T) || !t.is_finite() {
        return Err(Error::Domain(format!("Riemann–Siegel needs t ≥ {RS_MIN_T}, got {t}")));
    }
    Ok(z_unchecked(t))
}

/// Gram point g_n: θ(g_n) = nπ.
pub fn gram_point(n: u64) -> f64 {
    let target = n as f64 * PI;
    let nf = (n as f64).max(3.0);
    let mut t = (2.0 * PI * nf / nf.ln()).max(20.0);
    for _ in 0..60 {
        let step = (theta(t) - target) / theta_prime(t);
        t -= step;
        if step.abs() < 1e-12 * t {
            break;
        }
    }
    t
}

/// Index of the largest Gram point not above t.
pub fn gram_index_below(t: f64) -> u64 {
    (theta(t) / PI).floor().max(0.0) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_zeros_near_one_hundred() {
        for g in [87.425275, 88.809111, 92.491899, 94.651344, 95.870634, 98.831194, 101.317851, 103.725538] {
            let z = riemann_siegel_z(g).unwrap();
            assert!(z.abs() < 1e-2, "{g}: {z}");
            let s = riemann_siegel_z(g - 0.05).unwrap() * riemann_siegel_z(g + 0.05).unwrap();
            assert!(s < 0.0, "{g}");
        }
    }

    #[test]
    fn psi_is_continuous_at_removable_points() {
        for p in [0.25, 0.75] {
            let l = psi(p - 1e-3);
            let r = psi(p + 1e-3);
            assert!((psi(p) - 0.5 * (l + r)).abs() < 1e-4);
        }
    }

    #[test]
    fn gram_points_solve_theta() {
        for n in [10u64, 1000, 100_000] {
            let g = gram_point(n);
            assert!((theta(g) - n as f64 * PI).abs() < 1e-9);
            assert_eq!(gram_index_below(g + 1e-6), n);
        }
    }

    #[test]
    fn rejects_small_t() {
        assert!(riemann_siegel_z(10.0).is_err());
        assert!(riemann_siegel_z(f64::NAN).is_err());
    }
}
