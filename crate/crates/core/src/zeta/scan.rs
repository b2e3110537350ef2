//! Zero ordinates by sign-change scanning of Z, with a Gram-point count check.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use super::rs::{gram_index_below, gram_point, z_unchecked, RS_MIN_T};
use super::table::ZeroTable;
use crate::error::{Error, Result};

/// Grid steps per mean zero spacing.
const STEPS_PER_SPACING: f64 = 16.0;
const CHUNK: f64 = 400.0;
const ROOT_TOL: f64 = 1e-10;
/// local minima of |Z| below this are searched for a hidden pair of zeros
const PAIR_PROBE: f64 = 1.0;

fn mean_spacing(t: f64) -> f64 {
    2.0 * PI / (t / (2.0 * PI)).ln()
}

/// Illinois false position on a sign-changing bracket.
fn refine(mut a: f64, mut fa: f64, mut b: f64, mut fb: f64) -> f64 {
    let mut side = 0;
    for _ in 0..200 {
        let c = (a * fb - b * fa) / (fb - fa);
        let fc = z_unchecked(c);
        if fc == 0.0 {
            return c;
        }
        if fc.signum() == fb.signum() {
            b = c;
            fb = fc;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            a = c;
            fa = fc;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        }
        if (b - a).abs() < ROOT_TOL * b.abs().max(1.0) {
            break;
        }
    }
    0.5 * (a + b)
}

/// Minimize s·Z on [a, b] by golden section; returns (t, Z(t)).
fn golden_min(a: f64, b: f64, s: f64) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (a, b);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (s * z_unchecked(c), s * z_unchecked(d));
    for _ in 0..60 {
        if fc.min(fd) < 0.0 {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = s * z_unchecked(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = s * z_unchecked(d);
        }
    }
    if fc < fd {
        (c, s * fc)
    } else {
        (d, s * fd)
    }
}

fn scan_chunk(a: f64, b: f64) -> Vec<f64> {
    let mut roots = Vec::new();
    let mut pts: Vec<(f64, f64)> = vec![(a, z_unchecked(a))];
    let mut t = a;
    while t < b {
        t = (t + mean_spacing(t) / STEPS_PER_SPACING).min(b);
        let z = z_unchecked(t);
        let (tp, zp) = *pts.last().expect("nonempty");
        if zp.signum() != z.signum() {
            roots.push(refine(tp, zp, t, z));
        } else if pts.len() >= 2 {
            let (tq, zq) = pts[pts.len() - 2];
            if zq.signum() == zp.signum() && zp.abs() < zq.abs() && zp.abs() < z.abs() && zp.abs() < PAIR_PROBE {
                let (m, zm) = golden_min(tq, t, zp.signum());
                if zm.signum() != zp.signum() {
                    // two zeros hidden between grid points
                    let r1 = refine(tq, zq, m, zm);
                    let r2 = refine(m, zm, t, z);
                    roots.push(r1);
                    roots.push(r2);
                }
            }
        }
        pts.push((t, z));
        if pts.len() > 2 {
            pts.remove(0);
        }
    }
    roots
}

#[derive(Clone, Debug, Serialize)]
pub struct GramCheck {
    pub first_index: u64,
    pub last_index: u64,
    pub expected: u64,
    pub found: u64,
}

impl GramCheck {
    pub fn ok(&self) -> bool {
        self.expected == self.found
    }
}

fn good_gram(mut n: u64, up: bool) -> (u64, f64) {
    loop {
        let g = gram_point(n);
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        if sign * z_unchecked(g) > 0.0 {
            return (n, g);
        }
        if up {
            n += 1;
        } else {
            n -= 1;
        }
    }
}

/// Between good Gram points g_a < g_b inside the table range, the number of zeros
/// must equal b − a.
pub fn gram_check(table: &ZeroTable) -> GramCheck {
    let (na, ga) = good_gram(gram_index_below(table.lower) + 1, true);
    let (nb, gb) = good_gram(gram_index_below(table.upper), false);
    let found = table.gammas.iter().filter(|&&g| g > ga && g <= gb).count() as u64;
    GramCheck { first_index: na, last_index: nb, expected: nb.saturating_sub(na), found }
}

/// All zeros of Z in [lo, hi]; fails if the Gram count disagrees.
pub fn scan_zeros(lo: f64, hi: f64) -> Result<ZeroTable> {
    if !(lo >= RS_MIN_T) || !(hi > lo + 10.0) {
        return Err(Error::Domain(format!("scan range [{lo}, {hi}] invalid (need lo ≥ {RS_MIN_T})")));
    }
    let n = ((hi - lo) / CHUNK).ceil() as usize;
    let w = (hi - lo) / n as f64;
    let parts: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| scan_chunk(lo + w * i as f64, if i + 1 == n { hi } else { lo + w * (i + 1) as f64 }))
        .collect();
    let table = ZeroTable::new(parts.concat(), Some((lo, hi)))?;
    let check = gram_check(&table);
    if !check.ok() {
        return Err(Error::ZeroTable(format!(
            "Gram count between g_{} and g_{}: expected {}, found {}",
            check.first_index, check.last_index, check.expected, check.found
        )));
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_known_zeros() {
        let t = scan_zeros(86.0, 104.5).unwrap();
        let known = [87.425275, 88.809111, 92.491899, 94.651344, 95.870634, 98.831194, 101.317851, 103.725538];
        assert_eq!(t.count, known.len());
        for (a, b) in t.gammas.iter().zip(known) {
            assert!((a - b).abs() < 2e-3, "{a} vs {b}");
        }
    }

    #[test]
    fn count_matches_riemann_von_mangoldt_scale() {
        let t = scan_zeros(1000.0, 3000.0).unwrap();
        let smooth = |x: f64| super::super::rs::theta(x) / PI + 1.0;
        let expect = smooth(3000.0) - smooth(1000.0);
        assert!((t.count as f64 - expect).abs() < 3.0, "{} vs {expect}", t.count);
    }
}
