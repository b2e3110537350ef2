//! Riemann zeta zeros: Riemann–Siegel evaluation, zero tables and the empirical
//! weighted density.

mod density;
mod rs;
mod scan;
mod table;

use std::path::Path;

pub use density::{
    tail_bound, weighted_density_zeta, window_x, zero_sum, Normalizer, ZetaConfig, ZetaEstimate, WINDOW_TOL,
};
pub use rs::{gram_index_below, gram_point, riemann_siegel_z, theta, RS_MIN_T};
pub use scan::{gram_check, scan_zeros, GramCheck};
pub use table::{load_zeros, ZeroTable};

use crate::error::{Error, Result};

/// Environment variable naming an external zero table.
pub const ZEROS_ENV: &str = "WOLD_ZEROS";

/// Zeros covering [lo, hi]: the table named by `WOLD_ZEROS` if set, else a cached
/// scan in `cache_dir` (scanned and written on first use).
pub fn provision_zeros(lo: f64, hi: f64, cache_dir: &Path) -> Result<ZeroTable> {
    if let Ok(p) = std::env::var(ZEROS_ENV) {
        let t = load_zeros(Path::new(&p))?;
        t.require(lo, hi)?;
        return Ok(t);
    }
    let (lo, hi) = (lo.floor(), hi.ceil());
    let path = cache_dir.join(format!("zeros_{lo}_{hi}.txt"));
    if path.exists() {
        if let Ok(t) = load_zeros(&path) {
            return Ok(t);
        }
    }
    let t = scan_zeros(lo, hi)?;
    std::fs::create_dir_all(cache_dir)?;
    t.write(&path)?;
    Ok(t)
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct SignCheck {
    pub checked: usize,
    pub failures: usize,
}

/// Z changes sign across each of the first `count` ordinates at or above `from`.
pub fn sign_change_check(table: &ZeroTable, from: f64, count: usize) -> Result<SignCheck> {
    let start = table.gammas.partition_point(|&g| g < from);
    let g = &table.gammas;
    if start + count > g.len() {
        return Err(Error::ZeroTable(format!("fewer than {count} zeros above {from}")));
    }
    let mut failures = 0;
    for i in start..start + count {
        let left = if i > 0 { g[i] - g[i - 1] } else { 1.0 };
        let right = if i + 1 < g.len() { g[i + 1] - g[i] } else { 1.0 };
        let eps = left.min(right) / 3.0;
        let a = riemann_siegel_z(g[i] - eps)?;
        let b = riemann_siegel_z(g[i] + eps)?;
        if a * b >= 0.0 {
            failures += 1;
        }
    }
    Ok(SignCheck { checked: count, failures })
}
