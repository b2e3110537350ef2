//! Acceptance suites: one [`Check`] per criterion, each with per-item lines.

use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use num::{BigRational, Zero};
use serde::Serialize;

use crate::exact::{
    c_coeff, double_factorial, euler_product, hyp2f1_chu_vandermonde, hyp2f1_direct, hyp3f2_closed_low,
    hyp3f2_closed_m0, hyp3f2_closed_top, hyp3f2_terminating, int, lemma_half_closed, lemma_value_half, rat, sign,
    EulerKind, RationalPolynomial,
};
use crate::kernel::{closed_form_eval, fourier_poly, kernel_eval, kernel_series, relations_check, SymmetryClass};
use crate::rmt::stats::{cdf_so2, cdf_su2, cdf_u1, ks_test};
use crate::rmt::{draw_samples, small_n_oracle, weighted_density_estimates, RmtConfig, Sampler};
use crate::shift::{
    builtin_expression, chain_cases, grid, kernel_chain_check, kernel_chain_check_limit, limit_shifts_zero,
    sample_w, BuiltinCase,
};
use crate::testfn::TestFunction;
use crate::zeta::{
    gram_check, load_zeros, provision_zeros, sign_change_check, weighted_density_zeta, ZetaConfig, ZEROS_ENV,
};

use SymmetryClass::{SOPlus, USp, U};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Exact,
    Kernels,
    ShiftLimit,
    Rmt,
    Zeta,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Exact => "exact",
            Suite::Kernels => "kernels",
            Suite::ShiftLimit => "shiftlimit",
            Suite::Rmt => "rmt",
            Suite::Zeta => "zeta",
            Suite::All => "all",
        }
    }

    pub fn criteria(self) -> Vec<Criterion> {
        match self {
            Suite::All => Criterion::ALL.to_vec(),
            s => Criterion::ALL.into_iter().filter(|c| c.suite() == s).collect(),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        [Suite::Exact, Suite::Kernels, Suite::ShiftLimit, Suite::Rmt, Suite::Zeta, Suite::All]
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite '{s}' (exact|kernels|shiftlimit|rmt|zeta|all)"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    PolyTable,
    Endpoints,
    Hypergeometric,
    Series,
    KernelRoutes,
    ShiftLimit,
    RmtLimits,
    SmallN,
    SamplerStats,
    Zeta,
    Euler,
}

impl Criterion {
    pub const ALL: [Criterion; 11] = [
        Criterion::PolyTable,
        Criterion::Endpoints,
        Criterion::Hypergeometric,
        Criterion::Series,
        Criterion::KernelRoutes,
        Criterion::ShiftLimit,
        Criterion::RmtLimits,
        Criterion::SmallN,
        Criterion::SamplerStats,
        Criterion::Zeta,
        Criterion::Euler,
    ];

    pub fn suite(self) -> Suite {
        use Criterion::*;
        match self {
            PolyTable | Endpoints | Hypergeometric | Euler => Suite::Exact,
            Series | KernelRoutes => Suite::Kernels,
            ShiftLimit => Suite::ShiftLimit,
            RmtLimits | SmallN | SamplerStats => Suite::Rmt,
            Zeta => Suite::Zeta,
        }
    }

    pub fn title(self) -> &'static str {
        use Criterion::*;
        match self {
            PolyTable => "polynomial table",
            Endpoints => "degrees and endpoints, k <= 25",
            Hypergeometric => "hypergeometric identities, k <= 40",
            Series => "series vanishing and leading terms",
            KernelRoutes => "kernel route agreement",
            ShiftLimit => "shift limits and kernel chain",
            RmtLimits => "random-matrix weighted densities, N = 30",
            SmallN => "USp(2) exact oracle",
            SamplerStats => "sampler statistics",
            Zeta => "zeta zeros, T = 1e5",
            Euler => "Euler products",
        }
    }

    /// Wall-clock limit in seconds, where one applies.
    pub fn time_limit(self) -> Option<f64> {
        use Criterion::*;
        match self {
            PolyTable => Some(1.0),
            Hypergeometric => Some(5.0),
            ShiftLimit => Some(10.0),
            RmtLimits => Some(600.0),
            Zeta => Some(900.0),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Item {
    pub passed: bool,
    pub text: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub criterion: Criterion,
    pub passed: bool,
    /// failures of ungated checks are reported but do not fail a suite
    pub gated: bool,
    pub seconds: f64,
    pub items: Vec<Item>,
    pub notes: Vec<String>,
}

impl Check {
    pub fn status(&self) -> &'static str {
        match (self.passed, self.gated) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "FAIL (exploratory, not gated)",
        }
    }

    pub fn headline(&self) -> String {
        format!(
            "{} [{}] {} ({:.2} s)",
            self.status(),
            self.criterion.suite(),
            self.criterion.title(),
            self.seconds
        )
    }

    pub fn report(&self) -> String {
        let mut s = self.headline();
        for it in &self.items {
            s += &format!("\n    {} {}", if it.passed { "ok  " } else { "FAIL" }, it.text);
        }
        for n in &self.notes {
            s += &format!("\n    note {n}");
        }
        s
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub workers: usize,
    /// where scanned zero tables are cached
    pub cache_dir: PathBuf,
    /// externally provisioned zero table; makes the zeta check gated
    pub zeros: Option<PathBuf>,
    pub seed: u64,
}

impl VerifyOptions {
    pub fn new(cache_dir: &Path) -> Self {
        VerifyOptions {
            workers: rayon::current_num_threads(),
            cache_dir: cache_dir.to_path_buf(),
            zeros: std::env::var_os(ZEROS_ENV).map(PathBuf::from),
            seed: 2024,
        }
    }
}

#[derive(Default)]
struct Items {
    items: Vec<Item>,
    notes: Vec<String>,
}

impl Items {
    fn push(&mut self, passed: bool, text: impl Into<String>) {
        self.items.push(Item { passed, text: text.into() });
    }

    fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }
}

pub fn run_criterion(c: Criterion, opts: &VerifyOptions) -> Check {
    let start = Instant::now();
    let mut it = Items::default();
    let mut gated = true;
    match c {
        Criterion::PolyTable => poly_table(&mut it),
        Criterion::Endpoints => endpoints(&mut it),
        Criterion::Hypergeometric => hypergeometric(&mut it),
        Criterion::Series => series(&mut it),
        Criterion::KernelRoutes => kernel_routes(&mut it),
        Criterion::ShiftLimit => shift_limit(&mut it),
        Criterion::RmtLimits => rmt_limits(&mut it, opts),
        Criterion::SmallN => small_n(&mut it, opts),
        Criterion::SamplerStats => sampler_stats(&mut it, opts),
        Criterion::Zeta => gated = zeta(&mut it, opts),
        Criterion::Euler => euler(&mut it),
    }
    let seconds = start.elapsed().as_secs_f64();
    if let Some(limit) = c.time_limit() {
        it.push(seconds < limit, format!("runtime {seconds:.2} s < {limit} s"));
    }
    Check {
        criterion: c,
        passed: it.items.iter().all(|i| i.passed),
        gated,
        seconds,
        items: it.items,
        notes: it.notes,
    }
}

/// Runs every criterion of the suite, calling `each` as checks complete.
pub fn run_suite(suite: Suite, opts: &VerifyOptions, mut each: impl FnMut(&Check)) -> Vec<Check> {
    suite
        .criteria()
        .into_iter()
        .map(|c| {
            let check = run_criterion(c, opts);
            each(&check);
            check
        })
        .collect()
}

/// True when no gated check failed.
pub fn suite_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed || !c.gated)
}

fn poly(c: &[(i64, i64)]) -> RationalPolynomial {
    RationalPolynomial::new(c.iter().map(|&(n, d)| rat(n, d)).collect())
}

/// Table cells in ascending degree.
fn table_cells() -> Vec<(SymmetryClass, u32, RationalPolynomial)> {
    let usp = [
        poly(&[(-1, 2)]),
        poly(&[(-3, 2), (2, 1)]),
        poly(&[(-5, 2), (6, 1), (0, 1), (-4, 1)]),
        poly(&[(-7, 2), (12, 1), (0, 1), (-20, 1), (0, 1), (12, 1)]),
        poly(&[(-9, 2), (20, 1), (0, 1), (-60, 1), (0, 1), (84, 1), (0, 1), (-40, 1)]),
    ];
    let mut v = vec![
        (U, 0, RationalPolynomial::zero()),
        (U, 1, poly(&[(-1, 1), (1, 1)])),
        (U, 2, poly(&[(-2, 1), (4, 1), (0, 1), (-2, 1)])),
        (SOPlus, 0, poly(&[(1, 2)])),
        (SOPlus, 1, poly(&[(-1, 2)])),
    ];
    for (k, p) in usp.iter().enumerate() {
        v.push((USp, k as u32, p.clone()));
    }
    for k in 2..=4u32 {
        v.push((SOPlus, k, usp[k as usize - 1].clone()));
    }
    v
}

fn poly_table(it: &mut Items) {
    for (g, k, want) in table_cells() {
        let got = fourier_poly(g, k).poly;
        it.push(got == want, format!("P_{g}^{k} = {got}"));
    }
}

fn endpoints(it: &mut Items) {
    let mut bad = Vec::new();
    for k in 0..=25 {
        for g in SymmetryClass::ALL {
            if let Err(e) = fourier_poly(g, k).check_endpoints() {
                bad.push(e);
            }
        }
    }
    it.push(bad.is_empty(), format!("78 (group, k) endpoint/degree predictions, {} violations", bad.len()));
    for b in bad.iter().take(5) {
        it.note(b.clone());
    }
    let r = relations_check(25);
    it.push(r.ok(), format!("SO/USp shift and U average relations: {} coefficient checks, {} violations", r.checks, r.violations.len()));
}

fn hypergeometric(it: &mut Items) {
    let mut n = 0;
    let mut fail = Vec::new();
    let mut check = |ok: bool, what: String| {
        n += 1;
        if !ok {
            fail.push(what);
        }
    };
    for k in 1..=40u32 {
        check(lemma_value_half(k).ok() == Some(lemma_half_closed(k)), format!("half-parameter value k={k}"));
        check(hyp3f2_terminating(k, 0).ok() == Some(hyp3f2_closed_m0(k)), format!("m=0 value k={k}"));
        for m in 1..=k {
            check(hyp3f2_terminating(k, m).ok() == Some(hyp3f2_closed_low(k, m)), format!("k={k} m={m}"));
        }
        check(hyp3f2_terminating(k, k + 1).ok() == Some(hyp3f2_closed_top(k)), format!("k={k} m=k+1"));
        for j in 1..=k {
            let c = c_coeff(j, k).expect("1 <= j <= k");
            check(c.is_integer(), format!("c_{j},{k} integral"));
        }
    }
    for k in 1..=50u32 {
        let (b, c) = (int(k as i64 + 1), int(1));
        let d = hyp2f1_direct(k, &b, &c).ok();
        let cv = hyp2f1_chu_vandermonde(k, &b, &c).ok();
        check(d == cv && d == Some(int(sign(k as i64))), format!("2F1(-{k},{};1;1)", k + 1));
    }
    it.push(fail.is_empty(), format!("{n} exact identities, {} mismatches", fail.len()));
    for f in fail.iter().take(5) {
        it.note(f.clone());
    }
}

/// (group, k, m, c) meaning W ~ c·π^{2m}x^{2m}.
fn asymptotic_cells() -> Vec<(SymmetryClass, u32, usize, BigRational)> {
    let usp = [rat(2, 3), rat(2, 45), rat(2, 1575), rat(2, 99225), rat(2, 9823275)];
    let mut v = vec![
        (U, 0, 0, rat(1, 1)),
        (U, 1, 1, rat(1, 3)),
        (U, 2, 2, rat(1, 45)),
        (SOPlus, 0, 0, rat(2, 1)),
    ];
    for k in 0..5 {
        v.push((USp, k as u32, k + 1, usp[k].clone()));
    }
    for k in 1..5 {
        v.push((SOPlus, k as u32, k, usp[k - 1].clone()));
    }
    v
}

fn two_pow(n: usize) -> BigRational {
    BigRational::from_integer(num::BigInt::from(1) << n)
}

fn series(it: &mut Items) {
    let mut bad = 0;
    for k in 0..=10u32 {
        let s = kernel_series(USp, k, k as usize + 3);
        let vanish = s.coeffs[..=k as usize].iter().all(|c| c.is_zero());
        let kk = k as i64;
        // β_{k+1,k} = 2π^{2(k+1)}/((2k+1)!!(2k+3)!!) = r·(2π)^{2(k+1)}
        let want = rat(2, 1)
            / BigRational::from_integer(double_factorial(2 * kk + 1) * double_factorial(2 * kk + 3))
            / two_pow(2 * (k as usize + 1));
        if !vanish || s.coeffs[k as usize + 1] != want {
            bad += 1;
        }
    }
    it.push(bad == 0, format!("USp: r_m = 0 for m <= k and leading r_(k+1) exact for k <= 10 ({bad} bad)"));
    let mut bad_u = 0;
    for k in 0..=10u32 {
        let kk = k as i64;
        let s = kernel_series(U, k, k as usize + 2);
        let want = BigRational::from_integer(1.into())
            / BigRational::from_integer(double_factorial(2 * kk - 1) * double_factorial(2 * kk + 1))
            / two_pow(2 * k as usize);
        if s.leading() != Some((k as usize, &want)) {
            bad_u += 1;
        }
    }
    it.push(bad_u == 0, format!("U: leading term pi^2k x^2k/((2k-1)!!(2k+1)!!) for k <= 10 ({bad_u} bad)"));
    for (g, k, m, c) in asymptotic_cells() {
        let s = kernel_series(g, k, m + 2);
        let want = &c / two_pow(2 * m);
        let ok = s.leading() == Some((m, &want));
        it.push(ok, format!("W_{g}^{k} ~ {c} pi^{} x^{}", 2 * m, 2 * m));
    }
}

fn kernel_routes(it: &mut Items) {
    let xs: Vec<f64> = (0..=1000).map(|i| -5.0 + 0.01 * i as f64).collect();
    for g in SymmetryClass::ALL {
        let kmax = if g == U { 2 } else { 4 };
        for k in 0..=kmax {
            let mut worst = (0.0f64, 0.0);
            for &x in &xs {
                let e = match closed_form_eval(g, k, x) {
                    Ok(v) => (kernel_eval(g, k, x) - v).abs(),
                    Err(_) => f64::INFINITY,
                };
                if !(e <= worst.0) {
                    worst = (e, x);
                }
            }
            it.push(worst.0 < 1e-10, format!("({g}, k={k}) closed form: max {:.2e} at x = {:.2}", worst.0, worst.1));
        }
    }
    let xs: Vec<f64> = (0..=400).map(|i| -0.2 + 0.001 * i as f64).collect();
    let mut worst = 0.0f64;
    for g in SymmetryClass::ALL {
        for k in 0..=6 {
            let s = kernel_series(g, k, 20);
            for &x in &xs {
                worst = worst.max((s.eval(x) - kernel_eval(g, k, x)).abs());
            }
        }
    }
    it.push(worst < 1e-12, format!("20-term series vs kernel_eval, |x| <= 0.2, k <= 6: max {worst:.2e}"));
}

fn shift_limit(it: &mut Items) {
    let ws = sample_w();
    for case in BuiltinCase::ALL {
        let e = builtin_expression(case);
        let (mut pole, mut err, mut failed) = (0.0f64, 0.0f64, None);
        for &w in &ws {
            match limit_shifts_zero(&e, w, 3, 1e-9) {
                Ok(l) => {
                    pole = pole.max(l.max_pole_rel);
                    err = err.max((l.complex() - case.printed().eval(w)).norm());
                }
                Err(x) => failed = Some(x.to_string()),
            }
        }
        let ok = failed.is_none() && pole < 1e-9 && err < 1e-10;
        it.push(ok, format!("{case}: {} w-points, pole {pole:.1e}, closed-form error {err:.1e}", ws.len()));
        if let Some(f) = failed {
            it.note(format!("{case}: {f}"));
        }
    }
    let xs = grid(-4.0, 4.0, 0.05);
    for cc in chain_cases() {
        match kernel_chain_check(cc.group, cc.k, &xs) {
            Ok(r) => it.push(
                r.passed(1e-9),
                format!("chain ({}, k={}): max {:.1e} at x = {:.2}", cc.group, cc.k, r.max_err, r.worst_x),
            ),
            Err(e) => it.push(false, format!("chain ({}, k={}): {e}", cc.group, cc.k)),
        }
    }
    for cc in chain_cases().into_iter().filter(|c| c.builtin.is_some()) {
        match kernel_chain_check_limit(cc.group, cc.k, &xs, 3) {
            Ok(r) => it.push(
                r.passed(1e-9),
                format!("chain from limit ({}, k={}): max {:.1e} at x = {:.2}", cc.group, cc.k, r.max_err, r.worst_x),
            ),
            Err(e) => it.push(false, format!("chain from limit ({}, k={}): {e}", cc.group, cc.k)),
        }
    }
}

fn rmt_limits(it: &mut Items, opts: &VerifyOptions) {
    let tf = TestFunction::fejer(1.0);
    let runs: [(SymmetryClass, &[u32], u64); 3] = [(U, &[1], 1), (USp, &[1, 2], 2), (SOPlus, &[1], 3)];
    for (g, ks, s) in runs {
        let mut cfg = RmtConfig::new(g, 30, ks, tf, 200_000, opts.seed.wrapping_mul(1000) + s);
        cfg.workers = opts.workers;
        match weighted_density_estimates(&cfg) {
            Ok(est) => {
                for e in est {
                    let floor = if e.k == 2 { 0.06 } else { 0.03 };
                    it.push(
                        e.within(floor),
                        format!(
                            "({g}, k={}): {:.5} vs {:.5}, |diff| {:.5} < max({floor}, 3*{:.5}), ess {:.0}",
                            e.k,
                            e.value,
                            e.reference,
                            e.abs_err(),
                            e.stderr,
                            e.ess
                        ),
                    );
                }
            }
            Err(e) => it.push(false, format!("({g}): {e}")),
        }
    }
    it.note(format!("{} worker thread(s)", opts.workers));
}

fn small_n(it: &mut Items, opts: &VerifyOptions) {
    let tf = TestFunction::fejer(0.2);
    let mut cfg = RmtConfig::new(USp, 1, &[0, 1], tf, 100_000, opts.seed.wrapping_mul(1000) + 4);
    cfg.workers = opts.workers;
    match weighted_density_estimates(&cfg) {
        Ok(est) => {
            for e in est {
                let oracle = small_n_oracle(USp, e.k, &tf);
                let d = (e.value - oracle).abs();
                it.push(
                    d < 3.0 * e.stderr,
                    format!("k={}: {:.6} vs quadrature {:.6}, |diff| {:.2e} < 3*{:.2e}", e.k, e.value, oracle, d, e.stderr),
                );
            }
        }
        Err(e) => it.push(false, e.to_string()),
    }
}

fn sampler_stats(it: &mut Items, opts: &VerifyOptions) {
    let laws: [(SymmetryClass, &str, fn(f64) -> f64); 3] =
        [(U, "U(1) uniform", cdf_u1), (SOPlus, "SO(2) uniform", cdf_so2), (USp, "SU(2) sine-squared", cdf_su2)];
    for (i, (g, name, cdf)) in laws.into_iter().enumerate() {
        match draw_samples(g, 1, Sampler::Qr, 100_000, opts.seed.wrapping_mul(1000) + 10 + i as u64) {
            Ok(s) => {
                let a: Vec<f64> = s.iter().map(|x| x.angles[0]).collect();
                let r = ks_test(&a, cdf);
                it.push(r.passed, format!("KS {name}: D = {:.5} < {:.5}", r.statistic, r.critical));
            }
            Err(e) => it.push(false, format!("KS {name}: {e}")),
        }
    }
    let tf = TestFunction::fejer(1.0);
    let mut est = Vec::new();
    for (sampler, s) in [(Sampler::Qr, 20), (Sampler::Mcmc, 21)] {
        let mut cfg = RmtConfig::new(USp, 6, &[1], tf, 40_000, opts.seed.wrapping_mul(1000) + s);
        cfg.workers = opts.workers;
        cfg.sampler = sampler;
        match weighted_density_estimates(&cfg) {
            Ok(mut e) => est.push(e.remove(0)),
            Err(e) => it.push(false, format!("USp N=6 {sampler:?}: {e}")),
        }
    }
    if let [q, m] = &est[..] {
        let se = q.stderr.hypot(m.stderr);
        let d = (q.value - m.value).abs();
        it.push(d < 3.0 * se, format!("USp N=6 k=1: QR {:.5} vs MCMC {:.5}, |diff| {:.5} < 3*{:.5}", q.value, m.value, d, se));
    }
}

/// Returns whether the check is gated (an external table was supplied).
fn zeta(it: &mut Items, opts: &VerifyOptions) -> bool {
    let t = 1e5;
    let tf = TestFunction::fejer(1.0);
    let literal = ZetaConfig::new(&[0, 1], t, tf);
    let mut local = literal.clone();
    local.local_scaling = true;
    let (a, b) = (literal.required_range(), local.required_range());
    let (lo, hi) = (a.0.min(b.0), a.1.max(b.1));
    let gated = opts.zeros.is_some();
    let table = match &opts.zeros {
        Some(p) => load_zeros(p).and_then(|tb| tb.require(lo, hi).map(|_| tb)),
        None => provision_zeros(lo, hi, &opts.cache_dir),
    };
    let table = match table {
        Ok(tb) => tb,
        Err(e) => {
            it.push(false, format!("zero table: {e}"));
            return gated;
        }
    };
    let g = gram_check(&table);
    it.push(
        g.ok(),
        format!("{} zeros on [{}, {}]; Gram count g_{}..g_{}: {} of {}", table.count, table.lower, table.upper, g.first_index, g.last_index, g.found, g.expected),
    );
    match sign_change_check(&table, t, 1000) {
        Ok(s) => it.push(s.failures == 0, format!("Z changes sign at {} consecutive zeros above T ({} failures)", s.checked, s.failures)),
        Err(e) => it.push(false, e.to_string()),
    }
    match weighted_density_zeta(&literal, &table) {
        Ok(est) => {
            for e in &est {
                let tol = if e.k == 0 { 0.05 } else { 0.15 };
                it.push(
                    e.rel_err < tol,
                    format!(
                        "k={}: {:.5} vs {:.5}, relative error {:.4} < {tol} (scale log T/2pi; discretization {:.1e}, tail {:.1e})",
                        e.k, e.value, e.reference, e.rel_err, e.discretization_bound, e.tail_bound
                    ),
                );
            }
            let m = est[1].moment / t.ln();
            it.push((m - 1.0).abs() < 0.15, format!("mean Z^2 over [T, 2T] = {:.4} = {m:.4} log T", est[1].moment));
        }
        Err(e) => it.push(false, e.to_string()),
    }
    match weighted_density_zeta(&local, &table) {
        Ok(est) => {
            for e in est {
                it.note(format!("local scaling log(t/2pi)/2pi: k={} gives {:.5} (relative error {:.4})", e.k, e.value, e.rel_err));
            }
        }
        Err(e) => it.note(format!("local scaling: {e}")),
    }
    if !gated {
        it.note("zero table scanned locally rather than supplied; check is exploratory");
    }
    gated
}

fn euler(it: &mut Items) {
    let r = euler_product(EulerKind::InvZeta2, 1_000_000, 1e-6);
    let target = 6.0 / (PI * PI);
    let ok = (r.value - target).abs() < 1e-6 && r.value - r.tail_bound <= target && target <= r.value;
    it.push(ok, format!("prod(1 - p^-2), p <= 1e6: {:.10} vs 6/pi^2 {:.10}, tail bound {:.1e}", r.value, target, r.tail_bound));
    let cutoffs = [10u64, 100, 1000, 10_000, 100_000, 1_000_000];
    for (kind, name) in [(EulerKind::AQuadratic, "A"), (EulerKind::BQuadratic, "B")] {
        let v: Vec<_> = cutoffs.iter().map(|&c| euler_product(kind, c, 0.0)).collect();
        let ok = v.windows(2).all(|w| w[1].value <= w[0].value && w[0].value - w[1].value <= w[0].tail_bound);
        it.push(
            ok,
            format!("{name}: decreasing in the cutoff, steps within tail bounds; value {:.10} at 1e6 (bound {:.1e})", v[5].value, v[5].tail_bound),
        );
    }
}
