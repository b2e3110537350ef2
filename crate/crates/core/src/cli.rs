//! Command-line entry point. Exit codes: 0 success, 1 suite failure, 2 usage or input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::kernel::{fourier_poly, kernel_eval, kernel_series, SymmetryClass};
use crate::plot;
use crate::rmt::{weighted_density_estimates, RmtConfig, Sampler};
use crate::testfn::TestFunction;
use crate::verify::{run_suite, suite_passed, Suite, VerifyOptions};
use crate::zeta::{load_zeros, provision_zeros, scan_zeros, weighted_density_zeta, Normalizer, ZetaConfig, ZEROS_ENV};

#[derive(Parser, Debug)]
#[command(name = "wold", version, about = "Weighted one-level density kernels and checks")]
struct Cli {
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Write the result here instead of stdout
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact coefficients of P_G^k
    Poly(GroupK),
    /// CSV of (x, W_G^k(x)) on a grid
    Kernel {
        #[command(flatten)]
        gk: GroupK,
        /// start:stop:count
        #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
        grid: Grid,
    },
    /// Taylor coefficients of W_G^k at 0, W = Σ r_m (2πx)^{2m}
    Series {
        #[command(flatten)]
        gk: GroupK,
        #[arg(long, default_value_t = 12)]
        terms: usize,
    },
    /// Random-matrix estimate of the weighted one-level density
    Rmt(RmtArgs),
    /// Zeta-zero estimate of the weighted one-level density
    Zeta(ZetaArgs),
    /// Scan zeros of Z(t) on [lo, hi] and write a table
    Zeros {
        #[arg(long)]
        lo: f64,
        #[arg(long)]
        hi: f64,
    },
    /// Run acceptance suites
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        /// Directory for scanned zero tables
        #[arg(long, default_value = "zeros-cache")]
        cache_dir: PathBuf,
        /// Externally provisioned zero table
        #[arg(long)]
        zeros: Option<PathBuf>,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
    /// SVG chart of P_USp^k on [0, 1] or W_USp^k on [−3, 3]
    Plot {
        #[arg(long, value_parser = ["poly", "kernel"])]
        figure: String,
        #[arg(long, default_value_t = 4)]
        k_max: u32,
        #[arg(long, default_value_t = 601)]
        points: usize,
    },
}

#[derive(Args, Debug)]
struct GroupK {
    #[arg(long)]
    group: SymmetryClass,
    #[arg(long)]
    k: u32,
}

#[derive(Args, Debug)]
struct RmtArgs {
    #[arg(long)]
    group: SymmetryClass,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    samples: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value = "fejer:1")]
    testfn: TestFunction,
    /// Use the Weyl-density Metropolis sampler
    #[arg(long, value_parser = ["mcmc"])]
    oracle: Option<String>,
    /// Allow k above the default cap
    #[arg(long)]
    allow_high_k: bool,
}

#[derive(Args, Debug)]
struct ZetaArgs {
    /// Zero table (default: $WOLD_ZEROS, else a scan cached in --cache-dir)
    #[arg(long)]
    zeros: Option<PathBuf>,
    #[arg(long, default_value = "zeros-cache")]
    cache_dir: PathBuf,
    #[arg(long)]
    t: f64,
    #[arg(long)]
    k: u32,
    #[arg(long, default_value = "fejer:1")]
    testfn: TestFunction,
    #[arg(long)]
    grid_step: Option<f64>,
    #[arg(long, default_value = "empirical")]
    normalizer: Normalizer,
    #[arg(long)]
    local_scaling: bool,
}

#[derive(Clone, Copy, Debug)]
struct Grid {
    start: f64,
    stop: f64,
    count: usize,
}

impl Grid {
    fn points(&self) -> Vec<f64> {
        match self.count {
            1 => vec![self.start],
            n => (0..n)
                .map(|i| self.start + (self.stop - self.start) * i as f64 / (n - 1) as f64)
                .collect(),
        }
    }
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, n] = parts[..] else {
        return Err("expected start:stop:count".into());
    };
    let start: f64 = a.parse().map_err(|_| format!("bad start '{a}'"))?;
    let stop: f64 = b.parse().map_err(|_| format!("bad stop '{b}'"))?;
    let count: usize = n.parse().map_err(|_| format!("bad count '{n}'"))?;
    if count == 0 || !start.is_finite() || !stop.is_finite() {
        return Err("count must be positive and endpoints finite".into());
    }
    Ok(Grid { start, stop, count })
}

enum Failure {
    Usage(String),
    Suite,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn header(args: &[String]) -> String {
    format!("# wold {}", args.join(" "))
}

fn json_out(config: Value, mut body: Value) -> String {
    if let Value::Object(m) = &mut body {
        m.insert("config".into(), config);
    }
    serde_json::to_string_pretty(&body).expect("serializable") + "\n"
}

fn execute(cli: &Cli, argv: &[String]) -> Result<String, Failure> {
    let workers = cli.workers.unwrap_or_else(rayon::current_num_threads);
    Ok(match &cli.cmd {
        Command::Poly(GroupK { group, k }) => {
            let p = fourier_poly(*group, *k).poly;
            format!("{}\n{}\n", header(argv), p)
        }
        Command::Kernel { gk, grid } => {
            let mut s = format!("{}\nx,W\n", header(argv));
            for x in grid.points() {
                s += &format!("{x},{}\n", kernel_eval(gk.group, gk.k, x));
            }
            s
        }
        Command::Series { gk, terms } => {
            let ser = kernel_series(gk.group, gk.k, *terms);
            let mut s = format!("{}\nm,r_m,beta_m\n", header(argv));
            let two_pi = 2.0 * std::f64::consts::PI;
            for (m, r) in ser.coeffs.iter().enumerate() {
                let beta = crate::exact::to_f64(r) * two_pi.powi(2 * m as i32);
                s += &format!("{m},{r},{beta}\n");
            }
            s
        }
        Command::Rmt(a) => {
            let mut cfg = RmtConfig::new(a.group, a.n, &[a.k], a.testfn, a.samples, a.seed);
            cfg.workers = workers;
            cfg.allow_high_k = a.allow_high_k;
            if a.oracle.is_some() {
                cfg.sampler = Sampler::Mcmc;
            }
            let est = weighted_density_estimates(&cfg)?.remove(0);
            let config = json!({
                "command": "rmt", "group": a.group, "n": a.n, "k": a.k, "samples": a.samples,
                "seed": a.seed, "testfn": a.testfn.to_string(), "workers": workers,
                "sampler": format!("{:?}", cfg.sampler).to_lowercase(), "allow_high_k": a.allow_high_k,
            });
            json_out(config, serde_json::to_value(&est)?)
        }
        Command::Zeta(a) => {
            let mut cfg = ZetaConfig::new(&[a.k], a.t, a.testfn);
            cfg.grid_step = a.grid_step;
            cfg.normalizer = a.normalizer;
            cfg.local_scaling = a.local_scaling;
            let table = match &a.zeros {
                Some(p) => load_zeros(p)?,
                None => {
                    let (lo, hi) = cfg.required_range();
                    provision_zeros(lo, hi, &a.cache_dir)?
                }
            };
            let est = weighted_density_zeta(&cfg, &table)?.remove(0);
            let source = a
                .zeros
                .clone()
                .or_else(|| std::env::var_os(ZEROS_ENV).map(PathBuf::from))
                .map(|p| p.display().to_string())
                .unwrap_or_else(|| format!("scan cached in {}", a.cache_dir.display()));
            let config = json!({
                "command": "zeta", "t": a.t, "k": a.k, "testfn": a.testfn.to_string(),
                "grid_step": a.grid_step, "normalizer": a.normalizer, "local_scaling": a.local_scaling,
                "zeros": source, "table": table, "workers": workers,
            });
            json_out(config, serde_json::to_value(&est)?)
        }
        Command::Zeros { lo, hi } => {
            let t = scan_zeros(*lo, *hi)?;
            let mut s = format!("{}\n# range {} {}\n", header(argv), t.lower, t.upper);
            for g in &t.gammas {
                s += &format!("{g}\n");
            }
            s
        }
        Command::Verify { suite, cache_dir, zeros, seed } => {
            let mut opts = VerifyOptions::new(cache_dir);
            opts.workers = workers;
            opts.seed = *seed;
            if zeros.is_some() {
                opts.zeros = zeros.clone();
            }
            let mut s = format!("{}\n", header(argv));
            let checks = run_suite(*suite, &opts, |c| eprintln!("{}", c.headline()));
            for c in &checks {
                s += &c.report();
                s.push('\n');
            }
            if !suite_passed(&checks) {
                emit(cli.output.as_deref(), &s)?;
                return Err(Failure::Suite);
            }
            s
        }
        Command::Plot { figure, k_max, points } => {
            if *points < 2 {
                return Err(Failure::Usage("need at least 2 points".into()));
            }
            let svg = match figure.as_str() {
                "poly" => plot::poly_figure(*k_max, *points),
                _ => plot::kernel_figure(*k_max, *points),
            };
            format!("<!-- {} -->\n{svg}", header(argv).trim_start_matches("# "))
        }
    })
}

fn emit(path: Option<&Path>, s: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, s),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(s.as_bytes())?;
            out.flush()
        }
    }
}

/// Parse `args` (program name first) and run; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Some(w) = cli.workers {
        if w == 0 {
            eprintln!("error: --workers must be positive");
            return 2;
        }
        let _ = rayon::ThreadPoolBuilder::new().num_threads(w).build_global();
    }
    let argv: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(&cli, &argv) {
        Ok(s) => match emit(cli.output.as_deref(), &s) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: {e}");
                2
            }
        },
        Err(Failure::Suite) => 1,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            2
        }
    }
}
