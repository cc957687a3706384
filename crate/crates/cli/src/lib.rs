//! Batch driver for the verification suites: suite registry, JSON run
//! configuration, report and CSV output, exit-code mapping.

pub mod suites;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use pwcheck_core::ansatz2::{product_grid, write_scan_csv, GrowthExponents, ProductKType, SymmetrizedInterpolant};
use pwcheck_core::estimates::{GridSpec, VerificationReport};
use pwcheck_core::rankone::{ansatz1_interpolant, sl2_lambda_to_z, write_interpolant_csv, AnalyticVector, KTypeTable, LambdaCoords, RankOneParams};
use pwcheck_core::SpectralParameter;

pub use suites::{filter_suites, registry, run, SuiteInfo, SuiteOutput, DEFAULT_SEED};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug)]
pub enum CliError {
    UnknownSuite(String),
    Config(String),
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::UnknownSuite(s) => write!(f, "unknown suite '{s}' (see `pwcheck list`)"),
            Self::Config(s) => write!(f, "configuration error: {s}"),
            Self::Io(s) => write!(f, "i/o error: {s}"),
        }
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        EXIT_USAGE
    }
}

/// Contents of a `--config` file. Command-line flags override these fields.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub suite: Option<String>,
    pub params: Value,
    pub output_dir: Option<PathBuf>,
    pub seed: Option<u64>,
    pub jobs: Option<usize>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn output_dir(&self) -> PathBuf {
        self.output_dir.clone().unwrap_or_else(|| PathBuf::from("out"))
    }
}

/// Run `f` on a pool of `jobs` workers, or on the global pool.
pub fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(CliError::Config("--jobs must be positive".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| CliError::Config(e.to_string())),
    }
}

/// Pretty JSON of a report, including `runtime_ms`.
pub fn report_json(r: &VerificationReport) -> String {
    serde_json::to_string_pretty(r).expect("reports serialize")
}

fn io(e: std::io::Error) -> CliError {
    CliError::Io(e.to_string())
}

/// Write `<check_id>.json` for every report and every CSV artifact into `dir`.
pub fn write_outputs(dir: &Path, out: &SuiteOutput) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir).map_err(io)?;
    let mut written = Vec::new();
    for r in &out.reports {
        let p = dir.join(format!("{}.json", r.check_id));
        fs::write(&p, report_json(r) + "\n").map_err(io)?;
        written.push(p);
    }
    for (name, text) in &out.csv {
        let p = dir.join(name);
        fs::write(&p, text).map_err(io)?;
        written.push(p);
    }
    Ok(written)
}

pub fn summary_line(r: &VerificationReport) -> String {
    format!(
        "{} {} worst={:e} tol={:e} ({} ms)",
        if r.passed { "PASS" } else { "FAIL" },
        r.check_id,
        r.worst_violation,
        r.tolerance,
        r.runtime_ms
    )
}

pub fn exit_code_for(out: &SuiteOutput) -> i32 {
    if out.reports.iter().all(|r| r.passed) {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

/// `verify`: run a suite, write its outputs, return the exit code.
pub fn verify(cfg: &RunConfig) -> Result<(i32, SuiteOutput), CliError> {
    let id = cfg.suite.as_deref().ok_or_else(|| CliError::Config("no suite given (--suite or config)".into()))?;
    if !registry().iter().any(|s| s.id == id) {
        return Err(CliError::UnknownSuite(id.to_string()));
    }
    let out = with_jobs(cfg.jobs, || run(id, &cfg.params, cfg.seed))??;
    write_outputs(&cfg.output_dir(), &out)?;
    Ok((exit_code_for(&out), out))
}

/// `list`: one line per suite, `id  anchor`.
pub fn list_lines(filter: Option<&str>) -> Vec<String> {
    filter_suites(filter).iter().map(|s| format!("{:<28} {}", s.id, s.anchor)).collect()
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScanParams {
    pub lambda0: Vec<[f64; 2]>,
    pub big_r: f64,
    pub r: f64,
    pub tau: Vec<u32>,
    pub re: [f64; 2],
    pub im: [f64; 2],
    pub resolution: usize,
}

impl Default for ScanParams {
    fn default() -> Self {
        Self { lambda0: vec![[0.3, -0.7], [0.0, -0.4]], big_r: 4.0, r: 1.0, tau: vec![1, 2], re: [-3.0, 3.0], im: [-1.0, 1.0], resolution: 11 }
    }
}

fn parse<T: for<'de> Deserialize<'de> + Default>(v: &Value) -> Result<T, CliError> {
    if v.is_null() {
        return Ok(T::default());
    }
    serde_json::from_value(v.clone()).map_err(|e| CliError::Config(format!("bad params: {e}")))
}

fn core(e: pwcheck_core::Error) -> CliError {
    CliError::Config(e.to_string())
}

/// `scan`: CSV of `F_tau` on the product grid for the `A1^l` model,
/// columns `re_i,im_i,...,tau,abs_F,weight,normalized`.
pub fn scan(cfg: &RunConfig) -> Result<PathBuf, CliError> {
    let p: ScanParams = parse(&cfg.params)?;
    let lam0: Vec<Complex64> = p.lambda0.iter().map(|c| Complex64::new(c[0], c[1])).collect();
    let l = lam0.len();
    if p.tau.len() != l {
        return Err(CliError::Config(format!("tau needs {l} entries")));
    }
    let t_max = p.tau.iter().copied().max().unwrap_or(0);
    let si = SymmetrizedInterpolant::uniform(RankOneParams::sl2(), l, SpectralParameter::new(lam0), p.big_r, t_max).map_err(core)?;
    let parts = p
        .tau
        .iter()
        .enumerate()
        .map(|(i, &k)| si.tau_table[i].get(i64::from(k)).copied().ok_or_else(|| CliError::Config(format!("no K-type {k}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let ex = GrowthExponents::for_interpolant(&si, p.r).map_err(core)?;
    let pts = product_grid(&GridSpec::rect(p.re, p.im, p.resolution), l).map_err(core)?;
    let mut buf = Vec::new();
    with_jobs(cfg.jobs, || write_scan_csv(&mut buf, &si, &ProductKType::new(parts), &ex, &pts))?.map_err(core)?;
    let dir = cfg.output_dir();
    fs::create_dir_all(&dir).map_err(io)?;
    let path = dir.join("ansatz2-scan.csv");
    fs::write(&path, buf).map_err(io)?;
    Ok(path)
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InterpParams {
    pub truncation: u32,
    pub big_r: f64,
    pub decay: f64,
    pub lambda0: [f64; 2],
    pub re: [f64; 2],
    pub im: [f64; 2],
    pub resolution: usize,
}

impl Default for InterpParams {
    fn default() -> Self {
        Self { truncation: 30, big_r: 10.0, decay: 0.5, lambda0: [0.0, -2.0], re: [-5.0, 5.0], im: [-5.1, 4.9], resolution: 11 }
    }
}

/// `interp`: CSV of the `SL(2,R)` interpolant, columns `lambda_re,lambda_im,tau,F_re,F_im`.
pub fn interp(cfg: &RunConfig) -> Result<PathBuf, CliError> {
    let p: InterpParams = parse(&cfg.params)?;
    let v = AnalyticVector::exponential(p.decay, p.truncation).map_err(core)?;
    let z0 = sl2_lambda_to_z(Complex64::new(p.lambda0[0], p.lambda0[1]));
    let f = ansatz1_interpolant(&RankOneParams::sl2(), &KTypeTable::sl2(p.truncation), &v, &SpectralParameter::rank_one(z0), p.big_r)
        .map_err(core)?;
    let lambdas: Vec<Complex64> = GridSpec::rect(p.re, p.im, p.resolution)
        .rect_points()
        .into_iter()
        .map(|(x, y)| Complex64::new(x, y))
        .collect();
    let mut buf = Vec::new();
    write_interpolant_csv(&mut buf, &f, &lambdas, LambdaCoords::Sl2).map_err(io)?;
    let dir = cfg.output_dir();
    fs::create_dir_all(&dir).map_err(io)?;
    let path = dir.join("rankone-interpolant.csv");
    fs::write(&path, buf).map_err(io)?;
    Ok(path)
}
