use std::io::Write;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::gln::{gln_gate_failures, gln_radius_scan, log_fit, RadiusScan};
use super::so1n::{direction_samples, so1n_bound_brute, so1n_chamber_bound};
use super::su11::{su11_beta, su11_beta_brute};
use crate::error::Result;
use crate::estimates::{witness, Constants, GridSpec, VerificationReport, Worst};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Su11Config {
    pub r_values: Vec<f64>,
    pub t_samples: usize,
}

impl Default for Su11Config {
    fn default() -> Self {
        Self { r_values: vec![1.0, 8f64.sqrt(), 5.0], t_samples: 201 }
    }
}

/// Closed-form `beta_R` against the brute-force scan; tolerance two final grid steps.
pub fn check_su11(cfg: &Su11Config) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut worst = Worst::default();
    let mut constants = Constants::new();
    let mut step = 1e-4;
    for &r in &cfg.r_values {
        let closed = su11_beta(r)?;
        let (brute, h) = su11_beta_brute(r, cfg.t_samples)?;
        step = h;
        let diff = (closed - brute).abs();
        worst.offer(diff, || witness([("R", r), ("closed", closed), ("brute", brute)]));
        constants.insert(format!("beta_closed[R={r}]"), closed);
        constants.insert(format!("beta_brute[R={r}]"), brute);
    }
    constants.insert("grid_step".into(), step);
    Ok(VerificationReport::new(
        "crown-su11",
        GridSpec::interval(0.0, 0.0, 1).with_r_values(cfg.r_values.clone()),
        worst.value.max(0.0),
        worst.witness,
        constants,
        2.0 * step,
        started,
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct So1nConfig {
    pub n_values: Vec<u32>,
    pub r_prime_values: Vec<f64>,
    pub t_samples: usize,
    pub random_directions: usize,
    pub seed: u64,
}

impl Default for So1nConfig {
    fn default() -> Self {
        Self { n_values: vec![2, 4], r_prime_values: vec![0.5, 1.0, 2.0], t_samples: 101, random_directions: 16, seed: 7 }
    }
}

/// Closed-form chamber bound against the brute-force scan; tolerance `1e-3`.
pub fn check_so1n(cfg: &So1nConfig) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut worst = Worst::default();
    let mut constants = Constants::new();
    let mut r_values = Vec::new();
    for &n in &cfg.n_values {
        let dirs = direction_samples(n as usize, cfg.random_directions, cfg.seed);
        for &rp in &cfg.r_prime_values {
            let big_r = rp * (2.0 * f64::from(n - 1)).sqrt();
            r_values.push(big_r);
            let closed = so1n_chamber_bound(big_r, n)?;
            let brute = so1n_bound_brute(big_r, n, cfg.t_samples, &dirs)?;
            worst.offer((closed - brute).abs(), || {
                witness([("n", f64::from(n)), ("R_prime", rp), ("closed", closed), ("brute", brute)])
            });
            constants.insert(format!("bound_closed[n={n},R'={rp}]"), closed);
            constants.insert(format!("bound_brute[n={n},R'={rp}]"), brute);
        }
    }
    Ok(VerificationReport::new(
        "crown-so1n",
        GridSpec::interval(0.0, 0.0, 1).with_r_values(r_values),
        worst.value.max(0.0),
        worst.witness,
        constants,
        1e-3,
        started,
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GlnConfig {
    pub n: usize,
    pub r_values: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub slope_range: [f64; 2],
}

impl Default for GlnConfig {
    fn default() -> Self {
        Self {
            n: 4,
            r_values: (1..=6).map(f64::from).collect(),
            trials: 100,
            seed: 11,
            slope_range: [-1.15, -0.85],
        }
    }
}

/// Radius scan for `GL(n)`. The violation is the largest of: gate failures,
/// shortfall of `r_scan` below `0.9 e^{-R}`, distance of the fitted slope from
/// `slope_range`. Tolerance zero.
pub fn check_gln(cfg: &GlnConfig) -> Result<(VerificationReport, Vec<RadiusScan>)> {
    let started = Instant::now();
    let mut worst = Worst::default();
    let mut constants = Constants::new();
    let mut rows = Vec::with_capacity(cfg.r_values.len());
    let mut failures = 0usize;
    for (k, &r) in cfg.r_values.iter().enumerate() {
        let seed = cfg.seed.wrapping_add(k as u64);
        let f = gln_gate_failures(r, cfg.n, cfg.trials, seed)?;
        failures += f;
        worst.offer(f as f64, || witness([("R", r), ("gate_failures", f as f64)]));
        let row = gln_radius_scan(r, cfg.n, cfg.trials, seed)?;
        let shortfall = ((row.sufficiency_floor - row.r_scan) / row.sufficiency_floor).max(0.0);
        worst.offer(shortfall, || witness([("R", r), ("r_scan", row.r_scan), ("floor", row.sufficiency_floor)]));
        constants.insert(format!("r_scan[R={r}]"), row.r_scan);
        rows.push(row);
    }
    if rows.len() >= 2 {
        let (slope, intercept) = log_fit(&rows);
        let [lo, hi] = cfg.slope_range;
        let off = (lo - slope).max(slope - hi).max(0.0);
        worst.offer(off, || witness([("slope", slope)]));
        constants.insert("slope".into(), slope);
        constants.insert("intercept".into(), intercept);
        constants.insert("C_fit".into(), intercept.exp());
        constants.insert("c_fit".into(), -slope);
    }
    constants.insert("gate_failures".into(), failures as f64);
    constants.insert("n".into(), cfg.n as f64);
    constants.insert("trials".into(), cfg.trials as f64);
    let rep = VerificationReport::new(
        "crown-gln",
        GridSpec::interval(0.0, 0.0, 1).with_r_values(cfg.r_values.clone()),
        worst.value.max(0.0),
        worst.witness,
        constants,
        0.0,
        started,
    );
    Ok((rep, rows))
}

/// CSV rows `R,beta_R`.
pub fn write_beta_csv<W: Write>(mut out: W, r_values: &[f64]) -> Result<()> {
    let io = |e: std::io::Error| crate::Error::InvalidParameter(format!("write failed: {e}"));
    writeln!(out, "R,beta_R").map_err(io)?;
    for &r in r_values {
        writeln!(out, "{r},{}", su11_beta(r)?).map_err(io)?;
    }
    Ok(())
}

/// CSV rows `R,n,r_scan,floor`.
pub fn write_radius_csv<W: Write>(mut out: W, rows: &[RadiusScan]) -> Result<()> {
    let io = |e: std::io::Error| crate::Error::InvalidParameter(format!("write failed: {e}"));
    writeln!(out, "R,n,r_scan,floor").map_err(io)?;
    for r in rows {
        writeln!(out, "{},{},{},{}", r.big_r, r.n, r.r_scan, r.sufficiency_floor).map_err(io)?;
    }
    Ok(())
}
