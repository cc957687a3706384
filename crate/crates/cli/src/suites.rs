use std::f64::consts::E;

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

use pwcheck_core::ansatz2::{
    check_cocycle, check_interpolation, check_w_invariance, estimate_condition_iii, pole_cancellation_check,
    SymmetrizedInterpolant,
};
use pwcheck_core::crown::{check_gln, check_so1n, check_su11, write_beta_csv, write_radius_csv, GlnConfig, So1nConfig, Su11Config};
use pwcheck_core::estimates::*;
use pwcheck_core::rankone::{
    admissible_ktypes, ansatz1_interpolant, check_intertwining, j_scalar_z, sl2_lambda_to_z, AnalyticVector,
    KTypeTable, LambdaCoords, RankOneParams,
};
use pwcheck_core::weyl::{check_factorization, check_p_lambda0, default_kinds};
use pwcheck_core::SpectralParameter;

use crate::CliError;

/// One registered suite.
#[derive(Debug, Clone, Copy)]
pub struct SuiteInfo {
    pub id: &'static str,
    pub anchor: &'static str,
}

/// Reports plus named CSV artifacts produced by a suite.
#[derive(Debug, Default)]
pub struct SuiteOutput {
    pub reports: Vec<VerificationReport>,
    pub csv: Vec<(String, String)>,
}

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

pub fn registry() -> Vec<SuiteInfo> {
    let s = |id, anchor| SuiteInfo { id, anchor };
    vec![
        s("estimates-all", "all eight estimate suites below, in order"),
        s("estimates-largelambda", "sup of |f_{n,R}| q_n e^{-pi R|Im z|} bounded beyond Re z = n/R"),
        s("estimates-smalllambda", "sup of |f_{n,R}| e^{-r n} bounded on [0, n/R] under the gate"),
        s("estimates-separating-line", "x log x separated from the line through (e/b, -e/b)"),
        s("estimates-phi", "phi(t) >= t^2"),
        s("estimates-hr", "upper bound for H_R"),
        s("estimates-prop-basic", "basic estimate for f_{n,R} with weight e^{-r n}, gate c = 0.2"),
        s("estimates-inf-f", "inf_n |f_{n,R}(z0)| equals its closed-form lower bound"),
        s("estimates-scaling", "two-sided comparison of log(AR+B)/(AR+B) with log R / R"),
        s("specialfn-dual", "sine form and product form of f_{n,R} agree"),
        s("specialfn-gamma", "Euler reflection and Gamma-function form of f_{n,R}"),
        s("specialfn-gamma-ab", "upper bounds for Gamma_{a,b} and |Gamma_{a,b}| >= 1 for Re z >= 0"),
        s("rankone-sl2", "SL(2,R) first interpolation scheme: exactness, intertwining relation, unitarity"),
        s("rankone-unitarity", "|J| = 1 on real lambda for every preset and K-type"),
        s("weyl-factorization", "w_j^{-1} alpha_j positive and distinct for every reduced word"),
        s("weyl-p-lambda0", "orbit interpolation polynomial p_{lambda0}"),
        s("ansatz2-pole-cancellation", "e_tau J_{s_alpha} is polynomial: exact divisibility"),
        s("ansatz2-a1sq", "Weyl-averaged interpolant on A1 x A1: interpolation, invariance, cocycle, growth"),
        s("crown-su11", "SU(1,1): beta_R = log(coth(R/sqrt 8))/2 against brute force"),
        s("crown-so1n", "SO_0(1,n), n even: chamber bound asinh(1/sinh R') against brute force"),
        s("crown-gln", "GL(n,R) square root domain: radius scan and exponential fit"),
    ]
}

/// Suites whose id contains `filter`.
pub fn filter_suites(filter: Option<&str>) -> Vec<SuiteInfo> {
    registry()
        .into_iter()
        .filter(|s| filter.map_or(true, |f| s.id.contains(f)))
        .collect()
}

fn params<T: DeserializeOwned + Default>(v: &Value) -> Result<T, CliError> {
    if v.is_null() {
        return Ok(T::default());
    }
    serde_json::from_value(v.clone()).map_err(|e| CliError::Config(format!("bad params: {e}")))
}

fn core(e: pwcheck_core::Error) -> CliError {
    CliError::Config(e.to_string())
}

macro_rules! param_struct {
    ($name:ident { $($field:ident : $ty:ty = $default:expr),* $(,)? }) => {
        #[derive(Debug, Clone, Deserialize)]
        #[serde(default, deny_unknown_fields)]
        pub struct $name { $(pub $field: $ty),* }
        impl Default for $name {
            fn default() -> Self { Self { $($field: $default),* } }
        }
    };
}

param_struct!(LargeLambda { re: [f64; 2] = [0.0, 3.0], im: [f64; 2] = [0.0, 2.0], resolution: usize = 41, n_max: u32 = 200, r_values: Vec<f64> = vec![4.0, 10.0] });
param_struct!(SmallLambda { r: f64 = 0.5, resolution: usize = 201, n_max: u32 = 200, r_values: Vec<f64> = vec![10.0, 20.0] });
param_struct!(SeparatingLine { b_values: Vec<f64> = vec![E * E, 10.0, 100.0, 1e4], resolution: usize = 5000 });
param_struct!(Phi { resolution: usize = 20_000 });
param_struct!(Hr { r_values: Vec<f64> = vec![E, 3.0, 10.0, 100.0], resolution: usize = 5000 });
param_struct!(PropBasic { r: f64 = 0.5, big_r: f64 = 10.0, k: u32 = 2, re: [f64; 2] = [0.0, 1.5], im: [f64; 2] = [0.0, 1.5], resolution: usize = 41, n_max: u32 = 200 });
param_struct!(InfF { cases: usize = 20 });
param_struct!(Scaling { a_coef: f64 = 2.0, b: f64 = 5.0, a_scale: f64 = 0.5 });
param_struct!(Dual { re: [f64; 2] = [-5.0, 5.0], im: [f64; 2] = [-5.0, 5.0], resolution: usize = 41, n_max: u32 = 50, r_values: Vec<f64> = vec![1.0, 3.0, 10.0] });
param_struct!(GammaIds { re: [f64; 2] = [-5.0, 5.0], im: [f64; 2] = [-1.0, 1.0], resolution: usize = 41, n_max: u32 = 50, reflection_r_values: Vec<f64> = vec![1.0, 3.0], representation_r_values: Vec<f64> = vec![1.0, 3.0, 10.0] });
param_struct!(GammaAb { max_degree: u32 = 8, resolution: usize = 41 });
param_struct!(Sl2 { truncation: u32 = 30, big_r: f64 = 10.0, decay: f64 = 0.5, lambda0: [f64; 2] = [0.0, -2.0], re: [f64; 2] = [-5.0, 5.0], im: [f64; 2] = [-5.1, 4.9], resolution: usize = 41 });
param_struct!(Unitarity { tau_max: u32 = 20, s_max: u32 = 20, resolution: usize = 25 });
param_struct!(WeylP { count: usize = 50 });
param_struct!(Poles { tau_max: u32 = 30 });
param_struct!(A1Sq {
    lambda0: Vec<[f64; 2]> = vec![[0.3, -0.7], [0.0, -0.4]],
    big_r: f64 = 4.0,
    r: f64 = 1.0,
    tau_max: u32 = 10,
    invariance_tau_max: u32 = 4,
    invariance_resolution: usize = 9,
    growth_resolution: usize = 21,
    re: [f64; 2] = [-3.0, 3.0],
    im: [f64; 2] = [-1.0, 1.0],
});

fn estimates_reports(id: &str, p: &Value, seed: u64) -> Result<Vec<VerificationReport>, CliError> {
    let rep = match id {
        "estimates-largelambda" => {
            let c: LargeLambda = params(p)?;
            check_largelambda(&GridSpec::rect(c.re, c.im, c.resolution).with_n_range(0, c.n_max).with_r_values(c.r_values))
        }
        "estimates-smalllambda" => {
            let c: SmallLambda = params(p)?;
            check_smalllambda(c.r, &GridSpec::interval(0.0, 1.0, c.resolution).with_n_range(0, c.n_max).with_r_values(c.r_values))
        }
        "estimates-separating-line" => {
            let c: SeparatingLine = params(p)?;
            check_separating_line(&c.b_values, c.resolution)
        }
        "estimates-phi" => {
            let c: Phi = params(p)?;
            Ok(check_phi_lower_bound(c.resolution))
        }
        "estimates-hr" => {
            let c: Hr = params(p)?;
            check_hr_bound(&c.r_values, c.resolution)
        }
        "estimates-prop-basic" => {
            let c: PropBasic = params(p)?;
            check_prop_basic(c.r, c.big_r, c.k, &GridSpec::rect(c.re, c.im, c.resolution).with_n_range(0, c.n_max))
        }
        "estimates-inf-f" => {
            let c: InfF = params(p)?;
            check_inf_f(seed, c.cases)
        }
        "estimates-scaling" => {
            let c: Scaling = params(p)?;
            check_scaling_remark(c.a_coef, c.b, c.a_scale)
        }
        _ => return Err(CliError::UnknownSuite(id.to_string())),
    };
    Ok(vec![rep.map_err(core)?])
}

const ESTIMATE_IDS: [&str; 8] = [
    "estimates-largelambda",
    "estimates-smalllambda",
    "estimates-separating-line",
    "estimates-phi",
    "estimates-hr",
    "estimates-prop-basic",
    "estimates-inf-f",
    "estimates-scaling",
];

/// Run one suite. `params` is the suite's parameter object (`null` for
/// defaults); for `estimates-all` it may hold one object per member id.
pub fn run(id: &str, p: &Value, seed: Option<u64>) -> Result<SuiteOutput, CliError> {
    let mut out = SuiteOutput::default();
    let seed_or = |d: u64| seed.unwrap_or(d);
    match id {
        "estimates-all" => {
            for sub in ESTIMATE_IDS {
                let sp = p.get(sub).cloned().unwrap_or(Value::Null);
                out.reports.extend(estimates_reports(sub, &sp, seed_or(DEFAULT_SEED))?);
            }
        }
        s if ESTIMATE_IDS.contains(&s) => out.reports = estimates_reports(s, p, seed_or(DEFAULT_SEED))?,
        "specialfn-dual" => {
            let c: Dual = params(p)?;
            let g = GridSpec::rect(c.re, c.im, c.resolution).with_n_range(0, c.n_max).with_r_values(c.r_values);
            out.reports.push(check_dual_representation(&g).map_err(core)?);
        }
        "specialfn-gamma" => {
            let c: GammaIds = params(p)?;
            let g = GridSpec::rect(c.re, c.im, c.resolution).with_n_range(0, c.n_max).with_r_values(c.reflection_r_values);
            out.reports.push(check_euler_reflection(&g).map_err(core)?);
            let g = GridSpec::interval(0.0, 1.0, c.resolution).with_n_range(1, c.n_max).with_r_values(c.representation_r_values);
            out.reports.push(check_gamma_representation(&g).map_err(core)?);
        }
        "specialfn-gamma-ab" => {
            let c: GammaAb = params(p)?;
            let mut g = GammaAbGrid::default();
            g.max_degree = c.max_degree;
            g.z.resolution = c.resolution;
            out.reports.push(check_gamma_ab_bounds(&g).map_err(core)?);
        }
        "rankone-sl2" => {
            let c: Sl2 = params(p)?;
            out.reports.extend(run_sl2(&c)?);
        }
        "rankone-unitarity" => {
            let c: Unitarity = params(p)?;
            out.reports.push(run_unitarity(&c));
        }
        "weyl-factorization" => out.reports.push(check_factorization(&default_kinds()).map_err(core)?),
        "weyl-p-lambda0" => {
            let c: WeylP = params(p)?;
            out.reports.push(check_p_lambda0(&default_kinds(), seed_or(0x00c0_ffee), c.count).map_err(core)?);
        }
        "ansatz2-pole-cancellation" => {
            let c: Poles = params(p)?;
            out.reports.push(pole_cancellation_check(&RankOneParams::presets(), c.tau_max));
        }
        "ansatz2-a1sq" => {
            let c: A1Sq = params(p)?;
            out.reports.extend(run_a1sq(&c)?);
        }
        "crown-su11" => {
            let c: Su11Config = params(p)?;
            let mut csv = Vec::new();
            write_beta_csv(&mut csv, &c.r_values).map_err(core)?;
            out.csv.push(("crown-su11-beta.csv".into(), String::from_utf8_lossy(&csv).into_owned()));
            out.reports.push(check_su11(&c).map_err(core)?);
        }
        "crown-so1n" => {
            let mut c: So1nConfig = params(p)?;
            c.seed = seed_or(c.seed);
            out.reports.push(check_so1n(&c).map_err(core)?);
        }
        "crown-gln" => {
            let mut c: GlnConfig = params(p)?;
            c.seed = seed_or(c.seed);
            let (rep, rows) = check_gln(&c).map_err(core)?;
            let mut csv = Vec::new();
            write_radius_csv(&mut csv, &rows).map_err(core)?;
            out.csv.push(("crown-gln-radius.csv".into(), String::from_utf8_lossy(&csv).into_owned()));
            out.reports.push(rep);
        }
        other => return Err(CliError::UnknownSuite(other.to_string())),
    }
    Ok(out)
}

fn run_sl2(c: &Sl2) -> Result<Vec<VerificationReport>, CliError> {
    let started = std::time::Instant::now();
    let v = AnalyticVector::exponential(c.decay, c.truncation).map_err(core)?;
    let lam0 = Complex64::new(c.lambda0[0], c.lambda0[1]);
    let z0 = sl2_lambda_to_z(lam0);
    let f = ansatz1_interpolant(&RankOneParams::sl2(), &KTypeTable::sl2(c.truncation), &v, &SpectralParameter::rank_one(z0), c.big_r)
        .map_err(core)?;
    let mut worst = Worst::default();
    for (n, val) in f.eval(z0) {
        let err = (val - v.get(n)).norm();
        worst.offer(err, || witness([("tau", n as f64)]));
    }
    let exact = VerificationReport::new(
        "rankone-interpolation",
        GridSpec::interval(lam0.im, lam0.im, 1),
        worst.value,
        worst.witness,
        Constants::from([("r_used".into(), f.r_used()), ("truncation".into(), f64::from(c.truncation))]),
        1e-12,
        started,
    );
    let inter = check_intertwining(&f, &GridSpec::rect(c.re, c.im, c.resolution), LambdaCoords::Sl2).map_err(core)?;
    let unit = run_unitarity(&Unitarity { tau_max: c.truncation, s_max: c.truncation, resolution: c.resolution });
    Ok(vec![exact, inter, unit])
}

/// `||J(x)| - 1|` on real `x in [-6, 6]`, over the presets (or only `SL(2,R)`).
fn run_unitarity(c: &Unitarity) -> VerificationReport {
    let started = std::time::Instant::now();
    let mut worst = Worst::default();
    let xs = linspace(-6.0, 6.0, c.resolution.max(2));
    for (pi, (_, p)) in RankOneParams::presets().into_iter().enumerate() {
        for tau in 0..=c.tau_max {
            for k in admissible_ktypes(&p, f64::from(tau)).into_iter().filter(|k| k.s_param <= c.s_max) {
                for &x in &xs {
                    let dev = j_scalar_z(&p, &k, Complex64::new(x, 0.0)).map_or(f64::INFINITY, |j| (j.norm() - 1.0).abs());
                    worst.offer(dev, || {
                        witness([("preset", pi as f64), ("tau", f64::from(tau)), ("r", f64::from(k.r_param)), ("s", f64::from(k.s_param)), ("x", x)])
                    });
                }
            }
        }
    }
    VerificationReport::new(
        "rankone-unitarity",
        GridSpec::interval(-6.0, 6.0, c.resolution.max(2)),
        worst.value.max(0.0),
        worst.witness,
        Constants::from([("presets".into(), RankOneParams::presets().len() as f64)]),
        1e-10,
        started,
    )
}

fn run_a1sq(c: &A1Sq) -> Result<Vec<VerificationReport>, CliError> {
    let lam0: Vec<Complex64> = c.lambda0.iter().map(|p| Complex64::new(p[0], p[1])).collect();
    let l = lam0.len();
    let si = SymmetrizedInterpolant::uniform(RankOneParams::sl2(), l, SpectralParameter::new(lam0), c.big_r, c.tau_max)
        .map_err(core)?;
    let tau_max = f64::from(c.tau_max);
    let inv_max = f64::from(c.invariance_tau_max);
    let inv_grid = GridSpec::rect([-2.0, 2.0], [-1.3, 1.1], c.invariance_resolution);
    Ok(vec![
        check_interpolation(&si, tau_max).map_err(core)?,
        check_w_invariance(&si, inv_max, &inv_grid).map_err(core)?,
        check_cocycle(&si, inv_max, &inv_grid).map_err(core)?,
        estimate_condition_iii(&si, tau_max, c.r, &GridSpec::rect(c.re, c.im, c.growth_resolution)).map_err(core)?,
    ])
}
