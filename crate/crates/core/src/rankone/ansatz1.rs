use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::params::{KTypeData, KTypeTable, RankOneParams};
use super::qtilde::{j_scalar_z, kostant_ok_rank_one, q_tilde_eval, sl2_lambda_to_z, sl2_z_to_lambda};
use super::vector::AnalyticVector;
use crate::error::{Error, Result};
use crate::estimates::{witness, Constants, GridSpec, VerificationReport, Worst};
use crate::specialfn::{GammaRatioPoly, SincProduct};
use crate::SpectralParameter;

const R_STEP: f64 = 1e-6;
const R_CLEARANCE: f64 = 1e-6;
const MAX_R_STEPS: u64 = 10_000_000;

/// Which coordinate a grid of spectral parameters is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LambdaCoords {
    /// The rank one coordinate `z` of the parameter set.
    Z,
    /// The `SL(2,R)` coordinate with `lambda <-> lambda rho`, i.e. `lambda = 2z`.
    Sl2,
}

impl LambdaCoords {
    pub fn to_z(self, lambda: Complex64) -> Complex64 {
        match self {
            Self::Z => lambda,
            Self::Sl2 => sl2_lambda_to_z(lambda),
        }
    }

    pub fn from_z(self, z: Complex64) -> Complex64 {
        match self {
            Self::Z => z,
            Self::Sl2 => sl2_z_to_lambda(z),
        }
    }
}

/// Distance from `w` to the nearest nonzero integer.
fn nonzero_integer_clearance(w: Complex64) -> f64 {
    let k = w.re.round();
    if k == 0.0 {
        (w - 1.0).norm().min((w + 1.0).norm())
    } else {
        (w - k).norm()
    }
}

/// Largest `R' <= R` on the lattice `R - k 1e-6` with `R' z0` at distance
/// at least `1e-6` from every nonzero integer.
pub fn perturb_r(r: f64, z0: Complex64) -> Result<f64> {
    for k in 0..=MAX_R_STEPS {
        let rp = r - k as f64 * R_STEP;
        if rp <= 0.0 {
            break;
        }
        if nonzero_integer_clearance(z0 * rp) >= R_CLEARANCE {
            return Ok(rp);
        }
    }
    Err(Error::ForbiddenR((z0 * r).re))
}

#[derive(Debug, Clone)]
struct Term {
    index: i64,
    ktype: KTypeData,
    big_m: u32,
    factors: Vec<GammaRatioPoly>,
    /// `v / (Q(z0) f_M(z0)^kappa)`
    coeff: Complex64,
}

impl Term {
    fn q(&self, z: Complex64) -> Complex64 {
        let iz = Complex64::i() * z;
        self.factors.iter().map(|g| g.eval(iz)).product()
    }
}

/// `lambda -> { tau -> phi_tau(lambda) Q_tau(lambda) Q_tau(lambda0)^{-1} v_tau }`
/// with `phi_tau = [f_{M,R}(z) / f_{M,R}(z0)]^kappa`, `M = m ceil|tau|`.
#[derive(Debug, Clone)]
pub struct Ansatz1Interpolant {
    params: RankOneParams,
    r_requested: f64,
    r: f64,
    z0: Complex64,
    terms: Vec<Term>,
}

pub fn ansatz1_interpolant(
    p: &RankOneParams,
    table: &KTypeTable,
    v: &AnalyticVector,
    lambda0: &SpectralParameter,
    r: f64,
) -> Result<Ansatz1Interpolant> {
    if lambda0.rank() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, got: lambda0.rank() });
    }
    let z0 = lambda0.coords()[0];
    if !kostant_ok_rank_one(p, z0) {
        return Err(Error::Kostant(format!("{}", z0 * p.coroot_scale())));
    }
    SincProduct::new(0, r)?;
    let r_used = perturb_r(r, z0)?;
    let kappa = p.kappa() as i32;
    let mut terms = Vec::with_capacity(v.coeffs().len());
    for (&index, &value) in v.coeffs() {
        let ktype = *table.get(index).ok_or_else(|| {
            Error::InvalidParameter(format!("no K-type data for index {index}"))
        })?;
        let factors = p.q_factors(&ktype)?;
        let q0 = q_tilde_eval(p, &ktype, z0)?;
        if q0.norm() <= 1e-12 {
            return Err(Error::Pole(
                factors
                    .iter()
                    .flat_map(|g| g.roots())
                    .min_by(|a, b| {
                        let iz = Complex64::i() * z0;
                        (iz - a.to_f64()).norm().total_cmp(&(iz - b.to_f64()).norm())
                    })
                    .unwrap_or_default(),
            ));
        }
        let big_m = p.m * ktype.ceil_norm();
        let f0 = SincProduct { n: big_m, r: r_used }.eval(z0).powi(kappa);
        terms.push(Term {
            index,
            ktype,
            big_m,
            factors,
            coeff: value / (q0 * f0),
        });
    }
    Ok(Ansatz1Interpolant {
        params: *p,
        r_requested: r,
        r: r_used,
        z0,
        terms,
    })
}

impl Ansatz1Interpolant {
    pub fn params(&self) -> &RankOneParams {
        &self.params
    }

    /// The `R` actually used after clearing `R z0` from the nonzero integers.
    pub fn r_used(&self) -> f64 {
        self.r
    }

    pub fn r_requested(&self) -> f64 {
        self.r_requested
    }

    pub fn z0(&self) -> Complex64 {
        self.z0
    }

    pub fn indices(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.iter().map(|t| t.index)
    }

    pub fn ktype(&self, index: i64) -> Option<&KTypeData> {
        self.terms.iter().find(|t| t.index == index).map(|t| &t.ktype)
    }

    /// All coefficients at the rank one coordinate `z`, in index order.
    pub fn eval(&self, z: Complex64) -> Vec<(i64, Complex64)> {
        let kappa = self.params.kappa() as i32;
        let mut f_cache: BTreeMap<u32, Complex64> = BTreeMap::new();
        self.terms
            .iter()
            .map(|t| {
                let f = *f_cache
                    .entry(t.big_m)
                    .or_insert_with(|| SincProduct { n: t.big_m, r: self.r }.eval(z).powi(kappa));
                (t.index, t.coeff * f * t.q(z))
            })
            .collect()
    }

    pub fn eval_lambda(&self, lambda: &SpectralParameter) -> Result<Vec<(i64, Complex64)>> {
        if lambda.rank() != 1 {
            return Err(Error::DimensionMismatch { expected: 1, got: lambda.rank() });
        }
        Ok(self.eval(lambda.coords()[0]))
    }

    /// `(|tau|, value)` pairs, the input expected by [`pw_bound_estimate`].
    pub fn eval_weighted(&self, z: Complex64) -> Vec<(f64, Complex64)> {
        self.eval(z)
            .into_iter()
            .zip(&self.terms)
            .map(|((_, v), t)| (t.ktype.tau_norm, v))
            .collect()
    }

    /// Smallest `|Q_tau(z)|` over the stored K-types.
    fn min_q(&self, z: Complex64) -> f64 {
        self.terms.iter().map(|t| t.q(z).norm()).fold(f64::INFINITY, f64::min)
    }
}

/// Worst normalized residual `|J(lambda) F(lambda)_tau - F(-lambda)_tau| / (1 + |F(lambda)_tau|)`
/// over the grid. Points closer than `1e-6` to a zero of some `Q_tau` are
/// skipped and counted.
pub fn check_intertwining(
    f: &Ansatz1Interpolant,
    g: &GridSpec,
    coords: LambdaCoords,
) -> Result<VerificationReport> {
    let started = Instant::now();
    g.validate()?;
    let pts = g.rect_points();
    let parts: Vec<(Worst, bool)> = pts
        .par_iter()
        .map(|&(x, y)| {
            let z = coords.to_z(Complex64::new(x, y));
            let mut w = Worst::default();
            if f.min_q(z) < 1e-6 {
                return (w, true);
            }
            let plus = f.eval(z);
            let minus = f.eval(-z);
            for (t, ((idx, fp), (_, fm))) in f.terms.iter().zip(plus.iter().zip(&minus)) {
                let Ok(j) = j_scalar_z(&f.params, &t.ktype, z) else {
                    continue;
                };
                let res = (j * fp - fm).norm() / (1.0 + fp.norm());
                w.offer(res, || witness([("re", x), ("im", y), ("tau", *idx as f64)]));
            }
            (w, false)
        })
        .collect();
    let skipped = parts.iter().filter(|p| p.1).count();
    let worst = Worst::fold(parts.into_iter().map(|p| p.0));
    let constants = Constants::from([
        ("skipped_points".into(), skipped as f64),
        ("r_used".into(), f.r),
        ("ktypes".into(), f.terms.len() as f64),
    ]);
    Ok(VerificationReport::new(
        "intertwining",
        g.clone(),
        worst.value.max(0.0),
        worst.witness,
        constants,
        1e-8,
        started,
    ))
}

/// `sup_lambda p_k(F(lambda)) (1 + |lambda|)^N e^{-rate |Im lambda|}` over
/// `points`, where `p_k(u) = sum_tau (1 + |tau|)^k |u_tau|` and `F` returns
/// `(|tau|, u_tau)` pairs.
pub fn pw_bound_estimate<F>(f: F, rate: f64, big_n: u32, k: u32, points: &[Complex64]) -> f64
where
    F: Fn(Complex64) -> Vec<(f64, Complex64)> + Sync,
{
    points
        .par_iter()
        .map(|&z| {
            let pk: f64 = f(z)
                .iter()
                .map(|(t, u)| (1.0 + t).powi(k as i32) * u.norm())
                .sum();
            if pk == 0.0 {
                return 0.0;
            }
            let ln = pk.ln() + f64::from(big_n) * (1.0 + z.norm()).ln() - rate * z.im.abs();
            ln.exp()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(0.0, f64::max)
}

/// CSV rows `lambda_re,lambda_im,tau,F_re,F_im`.
pub fn write_interpolant_csv<W: Write>(
    mut out: W,
    f: &Ansatz1Interpolant,
    lambdas: &[Complex64],
    coords: LambdaCoords,
) -> std::io::Result<()> {
    writeln!(out, "lambda_re,lambda_im,tau,F_re,F_im")?;
    for &lam in lambdas {
        for (idx, v) in f.eval(coords.to_z(lam)) {
            writeln!(out, "{},{},{},{:e},{:e}", lam.re, lam.im, idx, v.re, v.im)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2_setup(t: u32, r: f64) -> Ansatz1Interpolant {
        let p = RankOneParams::sl2();
        let v = AnalyticVector::exponential(0.5, t).unwrap();
        let lam0 = SpectralParameter::rank_one(sl2_lambda_to_z(Complex64::new(0.0, -2.0)));
        ansatz1_interpolant(&p, &KTypeTable::sl2(t), &v, &lam0, r).unwrap()
    }

    #[test]
    fn exact_at_base_point() {
        let f = sl2_setup(30, 10.0);
        for (idx, val) in f.eval(f.z0()) {
            let expected = (-0.5 * idx.unsigned_abs() as f64).exp();
            assert!((val - expected).norm() < 1e-12, "tau = {idx}");
        }
    }

    #[test]
    fn single_trivial_ktype() {
        let p = RankOneParams::sl2();
        let v0 = Complex64::new(0.7, -0.2);
        let v = AnalyticVector::single(0, v0, 1.0, 5).unwrap();
        let z0 = Complex64::new(0.0, -0.4);
        let f = ansatz1_interpolant(&p, &KTypeTable::sl2(5), &v, &SpectralParameter::rank_one(z0), 3.0).unwrap();
        let s = SincProduct { n: 0, r: 3.0 };
        for z in [Complex64::new(0.3, 0.1), Complex64::new(-1.2, 0.5)] {
            let direct = v0 * s.eval(z) / s.eval(z0);
            assert!((f.eval(z)[0].1 - direct).norm() < 1e-13);
        }
    }

    #[test]
    fn r_perturbation() {
        assert_eq!(perturb_r(10.0, Complex64::new(0.0, -1.0)).unwrap(), 10.0);
        let rp = perturb_r(2.0, Complex64::new(0.5, 0.0)).unwrap();
        assert!(rp < 2.0 && rp > 2.0 - 1e-5);
        assert!(nonzero_integer_clearance(Complex64::new(0.5, 0.0) * rp) >= 1e-6);
        assert_eq!(perturb_r(1.0, Complex64::new(0.0, 0.0)).unwrap(), 1.0);
    }

    #[test]
    fn kostant_violation_is_rejected() {
        let p = RankOneParams::sl2();
        let v = AnalyticVector::exponential(0.5, 2).unwrap();
        let lam0 = SpectralParameter::rank_one(Complex64::new(0.0, 1.0));
        assert!(matches!(
            ansatz1_interpolant(&p, &KTypeTable::sl2(2), &v, &lam0, 4.0),
            Err(Error::Kostant(_))
        ));
    }

    #[test]
    fn pw_examples() {
        let pts = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 2.0)];
        assert_eq!(pw_bound_estimate(|_| vec![(1.0, Complex64::new(0.0, 0.0))], 3.0, 0, 0, &pts), 0.0);
        let c = |_| vec![(0.0, Complex64::new(2.0, 0.0)), (3.0, Complex64::new(0.0, 1.0))];
        let v = pw_bound_estimate(c, 5.0, 0, 1, &pts);
        assert!((v - (2.0 + 4.0)).abs() < 1e-12);
    }

    #[test]
    fn small_intertwining_scan() {
        let f = sl2_setup(6, 10.0);
        let g = GridSpec::rect([-5.0, 5.0], [-5.1, 4.9], 11);
        let rep = check_intertwining(&f, &g, LambdaCoords::Sl2).unwrap();
        assert!(rep.passed, "{rep:?}");
    }

    #[test]
    fn csv_header_and_rows() {
        let f = sl2_setup(1, 4.0);
        let mut buf = Vec::new();
        write_interpolant_csv(&mut buf, &f, &[Complex64::new(0.5, 0.0)], LambdaCoords::Sl2).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(s.lines().count(), 4);
        assert!(s.starts_with("lambda_re,lambda_im,tau,F_re,F_im\n0.5,0,-1,"));
    }
}
