use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimates::{Constants, GridSpec, VerificationReport, Worst};
use crate::rankone::{
    admissible_ktypes, j_scalar_z, kostant_ok_rank_one, perturb_r, q_tilde_eval, KTypeData, RankOneParams,
};
use crate::specialfn::{e_tau_poly, FactoredPoly, SincProduct};
use crate::weyl::WeylElement;
use crate::SpectralParameter;

/// Power of `psi` in `phi_tau`.
pub const PSI_POWER: u32 = 8;

/// Largest number of factors accepted by [`ProductModel::new`].
pub const MAX_FACTORS: usize = 8;

/// Product of rank one systems. Coordinates are the rank one coordinates
/// `z_i = lambda(alpha_i^vee / gamma_i)`, one per factor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductModel {
    pub factors: Vec<RankOneParams>,
    pub gamma: Vec<f64>,
    pub h_const: f64,
    /// Integer used for `e_tau` and `psi`: the largest per-factor `m_pole`.
    pub m_global: u32,
}

impl ProductModel {
    pub fn new(factors: Vec<RankOneParams>) -> Result<Self> {
        if factors.is_empty() || factors.len() > MAX_FACTORS {
            return Err(Error::InvalidParameter(format!(
                "need 1..={MAX_FACTORS} factors, got {}",
                factors.len()
            )));
        }
        let gamma = factors.iter().map(|p| p.coroot_scale()).collect();
        let m_global = factors.iter().map(m_pole).max().unwrap_or(1);
        // In the coordinates z_i every alpha^vee / gamma has unit length.
        Ok(Self { factors, gamma, h_const: 8.0 * PI, m_global })
    }

    pub fn uniform(p: RankOneParams, l: usize) -> Result<Self> {
        Self::new(vec![p; l])
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn num_positive(&self) -> usize {
        self.factors.len()
    }

    /// Largest structural `m` of the factors, before pole covering.
    pub fn m_max(&self) -> u32 {
        self.factors.iter().map(|p| p.m).max().unwrap_or(1)
    }

    /// `M = m_global * ceil|tau|`.
    pub fn big_m(&self, tau: &ProductKType) -> u32 {
        self.m_global * tau.ceil_norm()
    }

    /// `e_tau` as a polynomial in one variable.
    pub fn e_tau(&self, tau: &ProductKType) -> FactoredPoly {
        e_tau_poly(self.big_m(tau))
    }

    fn check_rank(&self, lambda: &SpectralParameter) -> Result<()> {
        if lambda.rank() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: lambda.rank() });
        }
        Ok(())
    }

    fn check_tau(&self, tau: &ProductKType) -> Result<()> {
        if tau.parts.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: tau.parts.len() });
        }
        tau.parts.iter().zip(&self.factors).try_for_each(|(k, p)| k.validate(p))
    }

    /// Smallest `R' <= R` with `R' z0_i` clear of the nonzero integers for all `i`.
    pub fn admissible_r(&self, r: f64, lambda0: &SpectralParameter) -> Result<f64> {
        let mut cur = r;
        loop {
            let mut next = cur;
            for &z in lambda0.coords() {
                next = perturb_r(next, z)?;
            }
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
    }

    pub fn kostant_ok(&self, lambda0: &SpectralParameter) -> bool {
        self.factors.iter().zip(lambda0.coords()).all(|(p, &z)| kostant_ok_rank_one(p, z))
    }
}

/// Smallest `m'` with every Gamma-ratio denominator root of `J` on a K-type
/// `tau` lying inside the root set of `e_tau` built from `m' ceil|tau|`.
pub fn m_pole(p: &RankOneParams) -> u32 {
    p.m + p.a_max().ceil() as u32
}

/// One K-type of the product: a rank one K-type per factor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductKType {
    pub parts: Vec<KTypeData>,
}

impl ProductKType {
    pub fn new(parts: Vec<KTypeData>) -> Self {
        Self { parts }
    }

    pub fn trivial(l: usize) -> Self {
        Self { parts: vec![KTypeData::new(0.0, 0, 0); l] }
    }

    /// `|tau| = sqrt(sum |tau_i|^2)`.
    pub fn norm(&self) -> f64 {
        self.parts.iter().map(|k| k.tau_norm * k.tau_norm).sum::<f64>().sqrt()
    }

    pub fn ceil_norm(&self) -> u32 {
        (self.norm() - 1e-12).ceil().max(0.0) as u32
    }
}

/// Indices of the coordinates negated by an element of `(Z/2)^l`.
pub fn flips(w: &WeylElement) -> Vec<bool> {
    w.images.iter().enumerate().map(|(i, img)| img[i] < 0).collect()
}

fn flip_apply(flip: &[bool], lambda: &[Complex64]) -> Vec<Complex64> {
    lambda.iter().zip(flip).map(|(&z, &f)| if f { -z } else { z }).collect()
}

/// `J_{w, lambda}[tau]`: product of the rank one scalars of the flipped factors.
pub fn j_product(model: &ProductModel, tau: &ProductKType, w: &WeylElement, lambda: &SpectralParameter) -> Result<Complex64> {
    model.check_rank(lambda)?;
    model.check_tau(tau)?;
    let mut acc = Complex64::new(1.0, 0.0);
    for (i, flipped) in flips(w).into_iter().enumerate() {
        if !flipped {
            continue;
        }
        let z = lambda.coords()[i];
        acc *= j_scalar_z(&model.factors[i], &tau.parts[i], z).map_err(|e| match e {
            Error::Pole(root) => Error::FactorPole { factor: i, root },
            other => other,
        })?;
    }
    Ok(acc)
}

/// `psi_{n,R}(lambda) = prod_i f_{n,R}(z_i) / prod_i f_{n,R}(z0_i)`.
pub fn psi_eval(model: &ProductModel, n: u32, r: f64, lambda: &SpectralParameter, lambda0: &SpectralParameter) -> Result<Complex64> {
    model.check_rank(lambda)?;
    model.check_rank(lambda0)?;
    let r = model.admissible_r(r, lambda0)?;
    let s = SincProduct::new(n, r)?;
    let num: Complex64 = lambda.coords().iter().map(|&z| s.ln_eval(z)).sum();
    let den: Complex64 = lambda0.coords().iter().map(|&z| s.ln_eval(z)).sum();
    Ok(ln_to_value(num - den))
}

/// `p_tau(lambda) = prod_i e_tau(i z_i) / prod_i e_tau(i z0_i)`.
pub fn p_tau_eval(model: &ProductModel, tau: &ProductKType, lambda: &SpectralParameter, lambda0: &SpectralParameter) -> Result<Complex64> {
    model.check_rank(lambda)?;
    model.check_rank(lambda0)?;
    if !model.kostant_ok(lambda0) {
        return Err(Error::Kostant(format!("{:?}", lambda0.coords())));
    }
    let e = model.e_tau(tau);
    let i = Complex64::i();
    let num: Complex64 = lambda.coords().iter().map(|&z| e.eval(i * z)).product();
    let den: Complex64 = lambda0.coords().iter().map(|&z| e.eval(i * z)).product();
    Ok(num / den)
}

pub(crate) fn ln_to_value(l: Complex64) -> Complex64 {
    if l.re == f64::NEG_INFINITY {
        Complex64::new(0.0, 0.0)
    } else {
        l.exp()
    }
}

/// Denominator of `J` on `tau` as a polynomial in `x = i lambda(alpha^vee/gamma)`.
pub fn j_denominator(p: &RankOneParams, k: &KTypeData) -> Result<FactoredPoly> {
    Ok(p.q_factors(k)?
        .iter()
        .fold(FactoredPoly::one(), |acc, g| acc.mul(&g.to_factored())))
}

/// Exact divisibility of every `J` denominator into `e_tau`, for every preset
/// factor and every admissible K-type of norm `1..=tau_max`. `m` is taken as
/// [`m_pole`] of the factor.
pub fn pole_cancellation_check(presets: &[(String, RankOneParams)], tau_max: u32) -> VerificationReport {
    let started = Instant::now();
    let mut worst = Worst::default();
    let mut checked = 0usize;
    let mut failures = 0usize;
    for (pi, (_, p)) in presets.iter().enumerate() {
        let mp = m_pole(p);
        for t in 0..=tau_max {
            let e = e_tau_poly(mp * t);
            for k in admissible_ktypes(p, f64::from(t)) {
                checked += 1;
                let ok = j_denominator(p, &k).map(|d| d.divides(&e)).unwrap_or(false);
                if !ok {
                    failures += 1;
                    worst.offer(1.0, || {
                        Constants::from([
                            ("preset".into(), pi as f64),
                            ("tau".into(), f64::from(t)),
                            ("r".into(), f64::from(k.r_param)),
                            ("s".into(), f64::from(k.s_param)),
                        ])
                    });
                }
            }
        }
    }
    let constants = Constants::from([
        ("presets".into(), presets.len() as f64),
        ("ktypes_checked".into(), checked as f64),
        ("failures".into(), failures as f64),
        ("tau_max".into(), f64::from(tau_max)),
    ]);
    VerificationReport::new(
        "pole-cancellation",
        GridSpec::interval(0.0, f64::from(tau_max), tau_max as usize + 1),
        worst.value.max(0.0),
        worst.witness,
        constants,
        0.0,
        started,
    )
}

/// Norm of `Q~` at `z` for factor `i`, used to skip points near poles.
pub(crate) fn q_abs(model: &ProductModel, i: usize, k: &KTypeData, z: Complex64) -> f64 {
    q_tilde_eval(&model.factors[i], k, z).map(|v| v.norm()).unwrap_or(0.0)
}

pub(crate) fn flip_point(w: &WeylElement, lambda: &[Complex64]) -> Vec<Complex64> {
    flip_apply(&flips(w), lambda)
}
