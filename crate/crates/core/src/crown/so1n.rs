use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the complexified hyperboloid `{u : u_0^2 - u_1^2 - ... - u_n^2 = 1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HyperboloidComplexPoint {
    pub u: Vec<Complex64>,
}

impl HyperboloidComplexPoint {
    /// `u_0^2 - sum_{k>=1} u_k^2`.
    pub fn quadratic_form(&self) -> Complex64 {
        let (first, rest) = self.u.split_first().expect("non-empty point");
        first * first - rest.iter().map(|x| x * x).sum::<Complex64>()
    }

    /// Image of the base point under `exp(i beta) a_t` with `a_t` moving in
    /// direction `dir`, written out in coordinates.
    pub fn orbit_point(beta: &[f64], t: f64, dir: &[f64]) -> Result<Self> {
        check_dims(beta, dir)?;
        let mut u = vec![Complex64::new(t.cosh(), 0.0)];
        let s = t.sinh();
        for (j, &b) in beta.iter().enumerate() {
            let (a, c) = (dir[2 * j] * s, dir[2 * j + 1] * s);
            // rotation by i*beta in the (2j, 2j+1) plane
            let cb = Complex64::new(b.cosh(), 0.0);
            let sb = Complex64::new(0.0, b.sinh());
            u.push(cb * a - sb * c);
            u.push(sb * a + cb * c);
        }
        Ok(Self { u })
    }
}

fn check_dims(beta: &[f64], dir: &[f64]) -> Result<()> {
    if dir.len() != 2 * beta.len() {
        return Err(Error::DimensionMismatch { expected: 2 * beta.len(), got: dir.len() });
    }
    Ok(())
}

/// `cosh^2 t - sum_j cosh^2 beta_j (u_{2j-1}^2 + u_{2j}^2) > 0` with `u = |sinh t| dir`.
pub fn so1n_member(beta: &[f64], t: f64, dir: &[f64]) -> Result<bool> {
    Ok(so1n_margin(beta, t, dir)? > 0.0)
}

/// Left-hand side of the membership inequality.
pub fn so1n_margin(beta: &[f64], t: f64, dir: &[f64]) -> Result<f64> {
    check_dims(beta, dir)?;
    let s2 = t.sinh().powi(2);
    let sum: f64 = beta
        .iter()
        .enumerate()
        .map(|(j, b)| b.cosh().powi(2) * (dir[2 * j].powi(2) + dir[2 * j + 1].powi(2)))
        .sum();
    Ok(t.cosh().powi(2) - sum * s2)
}

/// `R' = R / sqrt(2(n-1))`.
pub fn so1n_r_prime(big_r: f64, n: u32) -> f64 {
    big_r / (2.0 * f64::from(n - 1)).sqrt()
}

/// `asinh(1 / sinh R')`.
pub fn so1n_chamber_bound(big_r: f64, n: u32) -> Result<f64> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::Unsupported(format!("SO(1,{n}): only even n >= 2")));
    }
    if !(big_r > 0.0 && big_r.is_finite()) {
        return Err(Error::InvalidParameter(format!("R must be positive, got {big_r}")));
    }
    Ok((1.0 / so1n_r_prime(big_r, n).sinh()).asinh())
}

/// Unit directions in `R^n`: the coordinate axes, then seeded Gaussian samples.
pub fn direction_samples(n: usize, random: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = (0..n)
        .map(|k| (0..n).map(|j| f64::from(u8::from(j == k))).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < n + random {
        let v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            out.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    out
}

/// Brute-force largest `beta_1` (chamber point `beta_j = beta_1 (l - j) / l`)
/// with membership for all sampled `|t| <= R'` and directions; scanned upward
/// with steps `1e-2`, `1e-3`, `1e-4`.
pub fn so1n_bound_brute(big_r: f64, n: u32, t_samples: usize, dirs: &[Vec<f64>]) -> Result<f64> {
    so1n_chamber_bound(big_r, n)?;
    let l = (n / 2) as usize;
    let rp = so1n_r_prime(big_r, n);
    let ts = crate::estimates::linspace(-rp, rp, t_samples.max(2));
    let ok = |b1: f64| -> Result<bool> {
        let beta: Vec<f64> = (0..l).map(|j| b1 * (l - j) as f64 / l as f64).collect();
        for d in dirs {
            for &t in &ts {
                if !so1n_member(&beta, t, d)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    };
    let mut good = 0.0;
    let mut step = 1e-2;
    for _ in 0..3 {
        let mut k = 1u64;
        while ok(good + k as f64 * step)? {
            k += 1;
            if k > 1_000_000 {
                return Err(Error::Precondition("beta scan did not terminate".into()));
            }
        }
        good += (k - 1) as f64 * step;
        step /= 10.0;
    }
    Ok(good)
}
