use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point `(z, w)` of `D x D`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscPair {
    pub z: num_complex::Complex64,
    pub w: num_complex::Complex64,
}

impl DiscPair {
    /// Image of the base point under `k_{i theta} a_t`.
    pub fn orbit_point(theta: f64, t: f64) -> Self {
        let th = t.tanh();
        Self {
            z: num_complex::Complex64::new((2.0 * theta).exp() * th, 0.0),
            w: num_complex::Complex64::new((-2.0 * theta).exp() * th, 0.0),
        }
    }

    pub fn in_crown(&self) -> bool {
        self.z.norm() < 1.0 && self.w.norm() < 1.0
    }
}

pub fn su11_member(theta: f64, t: f64) -> bool {
    DiscPair::orbit_point(theta, t).in_crown()
}

/// Radius of the ball in the `t` coordinate for `||log a|| <= R`.
pub fn su11_t_max(big_r: f64) -> f64 {
    big_r / 8f64.sqrt()
}

/// `beta_R = log(coth(R / sqrt 8)) / 2`.
pub fn su11_beta(big_r: f64) -> Result<f64> {
    if !(big_r > 0.0 && big_r.is_finite()) {
        return Err(Error::InvalidParameter(format!("R must be positive, got {big_r}")));
    }
    let t = su11_t_max(big_r);
    Ok(0.5 * (1.0 / t.tanh()).ln())
}

/// Brute-force `sup { theta : member(theta', t) for |theta'| <= theta, |t| <= R/sqrt 8 }`
/// by scanning `theta` upward with steps `1e-2`, `1e-3`, `1e-4`.
/// Returns the last admissible grid value and the final step.
pub fn su11_beta_brute(big_r: f64, t_samples: usize) -> Result<(f64, f64)> {
    su11_beta(big_r)?;
    let tm = su11_t_max(big_r);
    let ts: Vec<f64> = crate::estimates::linspace(-tm, tm, t_samples.max(2));
    let ok = |theta: f64| ts.iter().all(|&t| su11_member(theta, t) && su11_member(-theta, t));
    let mut good = 0.0;
    let mut step = 1e-2;
    for _ in 0..3 {
        let mut k = 1u64;
        while ok(good + k as f64 * step) {
            k += 1;
            if k > 1_000_000 {
                return Err(Error::Precondition("theta scan did not terminate".into()));
            }
        }
        good += (k - 1) as f64 * step;
        step /= 10.0;
    }
    Ok((good, step * 10.0))
}
