use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gamma::{ln_sin_pi, log_gamma};
use super::poly::q_ln;
use crate::error::{Error, Result};

/// Minimal distance from `Rz` to the integers `|j| <= n` above which the sine
/// form is used.
pub const BRANCH_THRESHOLD: f64 = 0.25;

const MIN_TRUNCATION: usize = 1000;
const TAIL_TERMS: u32 = 14;
const SERIES_RADIUS: f64 = 1e-2;

/// `f_{n,R}(z) = prod_{j > n} (1 - (Rz/j)^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SincProduct {
    pub n: u32,
    pub r: f64,
}

impl SincProduct {
    pub fn new(n: u32, r: f64) -> Result<Self> {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::InvalidParameter(format!("R must be positive, got {r}")));
        }
        Ok(Self { n, r })
    }

    /// Distance from `Rz` to `{j in Z : |j| <= n}`.
    pub fn branch_distance(&self, z: Complex64) -> f64 {
        let w = z * self.r;
        let n = f64::from(self.n);
        let j = w.re.round().clamp(-n, n);
        (w - j).norm()
    }

    /// `log f_{n,R}(z)` via `sin(pi w) / (pi w prod_{j<=n} (1 - (w/j)^2))`, `w = Rz`.
    ///
    /// Returns `None` when `w` sits on one of the cancelled zeros `|j| <= n`,
    /// `j != 0`, where the quotient is `0/0`.
    pub fn ln_sine_form(&self, z: Complex64) -> Option<Complex64> {
        let w = z * self.r;
        let cancelled = ln_product((1..=self.n).map(|j| {
            let t = w / f64::from(j);
            (1.0 - t) * (1.0 + t)
        }));
        if cancelled.re == f64::NEG_INFINITY {
            return None;
        }
        Some(ln_sinc_pi(w) - cancelled)
    }

    /// `log f_{n,R}(z)` via the truncated product with an Euler-Maclaurin tail.
    pub fn ln_product_form(&self, z: Complex64) -> Complex64 {
        let w = z * self.r;
        let n = self.n as usize;
        let big_j = MIN_TRUNCATION
            .max((10.0 * w.norm()).ceil() as usize)
            .max(10 * n);
        let head = ln_product(((n + 1)..=big_j).map(|j| {
            let t = w / j as f64;
            (1.0 - t) * (1.0 + t)
        }));
        head + ln_tail(w, big_j as f64)
    }

    pub fn ln_eval(&self, z: Complex64) -> Complex64 {
        if self.branch_distance(z) > BRANCH_THRESHOLD {
            if let Some(v) = self.ln_sine_form(z) {
                return v;
            }
        }
        self.ln_product_form(z)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let l = self.ln_eval(z);
        if l.re == f64::NEG_INFINITY {
            Complex64::new(0.0, 0.0)
        } else {
            l.exp()
        }
    }

    pub fn abs_ln(&self, z: Complex64) -> f64 {
        self.ln_eval(z).re
    }
}

/// `log prod factors`, multiplying in linear scale and folding into the log
/// every few factors or when the running product leaves a safe range.
/// A zero factor gives a real part of `-inf`.
fn ln_product(factors: impl Iterator<Item = Complex64>) -> Complex64 {
    let mut ln_acc = Complex64::new(0.0, 0.0);
    let mut run = Complex64::new(1.0, 0.0);
    let mut count = 0;
    for f in factors {
        run *= f;
        count += 1;
        let mag = run.re.abs() + run.im.abs();
        if count == 32 || !(1e-200..=1e200).contains(&mag) {
            if mag == 0.0 {
                return Complex64::new(f64::NEG_INFINITY, 0.0);
            }
            ln_acc += run.ln();
            run = Complex64::new(1.0, 0.0);
            count = 0;
        }
    }
    if run.re == 0.0 && run.im == 0.0 {
        return Complex64::new(f64::NEG_INFINITY, 0.0);
    }
    ln_acc + run.ln()
}

/// `log(sin(pi w) / (pi w))` with the removable singularity at 0.
fn ln_sinc_pi(w: Complex64) -> Complex64 {
    if w.norm() < SERIES_RADIUS {
        let u = (w * PI).powi(2);
        (1.0 - u / 6.0 + u * u / 120.0).ln()
    } else {
        ln_sin_pi(w) - (w * PI).ln()
    }
}

/// `sum_{j > J} log(1 - (w/j)^2) = -sum_k w^{2k}/k * zeta_J(2k)` where
/// `zeta_J(s) = sum_{j > J} j^{-s}` is taken from Euler-Maclaurin.
fn ln_tail(w: Complex64, big_j: f64) -> Complex64 {
    let w2 = w * w;
    let mut wpow = Complex64::new(1.0, 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 1..=TAIL_TERMS {
        wpow *= w2;
        let s = f64::from(2 * k);
        let zeta = big_j.powf(1.0 - s) / (s - 1.0) - big_j.powf(-s) / 2.0
            + s / 12.0 * big_j.powf(-s - 1.0)
            - s * (s + 1.0) * (s + 2.0) / 720.0 * big_j.powf(-s - 3.0);
        acc -= wpow * (zeta / f64::from(k));
    }
    acc
}

pub fn f_eval(s: &SincProduct, z: Complex64) -> Complex64 {
    s.eval(z)
}

pub fn f_ln(s: &SincProduct, z: Complex64) -> Complex64 {
    s.ln_eval(z)
}

/// `F_{n,R}(z) = f_{n,R}(z) q_n(|z|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateKernel {
    pub n: u32,
    pub r: f64,
}

impl EstimateKernel {
    pub fn new(n: u32, r: f64) -> Result<Self> {
        SincProduct::new(n, r)?;
        Ok(Self { n, r })
    }

    pub fn sinc(&self) -> SincProduct {
        SincProduct { n: self.n, r: self.r }
    }

    pub fn ln_eval(&self, z: Complex64) -> Complex64 {
        self.sinc().ln_eval(z) + q_ln(self.n, z.norm())
    }

    /// `log |F_{n,R}(z)|`.
    pub fn abs_ln(&self, z: Complex64) -> f64 {
        self.ln_eval(z).re
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let l = self.ln_eval(z);
        if l.re == f64::NEG_INFINITY {
            Complex64::new(0.0, 0.0)
        } else {
            l.exp()
        }
    }

    /// `log` of `Gamma(n+1+z)Gamma(n+1) / (Gamma(1+z)Gamma(n+1+Rz)Gamma(n+1-Rz))`,
    /// which equals `F_{n,R}(z)` for real `z >= 0`.
    pub fn ln_gamma_form(&self, z: Complex64) -> Result<Complex64> {
        let n1 = f64::from(self.n) + 1.0;
        let w = z * self.r;
        Ok(log_gamma(z + n1)? + log_gamma(Complex64::new(n1, 0.0))?
            - log_gamma(z + 1.0)?
            - log_gamma(w + n1)?
            - log_gamma(n1 - w)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn spec_examples() {
        let f = SincProduct::new(0, 1.0).unwrap();
        assert!((f.eval(c(0.5, 0.0)) - c(2.0 / PI, 0.0)).norm() < 1e-12);
        let f = SincProduct::new(2, 1.0).unwrap();
        assert!((f.eval(c(1.0, 0.0)) - c(2.0 / 3.0, 0.0)).norm() < 1e-10);
        let f = SincProduct::new(5, 3.0).unwrap();
        assert!((f.eval(c(0.0, 0.0)) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn rejects_nonpositive_radius() {
        assert!(SincProduct::new(1, 0.0).is_err());
        assert!(SincProduct::new(1, f64::NAN).is_err());
    }

    #[test]
    fn branches_agree_away_from_cancelled_zeros() {
        for &(n, r) in &[(0u32, 1.0), (3, 1.0), (7, 3.0), (20, 10.0)] {
            let f = SincProduct::new(n, r).unwrap();
            for &z in &[c(0.37, 0.2), c(-1.13, 0.9), c(2.41, -1.7), c(0.05, 3.0)] {
                let Some(a) = f.ln_sine_form(z) else { continue };
                let a = a.exp();
                let b = f.ln_product_form(z).exp();
                assert!((a - b).norm() <= 1e-9 * a.norm(), "n={n} R={r} z={z}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn zeros_past_n() {
        let f = SincProduct::new(3, 2.0).unwrap();
        for k in [4, 5, 9, -4, -7] {
            let z = c(f64::from(k) / 2.0, 0.0);
            assert!(f.eval(z).norm() < 1e-9, "k = {k}");
        }
        for k in [1, 2, 3, -3] {
            let z = c(f64::from(k) / 2.0, 0.0);
            assert!(f.eval(z).norm() > 1e-3, "k = {k}");
        }
    }

    #[test]
    fn continuity_at_origin() {
        let f = SincProduct::new(0, 1.0).unwrap();
        let inside = f.ln_sine_form(c(0.0099, 0.0)).unwrap().exp();
        let outside = f.ln_sine_form(c(0.0101, 0.0)).unwrap().exp();
        assert!((inside - outside).norm() < 1e-3);
        let near = f.ln_sine_form(c(0.0099, 0.0)).unwrap().exp();
        let prod = f.ln_product_form(c(0.0099, 0.0)).exp();
        assert!((near - prod).norm() < 1e-12);
    }

    #[test]
    fn kernel_matches_gamma_form_on_real_axis() {
        let k = EstimateKernel::new(10, 3.0).unwrap();
        for &x in &[0.1, 0.77, 1.9, 3.1] {
            let lhs = k.ln_eval(c(x, 0.0));
            let rhs = k.ln_gamma_form(c(x, 0.0)).unwrap();
            assert!((lhs.exp() - rhs.exp()).norm() <= 1e-9 * rhs.exp().norm());
        }
        assert!((k.eval(c(0.0, 0.0)) - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn large_imaginary_part_stays_finite() {
        let f = SincProduct::new(4, 10.0).unwrap();
        let l = f.ln_eval(c(0.3, 30.0));
        assert!(l.re.is_finite() && l.re > 500.0);
    }
}
