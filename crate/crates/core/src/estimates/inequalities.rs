use std::f64::consts::E;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;

use super::report::{linspace, witness, Constants, GridSpec, VerificationReport, Worst};
use super::EXACT_TOL;
use crate::error::{Error, Result};
use crate::specialfn::{q_eval, GammaRatioPoly, HalfInt};

fn xlogx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// `phi(t) = (1+t)log(1+t) + (1-t)log(1-t)` on `[0, 1]`.
pub fn phi(t: f64) -> f64 {
    xlogx(1.0 + t) + xlogx(1.0 - t)
}

/// `H_R(x) = (1+x)log(1+x) - x log x - (1+Rx)log(1+Rx) - (1-Rx)log(1-Rx)`.
pub fn h_r(r: f64, x: f64) -> f64 {
    xlogx(1.0 + x) - xlogx(x) - xlogx(1.0 + r * x) - xlogx(1.0 - r * x)
}

/// Open-interval grid: `k` interior points of `(0, hi)` plus `hi` itself when
/// `closed_right`.
fn open_grid(hi: f64, k: usize, closed_right: bool) -> Vec<f64> {
    if closed_right {
        (1..=k).map(|i| hi * i as f64 / k as f64).collect()
    } else {
        (1..=k).map(|i| hi * i as f64 / (k + 1) as f64).collect()
    }
}

/// `(1+x)log(1+x) - x log x <= (log b)^2/b + b x^2` on `x in (0, 1]`.
pub fn check_separating_line(b_values: &[f64], x_resolution: usize) -> Result<VerificationReport> {
    let started = Instant::now();
    if let Some(b) = b_values.iter().find(|&&b| !(b >= E * E)) {
        return Err(Error::Precondition(format!("separating line needs b >= e^2, got b = {b}")));
    }
    let xs = open_grid(1.0, x_resolution, true);
    let parts: Vec<Worst> = b_values
        .par_iter()
        .map(|&b| {
            let mut w = Worst::default();
            let tangency = E / b;
            for &x in xs.iter().chain(std::iter::once(&tangency)) {
                let lhs = xlogx(1.0 + x) - xlogx(x);
                let rhs = b.ln().powi(2) / b + b * x * x;
                w.offer(lhs - rhs, || witness([("b", b), ("x", x)]));
            }
            w
        })
        .collect();
    let worst = Worst::fold(parts);
    let grid = GridSpec::interval(0.0, 1.0, x_resolution).with_r_values(b_values.to_vec());
    Ok(VerificationReport::new(
        "separating-line",
        grid,
        worst.value,
        worst.witness,
        Constants::from([("samples".into(), (b_values.len() * (xs.len() + 1)) as f64)]),
        EXACT_TOL,
        started,
    ))
}

/// `phi(t) >= t^2` on `[0, 1 - 1e-6]`.
pub fn check_phi_lower_bound(t_resolution: usize) -> VerificationReport {
    let started = Instant::now();
    let hi = 1.0 - 1e-6;
    let mut worst = Worst::default();
    for t in linspace(0.0, hi, t_resolution) {
        worst.offer(t * t - phi(t), || witness([("t", t)]));
    }
    VerificationReport::new(
        "phi-lower-bound",
        GridSpec::interval(0.0, hi, t_resolution.max(2)),
        worst.value,
        worst.witness,
        Constants::from([("samples".into(), t_resolution as f64)]),
        EXACT_TOL,
        started,
    )
}

/// `H_R(x) <= 4 (log R)^2 / R^2` on `x in (0, 1/R)`.
pub fn check_hr_bound(r_values: &[f64], x_resolution: usize) -> Result<VerificationReport> {
    let started = Instant::now();
    if let Some(r) = r_values.iter().find(|&&r| !(r >= E)) {
        return Err(Error::Precondition(format!("H_R bound needs R >= e, got R = {r}")));
    }
    let parts: Vec<(Worst, f64)> = r_values
        .par_iter()
        .map(|&r| {
            let bound = 4.0 * r.ln().powi(2) / (r * r);
            let mut w = Worst::default();
            let mut sup = f64::NEG_INFINITY;
            for x in open_grid(1.0 / r, x_resolution, false) {
                let h = h_r(r, x);
                sup = sup.max(h / bound);
                w.offer(h - bound, || witness([("R", r), ("x", x)]));
            }
            (w, sup)
        })
        .collect();
    let sharpness = parts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let worst = Worst::fold(parts.into_iter().map(|p| p.0));
    let grid = GridSpec::interval(0.0, 1.0, x_resolution).with_r_values(r_values.to_vec());
    Ok(VerificationReport::new(
        "hr-bound",
        grid,
        worst.value,
        worst.witness,
        Constants::from([("max_ratio_to_bound".into(), sharpness)]),
        EXACT_TOL,
        started,
    ))
}

/// Parameters of the Gamma-ratio polynomial bound scan.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaAbGrid {
    /// Values of `a`, as doubled integers (so `1` is `a = 1/2`).
    pub a_doubled: Vec<i64>,
    pub max_degree: u32,
    pub z: GridSpec,
}

impl Default for GammaAbGrid {
    fn default() -> Self {
        Self {
            a_doubled: vec![1, 2, 3, 4, 5, 6],
            max_degree: 8,
            z: GridSpec::rect([-5.0, 5.0], [-5.0, 5.0], 41),
        }
    }
}

/// Upper bounds `|G(z)| <= G(|z|) <= q_{b-a}(|z|)` (times `b/a` when `a < 1`)
/// and the lower bound `|G(z)| >= 1` on `Re z >= 0`, for `G = Gamma_{a,b}`.
/// Upper bounds are compared relatively.
pub fn check_gamma_ab_bounds(g: &GammaAbGrid) -> Result<VerificationReport> {
    let started = Instant::now();
    g.z.validate()?;
    let pts = g.z.rect_points();
    let mut polys = Vec::new();
    for &ad in &g.a_doubled {
        for d in 0..=g.max_degree {
            let a = HalfInt::from_doubled(ad);
            polys.push(GammaRatioPoly::new(a, a + HalfInt::int(i64::from(d)))?);
        }
    }
    let parts: Vec<Worst> = polys
        .par_iter()
        .map(|p| {
            let (a, b) = (p.a().to_f64(), p.b().to_f64());
            let factor = if a >= 1.0 { 1.0 } else { b / a };
            let mut w = Worst::default();
            for &(x, y) in &pts {
                let z = Complex64::new(x, y);
                let modulus = z.norm();
                let val = p.eval(z).norm();
                let at_abs = p.eval(Complex64::new(modulus, 0.0)).re;
                let q = factor * q_eval(p.degree(), modulus);
                let wit = || witness([("a", a), ("b", b), ("re", x), ("im", y)]);
                w.offer(val / at_abs - 1.0, wit);
                w.offer(at_abs / q - 1.0, wit);
                if x >= 0.0 {
                    w.offer(1.0 - val, wit);
                }
            }
            w
        })
        .collect();
    let worst = Worst::fold(parts);
    let samples = (polys.len() * pts.len()) as f64;
    Ok(VerificationReport::new(
        "gamma-ab-bounds",
        g.z.clone(),
        worst.value,
        worst.witness,
        Constants::from([("samples".into(), samples)]),
        EXACT_TOL,
        started,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_examples() {
        assert_eq!(phi(0.0), 0.0);
        assert!((phi(0.5) - (1.5 * 1.5f64.ln() + 0.5 * 0.5f64.ln())).abs() < 1e-15);
        assert!(phi(0.5) >= 0.25);
        assert!((phi(1.0) - 2.0 * 2.0f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn separating_line_examples() {
        let b = 100.0f64;
        let lhs = 2.0 * 2.0f64.ln();
        let rhs = b.ln().powi(2) / b + b;
        assert!(lhs <= rhs && (rhs - 100.212).abs() < 1e-3);
        assert!(check_separating_line(&[E * E, 100.0], 1000).unwrap().passed);
        assert!(check_separating_line(&[5.0], 10).is_err());
    }

    #[test]
    fn hr_examples() {
        assert!((4.0 / (E * E) - 0.5413).abs() < 1e-4);
        assert!(h_r(10.0, 1e-12).abs() < 1e-9);
        let rep = check_hr_bound(&[E, 100.0], 2000).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert!(check_hr_bound(&[2.0], 10).is_err());
    }

    #[test]
    fn violations_are_detected() {
        // With the bound removed the inequality fails, so the harness must see it.
        let worst = open_grid(1.0, 10, true)
            .into_iter()
            .map(|x| xlogx(1.0 + x) - xlogx(x))
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(worst > 0.0);
    }
}
