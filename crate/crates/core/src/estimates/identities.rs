use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;

use super::report::{witness, Constants, GridSpec, VerificationReport, Worst};
use crate::error::Result;
use crate::specialfn::{ln_sin_pi, log_gamma, EstimateKernel, SincProduct};

fn rel_from_logs(lhs: Complex64, rhs: Complex64) -> f64 {
    ((lhs - rhs).exp() - 1.0).norm()
}

fn pairs(g: &GridSpec) -> Vec<(f64, u32)> {
    g.r_values
        .iter()
        .flat_map(|&r| g.n_values().map(move |n| (r, n)))
        .collect()
}

/// Sine form against truncated product form of `f_{n,R}`, wherever the sine
/// form is defined and `|f| > 1e-6`. Tolerance `1e-8` relative.
pub fn check_dual_representation(g: &GridSpec) -> Result<VerificationReport> {
    let started = Instant::now();
    g.validate()?;
    let pts = g.rect_points();
    let parts: Vec<(Worst, usize)> = pairs(g)
        .par_iter()
        .map(|&(r, n)| {
            let f = SincProduct { n, r };
            let mut w = Worst::default();
            let mut compared = 0;
            for &(x, y) in &pts {
                let z = Complex64::new(x, y);
                let Some(a) = f.ln_sine_form(z) else { continue };
                if a.re <= 1e-6f64.ln() {
                    continue;
                }
                compared += 1;
                let b = f.ln_product_form(z);
                w.offer(rel_from_logs(a, b), || {
                    witness([("n", f64::from(n)), ("R", r), ("re", x), ("im", y)])
                });
            }
            (w, compared)
        })
        .collect();
    let compared: usize = parts.iter().map(|p| p.1).sum();
    let worst = Worst::fold(parts.into_iter().map(|p| p.0));
    Ok(VerificationReport::new(
        "dual-representation",
        g.clone(),
        worst.value,
        worst.witness,
        Constants::from([("compared".into(), compared as f64)]),
        1e-8,
        started,
    ))
}

/// `prod_{j<=n} (j+w)(j-w) * pi w / sin(pi w) = Gamma(n+1-w) Gamma(n+1+w)`
/// with `w = Rz`, skipping points within `1e-3` of an integer.
/// Tolerance `1e-9` relative.
pub fn check_euler_reflection(g: &GridSpec) -> Result<VerificationReport> {
    let started = Instant::now();
    g.validate()?;
    let pts = g.rect_points();
    let parts: Vec<Worst> = pairs(g)
        .par_iter()
        .map(|&(r, n)| {
            let mut w = Worst::default();
            for &(x, y) in &pts {
                let wz = Complex64::new(x, y) * r;
                if (wz - wz.re.round()).norm() < 1e-3 {
                    continue;
                }
                let n1 = f64::from(n) + 1.0;
                let mut lhs = (wz * PI).ln() - ln_sin_pi(wz);
                for j in 1..=n {
                    let j = f64::from(j);
                    lhs += (j + wz).ln() + (j - wz).ln();
                }
                let (Ok(g1), Ok(g2)) = (log_gamma(n1 - wz), log_gamma(n1 + wz)) else {
                    continue;
                };
                w.offer(rel_from_logs(lhs, g1 + g2), || {
                    witness([("n", f64::from(n)), ("R", r), ("re", x), ("im", y)])
                });
            }
            w
        })
        .collect();
    let worst = Worst::fold(parts);
    Ok(VerificationReport::new(
        "euler-reflection",
        g.clone(),
        worst.value,
        worst.witness,
        Constants::new(),
        1e-9,
        started,
    ))
}

/// Product form of `F_{n,R}` against its Gamma representation on real
/// `z in (0, n/R)`, `resolution` interior points per `(n, R)`.
/// Tolerance `1e-8` relative.
pub fn check_gamma_representation(g: &GridSpec) -> Result<VerificationReport> {
    let started = Instant::now();
    g.validate()?;
    let k = g.resolution;
    let parts: Vec<Worst> = pairs(g)
        .par_iter()
        .filter(|(_, n)| *n > 0)
        .map(|&(r, n)| {
            let kernel = EstimateKernel { n, r };
            let hi = f64::from(n) / r;
            let mut w = Worst::default();
            for i in 1..=k {
                let x = hi * i as f64 / (k + 1) as f64;
                let z = Complex64::new(x, 0.0);
                let Ok(gamma) = kernel.ln_gamma_form(z) else { continue };
                w.offer(rel_from_logs(kernel.ln_eval(z), gamma), || {
                    witness([("n", f64::from(n)), ("R", r), ("x", x)])
                });
            }
            w
        })
        .collect();
    let worst = Worst::fold(parts);
    Ok(VerificationReport::new(
        "gamma-representation",
        g.clone(),
        worst.value,
        worst.witness,
        Constants::new(),
        1e-8,
        started,
    ))
}
