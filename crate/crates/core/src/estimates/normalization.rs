use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::report::{witness, Constants, GridSpec, VerificationReport, Worst};
use super::EXACT_TOL;
use crate::error::{Error, Result};
use crate::specialfn::SincProduct;

fn forbidden(z0: Complex64, r: f64) -> bool {
    let w = z0 * r;
    let k = w.re.round();
    k != 0.0 && (w - k).norm() < 1e-9
}

/// `min{|f_0(z0)|, ..., |f_{N-1}(z0)|, f_N(|z0|)}` with `N = ceil(R|z0|)`,
/// a positive lower bound for `inf_n |f_{n,R}(z0)|` that is attained for
/// real `z0`.
pub fn inf_f_at(z0: Complex64, r: f64) -> Result<f64> {
    SincProduct::new(0, r)?;
    if forbidden(z0, r) {
        return Err(Error::IntegerPoint((z0 * r).re));
    }
    let big_n = (r * z0.norm()).ceil() as u32;
    let tail = SincProduct { n: big_n, r }
        .eval(Complex64::new(z0.norm(), 0.0))
        .re;
    Ok((0..big_n)
        .map(|n| SincProduct { n, r }.eval(z0).norm())
        .fold(tail, f64::min))
}

/// `min_{n <= n_max} |f_{n,R}(z0)|` by direct evaluation.
pub fn inf_f_brute(z0: Complex64, r: f64, n_max: u32) -> f64 {
    (0..=n_max)
        .map(|n| SincProduct { n, r }.eval(z0).norm())
        .fold(f64::INFINITY, f64::min)
}

/// Compares [`inf_f_at`] with [`inf_f_brute`] (`n <= 1000`) on `cases`
/// seeded admissible real points `z0 in [-3, 3]`, `R in [0.5, 4]`.
pub fn check_inf_f(seed: u64, cases: usize) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(cases);
    while samples.len() < cases {
        let z0: f64 = rng.random_range(-3.0..3.0);
        let r: f64 = rng.random_range(0.5..4.0);
        let w = r * z0;
        if w.round() != 0.0 && (w - w.round()).abs() < 1e-3 {
            continue;
        }
        samples.push((z0, r));
    }
    use rayon::prelude::*;
    let parts: Vec<Result<Worst>> = samples
        .par_iter()
        .map(|&(z0, r)| {
            let z = Complex64::new(z0, 0.0);
            let bound = inf_f_at(z, r)?;
            let brute = inf_f_brute(z, r, 1000);
            let mut w = Worst::default();
            w.offer((bound - brute).abs(), || {
                witness([("z0", z0), ("R", r), ("bound", bound), ("brute", brute)])
            });
            Ok(w)
        })
        .collect();
    let worst = Worst::fold(parts.into_iter().collect::<Result<Vec<_>>>()?);
    let grid = GridSpec::interval(-3.0, 3.0, cases.max(2)).with_n_range(0, 1000);
    Ok(VerificationReport::new(
        "inf-f",
        grid,
        worst.value,
        worst.witness,
        Constants::from([("seed".into(), seed as f64), ("cases".into(), cases as f64)]),
        EXACT_TOL,
        started,
    ))
}

/// Two-sided comparison of `log(AR+B)/(AR+B)` with `log R / R` on
/// `R in [C0, 1e6]`.
///
/// `C0 = max(3, 2(1 + |B|)/A)` keeps both logarithms positive. Reports `C1 = min` and
/// `C2 = max` of the ratio, the limit `1/A`, and `a / C2^2`, the factor by
/// which the gate constant shrinks after the substitution `r = a s`.
pub fn check_scaling_remark(a_coef: f64, b: f64, a_scale: f64) -> Result<VerificationReport> {
    let started = Instant::now();
    if !(a_coef > 0.0 && a_coef.is_finite()) {
        return Err(Error::InvalidParameter(format!("A must be positive, got {a_coef}")));
    }
    if !(a_scale > 0.0 && a_scale.is_finite()) {
        return Err(Error::InvalidParameter(format!("a must be positive, got {a_scale}")));
    }
    let c0 = 3f64.max(2.0 * (1.0 + b.abs()) / a_coef);
    let hi = 1e6f64.max(10.0 * c0);
    let k = 4001;
    let (mut c1, mut c2) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut worst = Worst::default();
    for i in 0..k {
        let big_r = c0 * (hi / c0).powf(i as f64 / (k - 1) as f64);
        let s = a_coef * big_r + b;
        let ratio = (s.ln() / s) / (big_r.ln() / big_r);
        c1 = c1.min(ratio);
        c2 = c2.max(ratio);
        worst.offer(-ratio, || witness([("R", big_r), ("ratio", ratio)]));
    }
    let grid = GridSpec::interval(c0, hi, k);
    let constants = Constants::from([
        ("C0".into(), c0),
        ("C1".into(), c1),
        ("C2".into(), c2),
        ("limit".into(), 1.0 / a_coef),
        ("gate_factor".into(), a_scale / (c2 * c2)),
    ]);
    let violation = if c2.is_finite() { worst.value } else { f64::INFINITY };
    Ok(VerificationReport::new(
        "scaling-remark",
        grid,
        violation,
        worst.witness,
        constants,
        0.0,
        started,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn inf_examples() {
        let v = inf_f_at(Complex64::new(0.5, 0.0), 1.0).unwrap();
        assert!((v - 2.0 / PI).abs() < 1e-12);
        assert!((inf_f_at(Complex64::new(0.0, 0.0), 2.5).unwrap() - 1.0).abs() < 1e-15);
        let f1 = SincProduct { n: 1, r: 1.0 }.eval(Complex64::new(0.5, 0.0)).re;
        assert!((f1 - 0.8488).abs() < 1e-4);
    }

    #[test]
    fn complex_point_gives_lower_bound() {
        let z0 = Complex64::new(0.3, 0.4);
        let bound = inf_f_at(z0, 2.0).unwrap();
        let brute = inf_f_brute(z0, 2.0, 1000);
        assert!(bound <= brute + 1e-12 && bound > 0.0);
    }

    #[test]
    fn excluded_points_are_zeros() {
        let z0 = Complex64::new(1.5, 0.0);
        assert!(matches!(inf_f_at(z0, 2.0), Err(Error::IntegerPoint(_))));
        assert!(SincProduct { n: 2, r: 2.0 }.eval(z0).norm() < 1e-12);
    }

    #[test]
    fn scaling_examples() {
        let rep = check_scaling_remark(1.0, 0.0, 1.0).unwrap();
        assert!((rep.constants["C1"] - 1.0).abs() < 1e-12 && (rep.constants["C2"] - 1.0).abs() < 1e-12);
        let rep = check_scaling_remark(2.0, 0.0, 1.0).unwrap();
        assert!(rep.passed && rep.constants["C1"] < 0.6 && rep.constants["C2"] <= 1.0);
        let rep = check_scaling_remark(1.0, 100.0, 1.0).unwrap();
        assert!(rep.passed && rep.constants["C0"] > 3.0);
    }

    #[test]
    fn seeded_cases_match() {
        let rep = check_inf_f(7, 4).unwrap();
        assert!(rep.passed, "{rep:?}");
    }
}
