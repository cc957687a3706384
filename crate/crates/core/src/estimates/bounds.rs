use std::f64::consts::{E, FRAC_PI_2, PI};
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;

use super::report::{linspace, witness, Constants, GridSpec, Region, VerificationReport, Worst};
use super::{GATE_C, R0, STABILITY_TOL};
use crate::error::{Error, Result};
use crate::specialfn::EstimateKernel;

/// The admissibility gate `(log R)^2 / R^2 < c r` with `c = 0.2`.
pub fn gate_ok(big_r: f64, r: f64) -> bool {
    big_r.ln().powi(2) / (big_r * big_r) < GATE_C * r
}

fn rect_of(g: &GridSpec) -> Result<([f64; 2], [f64; 2])> {
    match g.region {
        Region::Rect { re, im } => Ok((re, im)),
        Region::Interval { .. } => Err(Error::InvalidParameter(
            "this check needs a rectangular region".into(),
        )),
    }
}

/// Scan `log value(n, R, z)` over all `(R, n)` in the grid and certify that
/// the sup is stable when the `n` range is halved.
fn sup_stability<P, V>(
    check_id: &str,
    g: &GridSpec,
    const_name: &str,
    points: P,
    log_value: V,
    started: Instant,
) -> VerificationReport
where
    P: Fn(f64, u32) -> Vec<Complex64> + Sync,
    V: Fn(f64, u32, Complex64) -> f64 + Sync,
{
    let jobs: Vec<(f64, u32)> = g
        .r_values
        .iter()
        .flat_map(|&r| g.n_values().map(move |n| (r, n)))
        .collect();
    let parts: Vec<(u32, Worst)> = jobs
        .par_iter()
        .map(|&(r, n)| {
            let mut w = Worst::default();
            for z in points(r, n) {
                w.offer(log_value(r, n, z), || {
                    witness([("n", f64::from(n)), ("R", r), ("re", z.re), ("im", z.im)])
                });
            }
            (n, w)
        })
        .collect();
    let n_half = g.n_range[0] + (g.n_range[1] - g.n_range[0]) / 2;
    let half = Worst::fold(parts.iter().filter(|p| p.0 <= n_half).map(|p| p.1.clone()));
    let upper = Worst::fold(parts.iter().filter(|p| p.0 > n_half).map(|p| p.1.clone()));
    let full = Worst::fold(parts.into_iter().map(|p| p.1));
    let (m_half, m_full) = (half.value.exp(), full.value.exp());
    let violation = if m_full.is_finite() && m_half > 0.0 {
        (m_full - m_half) / m_half
    } else {
        f64::INFINITY
    };
    let constants = Constants::from([
        (const_name.to_string(), m_full),
        (format!("{const_name}_half_range"), m_half),
        (format!("{const_name}_upper_range"), upper.value.exp()),
        ("n_half".to_string(), f64::from(n_half)),
    ]);
    VerificationReport::new(
        check_id,
        g.clone(),
        violation,
        full.witness,
        constants,
        STABILITY_TOL,
        started,
    )
}

/// `|F_{n,R}(z)| e^{-pi R |Im z|}` stays bounded on `|z| >= n/R`.
///
/// Samples `z = n/R + x + iy` for `(x, y)` in the grid rectangle and the
/// quarter circle `|z| = n/R`; by symmetry of `F` this covers the region.
pub fn check_largelambda(g: &GridSpec) -> Result<VerificationReport> {
    let started = Instant::now();
    g.validate()?;
    if let Some(r) = g.r_values.iter().find(|&&r| r <= 3.0) {
        return Err(Error::Precondition(format!("large-lambda bound needs R > 3, got R = {r}")));
    }
    let (re, im) = rect_of(g)?;
    let base = GridSpec::rect(re, im, g.resolution).rect_points();
    let angles = linspace(0.0, FRAC_PI_2, g.resolution);
    let points = |r: f64, n: u32| {
        let rho = f64::from(n) / r;
        let mut v: Vec<Complex64> = base
            .iter()
            .map(|&(x, y)| Complex64::new(rho + x, y))
            .collect();
        v.extend(angles.iter().map(|&t| Complex64::from_polar(rho, t)));
        v
    };
    let value = |r: f64, n: u32, z: Complex64| {
        EstimateKernel { n, r }.abs_ln(z) - PI * r * z.im.abs()
    };
    Ok(sup_stability("largelambda", g, "C", points, value, started))
}

fn check_gate(big_r: f64, r: f64, min_r: f64, strict: bool) -> Result<()> {
    let above = if strict { big_r > min_r } else { big_r >= min_r };
    if !above || !gate_ok(big_r, r) {
        return Err(Error::Precondition(format!(
            "(R, r) = ({big_r}, {r}) needs R > {min_r:.4} and (log R)^2/R^2 < {GATE_C} r"
        )));
    }
    Ok(())
}

/// `|F_{n,R}(z)| <= C e^{rn}` for real `z in [0, n/R]`.
pub fn check_smalllambda(r: f64, g: &GridSpec) -> Result<VerificationReport> {
    let started = Instant::now();
    g.validate()?;
    for &big_r in &g.r_values {
        check_gate(big_r, r, E, true)?;
    }
    let k = g.resolution;
    let points = |big_r: f64, n: u32| {
        linspace(0.0, f64::from(n) / big_r, k)
            .into_iter()
            .map(|x| Complex64::new(x, 0.0))
            .collect()
    };
    let value = |big_r: f64, n: u32, z: Complex64| {
        EstimateKernel { n, r: big_r }.abs_ln(z) - r * f64::from(n)
    };
    let mut rep = sup_stability("smalllambda", g, "C", points, value, started);
    rep.constants.insert("r".into(), r);
    Ok(rep)
}

/// `|F_{n,R}(z)|^k <= [C_r e^{rn} e^{pi R |Im z|}]^k` on the whole plane.
///
/// The rectangle is scaled by `(n+1)/R`, so it covers the disk `|z| <= n/R`
/// together with a collar around it. Since `t -> t^k` is monotone the scan
/// runs on the `k = 1` quotient and reports `C_r^k` alongside `C_r`.
pub fn check_prop_basic(r: f64, big_r: f64, k: u32, g: &GridSpec) -> Result<VerificationReport> {
    let started = Instant::now();
    g.validate()?;
    if k == 0 {
        return Err(Error::ArgumentZero("k"));
    }
    check_gate(big_r, r, R0, true)?;
    let (re, im) = rect_of(g)?;
    let base = GridSpec::rect(re, im, g.resolution).rect_points();
    let grid = GridSpec {
        r_values: vec![big_r],
        ..g.clone()
    };
    let points = |big_r: f64, n: u32| {
        let s = (f64::from(n) + 1.0) / big_r;
        base.iter().map(|&(x, y)| Complex64::new(s * x, s * y)).collect()
    };
    let value = |big_r: f64, n: u32, z: Complex64| {
        EstimateKernel { n, r: big_r }.abs_ln(z) - r * f64::from(n) - PI * big_r * z.im.abs()
    };
    let mut rep = sup_stability("prop-basic", &grid, "C_r", points, value, started);
    let c_r = rep.constants["C_r"];
    rep.constants.insert("C_r_pow_k".into(), c_r.powi(k as i32));
    rep.constants.insert("k".into(), f64::from(k));
    rep.constants.insert("r".into(), r);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specialfn::{q_eval, SincProduct};

    #[test]
    fn gate_examples() {
        assert!(gate_ok(10.0, 0.5));
        assert!((10f64.ln().powi(2) / 100.0 - 0.053).abs() < 1e-3);
        assert!(!gate_ok(4.0, 0.1));
    }

    #[test]
    fn largelambda_sample_value() {
        let k = EstimateKernel { n: 3, r: 10.0 };
        let z = Complex64::new(1.0, 0.0);
        let direct = SincProduct { n: 3, r: 10.0 }.eval(z).re * q_eval(3, 1.0);
        assert!((k.eval(z).re - direct).abs() < 1e-12);
        let zero = EstimateKernel { n: 3, r: 10.0 }.eval(Complex64::new(0.4, 0.0));
        assert!(zero.norm() < 1e-12);
    }

    #[test]
    fn preconditions() {
        let g = GridSpec::rect([0.0, 1.0], [0.0, 1.0], 5).with_n_range(0, 4).with_r_values(vec![3.0]);
        assert!(matches!(check_largelambda(&g), Err(Error::Precondition(_))));
        let g = GridSpec::interval(0.0, 1.0, 5).with_n_range(0, 4).with_r_values(vec![4.0]);
        assert!(matches!(check_smalllambda(0.01, &g), Err(Error::Precondition(_))));
        let g = GridSpec::rect([0.0, 1.0], [0.0, 1.0], 5).with_n_range(0, 4);
        assert!(check_prop_basic(0.5, 2.9, 1, &g).is_err());
    }

    #[test]
    fn smalllambda_boundary_matches_gamma_form() {
        let k = EstimateKernel { n: 50, r: 10.0 };
        let z = Complex64::new(5.0, 0.0);
        let g = k.ln_gamma_form(z).unwrap().exp().re;
        assert!((k.eval(z).re - g).abs() <= 1e-9 * g);
    }

    #[test]
    fn small_scans_are_stable() {
        let g = GridSpec::rect([0.0, 2.0], [0.0, 1.0], 9).with_n_range(0, 40).with_r_values(vec![4.0]);
        let rep = check_largelambda(&g).unwrap();
        assert!(rep.constants["C"] >= 1.0 - 1e-12, "{rep:?}");
    }
}
