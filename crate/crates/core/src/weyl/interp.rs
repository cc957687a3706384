use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::group::{orbit_and_stabilizer, WeylElement};
use crate::error::{Error, Result};
use crate::spectral::SpectralParameter;

/// Smallest admissible `|B(lambda0 - mu, nu)|` for a factor.
pub const DENOM_TOL: f64 = 1e-9;

/// One factor `B(lambda - mu, nu) / B(lambda0 - mu, nu)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearFactor {
    pub functional: Vec<Complex64>,
    pub shift: Vec<Complex64>,
    pub denom: Complex64,
}

impl LinearFactor {
    fn eval(&self, lambda: &[Complex64]) -> Complex64 {
        let b: Complex64 = lambda
            .iter()
            .zip(&self.shift)
            .zip(&self.functional)
            .map(|((l, m), n)| (l - m) * n)
            .sum();
        b / self.denom
    }
}

/// Polynomial equal to `1/|W_lambda0|` at `lambda0` and vanishing on the rest
/// of the orbit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitInterpolant {
    pub lambda0: SpectralParameter,
    pub orbit_points: Vec<SpectralParameter>,
    pub stabilizer_order: usize,
    pub linear_factors: Vec<LinearFactor>,
}

impl OrbitInterpolant {
    pub fn degree(&self) -> usize {
        self.linear_factors.len()
    }

    pub fn eval(&self, lambda: &[Complex64]) -> Complex64 {
        self.linear_factors
            .iter()
            .fold(Complex64::new(1.0 / self.stabilizer_order as f64, 0.0), |acc, f| acc * f.eval(lambda))
    }

    /// Largest deviation from the interpolation conditions over the orbit.
    pub fn interpolation_error(&self) -> f64 {
        let target = 1.0 / self.stabilizer_order as f64;
        self.orbit_points
            .iter()
            .enumerate()
            .map(|(k, p)| {
                let want = if k == 0 { target } else { 0.0 };
                (self.eval(p.coords()) - want).norm()
            })
            .fold(0.0, f64::max)
    }
}

fn bilinear(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Lagrange product over the orbit. The functional for `mu` is
/// `lambda0 - mu`; when that is isotropic the coordinate directions
/// `e_0, e_1, ...` are tried in order.
pub fn build_p_lambda0(lambda0: &[Complex64], group: &[WeylElement]) -> Result<OrbitInterpolant> {
    let (orbit, stab) = orbit_and_stabilizer(lambda0, group);
    let dim = lambda0.len();
    let mut factors = Vec::with_capacity(orbit.len().saturating_sub(1));
    for (idx, mu) in orbit.iter().enumerate().skip(1) {
        let diff: Vec<Complex64> = lambda0.iter().zip(mu).map(|(a, b)| a - b).collect();
        let fallbacks = (0..dim).map(|k| {
            (0..dim)
                .map(|j| Complex64::new(f64::from(u8::from(j == k)), 0.0))
                .collect::<Vec<_>>()
        });
        let chosen = std::iter::once(diff.clone())
            .chain(fallbacks)
            .map(|nu| {
                let d = bilinear(&diff, &nu);
                (nu, d)
            })
            .find(|(_, d)| d.norm() >= DENOM_TOL);
        let (functional, denom) = chosen.ok_or(Error::DegenerateOrbit(idx))?;
        factors.push(LinearFactor { functional, shift: mu.clone(), denom });
    }
    Ok(OrbitInterpolant {
        lambda0: SpectralParameter::new(lambda0.to_vec()),
        orbit_points: orbit.into_iter().map(SpectralParameter::new).collect(),
        stabilizer_order: stab,
        linear_factors: factors,
    })
}

#[cfg(test)]
mod tests {
    use super::super::group::generate_weyl;
    use super::super::roots::{build_root_system, RootKind};
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zero_gives_constant() {
        let rs = build_root_system(RootKind::B2).unwrap();
        let w = generate_weyl(&rs);
        let p = build_p_lambda0(&[c(0.0, 0.0); 2], &w).unwrap();
        assert_eq!(p.degree(), 0);
        assert!((p.eval(&[c(3.0, 1.0), c(-2.0, 0.5)]) - c(0.125, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn rank_one_two_point() {
        let rs = build_root_system(RootKind::A1Power(1)).unwrap();
        let w = generate_weyl(&rs);
        let p = build_p_lambda0(&[c(0.0, -1.0)], &w).unwrap();
        assert!((p.eval(&[c(0.0, -1.0)]) - 1.0).norm() < 1e-15);
        assert!(p.eval(&[c(0.0, 1.0)]).norm() < 1e-15);
        let l = c(0.7, 0.3);
        let want = (l - c(0.0, 1.0)) / c(0.0, -2.0);
        assert!((p.eval(&[l]) - want).norm() < 1e-14);
    }

    #[test]
    fn product_vanishing() {
        let rs = build_root_system(RootKind::A1Power(2)).unwrap();
        let w = generate_weyl(&rs);
        let p = build_p_lambda0(&[c(0.0, -1.0), c(0.0, -1.0)], &w).unwrap();
        assert_eq!(p.degree(), 3);
        assert!(p.eval(&[c(0.0, 1.0), c(0.0, -1.0)]).norm() < 1e-15);
        assert!(p.interpolation_error() < 1e-12);
    }

    #[test]
    fn isotropic_direction_falls_back() {
        // lambda0 - mu = (2i, 2) is isotropic for the bilinear form
        let rs = build_root_system(RootKind::A1Power(2)).unwrap();
        let w = generate_weyl(&rs);
        let p = build_p_lambda0(&[c(0.0, 1.0), c(1.0, 0.0)], &w).unwrap();
        assert!(p.interpolation_error() < 1e-12);
    }
}
