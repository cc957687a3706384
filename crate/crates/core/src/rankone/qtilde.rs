use num_complex::Complex64;

use super::params::{KTypeData, RankOneParams};
use crate::error::{Error, Result};
use crate::specialfn::HalfInt;
use crate::SpectralParameter;

const POLE_EPS: f64 = 1e-12;

/// `Re(i lambda(alpha^vee)) >= -1e-12` for every coroot in `coroots`.
pub fn kostant_ok(lambda: &SpectralParameter, coroots: &[Vec<f64>]) -> bool {
    coroots.iter().all(|c| {
        let c: Vec<Complex64> = c.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        kostant_pairing_ok(lambda.bilinear(&c))
    })
}

/// Kostant condition for a single pairing value `lambda(alpha^vee)`.
pub fn kostant_pairing_ok(pairing: Complex64) -> bool {
    (Complex64::i() * pairing).re >= -1e-12
}

/// Kostant condition for a rank one coordinate `z`.
pub fn kostant_ok_rank_one(p: &RankOneParams, z: Complex64) -> bool {
    kostant_pairing_ok(z * p.coroot_scale())
}

/// Normalized `Q` polynomial of the K-type `k` at the rank one coordinate `z`.
pub fn q_tilde_eval(p: &RankOneParams, k: &KTypeData, z: Complex64) -> Result<Complex64> {
    let iz = Complex64::i() * z;
    Ok(p.q_factors(k)?.iter().map(|g| g.eval(iz)).product())
}

fn nearest_root(p: &RankOneParams, k: &KTypeData, z: Complex64) -> Result<HalfInt> {
    let iz = Complex64::i() * z;
    let mut best = (f64::INFINITY, HalfInt::ZERO);
    for g in p.q_factors(k)? {
        for root in g.roots() {
            let d = (iz - root.to_f64()).norm();
            if d < best.0 {
                best = (d, root);
            }
        }
    }
    Ok(best.1)
}

/// Scalar of the normalized intertwiner of the nontrivial Weyl element on
/// the K-type `k`: `Q(-z) / Q(z)`.
pub fn j_scalar(p: &RankOneParams, k: &KTypeData, lambda: &SpectralParameter) -> Result<Complex64> {
    if lambda.rank() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, got: lambda.rank() });
    }
    j_scalar_z(p, k, lambda.coords()[0])
}

pub fn j_scalar_z(p: &RankOneParams, k: &KTypeData, z: Complex64) -> Result<Complex64> {
    let den = q_tilde_eval(p, k, z)?;
    if den.norm() <= POLE_EPS {
        return Err(Error::Pole(nearest_root(p, k, z)?));
    }
    Ok(q_tilde_eval(p, k, -z)? / den)
}

/// `SL(2,R)` coordinate `lambda` (with `lambda <-> lambda rho`) to `z`.
pub fn sl2_lambda_to_z(lambda: Complex64) -> Complex64 {
    lambda / 2.0
}

pub fn sl2_z_to_lambda(z: Complex64) -> Complex64 {
    z * 2.0
}

/// `prod_{j <= |n|} (2j - 1 + i lambda) / (2j - 1)`.
pub fn sl2_q_tilde(n: i64, lambda: Complex64) -> Complex64 {
    let il = Complex64::i() * lambda;
    (1..=n.unsigned_abs())
        .map(|j| {
            let o = (2 * j - 1) as f64;
            (o + il) / o
        })
        .product()
}

/// `prod_{j <= |n|} (2j - 1 - i lambda) / (2j - 1 + i lambda)`.
pub fn sl2_j(n: i64, lambda: Complex64) -> Result<Complex64> {
    let il = Complex64::i() * lambda;
    let mut acc = Complex64::new(1.0, 0.0);
    for j in 1..=n.unsigned_abs() {
        let o = (2 * j - 1) as f64;
        let den = o + il;
        if den.norm() <= POLE_EPS {
            return Err(Error::Pole(HalfInt::from_doubled(-(2 * j as i64 - 1))));
        }
        acc *= (o - il) / den;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sl2k(n: i64) -> KTypeData {
        KTypeData::new(n.unsigned_abs() as f64, 0, n.unsigned_abs() as u32)
    }

    #[test]
    fn kostant_examples() {
        // i * lambda(alpha^vee) = 2, -1, 0
        let coroot = vec![vec![1.0]];
        assert!(kostant_ok(&SpectralParameter::rank_one(c(0.0, -2.0)), &coroot));
        assert!(!kostant_ok(&SpectralParameter::rank_one(c(0.0, 1.0)), &coroot));
        assert!(kostant_ok(&SpectralParameter::zero(1), &coroot));
    }

    #[test]
    fn sl2_examples() {
        let p = RankOneParams::sl2();
        // i lambda = 1  <=>  lambda = -i
        let z = sl2_lambda_to_z(c(0.0, -1.0));
        let v = q_tilde_eval(&p, &sl2k(2), z).unwrap();
        assert!((v - c(8.0 / 3.0, 0.0)).norm() < 1e-14);
        let z = sl2_lambda_to_z(c(0.0, 1.0));
        assert!(q_tilde_eval(&p, &sl2k(1), z).unwrap().norm() < 1e-15);
        for (name, p) in RankOneParams::presets() {
            let k = super::super::params::KTypeTable::extremal(&p, 5).entries[&5];
            assert_eq!(q_tilde_eval(&p, &k, c(0.0, 0.0)).unwrap(), c(1.0, 0.0), "{name}");
        }
    }

    #[test]
    fn j_examples() {
        let p = RankOneParams::sl2();
        let one = SpectralParameter::rank_one(sl2_lambda_to_z(c(1.0, 0.0)));
        let v = j_scalar(&p, &sl2k(1), &one).unwrap();
        assert!((v - c(0.0, -1.0)).norm() < 1e-15);
        assert_eq!(j_scalar(&p, &sl2k(4), &SpectralParameter::zero(1)).unwrap(), c(1.0, 0.0));
        let pole = SpectralParameter::rank_one(sl2_lambda_to_z(c(0.0, 3.0)));
        assert_eq!(j_scalar(&p, &sl2k(2), &pole), Err(Error::Pole(HalfInt::from_doubled(-3))));
        assert!(matches!(sl2_j(2, c(0.0, 3.0)), Err(Error::Pole(_))));
    }

    #[test]
    fn general_formula_matches_closed_form() {
        let p = RankOneParams::sl2();
        for n in -15i64..=15 {
            for &lam in &[c(0.3, 0.0), c(-2.0, 1.7), c(4.1, -3.3)] {
                let z = sl2_lambda_to_z(lam);
                let a = q_tilde_eval(&p, &sl2k(n), z).unwrap();
                let b = sl2_q_tilde(n, lam);
                assert!((a - b).norm() <= 1e-10 * b.norm().max(1.0));
                let ja = j_scalar_z(&p, &sl2k(n), z).unwrap();
                let jb = sl2_j(n, lam).unwrap();
                assert!((ja - jb).norm() <= 1e-10 * jb.norm().max(1.0));
            }
        }
    }
}
