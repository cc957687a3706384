use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::HalfInt;
use crate::error::{Error, Result};

/// `q_n(x) = prod_{j=1..n} (1 + x/j)`; the empty product is 1.
pub fn q_eval(n: u32, x: f64) -> f64 {
    (1..=n).map(|j| 1.0 + x / f64::from(j)).product()
}

/// `log q_n(x)` for `x >= 0`, summed in log space.
pub fn q_ln(n: u32, x: f64) -> f64 {
    (1..=n).map(|j| (x / f64::from(j)).ln_1p()).sum()
}

/// The Gamma-ratio polynomial
/// `Gamma_{a,b}(z) = Gamma(z+b)Gamma(a) / (Gamma(z+a)Gamma(b)) = prod_{k<b-a} (z+a+k)/(a+k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaRatioPoly {
    a: HalfInt,
    b: HalfInt,
}

impl GammaRatioPoly {
    pub fn new(a: HalfInt, b: HalfInt) -> Result<Self> {
        if a <= HalfInt::ZERO {
            return Err(Error::InvalidParameter(format!("Gamma_(a,b) needs a > 0, got a = {a}")));
        }
        match (b - a).as_integer() {
            Some(d) if d >= 0 => Ok(Self { a, b }),
            _ => Err(Error::InvalidParameter(format!(
                "Gamma_(a,b) needs b - a in N_0, got a = {a}, b = {b}"
            ))),
        }
    }

    pub fn a(&self) -> HalfInt {
        self.a
    }

    pub fn b(&self) -> HalfInt {
        self.b
    }

    pub fn degree(&self) -> u32 {
        (self.b - self.a).as_integer().unwrap_or(0) as u32
    }

    pub fn roots(&self) -> impl Iterator<Item = HalfInt> + '_ {
        (0..i64::from(self.degree())).map(move |k| -(self.a + HalfInt::int(k)))
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let a = self.a.to_f64();
        (0..self.degree())
            .map(|k| {
                let ak = a + f64::from(k);
                (z + ak) / ak
            })
            .product()
    }

    pub fn to_factored(&self) -> FactoredPoly {
        FactoredPoly::from_roots(Complex64::new(1.0, 0.0), self.roots())
    }
}

/// Free-function form of [`GammaRatioPoly::eval`].
pub fn gamma_ratio_eval(p: &GammaRatioPoly, z: Complex64) -> Complex64 {
    p.eval(z)
}

/// A polynomial with half-integer roots, kept in factored form so that
/// divisibility is exact multiset inclusion.
///
/// The polynomial is `scale * z^m0 * prod_{r != 0} (1 - z/r)^m_r`, i.e. for
/// polynomials without a root at 0 the scale is the value at 0. This form
/// avoids the huge/tiny leading coefficients of high-degree products.
#[derive(Debug, Clone, PartialEq)]
pub struct FactoredPoly {
    scale: Complex64,
    roots: BTreeMap<HalfInt, u32>,
}

impl FactoredPoly {
    pub fn constant(c: Complex64) -> Self {
        Self {
            scale: c,
            roots: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    pub fn from_roots(scale: Complex64, roots: impl IntoIterator<Item = HalfInt>) -> Self {
        let mut p = Self::constant(scale);
        for r in roots {
            *p.roots.entry(r).or_insert(0) += 1;
        }
        p
    }

    pub fn from_multiset(scale: Complex64, roots: impl IntoIterator<Item = (HalfInt, u32)>) -> Self {
        let mut p = Self::constant(scale);
        for (r, m) in roots {
            if m > 0 {
                *p.roots.entry(r).or_insert(0) += m;
            }
        }
        p
    }

    pub fn scale(&self) -> Complex64 {
        self.scale
    }

    pub fn roots(&self) -> &BTreeMap<HalfInt, u32> {
        &self.roots
    }

    pub fn multiplicity(&self, root: HalfInt) -> u32 {
        self.roots.get(&root).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.roots.values().sum()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = self.scale;
        for (&r, &m) in &self.roots {
            let f = linear_factor(r, z);
            acc *= f.powu(m);
        }
        acc
    }

    /// `log p(z)`; the real part is `-inf` at a root.
    pub fn ln_eval(&self, z: Complex64) -> Complex64 {
        let mut acc = self.scale.ln();
        for (&r, &m) in &self.roots {
            acc += f64::from(m) * linear_factor(r, z).ln();
        }
        acc
    }

    /// Distance from `z` to the nearest root, `inf` for constants.
    pub fn root_distance(&self, z: Complex64) -> f64 {
        self.roots
            .keys()
            .map(|r| (z - r.to_f64()).norm())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.scale *= other.scale;
        for (&r, &m) in &other.roots {
            *out.roots.entry(r).or_insert(0) += m;
        }
        out
    }

    pub fn powu(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// True iff the root multiset of `self` is contained in that of `other`.
    pub fn divides(&self, other: &Self) -> bool {
        self.roots
            .iter()
            .all(|(r, &m)| other.multiplicity(*r) >= m)
    }

    /// Exact quotient `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        let mut roots = other.roots.clone();
        for (r, &m) in &self.roots {
            let e = roots.get_mut(r).expect("checked by divides");
            *e -= m;
            if *e == 0 {
                roots.remove(r);
            }
        }
        Some(Self {
            scale: other.scale / self.scale,
            roots,
        })
    }
}

fn linear_factor(root: HalfInt, z: Complex64) -> Complex64 {
    if root == HalfInt::ZERO {
        z
    } else {
        1.0 - z / root.to_f64()
    }
}

/// Free-function form of [`FactoredPoly::divides`].
pub fn factored_divides(d: &FactoredPoly, e: &FactoredPoly) -> bool {
    d.divides(e)
}

/// `e(z) = Gamma_{1,M+1}(z)^2 Gamma_{1/2,M+1/2}(z)^2` for `M = m * ceil|tau| >= 1`.
pub fn e_tau_build(m_ceil_tau: u32) -> Result<FactoredPoly> {
    if m_ceil_tau == 0 {
        return Err(Error::ArgumentZero("m * ceil|tau|"));
    }
    Ok(e_tau_poly(m_ceil_tau))
}

/// Like [`e_tau_build`] but with the trivial-type convention `e == 1` for `M = 0`.
pub fn e_tau_poly(m_ceil_tau: u32) -> FactoredPoly {
    let m = i64::from(m_ceil_tau);
    let integer = (1..=m).map(|k| (HalfInt::int(-k), 2));
    let half = (1..=m).map(|k| (HalfInt::from_doubled(1 - 2 * k), 2));
    FactoredPoly::from_multiset(Complex64::new(1.0, 0.0), integer.chain(half))
}
