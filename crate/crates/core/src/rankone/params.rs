use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specialfn::{GammaRatioPoly, HalfInt};

/// Root multiplicities of a real rank one group together with the constant
/// `m` in `s <= m |tau|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankOneParams {
    pub m_alpha: u32,
    pub m_2alpha: u32,
    pub m: u32,
}

impl RankOneParams {
    pub fn new(m_alpha: u32, m_2alpha: u32, m: u32) -> Result<Self> {
        if m_alpha == 0 {
            return Err(Error::InvalidParameter("m_alpha must be positive".into()));
        }
        if m == 0 {
            return Err(Error::ArgumentZero("m"));
        }
        if m_2alpha > 0 && (m_alpha % 2 != 0 || m_alpha / 2 + m_2alpha < 2) {
            return Err(Error::InvalidParameter(format!(
                "m_2alpha > 0 needs m_alpha even and m_alpha/2 + m_2alpha >= 2 \
                 (got m_alpha = {m_alpha}, m_2alpha = {m_2alpha})"
            )));
        }
        Ok(Self { m_alpha, m_2alpha, m })
    }

    /// `SL(2,R)`: one root of multiplicity 1, `s = |n|`.
    pub fn sl2() -> Self {
        Self { m_alpha: 1, m_2alpha: 0, m: 1 }
    }

    /// `SO_o(1,n)`, `n >= 2`: spherical harmonics of degree `s = |tau|`.
    pub fn so1n(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("SO(1,n) needs n >= 2, got {n}")));
        }
        Self::new(n - 1, 0, 1)
    }

    /// `SU(1,n)`, `n >= 2`.
    pub fn su1n(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("SU(1,n) needs n >= 2, got {n}")));
        }
        Self::new(2 * (n - 1), 1, 2)
    }

    /// `Sp(1,n)`, `n >= 2`.
    pub fn sp1n(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("Sp(1,n) needs n >= 2, got {n}")));
        }
        Self::new(4 * (n - 1), 3, 2)
    }

    /// The real rank one form of `F_4`.
    pub fn f4() -> Self {
        Self { m_alpha: 8, m_2alpha: 7, m: 2 }
    }

    /// Named presets used by the suites.
    pub fn presets() -> Vec<(String, Self)> {
        let mut v = vec![("sl2".to_string(), Self::sl2())];
        for n in 2..=4 {
            v.push((format!("so1{n}"), Self::so1n(n).expect("n >= 2")));
            v.push((format!("su1{n}"), Self::su1n(n).expect("n >= 2")));
            v.push((format!("sp1{n}"), Self::sp1n(n).expect("n >= 2")));
        }
        v.push(("f4".to_string(), Self::f4()));
        v
    }

    pub fn preset(name: &str) -> Option<Self> {
        Self::presets().into_iter().find(|(n, _)| n == name).map(|p| p.1)
    }

    /// `rho(alpha^vee) = m_alpha + 2 m_2alpha`, with `alpha(alpha^vee) = 2`.
    pub fn rho_pairing(&self) -> f64 {
        f64::from(self.m_alpha + 2 * self.m_2alpha)
    }

    pub fn has_double_root(&self) -> bool {
        self.m_2alpha > 0
    }

    /// `lambda(alpha^vee) = gamma * z` in the coordinate of this branch:
    /// `lambda = z alpha` gives 2, `lambda = 2 z alpha` gives 4.
    pub fn coroot_scale(&self) -> f64 {
        if self.has_double_root() {
            4.0
        } else {
            2.0
        }
    }

    /// Power of `f` in the scalar factor of the first interpolation scheme.
    pub fn kappa(&self) -> u32 {
        if self.has_double_root() {
            2
        } else {
            1
        }
    }

    /// `d = m_alpha/2 + m_2alpha` (meaningful when `m_2alpha > 0`).
    pub fn d(&self) -> u32 {
        self.m_alpha / 2 + self.m_2alpha
    }

    /// Largest lower parameter `a` over the Gamma-ratio factors of `Q`.
    pub fn a_max(&self) -> HalfInt {
        if self.has_double_root() {
            HalfInt::from_doubled(i64::from(self.d()))
        } else {
            HalfInt::from_doubled(i64::from(self.m_alpha))
        }
    }

    /// The Gamma-ratio factors whose product is the normalized `Q` polynomial
    /// of the K-type `k`, as functions of `iz`.
    pub fn q_factors(&self, k: &KTypeData) -> Result<Vec<GammaRatioPoly>> {
        k.validate(self)?;
        let (r, s) = (i64::from(k.r_param), i64::from(k.s_param));
        if !self.has_double_root() {
            let a = HalfInt::from_doubled(i64::from(self.m_alpha));
            return Ok(vec![GammaRatioPoly::new(a, a + HalfInt::int(s))?]);
        }
        let d = i64::from(self.d());
        let m2 = i64::from(self.m_2alpha);
        Ok(vec![
            GammaRatioPoly::new(HalfInt::from_doubled(d), HalfInt::from_doubled(s + r + d))?,
            GammaRatioPoly::new(
                HalfInt::from_doubled(d + 1 - m2),
                HalfInt::from_doubled(s - r + d + 1 - m2),
            )?,
        ])
    }
}

/// Data of one K-type: its norm and the integers `0 <= r <= s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KTypeData {
    pub tau_norm: f64,
    pub r_param: u32,
    pub s_param: u32,
}

impl KTypeData {
    pub fn new(tau_norm: f64, r_param: u32, s_param: u32) -> Self {
        Self { tau_norm, r_param, s_param }
    }

    /// `ceil |tau|`.
    pub fn ceil_norm(&self) -> u32 {
        (self.tau_norm - 1e-12).ceil().max(0.0) as u32
    }

    pub fn validate(&self, p: &RankOneParams) -> Result<()> {
        if !(self.tau_norm >= 0.0 && self.tau_norm.is_finite()) {
            return Err(Error::InvalidParameter(format!("|tau| = {} is invalid", self.tau_norm)));
        }
        if self.r_param > self.s_param {
            return Err(Error::InvalidParameter(format!(
                "need r <= s, got r = {}, s = {}",
                self.r_param, self.s_param
            )));
        }
        if f64::from(self.s_param) > f64::from(p.m) * self.tau_norm + 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "need s <= m|tau|, got s = {}, m = {}, |tau| = {}",
                self.s_param, p.m, self.tau_norm
            )));
        }
        if p.has_double_root() && (self.s_param - self.r_param) % 2 != 0 {
            return Err(Error::Parity { r: self.r_param, s: self.s_param });
        }
        Ok(())
    }
}

/// K-types indexed by an integer label.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct KTypeTable {
    pub entries: BTreeMap<i64, KTypeData>,
}

impl KTypeTable {
    /// `SL(2,R)`: K-types `n` with `|n| <= t`, `|tau| = s = |n|`, `r = 0`.
    pub fn sl2(t: u32) -> Self {
        let t = i64::from(t);
        Self {
            entries: (-t..=t)
                .map(|n| (n, KTypeData::new(n.unsigned_abs() as f64, 0, n.unsigned_abs() as u32)))
                .collect(),
        }
    }

    /// K-types `k = 0..=t` with `|tau| = k` and the extremal `s = m k`;
    /// `r` is the parity of `s` when the double root is present, else 0.
    pub fn extremal(p: &RankOneParams, t: u32) -> Self {
        Self {
            entries: (0..=t)
                .map(|k| {
                    let s = p.m * k;
                    let r = if p.has_double_root() { s % 2 } else { 0 };
                    (i64::from(k), KTypeData::new(f64::from(k), r, s))
                })
                .collect(),
        }
    }

    pub fn get(&self, index: i64) -> Option<&KTypeData> {
        self.entries.get(&index)
    }

    pub fn validate(&self, p: &RankOneParams) -> Result<()> {
        self.entries.values().try_for_each(|k| k.validate(p))
    }
}

/// Every admissible `(r, s)` for a K-type of norm `tau_norm`.
pub fn admissible_ktypes(p: &RankOneParams, tau_norm: f64) -> Vec<KTypeData> {
    let s_max = (f64::from(p.m) * tau_norm + 1e-12).floor() as u32;
    let mut out = Vec::new();
    for s in 0..=s_max {
        for r in 0..=s {
            if p.has_double_root() && (s - r) % 2 != 0 {
                continue;
            }
            out.push(KTypeData::new(tau_norm, r, s));
        }
    }
    out
}
