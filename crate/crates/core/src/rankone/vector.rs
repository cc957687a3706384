use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finitely many K-type coefficients with a declared exponential decay rate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "AnalyticVectorJson", into = "AnalyticVectorJson")]
pub struct AnalyticVector {
    coeffs: BTreeMap<i64, Complex64>,
    decay: f64,
    truncation: u32,
}

#[derive(Serialize, Deserialize)]
struct AnalyticVectorJson {
    decay: f64,
    truncation: u32,
    coeffs: Vec<(i64, f64, f64)>,
}

impl From<AnalyticVector> for AnalyticVectorJson {
    fn from(v: AnalyticVector) -> Self {
        Self {
            decay: v.decay,
            truncation: v.truncation,
            coeffs: v.coeffs.iter().map(|(&n, c)| (n, c.re, c.im)).collect(),
        }
    }
}

impl TryFrom<AnalyticVectorJson> for AnalyticVector {
    type Error = Error;

    fn try_from(j: AnalyticVectorJson) -> Result<Self> {
        let coeffs = j
            .coeffs
            .into_iter()
            .map(|(n, re, im)| (n, Complex64::new(re, im)))
            .collect();
        Self::new(coeffs, j.decay, j.truncation)
    }
}

impl AnalyticVector {
    pub fn new(coeffs: BTreeMap<i64, Complex64>, decay: f64, truncation: u32) -> Result<Self> {
        if !(decay > 0.0 && decay.is_finite()) {
            return Err(Error::InvalidParameter(format!("decay must be positive, got {decay}")));
        }
        if truncation == 0 {
            return Err(Error::ArgumentZero("truncation"));
        }
        if let Some(n) = coeffs.keys().find(|n| n.unsigned_abs() > u64::from(truncation)) {
            return Err(Error::InvalidParameter(format!(
                "coefficient at index {n} lies beyond the truncation {truncation}"
            )));
        }
        Ok(Self { coeffs, decay, truncation })
    }

    /// `v_n = e^{-decay |n|}` for `|n| <= truncation`.
    pub fn exponential(decay: f64, truncation: u32) -> Result<Self> {
        Self::exponential_range(decay, truncation, -i64::from(truncation))
    }

    /// `v_n = e^{-decay |n|}` for `lo <= n <= truncation`.
    pub fn exponential_range(decay: f64, truncation: u32, lo: i64) -> Result<Self> {
        let t = i64::from(truncation);
        let coeffs = (lo.max(-t)..=t)
            .map(|n| (n, Complex64::new((-decay * n.unsigned_abs() as f64).exp(), 0.0)))
            .collect();
        Self::new(coeffs, decay, truncation)
    }

    pub fn single(index: i64, value: Complex64, decay: f64, truncation: u32) -> Result<Self> {
        Self::new(BTreeMap::from([(index, value)]), decay, truncation)
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, Complex64> {
        &self.coeffs
    }

    pub fn get(&self, index: i64) -> Complex64 {
        self.coeffs.get(&index).copied().unwrap_or_default()
    }

    pub fn decay(&self) -> f64 {
        self.decay
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    /// Smallest `C` with `|v_n| <= C e^{-decay |n|}` on the stored coefficients.
    pub fn decay_constant(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|(n, c)| c.norm() * (self.decay * n.unsigned_abs() as f64).exp())
            .fold(0.0, f64::max)
    }

    /// `sum_n e^{r' |n|} |v_n|`, finite for `r' < decay` by the decay bound.
    pub fn weighted_norm(&self, r_prime: f64) -> f64 {
        self.coeffs
            .iter()
            .map(|(n, c)| c.norm() * (r_prime * n.unsigned_abs() as f64).exp())
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape_and_round_trip() {
        let v = AnalyticVector::exponential(0.5, 2).unwrap();
        let s = serde_json::to_string(&v).unwrap();
        assert!(s.starts_with("{\"decay\":0.5,\"truncation\":2,\"coeffs\":[[-2,"));
        let back: AnalyticVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        let bad = r#"{"decay":0.5,"truncation":1,"coeffs":[[3,1.0,0.0]]}"#;
        assert!(serde_json::from_str::<AnalyticVector>(bad).is_err());
    }

    #[test]
    fn decay_bound() {
        let v = AnalyticVector::exponential(0.5, 30).unwrap();
        assert!((v.decay_constant() - 1.0).abs() < 1e-12);
        assert!(v.weighted_norm(0.4).is_finite());
        assert_eq!(v.get(31), Complex64::new(0.0, 0.0));
    }
}
