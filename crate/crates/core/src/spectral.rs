use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A point of the complexified dual of `a`, stored by its complex coordinates.
///
/// In rank one the single coordinate is `z` with `lambda(alpha_check / gamma) = z`
/// (so `lambda = z alpha` when `m_2alpha = 0` and `lambda = 2 z alpha` otherwise).
/// Product models carry one such coordinate per factor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralParameter(pub Vec<Complex64>);

impl SpectralParameter {
    pub fn new(coords: Vec<Complex64>) -> Self {
        Self(coords)
    }

    pub fn rank_one(z: Complex64) -> Self {
        Self(vec![z])
    }

    pub fn zero(rank: usize) -> Self {
        Self(vec![Complex64::new(0.0, 0.0); rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.0
    }

    /// Euclidean norm `||lambda||`.
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `||Im lambda||`.
    pub fn imag_norm(&self) -> f64 {
        self.0.iter().map(|c| c.im * c.im).sum::<f64>().sqrt()
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|c| -c).collect())
    }

    pub fn distance(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Complex-bilinear (not Hermitian) pairing `sum a_i b_i`.
    pub fn bilinear(&self, other: &[Complex64]) -> Complex64 {
        self.0.iter().zip(other).map(|(a, b)| a * b).sum()
    }
}

impl fmt::Display for SpectralParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}{:+}i", c.re, c.im)?;
        }
        write!(f, ")")
    }
}
