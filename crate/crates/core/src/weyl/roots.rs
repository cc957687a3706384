use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The root systems supported here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootKind {
    /// `A1 x ... x A1` with the given number of factors.
    A1Power(usize),
    A2,
    B2,
    G2,
}

impl fmt::Display for RootKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::A1Power(l) => write!(f, "A1^{l}"),
            Self::A2 => write!(f, "A2"),
            Self::B2 => write!(f, "B2"),
            Self::G2 => write!(f, "G2"),
        }
    }
}

impl FromStr for RootKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_uppercase();
        match t.as_str() {
            "A1" => Ok(Self::A1Power(1)),
            "A2" => Ok(Self::A2),
            "B2" => Ok(Self::B2),
            "G2" => Ok(Self::G2),
            _ => t
                .strip_prefix("A1^")
                .and_then(|l| l.parse().ok())
                .filter(|&l: &usize| l >= 1)
                .map(Self::A1Power)
                .ok_or_else(|| Error::Unsupported(format!("root system {s:?}"))),
        }
    }
}

/// A reduced root system realized with integer Euclidean coordinates.
///
/// `A2` and `G2` live in the sum-zero hyperplane of `R^3`, `B2` in `R^2`,
/// `A1^l` in `R^l` with simple roots `e_i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootSystemData {
    pub kind: RootKind,
    pub rank: usize,
    /// Dimension of the ambient coordinate space.
    pub dim: usize,
    pub simple_roots: Vec<Vec<i64>>,
    pub positive_roots: Vec<Vec<i64>>,
    /// Coefficients of each positive root in the basis of simple roots.
    pub positive_coeffs: Vec<Vec<i64>>,
    /// `cartan_pairings[i][j] = <alpha_i, alpha_j^vee>`.
    pub cartan_pairings: Vec<Vec<i64>>,
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn build_root_system(kind: RootKind) -> Result<RootSystemData> {
    let simple: Vec<Vec<i64>> = match kind {
        RootKind::A1Power(l) if (1..=8).contains(&l) => (0..l)
            .map(|i| (0..l).map(|j| i64::from(i == j)).collect())
            .collect(),
        RootKind::A1Power(l) => {
            return Err(Error::Unsupported(format!("A1^{l} (need 1 <= l <= 8)")));
        }
        RootKind::A2 => vec![vec![1, -1, 0], vec![0, 1, -1]],
        RootKind::B2 => vec![vec![1, -1], vec![0, 1]],
        RootKind::G2 => vec![vec![1, -1, 0], vec![-2, 1, 1]],
    };
    let rank = simple.len();
    let dim = simple[0].len();
    let cartan: Vec<Vec<i64>> = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| 2 * dot(&simple[i], &simple[j]) / dot(&simple[j], &simple[j]))
                .collect()
        })
        .collect();
    let coeffs = positive_root_coeffs(&cartan);
    let positive_roots = coeffs
        .iter()
        .map(|c| {
            (0..dim)
                .map(|k| (0..rank).map(|i| c[i] * simple[i][k]).sum())
                .collect()
        })
        .collect();
    Ok(RootSystemData {
        kind,
        rank,
        dim,
        simple_roots: simple,
        positive_roots,
        positive_coeffs: coeffs,
        cartan_pairings: cartan,
    })
}

/// `s_i(beta)` in simple-root coordinates.
pub fn reflect_coeffs(cartan: &[Vec<i64>], i: usize, beta: &[i64]) -> Vec<i64> {
    let pairing: i64 = beta.iter().enumerate().map(|(j, c)| c * cartan[j][i]).sum();
    let mut out = beta.to_vec();
    out[i] -= pairing;
    out
}

/// Closure of the simple roots under simple reflections, keeping the
/// positive ones, ordered by height then lexicographically.
fn positive_root_coeffs(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let rank = cartan.len();
    let mut roots: Vec<Vec<i64>> = (0..rank)
        .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut frontier = roots.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for beta in &frontier {
            for i in 0..rank {
                let g = reflect_coeffs(cartan, i, beta);
                if g.iter().all(|&c| c >= 0) && !roots.contains(&g) {
                    roots.push(g.clone());
                    next.push(g);
                }
            }
        }
        frontier = next;
    }
    roots.sort_by_key(|c| (c.iter().sum::<i64>(), c.clone()));
    roots
}

impl RootSystemData {
    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    /// Ambient coordinates of the root with simple-root coefficients `c`.
    pub fn to_ambient(&self, c: &[i64]) -> Vec<i64> {
        (0..self.dim)
            .map(|k| (0..self.rank).map(|i| c[i] * self.simple_roots[i][k]).sum())
            .collect()
    }

    /// Coroots `2 alpha / (alpha, alpha)` of the positive roots, as floats.
    pub fn positive_coroots(&self) -> Vec<Vec<f64>> {
        self.positive_roots
            .iter()
            .map(|a| {
                let n = dot(a, a) as f64;
                a.iter().map(|&x| 2.0 * x as f64 / n).collect()
            })
            .collect()
    }

    /// Index of the positive root `±beta` and the sign, if `beta` is a root.
    pub fn find_root(&self, coeffs: &[i64]) -> Option<(usize, bool)> {
        let neg: Vec<i64> = coeffs.iter().map(|c| -c).collect();
        self.positive_coeffs
            .iter()
            .position(|c| c == coeffs)
            .map(|i| (i, true))
            .or_else(|| self.positive_coeffs.iter().position(|c| *c == neg).map(|i| (i, false)))
    }

    /// Reflection matrix of the simple root `i` on the ambient space.
    pub fn reflection_matrix(&self, i: usize) -> Vec<Vec<f64>> {
        let a = &self.simple_roots[i];
        let n = dot(a, a) as f64;
        (0..self.dim)
            .map(|r| {
                (0..self.dim)
                    .map(|c| f64::from(u8::from(r == c)) - 2.0 * (a[r] * a[c]) as f64 / n)
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_and_shapes() {
        let a12 = build_root_system(RootKind::A1Power(2)).unwrap();
        assert_eq!(a12.num_positive(), 2);
        assert_eq!(dot(&a12.positive_roots[0], &a12.positive_roots[1]), 0);
        assert_eq!(build_root_system(RootKind::A2).unwrap().num_positive(), 3);
        let b2 = build_root_system(RootKind::B2).unwrap();
        assert_eq!(b2.num_positive(), 4);
        let lengths: std::collections::BTreeSet<i64> =
            b2.positive_roots.iter().map(|a| dot(a, a)).collect();
        assert_eq!(lengths.len(), 2);
        let g2 = build_root_system(RootKind::G2).unwrap();
        assert_eq!(g2.num_positive(), 6);
        assert!(g2.positive_roots.iter().all(|a| a.iter().sum::<i64>() == 0));
        assert_eq!(g2.cartan_pairings, vec![vec![2, -1], vec![-3, 2]]);
    }

    #[test]
    fn parsing() {
        assert_eq!("a1^3".parse::<RootKind>().unwrap(), RootKind::A1Power(3));
        assert_eq!("G2".parse::<RootKind>().unwrap(), RootKind::G2);
        assert!(matches!("C3".parse::<RootKind>(), Err(Error::Unsupported(_))));
        assert!(build_root_system(RootKind::A1Power(0)).is_err());
    }
}
