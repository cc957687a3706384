use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest accepted pivot in the Cholesky test.
pub const PIVOT_TOL: f64 = 1e-12;

/// A symmetric matrix `Y` and torus parameters `x` with `len(x) = floor(n/2)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymMatrixPoint {
    pub y: Vec<Vec<f64>>,
    pub x: Vec<f64>,
}

impl SymMatrixPoint {
    pub fn new(y: &DMatrix<f64>, x: Vec<f64>) -> Self {
        Self { y: (0..y.nrows()).map(|i| y.row(i).iter().copied().collect()).collect(), x }
    }

    pub fn dim(&self) -> usize {
        self.y.len()
    }

    pub fn matrix(&self) -> DMatrix<f64> {
        let n = self.dim();
        DMatrix::from_fn(n, n, |i, j| self.y[i][j])
    }
}

/// Block-diagonal `S(x)` with blocks `[[0, -tanh x_j], [tanh x_j, 0]]`; a
/// trailing zero row and column for odd `n`.
pub fn s_matrix(n: usize, x: &[f64]) -> DMatrix<f64> {
    let mut s = DMatrix::zeros(n, n);
    for (j, xj) in x.iter().enumerate() {
        let t = xj.tanh();
        s[(2 * j, 2 * j + 1)] = -t;
        s[(2 * j + 1, 2 * j)] = t;
    }
    s
}

/// Cholesky factorization attempt; `true` iff every pivot exceeds [`PIVOT_TOL`].
pub fn is_positive_definite(a: &DMatrix<f64>) -> bool {
    let n = a.nrows();
    let mut l = DMatrix::<f64>::zeros(n, n);
    for j in 0..n {
        let d = a[(j, j)] - (0..j).map(|k| l[(j, k)] * l[(j, k)]).sum::<f64>();
        if !(d > PIVOT_TOL) {
            return false;
        }
        let dj = d.sqrt();
        l[(j, j)] = dj;
        for i in (j + 1)..n {
            let v = a[(i, j)] - (0..j).map(|k| l[(i, k)] * l[(j, k)]).sum::<f64>();
            l[(i, j)] = v / dj;
        }
    }
    true
}

/// `Y - S(x) Y S(x)^T` positive definite.
pub fn gln_sqrt_member(p: &SymMatrixPoint) -> Result<bool> {
    let n = p.dim();
    if p.y.iter().any(|row| row.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, got: p.y.iter().map(Vec::len).find(|&l| l != n).unwrap_or(n) });
    }
    if p.x.len() != n / 2 {
        return Err(Error::DimensionMismatch { expected: n / 2, got: p.x.len() });
    }
    let y = p.matrix();
    let scale = y.amax().max(1.0);
    for i in 0..n {
        for j in 0..i {
            if (y[(i, j)] - y[(j, i)]).abs() > 1e-12 * scale {
                return Err(Error::NonSymmetric);
            }
        }
    }
    let s = s_matrix(n, &p.x);
    let m = &y - &s * &y * s.transpose();
    let m = (&m + m.transpose()) * 0.5;
    Ok(is_positive_definite(&m))
}

/// Random symmetric `Y = Q diag(e^{s}) Q^T` with `s` uniform in `[-R, R]`,
/// the two extreme exponents pinned to `-R` and `R`, and `Q` from the QR
/// factorization of a Gaussian matrix.
pub fn random_spd(n: usize, big_r: f64, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let g = DMatrix::<f64>::from_fn(n, n, |_, _| rng.sample(StandardNormal));
    let q = g.qr().q();
    let mut spec: Vec<f64> = (0..n).map(|_| rng.random_range(-big_r..=big_r)).collect();
    spec[0] = -big_r;
    if n > 1 {
        spec[1] = big_r;
    }
    let d = DMatrix::from_diagonal(&DVector::from_iterator(n, spec.iter().map(|s| s.exp())));
    let y = &q * d * q.transpose();
    (&y + y.transpose()) * 0.5
}

/// `x` samples with `|x|_inf <= r`: all sign patterns of `(+-r, ..., +-r)`
/// followed by seeded uniform draws.
pub fn x_samples(m: usize, r: f64, random: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = (0..1usize << m)
        .map(|mask| (0..m).map(|j| if mask >> j & 1 == 1 { -r } else { r }).collect())
        .collect();
    for _ in 0..random {
        out.push((0..m).map(|_| rng.random_range(-r..=r)).collect());
    }
    out
}

/// 401 log-spaced `r` values from `1e-4` to `2`.
pub fn radius_grid() -> Vec<f64> {
    crate::estimates::linspace(1e-4f64.ln(), 2f64.ln(), 401).into_iter().map(f64::exp).collect()
}

/// Result of one radius scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusScan {
    pub big_r: f64,
    pub n: usize,
    pub r_scan: f64,
    /// `0.9 e^{-R}`
    pub sufficiency_floor: f64,
}

/// Largest grid value `r` such that membership holds for every sampled `Y`
/// and every sampled `x` at every grid radius up to `r`.
pub fn gln_radius_scan(big_r: f64, n: usize, trials: usize, seed: u64) -> Result<RadiusScan> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ys: Vec<DMatrix<f64>> = (0..trials).map(|_| random_spd(n, big_r, &mut rng)).collect();
    let m = n / 2;
    let mut best = 0.0;
    for r in radius_grid() {
        let xs = x_samples(m, r, 4, &mut rng);
        let all = ys.iter().all(|y| {
            xs.iter().all(|x| gln_sqrt_member(&SymMatrixPoint::new(y, x.clone())).unwrap_or(false))
        });
        if !all {
            break;
        }
        best = r;
    }
    Ok(RadiusScan { big_r, n, r_scan: best, sufficiency_floor: 0.9 * (-big_r).exp() })
}

/// Membership failures under the gate `tanh^2 r e^{2R} < 1`, with `r` just
/// inside the gate, over `trials` seeded `(Y, x)` draws.
pub fn gln_gate_failures(big_r: f64, n: usize, trials: usize, seed: u64) -> Result<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = (-big_r).exp().atanh() * (1.0 - 1e-6);
    let m = n / 2;
    let mut failures = 0;
    for _ in 0..trials {
        let y = random_spd(n, big_r, &mut rng);
        for x in x_samples(m, r, 4, &mut rng) {
            if !gln_sqrt_member(&SymMatrixPoint::new(&y, x))? {
                failures += 1;
            }
        }
    }
    Ok(failures)
}

/// Least-squares slope and intercept of `log r` against `R`.
pub fn log_fit(rows: &[RadiusScan]) -> (f64, f64) {
    let n = rows.len() as f64;
    let xs: Vec<f64> = rows.iter().map(|r| r.big_r).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.r_scan.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}
