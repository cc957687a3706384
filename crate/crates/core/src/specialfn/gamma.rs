use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

const POLE_TOLERANCE: f64 = 1e-12;

/// Principal-branch `log Gamma(z)`.
///
/// Lanczos approximation on `Re z >= 1/2`, reflection formula otherwise.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    let k = z.re.round();
    if k <= 0.0 && (z - k).norm() < POLE_TOLERANCE {
        return Err(Error::GammaPole { re: z.re, im: z.im });
    }
    let raw = log_gamma_unwrapped(z);
    Ok(Complex64::new(raw.re, wrap_angle(raw.im)))
}

fn log_gamma_unwrapped(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
        Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - log_gamma_unwrapped(1.0 - z)
    } else {
        let z = z - 1.0;
        let mut acc = Complex64::new(LANCZOS_COEFFS[0], 0.0);
        for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
            acc += c / (z + i as f64);
        }
        let t = z + LANCZOS_G + 0.5;
        0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + acc.ln()
    }
}

fn wrap_angle(theta: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut t = theta.rem_euclid(two_pi);
    if t > PI {
        t -= two_pi;
    }
    t
}

/// `sin(pi z)` with the real part reduced to `[-1/2, 1/2]` first, so that
/// zeros at integers are hit exactly.
pub fn sin_pi(z: Complex64) -> Complex64 {
    let k = z.re.round();
    let x = Complex64::new(z.re - k, z.im) * PI;
    let s = x.sin();
    if (k as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

/// `log sin(pi z)` that stays finite for large `|Im z|` (the branch of the
/// imaginary part is irrelevant to callers, who exponentiate).
pub fn ln_sin_pi(z: Complex64) -> Complex64 {
    let k = z.re.round();
    let x = Complex64::new(z.re - k, z.im) * PI;
    let parity = if (k as i64) % 2 == 0 { 0.0 } else { PI };
    let i = Complex64::i();
    let ln_2i = Complex64::new(2.0f64.ln(), PI / 2.0);
    let base = if x.im > 20.0 {
        // sin x = -e^{-ix} (1 - e^{2ix}) / (2i)
        Complex64::new(0.0, PI) - i * x + (1.0 - (2.0 * i * x).exp()).ln() - ln_2i
    } else if x.im < -20.0 {
        // sin x = e^{ix} (1 - e^{-2ix}) / (2i)
        i * x + (1.0 - (-2.0 * i * x).exp()).ln() - ln_2i
    } else {
        x.sin().ln()
    };
    base + Complex64::new(0.0, parity)
}
