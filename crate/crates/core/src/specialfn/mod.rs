//! One-variable special functions: complex log-Gamma, the regularized sinc
//! products `f_{n,R}`, the rising polynomials `q_n`, Gamma-ratio polynomials and
//! exactly factored polynomials with half-integer roots.

mod gamma;
mod halfint;
mod poly;
mod sinc;

pub use gamma::{ln_sin_pi, log_gamma, sin_pi};
pub use halfint::HalfInt;
pub use poly::{
    e_tau_build, e_tau_poly, factored_divides, gamma_ratio_eval, q_eval, q_ln, FactoredPoly, GammaRatioPoly,
};
pub use sinc::{f_eval, f_ln, EstimateKernel, SincProduct, BRANCH_THRESHOLD};
