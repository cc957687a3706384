//! Numerical verification of the one-variable estimates behind the
//! Paley-Wiener bound: exact inequalities, identities between the product,
//! sine and Gamma forms, and boundedness claims certified by sup stability.
//!
//! Two kinds of checks live here. Exact inequalities report
//! `max(lhs - rhs)` with tolerance [`EXACT_TOL`]. Existence-of-constant claims
//! report the relative growth of the empirical sup when the `n` range is
//! doubled, with tolerance [`STABILITY_TOL`]; the sup itself is recorded as a
//! calibrated constant.

mod bounds;
mod identities;
mod inequalities;
mod normalization;
mod report;

pub use bounds::{check_largelambda, check_prop_basic, check_smalllambda, gate_ok};
pub use identities::{check_dual_representation, check_euler_reflection, check_gamma_representation};
pub use inequalities::{
    check_gamma_ab_bounds, check_hr_bound, check_phi_lower_bound, check_separating_line, h_r, phi,
    GammaAbGrid,
};
pub use normalization::{check_inf_f, check_scaling_remark, inf_f_at, inf_f_brute};
pub use report::{
    linspace, witness, Constants, GridSpec, Region, VerificationReport, Witness, Worst,
};

/// Slack on inequalities that hold exactly in real arithmetic.
pub const EXACT_TOL: f64 = 1e-12;
/// Allowed relative change of a calibrated sup when the `n` range doubles.
pub const STABILITY_TOL: f64 = 0.01;
/// The constant `c` in the admissibility gate `(log R)^2 / R^2 < c r`.
pub const GATE_C: f64 = 0.2;
/// Lower bound for `R` in the combined estimate.
pub const R0: f64 = 3.0;
