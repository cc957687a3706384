//! Weyl-averaged interpolation on products of rank one systems.
//!
//! For `W = (Z/2)^l` every intertwiner is a product of rank one scalars, so
//! `F_tau(lambda) = sum_w phi_tau(w lambda) p_{lambda0}(w lambda) J_{w, w lambda}[tau]`
//! can be evaluated exactly. Each `w`-term is assembled from per-coordinate
//! logarithms and the terms are summed with a common shift, because
//! `psi^8` easily exceeds the range of `f64` off the real axis.
//!
//! For a flipped coordinate the pole-cancelling product
//! `e_tau(x) J = e_tau(x) D(-x) / D(x)` is evaluated through the exact
//! polynomial quotient `e_tau / D` close to the roots of `D`.

mod interp;
mod model;

pub use interp::{
    build_f_tau, check_cocycle, check_interpolation, check_w_invariance, estimate_condition_iii, f_factor_counts,
    product_grid, write_scan_csv, FTau, GrowthExponents, LogValue, SymmetrizedInterpolant, POLY_SWITCH,
};
pub use model::{
    flips, j_denominator, j_product, m_pole, p_tau_eval, pole_cancellation_check, psi_eval, ProductKType,
    ProductModel, MAX_FACTORS, PSI_POWER,
};
