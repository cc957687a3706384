//! Membership tests for crown domains and their brute-force cross-checks.
//!
//! `SU(1,1)` uses the bidisc model, `SO_0(1,n)` (even `n`) the complexified
//! hyperboloid, and `GL(n,R)` the square root domain, where membership of
//! `D(ix) Y D(ix)^T` reduces to positive definiteness of `Y - S(x) Y S(x)^T`.

mod gln;
mod report;
mod so1n;
mod su11;

pub use gln::{
    gln_gate_failures, gln_radius_scan, gln_sqrt_member, is_positive_definite, log_fit, radius_grid, random_spd,
    s_matrix, x_samples, RadiusScan, SymMatrixPoint, PIVOT_TOL,
};
pub use report::{check_gln, check_so1n, check_su11, write_beta_csv, write_radius_csv, GlnConfig, So1nConfig, Su11Config};
pub use so1n::{
    direction_samples, so1n_bound_brute, so1n_chamber_bound, so1n_margin, so1n_member, so1n_r_prime,
    HyperboloidComplexPoint,
};
pub use su11::{su11_beta, su11_beta_brute, su11_member, su11_t_max, DiscPair};
