//! Real rank one: K-type data, normalized `Q` polynomials for both root
//! multiplicity patterns, the scalar intertwiners they induce, and the
//! first interpolation scheme built from them.

mod ansatz1;
mod params;
mod qtilde;
mod vector;

pub use ansatz1::{
    ansatz1_interpolant, check_intertwining, perturb_r, pw_bound_estimate, write_interpolant_csv,
    Ansatz1Interpolant, LambdaCoords,
};
pub use params::{admissible_ktypes, KTypeData, KTypeTable, RankOneParams};
pub use qtilde::{
    j_scalar, j_scalar_z, kostant_ok, kostant_ok_rank_one, kostant_pairing_ok, q_tilde_eval,
    sl2_j, sl2_lambda_to_z, sl2_q_tilde, sl2_z_to_lambda,
};
pub use vector::AnalyticVector;
