//! Small-rank root systems, their Weyl groups, reduced words and
//! orbit interpolation.
//!
//! Group elements are identified exactly by the images of the simple roots
//! in simple-root coordinates; the floating-point matrices are only used to
//! act on spectral parameters. Simple reflections are numbered from 0.

mod group;
mod interp;
mod report;
mod roots;

pub use group::{
    element_of_word, factorization_roots, generate_weyl, multiply, orbit_and_stabilizer, reduced_words, WeylElement,
};
pub use interp::{build_p_lambda0, LinearFactor, OrbitInterpolant, DENOM_TOL};
pub use report::{check_factorization, check_p_lambda0, default_kinds};
pub use roots::{build_root_system, dot, reflect_coeffs, RootKind, RootSystemData};

use serde::{Deserialize, Serialize};

/// Serializable bundle of a root system and its group.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeylData {
    pub root_system: RootSystemData,
    pub elements: Vec<WeylElement>,
}

impl WeylData {
    pub fn build(kind: RootKind) -> crate::Result<Self> {
        let root_system = build_root_system(kind)?;
        let elements = generate_weyl(&root_system);
        Ok(Self { root_system, elements })
    }
}
