pub mod ansatz2;
pub mod crown;
pub mod error;
pub mod estimates;
pub mod rankone;
pub mod specialfn;
pub mod spectral;
pub mod weyl;

pub use error::{Error, Result};
pub use spectral::SpectralParameter;
