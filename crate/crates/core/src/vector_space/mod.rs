//! Exact Zariski decompositions in a finite-dimensional vector space.

mod certificate;
mod decompose;
mod error;
pub mod linalg;
mod simplex;
mod system;

pub use certificate::{certify_negative_part, independence_check, NegativityCertificate};
pub use decompose::{clip_decomposition, solve_decomposition, Decomposition};
pub use error::{CertificateError, DecompositionError, SystemError};
pub use simplex::{minimize, LpOutcome};
pub use system::{coordinate_max, is_nef, validate_system, BasisVector, ZariskiSystem};
