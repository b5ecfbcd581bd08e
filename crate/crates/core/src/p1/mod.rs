//! Rotation-invariant arithmetic divisors on `P^1_Z` with the Fubini-Study
//! style Green functions `g(z) = G(|z|)`.

mod decomposition;
mod degree;
mod divisor;
mod error;
mod positivity;
mod profile;

pub use decomposition::{
    hodge_index_check, negative_part_matrix, volume_p1, zariski_decompose_p1, DecompositionP1,
    HodgeReport, VolumeSource,
};
pub use degree::{degree_on_curve, green_value, pairing, profile_degree, profile_pairing};
pub use divisor::{HorizontalCurve, ModelDivisor};
pub use error::{NoDecompositionWitness, P1Error};
pub use positivity::{
    green_infimum, is_adequate_sufficient, is_big, is_effective, is_nef_p1, nef_by_sampling,
    profile_is_nef, volume_estimate, SIGN_EPS,
};
pub use profile::{Kink, LogSum, Profile, DENSITY_WINDOW};
