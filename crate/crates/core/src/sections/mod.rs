//! Small sections of multiples of rotation-invariant divisors on `P^1_Z`:
//! sup norms, lattice counts, distortion functions and the
//! sigma-decomposition.

mod bergman;
mod count;
mod error;
mod norm;
mod sigma;
mod space;
mod trig;

pub use bergman::{
    dist_growth_probe, distortion, gromov_probe, log_volume_density, small_monomials,
    DistGrowthReport, DistortionPoint, GromovReport,
};
pub use count::{hhat0_bounds, hhat0_exact, CountBounds, SmallSectionCount, MAX_BOX};
pub use error::SectionsError;
pub use norm::sup_norm;
pub use sigma::{
    asymptotic_multiplicity, orthogonality_probe, sigma_decomposition, MultiplicityReport,
    OrthogonalityReport, OrthogonalityRow, SigmaDecomposition,
};
pub use space::{IntegerSection, SectionSpace};
