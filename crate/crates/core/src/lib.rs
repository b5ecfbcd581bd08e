//! Zariski decompositions: an exact solver for finite systems of functionals
//! and a calculator for arithmetic divisors on the projective line over the
//! integers.

pub mod numeric;
pub mod p1;
pub mod scalar;
pub mod sections;
pub mod vector_space;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Exact rational scalar used throughout the vector-space solver.
pub type Rational = BigRational;
pub type System = vector_space::ZariskiSystem<Rational>;
pub type Vector = vector_space::BasisVector<Rational>;
pub type RationalDecomposition = vector_space::Decomposition<Rational>;
pub type Certificate = vector_space::NegativityCertificate<Rational>;
