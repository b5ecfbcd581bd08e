//! Floating-point helpers shared by the divisor and section modules.

mod optimize;
mod quadrature;
mod rational;

pub use optimize::{golden_max, logsumexp};
pub use quadrature::{integrate_pieces, QuadratureError};
pub use rational::rationalize;
