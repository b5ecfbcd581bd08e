use thiserror::Error;

use crate::numeric::QuadratureError;

/// Parameters of the scaling argument showing that no decomposition exists:
/// `D_{t0}` is adequate and `t0^{eps/(1+eps)} max(alpha, beta) < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoDecompositionWitness {
    pub log_alpha: f64,
    pub log_beta: f64,
    pub t0: f64,
    pub epsilon: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum P1Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("two-kink parameters violate beta/alpha <= alpha'/beta'")]
    KinkOrder,
    #[error("operation is not available for this family: {0}")]
    UnsupportedFamily(String),
    #[error("configuration not supported: {0}")]
    UnsupportedConfiguration(String),
    #[error(
        "no Zariski decomposition exists (log alpha = {}, log beta = {}; witness t0 = {}, eps = {})",
        .0.log_alpha, .0.log_beta, .0.t0, .0.epsilon
    )]
    NoDecomposition(NoDecompositionWitness),
    #[error("positive part not computed: {0}")]
    NotComputed(String),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}
