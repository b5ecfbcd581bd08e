use serde_json::Value;
use thiserror::Error;

use zariski::p1::P1Error;
use zariski::sections::SectionsError;
use zariski::vector_space::{CertificateError, DecompositionError, SystemError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("malformed input: {0}")]
    Malformed(String),
    /// An answer in the negative, such as "no decomposition exists".
    #[error("{message}")]
    Domain { message: String, payload: Value },
    #[error("tolerance not met: {0}")]
    Tolerance(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Malformed(_) => 2,
            Self::Domain { .. } => 3,
            Self::Tolerance(_) => 4,
        }
    }

    pub fn malformed(e: impl std::fmt::Display) -> Self {
        Self::Malformed(e.to_string())
    }

    fn domain(outcome: &str, message: String, extra: Value) -> Self {
        let mut payload = serde_json::json!({ "outcome": outcome, "message": message });
        if let (Value::Object(p), Value::Object(e)) = (&mut payload, extra) {
            p.extend(e);
        }
        Self::Domain { message, payload }
    }
}

impl From<SystemError> for CliError {
    fn from(e: SystemError) -> Self {
        Self::malformed(e)
    }
}

impl From<DecompositionError> for CliError {
    fn from(e: DecompositionError) -> Self {
        match e {
            DecompositionError::System(e) => e.into(),
            DecompositionError::NoNefBelow => {
                Self::domain("no-nef-below", e.to_string(), Value::Null)
            }
            DecompositionError::CertificateFailure(_) => {
                Self::domain("certificate-failure", e.to_string(), Value::Null)
            }
        }
    }
}

impl From<CertificateError> for CliError {
    fn from(e: CertificateError) -> Self {
        match e {
            CertificateError::NonNegativeDiagonal { .. } | CertificateError::SingularReduction { .. } => {
                Self::domain("no-certificate", e.to_string(), Value::Null)
            }
            _ => Self::malformed(e),
        }
    }
}

impl From<P1Error> for CliError {
    fn from(e: P1Error) -> Self {
        match &e {
            P1Error::NoDecomposition(w) => Self::domain(
                "no-decomposition",
                e.to_string(),
                serde_json::json!({ "witness": {
                    "log_alpha": w.log_alpha,
                    "log_beta": w.log_beta,
                    "t0": w.t0,
                    "epsilon": w.epsilon,
                }}),
            ),
            P1Error::NotComputed(_) => Self::domain("not-computed", e.to_string(), Value::Null),
            P1Error::Quadrature(_) => Self::Tolerance(e.to_string()),
            _ => Self::malformed(e),
        }
    }
}

impl From<SectionsError> for CliError {
    fn from(e: SectionsError) -> Self {
        match e {
            SectionsError::Divisor(e) => e.into(),
            SectionsError::EmptySections { n } => Self::domain(
                "empty-sections",
                e.to_string(),
                serde_json::json!({ "n": n }),
            ),
            SectionsError::AmbiguousBoundary { .. } | SectionsError::Quadrature(_) => {
                Self::Tolerance(e.to_string())
            }
            _ => Self::malformed(e),
        }
    }
}
