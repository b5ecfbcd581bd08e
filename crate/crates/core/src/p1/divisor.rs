use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::error::P1Error;
use super::profile::Profile;

/// Rotation-invariant arithmetic divisors on `P^1_Z`, parameters in log form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ModelDivisor {
    /// `(lambda C_0, -lambda log|z|^2 + log max{a^2 |z|^{2 lambda}, b^2})`.
    OneKink {
        #[serde(default = "one")]
        lambda: f64,
        #[serde(alias = "log_alpha")]
        log_a: f64,
        #[serde(alias = "log_beta")]
        log_b: f64,
    },
    /// `(C_0 + C_inf, -log|z|^2 + log max{alpha^2|z|^2, beta^2} + log max{alpha'^2, beta'^2|z|^2})`.
    TwoKink {
        log_alpha: f64,
        log_alpha_p: f64,
        log_beta: f64,
        log_beta_p: f64,
    },
    /// `(C_0, -log|z|^2 + log(|z|^2 + lambda))`.
    Admissible { lambda: f64 },
    /// `base + k (z)`, with `(z) = (C_0 - C_inf, -log|z|^2)`.
    PrincipalShift { base: Box<ModelDivisor>, k: i64 },
    Scaled { base: Box<ModelDivisor>, t: f64 },
    /// Pull-back under `z -> 1/z`, exchanging `C_0` and `C_inf`.
    Inverted { base: Box<ModelDivisor> },
    Sum { terms: Vec<ModelDivisor> },
}

fn one() -> f64 {
    1.0
}

fn finite(name: &str, v: f64) -> Result<(), P1Error> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(P1Error::InvalidParameter(format!("{name} must be finite, got {v}")))
    }
}

impl ModelDivisor {
    pub fn one_kink(lambda: f64, log_a: f64, log_b: f64) -> Self {
        Self::OneKink {
            lambda,
            log_a,
            log_b,
        }
    }

    pub fn two_kink(log_alpha: f64, log_alpha_p: f64, log_beta: f64, log_beta_p: f64) -> Self {
        Self::TwoKink {
            log_alpha,
            log_alpha_p,
            log_beta,
            log_beta_p,
        }
    }

    pub fn admissible(lambda: f64) -> Self {
        Self::Admissible { lambda }
    }

    /// The zero divisor `(0, 0)`.
    pub fn zero() -> Self {
        Self::one_kink(1.0, 0.0, 0.0).scaled(0.0)
    }

    pub fn shifted(self, k: i64) -> Self {
        Self::PrincipalShift {
            base: Box::new(self),
            k,
        }
    }

    pub fn scaled(self, t: f64) -> Self {
        Self::Scaled {
            base: Box::new(self),
            t,
        }
    }

    pub fn inverted(self) -> Self {
        Self::Inverted {
            base: Box::new(self),
        }
    }

    pub fn validate(&self) -> Result<(), P1Error> {
        match self {
            Self::OneKink {
                lambda,
                log_a,
                log_b,
            } => {
                finite("lambda", *lambda)?;
                finite("log_a", *log_a)?;
                finite("log_b", *log_b)?;
                if *lambda <= 0.0 {
                    return Err(P1Error::InvalidParameter(format!(
                        "lambda must be positive, got {lambda}"
                    )));
                }
                Ok(())
            }
            Self::TwoKink {
                log_alpha,
                log_alpha_p,
                log_beta,
                log_beta_p,
            } => {
                finite("log_alpha", *log_alpha)?;
                finite("log_alpha_p", *log_alpha_p)?;
                finite("log_beta", *log_beta)?;
                finite("log_beta_p", *log_beta_p)?;
                if log_beta - log_alpha > log_alpha_p - log_beta_p {
                    return Err(P1Error::KinkOrder);
                }
                Ok(())
            }
            Self::Admissible { lambda } => {
                finite("lambda", *lambda)?;
                if *lambda <= 0.0 {
                    return Err(P1Error::InvalidParameter(format!(
                        "lambda must be positive, got {lambda}"
                    )));
                }
                Ok(())
            }
            Self::PrincipalShift { base, .. } | Self::Inverted { base } => base.validate(),
            Self::Scaled { base, t } => {
                finite("t", *t)?;
                if *t < 0.0 {
                    return Err(P1Error::InvalidParameter(format!(
                        "scaling factor must be non-negative, got {t}"
                    )));
                }
                base.validate()
            }
            Self::Sum { terms } => {
                if terms.is_empty() {
                    return Err(P1Error::InvalidParameter("empty sum".into()));
                }
                terms.iter().try_for_each(Self::validate)
            }
        }
    }

    /// The radial normal form; assumes [`ModelDivisor::validate`] passed.
    pub fn profile(&self) -> Profile {
        match self {
            Self::OneKink {
                lambda,
                log_a,
                log_b,
            } => {
                let mut p = Profile::zero();
                p.c0 = *lambda;
                p.with_kink(1.0, (2.0 * log_b, 0.0), (2.0 * log_a, 2.0 * lambda))
            }
            Self::TwoKink {
                log_alpha,
                log_alpha_p,
                log_beta,
                log_beta_p,
            } => {
                let mut p = Profile::zero();
                p.c0 = 1.0;
                p.cinf = 1.0;
                p.with_kink(1.0, (2.0 * log_beta, 0.0), (2.0 * log_alpha, 2.0))
                    .with_kink(1.0, (2.0 * log_alpha_p, 0.0), (2.0 * log_beta_p, 2.0))
            }
            Self::Admissible { lambda } => {
                let mut p = Profile::zero();
                p.c0 = 1.0;
                p.with_logsum(1.0, lambda.ln())
            }
            Self::PrincipalShift { base, k } => base.profile().shifted(*k as f64),
            Self::Scaled { base, t } => base.profile().scaled(*t),
            Self::Inverted { base } => base.profile().inverted(),
            Self::Sum { terms } => terms
                .iter()
                .fold(Profile::zero(), |acc, d| acc.add(&d.profile())),
        }
    }

    /// `(coefficient of C_0, coefficient of C_inf)` of the underlying divisor.
    pub fn coefficients(&self) -> (f64, f64) {
        let p = self.profile();
        (p.c0, p.cinf)
    }
}

/// Horizontal curves of `P^1_Z` met by the rotation-invariant families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum HorizontalCurve {
    C0,
    CInf,
    /// The section through `(m : n)`, `gcd(m, n) = 1`, `n > 0`, `m != 0`.
    RationalPoint { m: i64, n: i64 },
}

impl HorizontalCurve {
    /// The curve through `(m : n)`, normalised; `(0 : n)` is `C_0` and `(m : 0)` is `C_inf`.
    pub fn point(m: i64, n: i64) -> Result<Self, P1Error> {
        if m == 0 && n == 0 {
            return Err(P1Error::InvalidParameter("(0:0) is not a point".into()));
        }
        if m == 0 {
            return Ok(Self::C0);
        }
        if n == 0 {
            return Ok(Self::CInf);
        }
        let g = m.gcd(&n);
        let (m, n) = (m / g, n / g);
        let (m, n) = if n < 0 { (-m, -n) } else { (m, n) };
        Ok(Self::RationalPoint { m, n })
    }
}

impl fmt::Display for HorizontalCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::C0 => write!(f, "C0"),
            Self::CInf => write!(f, "Cinf"),
            Self::RationalPoint { m, n } => write!(f, "{m}:{n}"),
        }
    }
}

impl FromStr for HorizontalCurve {
    type Err = P1Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        match t.to_ascii_lowercase().as_str() {
            "c0" | "c_0" => return Ok(Self::C0),
            "cinf" | "c_inf" | "c-inf" => return Ok(Self::CInf),
            _ => {}
        }
        let bad = || P1Error::InvalidParameter(format!("cannot parse curve {s:?}"));
        let (m, n) = t.split_once(':').ok_or_else(bad)?;
        let m = m.trim().parse().map_err(|_| bad())?;
        let n = n.trim().parse().map_err(|_| bad())?;
        Self::point(m, n)
    }
}

impl TryFrom<String> for HorizontalCurve {
    type Error = P1Error;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<HorizontalCurve> for String {
    fn from(c: HorizontalCurve) -> Self {
        c.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serde_shapes() {
        let d: ModelDivisor =
            serde_json::from_str(r#"{"family":"one-kink","log_alpha":1,"log_beta":-1}"#).unwrap();
        assert_eq!(d, ModelDivisor::one_kink(1.0, 1.0, -1.0));
        let d: ModelDivisor = serde_json::from_str(
            r#"{"family":"scaled","t":2,"base":{"family":"admissible","lambda":1}}"#,
        )
        .unwrap();
        assert_eq!(d, ModelDivisor::admissible(1.0).scaled(2.0));
        assert!(serde_json::from_str::<ModelDivisor>(r#"{"family":"admissible","lambda":1,"x":1}"#)
            .is_err());
    }

    #[test]
    fn validation() {
        assert!(ModelDivisor::one_kink(0.0, 0.0, 0.0).validate().is_err());
        assert!(ModelDivisor::admissible(-1.0).validate().is_err());
        assert_eq!(
            ModelDivisor::two_kink(0.0, 0.0, 1.0, 1.0).validate(),
            Err(P1Error::KinkOrder)
        );
        assert!(ModelDivisor::zero().validate().is_ok());
    }

    #[test]
    fn curves() {
        assert_eq!("C0".parse::<HorizontalCurve>().unwrap(), HorizontalCurve::C0);
        assert_eq!(
            "(2:-4)".parse::<HorizontalCurve>().unwrap(),
            HorizontalCurve::RationalPoint { m: -1, n: 2 }
        );
        assert_eq!(HorizontalCurve::point(0, 5).unwrap(), HorizontalCurve::C0);
        assert_eq!(HorizontalCurve::point(3, 0).unwrap(), HorizontalCurve::CInf);
    }
}
