use super::degree::{profile_degree, profile_pairing};
use super::divisor::{HorizontalCurve, ModelDivisor};
use super::error::{NoDecompositionWitness, P1Error};
use super::positivity::{profile_is_nef, volume_estimate};

/// `D = P + N` with `N = negative_c0 C_0 + negative_cinf C_inf` on the divisor level.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionP1 {
    pub positive: ModelDivisor,
    pub negative_c0: f64,
    pub negative_cinf: f64,
    /// Coefficient of `C_0` in the positive part of the unit one-kink (or two-kink) model.
    pub theta: Option<f64>,
    /// The same at `C_inf`.
    pub theta_inf: Option<f64>,
}

impl DecompositionP1 {
    fn trivial(d: &ModelDivisor) -> Self {
        Self {
            positive: d.clone(),
            negative_c0: 0.0,
            negative_cinf: 0.0,
            theta: None,
            theta_inf: None,
        }
    }
}

/// Positive part of `(C_0, -log|z|^2 + log max{alpha^2|z|^2, beta^2})`.
fn unit_one_kink(la: f64, lb: f64) -> Result<DecompositionP1, P1Error> {
    match (la >= 0.0, lb >= 0.0) {
        (true, true) => Ok(DecompositionP1::trivial(&ModelDivisor::one_kink(1.0, la, lb))),
        (true, false) => {
            let theta = la / (la - lb);
            let positive = if theta == 0.0 {
                ModelDivisor::zero()
            } else {
                ModelDivisor::one_kink(theta, la, 0.0)
            };
            Ok(DecompositionP1 {
                positive,
                negative_c0: 1.0 - theta,
                negative_cinf: 0.0,
                theta: Some(theta),
                theta_inf: None,
            })
        }
        (false, true) => {
            let theta = lb / (lb - la);
            let inner = if theta == 0.0 {
                ModelDivisor::zero()
            } else {
                ModelDivisor::one_kink(theta, lb, 0.0)
            };
            Ok(DecompositionP1 {
                positive: inner.inverted().shifted(1),
                negative_c0: 0.0,
                negative_cinf: 1.0 - theta,
                theta: None,
                theta_inf: Some(theta),
            })
        }
        (false, false) => {
            let log_t0 = std::f64::consts::LN_2 - la.min(lb);
            let kappa = -la.max(lb) / log_t0;
            let half = 0.5 * kappa;
            Err(P1Error::NoDecomposition(NoDecompositionWitness {
                log_alpha: la,
                log_beta: lb,
                t0: log_t0.exp(),
                epsilon: half / (1.0 - half),
            }))
        }
    }
}

fn two_kink(la: f64, lap: f64, lb: f64, lbp: f64) -> Result<DecompositionP1, P1Error> {
    if la >= 0.0 && lap >= 0.0 && la + lbp < 0.0 && lap + lb < 0.0 {
        let sum = la + lap;
        let vt = sum / (la - lb);
        let vtp = sum / (lap - lbp);
        let positive = if sum == 0.0 {
            ModelDivisor::zero()
        } else {
            ModelDivisor::Sum {
                terms: vec![
                    ModelDivisor::one_kink(vt, la, -lap),
                    ModelDivisor::one_kink(vtp, lap, -la).inverted(),
                ],
            }
        };
        return Ok(DecompositionP1 {
            positive,
            negative_c0: 1.0 - vt,
            negative_cinf: 1.0 - vtp,
            theta: Some(vt),
            theta_inf: Some(vtp),
        });
    }
    Err(P1Error::NotComputed(
        "two-kink positive part is only known for alpha, alpha' >= 1 with alpha beta' < 1 and alpha' beta < 1"
            .into(),
    ))
}

fn decompose(d: &ModelDivisor) -> Result<DecompositionP1, P1Error> {
    if profile_is_nef(&d.profile()) {
        return Ok(DecompositionP1::trivial(d));
    }
    match d {
        ModelDivisor::OneKink {
            lambda,
            log_a,
            log_b,
        } => {
            let unit = unit_one_kink(log_a / lambda, log_b / lambda)?;
            Ok(DecompositionP1 {
                positive: if *lambda == 1.0 {
                    unit.positive
                } else {
                    unit.positive.scaled(*lambda)
                },
                negative_c0: lambda * unit.negative_c0,
                negative_cinf: lambda * unit.negative_cinf,
                ..unit
            })
        }
        ModelDivisor::TwoKink {
            log_alpha,
            log_alpha_p,
            log_beta,
            log_beta_p,
        } => two_kink(*log_alpha, *log_alpha_p, *log_beta, *log_beta_p),
        ModelDivisor::Admissible { .. } => Err(P1Error::NotComputed(
            "the positive part of a non-nef admissible divisor is not known in closed form"
                .into(),
        )),
        ModelDivisor::PrincipalShift { base, k } => {
            let inner = decompose(base)?;
            Ok(DecompositionP1 {
                positive: inner.positive.clone().shifted(*k),
                ..inner
            })
        }
        ModelDivisor::Scaled { base, t } => {
            let inner = decompose(base)?;
            Ok(DecompositionP1 {
                positive: inner.positive.clone().scaled(*t),
                negative_c0: t * inner.negative_c0,
                negative_cinf: t * inner.negative_cinf,
                ..inner
            })
        }
        ModelDivisor::Inverted { base } => {
            let inner = decompose(base)?;
            Ok(DecompositionP1 {
                positive: inner.positive.inverted(),
                negative_c0: inner.negative_cinf,
                negative_cinf: inner.negative_c0,
                theta: inner.theta_inf,
                theta_inf: inner.theta,
            })
        }
        ModelDivisor::Sum { .. } => Err(P1Error::NotComputed(
            "positive parts are not additive; sums are only decomposed when nef".into(),
        )),
    }
}

/// The Zariski decomposition from the closed forms of each family.
pub fn zariski_decompose_p1(d: &ModelDivisor) -> Result<DecompositionP1, P1Error> {
    d.validate()?;
    decompose(d)
}

/// `vol(D) = deg(P^2)`.
pub fn volume_p1(d: &ModelDivisor, tol: f64) -> Result<f64, P1Error> {
    let dec = zariski_decompose_p1(d)?;
    let p = dec.positive.profile();
    Ok(profile_pairing(&p, &p, tol)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VolumeSource {
    /// `deg(P^2)` of the closed-form positive part.
    PositivePart,
    /// The monomial-norm integral of [`volume_estimate`].
    MonomialNorms,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HodgeReport {
    pub volume: f64,
    pub source: VolumeSource,
    pub self_pairing: f64,
    pub holds: bool,
}

/// Checks `vol(D) >= deg(D^2)`.
pub fn hodge_index_check(d: &ModelDivisor, tol: f64) -> Result<HodgeReport, P1Error> {
    d.validate()?;
    let p = d.profile();
    let self_pairing = profile_pairing(&p, &p, tol)?;
    let (volume, source) = match volume_p1(d, tol) {
        Ok(v) => (v, VolumeSource::PositivePart),
        Err(P1Error::NoDecomposition(_) | P1Error::NotComputed(_)) => {
            (volume_estimate(&p, tol)?, VolumeSource::MonomialNorms)
        }
        Err(e) => return Err(e),
    };
    Ok(HodgeReport {
        volume,
        source,
        self_pairing,
        holds: volume >= self_pairing - 2.0 * tol,
    })
}

/// Degree matrix `deg(N_i | C_j)` of the negative part of a two-kink divisor
/// with `alpha = alpha' = 1`, split as `N_1 + N_2` along `C_0` and `C_inf`.
pub fn negative_part_matrix(d: &ModelDivisor) -> Result<[[f64; 2]; 2], P1Error> {
    let ModelDivisor::TwoKink {
        log_alpha,
        log_alpha_p,
        log_beta,
        log_beta_p,
    } = d
    else {
        return Err(P1Error::UnsupportedFamily(
            "negative part matrix is defined for two-kink divisors".into(),
        ));
    };
    d.validate()?;
    if *log_alpha != 0.0 || *log_alpha_p != 0.0 || *log_beta >= 0.0 || *log_beta_p >= 0.0 {
        return Err(P1Error::UnsupportedConfiguration(
            "requires alpha = alpha' = 1 and beta, beta' < 1".into(),
        ));
    }
    let parts = [
        ModelDivisor::one_kink(1.0, 0.0, *log_beta).profile(),
        ModelDivisor::one_kink(1.0, 0.0, *log_beta_p).inverted().profile(),
    ];
    let curves = [HorizontalCurve::C0, HorizontalCurve::CInf];
    let mut m = [[0.0; 2]; 2];
    for (i, part) in parts.iter().enumerate() {
        for (j, c) in curves.iter().enumerate() {
            m[i][j] = profile_degree(part, *c);
        }
    }
    Ok(m)
}
