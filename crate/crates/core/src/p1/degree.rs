use super::divisor::{HorizontalCurve, ModelDivisor};
use super::error::P1Error;
use super::profile::Profile;
use crate::numeric::QuadratureError;

/// `g(z)` at `|z| = e^{log_r}`.
pub fn green_value(d: &ModelDivisor, log_r: f64) -> f64 {
    d.profile().green(log_r)
}

/// Arithmetic degree of the restriction to a horizontal curve.
///
/// On `C_0` and `C_inf` the divisor is first moved off the curve by a
/// principal shift; on `(m : n)` the finite part is `c0 log|m| + cinf log n`.
pub fn profile_degree(p: &Profile, c: HorizontalCurve) -> f64 {
    match c {
        HorizontalCurve::C0 => 0.5 * p.limit_at_zero(),
        HorizontalCurve::CInf => 0.5 * p.limit_at_infinity(),
        HorizontalCurve::RationalPoint { m, n } => {
            let (m, n) = (m as f64, n as f64);
            0.5 * p.phi((m.abs() / n).ln()) + p.total_degree() * n.ln()
        }
    }
}

pub fn degree_on_curve(d: &ModelDivisor, c: HorizontalCurve) -> f64 {
    profile_degree(&d.profile(), c)
}

/// `deg(D1 . D2) = c0_1 deg(D2|C_0) + cinf_1 deg(D2|C_inf) + 1/2 int g_1 dω_2`.
pub fn profile_pairing(p1: &Profile, p2: &Profile, tol: f64) -> Result<f64, QuadratureError> {
    let finite = p1.c0 * profile_degree(p2, HorizontalCurve::C0)
        + p1.cinf * profile_degree(p2, HorizontalCurve::CInf);
    let breaks = p1.kink_locations();
    let energy = p2.integrate_curvature(|s| p1.green(s), &breaks, 2.0 * tol)?;
    Ok(finite + 0.5 * energy)
}

/// The intersection pairing of two divisors, quadrature to absolute `tol`.
pub fn pairing(d1: &ModelDivisor, d2: &ModelDivisor, tol: f64) -> Result<f64, P1Error> {
    d1.validate()?;
    d2.validate()?;
    if !(tol > 0.0) {
        return Err(P1Error::InvalidParameter(format!("tol must be positive, got {tol}")));
    }
    Ok(profile_pairing(&d1.profile(), &d2.profile(), tol)?)
}
