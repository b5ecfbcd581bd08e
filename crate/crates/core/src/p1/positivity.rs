use super::degree::profile_degree;
use super::divisor::{HorizontalCurve, ModelDivisor};
use super::error::P1Error;
use super::profile::Profile;
use crate::numeric::{golden_max, integrate_pieces};

/// Slack allowed when comparing closed-form degrees against zero.
pub const SIGN_EPS: f64 = 1e-12;

/// Nef: positive curvature and non-negative degree on `C_0`, `C_inf` and the fibres.
///
/// Degrees on the remaining rational points follow: `phi` is convex with
/// slope zero at `-inf`, so `phi >= phi(-inf)`.
pub fn profile_is_nef(p: &Profile) -> bool {
    p.has_positive_curvature()
        && profile_degree(p, HorizontalCurve::C0) >= -SIGN_EPS
        && profile_degree(p, HorizontalCurve::CInf) >= -SIGN_EPS
        && p.total_degree() >= -SIGN_EPS
}

pub fn is_nef_p1(d: &ModelDivisor) -> Result<bool, P1Error> {
    d.validate()?;
    Ok(profile_is_nef(&d.profile()))
}

/// Nef test by brute force over `C_0`, `C_inf` and `(m : n)` with `|m|, |n| <= bound`.
pub fn nef_by_sampling(d: &ModelDivisor, bound: i64) -> bool {
    let p = d.profile();
    let mut curves = vec![HorizontalCurve::C0, HorizontalCurve::CInf];
    for m in -bound..=bound {
        for n in 1..=bound {
            if let Ok(c @ HorizontalCurve::RationalPoint { .. }) = HorizontalCurve::point(m, n) {
                curves.push(c);
            }
        }
    }
    curves
        .into_iter()
        .all(|c| profile_degree(&p, c) >= -SIGN_EPS)
}

/// `inf g` over `C^*`, including the limits at `0` and `inf`.
pub fn green_infimum(p: &Profile) -> f64 {
    if p.c0 < -SIGN_EPS || p.cinf < -SIGN_EPS {
        return f64::NEG_INFINITY;
    }
    let mut best = f64::INFINITY;
    if p.c0 <= SIGN_EPS {
        best = best.min(p.limit_at_zero());
    }
    if p.cinf <= SIGN_EPS {
        best = best.min(p.limit_at_infinity());
    }
    if p.is_piecewise_linear() {
        for s in p.kink_locations() {
            best = best.min(p.green(s));
        }
        if p.kinks.is_empty() {
            best = best.min(p.green(0.0));
        }
        return best;
    }
    let (lo, hi) = p.span();
    let (_, v) = golden_max(|s| -p.green(s), lo - 80.0, hi + 80.0, 1e-12);
    best.min(-v)
}

/// Effective: `D >= 0` and `g >= 0`.
pub fn is_effective(d: &ModelDivisor) -> Result<bool, P1Error> {
    d.validate()?;
    let p = d.profile();
    Ok(p.c0 >= -SIGN_EPS && p.cinf >= -SIGN_EPS && green_infimum(&p) >= -SIGN_EPS)
}

/// The volume `2 int max(0, theta(x)) dx` over `x in [-cinf, c0]`, where
/// `-theta(x)` is the normalised log sup-norm of `z^{-x}`.
///
/// Monomials are orthogonal for every rotation-invariant metric, so the
/// count of small sections of `nD` is governed by these norms alone.
pub fn volume_estimate(p: &Profile, tol: f64) -> Result<f64, P1Error> {
    let (lo, hi) = (-p.cinf, p.c0);
    if hi - lo <= 0.0 {
        return Ok(0.0);
    }
    if p.is_piecewise_linear() {
        return Ok(2.0 * piecewise_linear_area(p, lo, hi));
    }
    let f = |x: f64| (-p.log_monomial_norm(x)).max(0.0);
    Ok(2.0 * integrate_pieces(f, &[], lo, hi, tol)?)
}

/// `int max(0, min_k a_k(x)) dx` with `a_k(x) = phi(s_k)/2 - (c0 - x) s_k`.
fn piecewise_linear_area(p: &Profile, lo: f64, hi: f64) -> f64 {
    let lines: Vec<(f64, f64)> = p
        .kink_locations()
        .into_iter()
        .map(|s| (0.5 * p.phi(s) - p.c0 * s, s))
        .collect();
    if lines.is_empty() {
        return 0.0;
    }
    let value = |x: f64| {
        lines
            .iter()
            .map(|(a, b)| a + b * x)
            .fold(f64::INFINITY, f64::min)
            .max(0.0)
    };
    let mut cuts = vec![lo, hi];
    for (i, (a1, b1)) in lines.iter().enumerate() {
        if *b1 != 0.0 {
            cuts.push(-a1 / b1);
        }
        for (a2, b2) in &lines[i + 1..] {
            if b1 != b2 {
                cuts.push((a2 - a1) / (b1 - b2));
            }
        }
    }
    cuts.retain(|x| x.is_finite() && *x >= lo && *x <= hi);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    cuts.windows(2)
        .map(|w| 0.5 * (w[1] - w[0]) * (value(w[0]) + value(w[1])))
        .sum()
}

pub fn is_big(d: &ModelDivisor, tol: f64) -> Result<bool, P1Error> {
    d.validate()?;
    Ok(volume_estimate(&d.profile(), tol)? > tol.max(SIGN_EPS))
}

/// The sufficient adequacy condition `a^2 > 2^lambda` and `b^2 > 2^lambda`.
pub fn is_adequate_sufficient(d: &ModelDivisor) -> Result<bool, P1Error> {
    match d {
        ModelDivisor::OneKink {
            lambda,
            log_a,
            log_b,
        } => {
            d.validate()?;
            let bound = lambda * std::f64::consts::LN_2;
            Ok(2.0 * log_a > bound && 2.0 * log_b > bound)
        }
        _ => Err(P1Error::UnsupportedFamily(
            "the adequacy criterion applies to one-kink divisors only".into(),
        )),
    }
}
