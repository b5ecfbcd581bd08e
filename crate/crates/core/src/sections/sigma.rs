use serde::Serialize;

use super::bergman::{log_distortion_at, small_monomials};
use super::error::SectionsError;
use super::space::SectionSpace;
use crate::numeric::logsumexp;
use crate::p1::{is_big, is_effective, HorizontalCurve, ModelDivisor};

/// Radii at which the canonical value at `z = 0` (or `inf`) is read off.
const FAR_RADII: (f64, f64) = (40.0, 44.0);

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SigmaDecomposition {
    pub n: u32,
    /// `F_n = fixed_c0 C_0 + fixed_cinf C_inf`.
    pub fixed_c0: f64,
    pub fixed_cinf: f64,
    /// `M_n = D - F_n` on the divisor level.
    pub movable_c0: f64,
    pub movable_cinf: f64,
    /// Exponents spanning the small sections of `nD`.
    pub small_exponents: Vec<i64>,
    /// `(log r, g_{M_n})` with `g_{M_n} = g + (1/n) log dist(V(nD); ng)`.
    pub green: Vec<(f64, f64)>,
}

/// Minimal multiplicities along `C_0` and `C_inf`, scaled by `1/n`.
///
/// Every coefficient of a small section satisfies `|c_i| ||z^{-i}|| <= 1`,
/// so the extreme exponents of small sections are those of small monomials.
fn fixed_part(space: &SectionSpace, small: &[usize]) -> Result<(f64, f64), SectionsError> {
    let (Some(&first), Some(&last)) = (small.first(), small.last()) else {
        return Err(SectionsError::EmptySections { n: space.n() });
    };
    let p = space.profile();
    let n = f64::from(space.n());
    let lo = space.exponents()[first] as f64;
    let hi = space.exponents()[last] as f64;
    Ok(((p.c0 - hi) / n, (p.cinf + lo) / n))
}

pub fn sigma_decomposition(
    divisor: &ModelDivisor,
    n: u32,
    grid: &[f64],
    tol: f64,
) -> Result<SigmaDecomposition, SectionsError> {
    let space = SectionSpace::new(divisor, n)?;
    let small = small_monomials(&space);
    let (fixed_c0, fixed_cinf) = fixed_part(&space, &small)?;
    let base = divisor.profile();
    let log_ip = space.log_inner_products(tol)?;
    let nf = f64::from(n);
    let green = grid
        .iter()
        .map(|&s| (s, base.green(s) + log_distortion_at(&space, &small, &log_ip, s) / nf))
        .collect();
    Ok(SigmaDecomposition {
        n,
        fixed_c0,
        fixed_cinf,
        movable_c0: base.c0 - fixed_c0,
        movable_cinf: base.cinf - fixed_cinf,
        small_exponents: small.iter().map(|&k| space.exponents()[k]).collect(),
        green,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultiplicityReport {
    /// `inf_n nu_C(nD)/n` over the levels with small sections.
    pub value: f64,
    /// `(n, nu_C(nD)/n)`.
    pub sequence: Vec<(u32, f64)>,
}

/// Asymptotic multiplicity along a horizontal curve from levels `1..=n_max`.
pub fn asymptotic_multiplicity(
    divisor: &ModelDivisor,
    curve: HorizontalCurve,
    n_max: u32,
) -> Result<MultiplicityReport, SectionsError> {
    let mut sequence = Vec::new();
    for n in 1..=n_max {
        let space = SectionSpace::new(divisor, n)?;
        let small = small_monomials(&space);
        let Ok((f0, finf)) = fixed_part(&space, &small) else {
            continue;
        };
        let v = match curve {
            HorizontalCurve::C0 => f0,
            HorizontalCurve::CInf => finf,
            // monomials vanish only at 0 and inf
            HorizontalCurve::RationalPoint { .. } => 0.0,
        };
        sequence.push((n, v));
    }
    if sequence.is_empty() {
        return Err(SectionsError::EmptySections { n: n_max });
    }
    let value = sequence.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    Ok(MultiplicityReport { value, sequence })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrthogonalityRow {
    pub n: u32,
    pub fixed_c0: f64,
    pub fixed_cinf: f64,
    pub deg_c0: f64,
    pub deg_cinf: f64,
    /// `deg(M_n | F_n)`.
    pub value: f64,
    /// Difference of the two far-radius readings before extrapolation.
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrthogonalityReport {
    pub rows: Vec<OrthogonalityRow>,
    /// Intercept of the fit `a + b/n + c log(n)/n`.
    pub limit: f64,
    pub non_negative: bool,
    pub decreasing: bool,
    /// `|limit| <= tol` and every far-radius gap below `tol`.
    pub converges: bool,
}

/// `lim L + K e^{2s}` from readings at two radii.
fn richardson(s1: f64, v1: f64, s2: f64, v2: f64) -> f64 {
    let q = (2.0 * (s2 - s1)).exp();
    (v2 - v1 * q) / (1.0 - q)
}

/// `deg(M_n | C_0)` and `deg(M_n | C_inf)`.
///
/// With `i_max` the top small exponent, `n g_{M_n} + 2 i_max log|z|` near
/// `z = 0` is `log sum_i |z|^{2(i_max - i)} / <z^{-i}, z^{-i}>`, whose value
/// at `z = 0` is the canonical value; likewise at `inf`.
fn movable_degrees(
    space: &SectionSpace,
    small: &[usize],
    log_ip: &[f64],
) -> ((f64, f64), (f64, f64)) {
    let n = f64::from(space.n());
    let e = |k: usize| space.exponents()[k] as f64;
    let hi = e(*small.last().expect("non-empty"));
    let lo = e(small[0]);
    let at_zero = |s: f64| 0.5 * logsumexp(small.iter().map(|&k| 2.0 * (hi - e(k)) * s - log_ip[k])) / n;
    let at_inf = |s: f64| 0.5 * logsumexp(small.iter().map(|&k| 2.0 * (lo - e(k)) * s - log_ip[k])) / n;
    let (a, b) = FAR_RADII;
    let (z1, z2) = (at_zero(-a), at_zero(-b));
    let (i1, i2) = (at_inf(a), at_inf(b));
    (
        (richardson(-a, z1, -b, z2), (z1 - z2).abs()),
        (richardson(-a, i1, -b, i2), (i1 - i2).abs()),
    )
}

fn fit_limit(rows: &[OrthogonalityRow]) -> f64 {
    let basis = |n: f64| [1.0, 1.0 / n, n.ln() / n];
    let k = rows.len().min(3);
    if k == 0 {
        return f64::NAN;
    }
    let mut ata = vec![vec![0.0; k]; k];
    let mut atb = vec![0.0; k];
    for r in rows {
        let phi = basis(f64::from(r.n));
        for i in 0..k {
            atb[i] += phi[i] * r.value;
            for j in 0..k {
                ata[i][j] += phi[i] * phi[j];
            }
        }
    }
    // Gaussian elimination on the k x k normal equations
    for c in 0..k {
        let p = (c..k)
            .max_by(|&x, &y| ata[x][c].abs().total_cmp(&ata[y][c].abs()))
            .expect("non-empty");
        ata.swap(c, p);
        atb.swap(c, p);
        for r in c + 1..k {
            let f = ata[r][c] / ata[c][c];
            for j in c..k {
                ata[r][j] -= f * ata[c][j];
            }
            atb[r] -= f * atb[c];
        }
    }
    let mut x = vec![0.0; k];
    for i in (0..k).rev() {
        let acc = (i + 1..k).fold(atb[i], |acc, j| acc - ata[i][j] * x[j]);
        x[i] = acc / ata[i][i];
    }
    x[0]
}

/// `deg(M_n | F_n)` along `n_list`, with the limiting trend.
pub fn orthogonality_probe(
    divisor: &ModelDivisor,
    n_list: &[u32],
    tol: f64,
) -> Result<OrthogonalityReport, SectionsError> {
    if !is_effective(divisor)? || !is_big(divisor, 1e-10)? {
        return Err(SectionsError::InvalidParameter(
            "orthogonality probe needs an effective and big divisor".into(),
        ));
    }
    let mut rows = Vec::new();
    for &n in n_list {
        let space = SectionSpace::new(divisor, n)?;
        let small = small_monomials(&space);
        let (fixed_c0, fixed_cinf) = fixed_part(&space, &small)?;
        let log_ip = space.log_inner_products(tol.min(1e-10))?;
        let ((deg_c0, g0), (deg_cinf, g1)) = movable_degrees(&space, &small, &log_ip);
        rows.push(OrthogonalityRow {
            n,
            fixed_c0,
            fixed_cinf,
            deg_c0,
            deg_cinf,
            value: fixed_c0 * deg_c0 + fixed_cinf * deg_cinf,
            gap: g0.max(g1),
        });
    }
    rows.sort_by_key(|r| r.n);
    let limit = fit_limit(&rows);
    let non_negative = rows.iter().all(|r| r.value >= -1e-12);
    let decreasing = match (rows.first(), rows.last()) {
        (Some(a), Some(b)) if rows.len() > 1 => b.value < a.value,
        _ => false,
    };
    let converges = limit.abs() <= tol && rows.iter().all(|r| r.gap <= tol);
    Ok(OrthogonalityReport {
        rows,
        limit,
        non_negative,
        decreasing,
        converges,
    })
}
