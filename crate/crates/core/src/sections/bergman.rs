//! Inner products, distortion functions and the Gromov-type probes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::error::SectionsError;
use super::space::{IntegerSection, SectionSpace};
use crate::numeric::{golden_max, integrate_pieces, logsumexp};
use crate::p1::{ModelDivisor, Profile};

/// Quadrature reaches this far past the peak and every kink.
const TAIL: f64 = 40.0;

/// `log` of the volume form density `2e^{2s}/(1+e^{2s})^2` in `s = log|z|`,
/// the rotation- and conjugation-invariant probability measure of the
/// admissible metric with `lambda = 1`.
pub fn log_volume_density(s: f64) -> f64 {
    let a = s.abs();
    // 2 e^{2s}/(1+e^{2s})^2 = 1/(2 cosh^2 s)
    -std::f64::consts::LN_2 - 2.0 * (a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2)
}

impl SectionSpace {
    /// `log <z^{-i}, z^{-i}>_{ng}` for every basis monomial.
    ///
    /// Monomials are orthogonal for rotation-invariant metrics and volume forms.
    pub fn log_inner_products(&self, tol: f64) -> Result<Vec<f64>, SectionsError> {
        if !(tol > 0.0) {
            return Err(SectionsError::InvalidParameter(format!("tol must be positive, got {tol}")));
        }
        let (lo, hi) = self.profile().span();
        let breaks = self.profile().kink_locations();
        (0..self.dim())
            .map(|k| {
                let psi = |s: f64| 2.0 * self.log_amplitude(k, s) + log_volume_density(s);
                let (peak, top) = golden_max(psi, lo.min(0.0) - 2.0 * TAIL, hi.max(0.0) + 2.0 * TAIL, 1e-10);
                let mut cuts = breaks.clone();
                cuts.push(peak);
                let a = lo.min(peak) - TAIL;
                let b = hi.max(peak) + TAIL;
                let mass = integrate_pieces(|s| (psi(s) - top).exp(), &cuts, a, b, tol)?;
                Ok(top + mass.ln())
            })
            .collect()
    }
}

/// `log dist(V; ng)(s)` for `V` spanned by the basis indices `basis`.
pub(crate) fn log_distortion_at(space: &SectionSpace, basis: &[usize], log_ip: &[f64], s: f64) -> f64 {
    logsumexp(basis.iter().map(|&k| 2.0 * space.log_amplitude(k, s) - log_ip[k]))
}

fn basis_indices(space: &SectionSpace, sub_basis: &[i64]) -> Result<Vec<usize>, SectionsError> {
    sub_basis
        .iter()
        .map(|&i| space.index_of(i).ok_or(SectionsError::ExponentOutOfRange(i)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistortionPoint {
    pub log_r: f64,
    pub dist: f64,
}

/// `dist(V; ng)(r) = sum_i |z^{-i}|^2_{ng}(r) / <z^{-i}, z^{-i}>_{ng}` on a
/// grid of `log r` values, `V` spanned by the monomials in `sub_basis`.
pub fn distortion(
    space: &SectionSpace,
    sub_basis: &[i64],
    grid: &[f64],
    tol: f64,
) -> Result<Vec<DistortionPoint>, SectionsError> {
    let basis = basis_indices(space, sub_basis)?;
    let log_ip = space.log_inner_products(tol)?;
    Ok(grid
        .iter()
        .map(|&s| DistortionPoint {
            log_r: s,
            dist: log_distortion_at(space, &basis, &log_ip, s).exp(),
        })
        .collect())
}

/// Indices of the monomials with `||z^{-i}|| <= 1`; they span the small sections.
pub fn small_monomials(space: &SectionSpace) -> Vec<usize> {
    let eps = 1e-12 * f64::from(space.n()).max(1.0);
    (0..space.dim())
        .filter(|&k| space.log_norms()[k] <= eps)
        .collect()
}

/// `sup_r dist(V; ng)` by a grid over the kinks and centres with golden refinement.
pub(crate) fn sup_log_distortion(space: &SectionSpace, basis: &[usize], log_ip: &[f64]) -> f64 {
    if basis.is_empty() {
        return f64::NEG_INFINITY;
    }
    let (lo, hi) = space.profile().span();
    let (lo, hi) = (lo.min(0.0) - 12.0, hi.max(0.0) + 12.0);
    let steps = ((hi - lo) / 0.02).ceil() as usize;
    let f = |s: f64| log_distortion_at(space, basis, log_ip, s);
    let grid: Vec<(f64, f64)> = (0..=steps)
        .map(|j| {
            let s = lo + (hi - lo) * j as f64 / steps as f64;
            (s, f(s))
        })
        .collect();
    let (j, _) = grid
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |b, (j, g)| if g.1 > b.1 { (j, g.1) } else { b });
    let a = grid[j.saturating_sub(1)].0;
    let b = grid[(j + 1).min(steps)].0;
    golden_max(f, a, b, 1e-10).1.max(grid[j].1)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistGrowthReport {
    /// `(n, D_n)` with `D_n = sup dist(V(nD); ng)`.
    pub sup_dist: Vec<(u32, f64)>,
    /// Smallest `C` with `D_n <= C (n+1)^3` on the computed range.
    pub growth_constant: f64,
    /// Smallest `C` satisfying both the growth bound and the chain inequality.
    pub constant: f64,
    /// Least-squares slope of `log D_n` against `log(n+1)`.
    pub exponent: f64,
    pub chain_pairs: usize,
    pub chain_holds: bool,
}

/// Growth of the distortion of the small-section ring `V(nD)` for `n <= n_max`.
pub fn dist_growth_probe(
    divisor: &ModelDivisor,
    n_max: u32,
    tol: f64,
) -> Result<DistGrowthReport, SectionsError> {
    if n_max == 0 || n_max > 32 {
        return Err(SectionsError::InvalidParameter(format!(
            "n_max must be in 1..=32, got {n_max}"
        )));
    }
    let mut sup_dist = Vec::new();
    for n in 1..=n_max {
        let space = SectionSpace::new(divisor, n)?;
        let basis = small_monomials(&space);
        let log_ip = space.log_inner_products(tol)?;
        sup_dist.push((n, sup_log_distortion(&space, &basis, &log_ip).exp()));
    }
    let d = |n: u32| sup_dist[n as usize - 1].1;
    let cube = |n: u32| f64::from(n + 1).powi(3);
    let growth_constant = (1..=n_max).map(|n| d(n) / cube(n)).fold(0.0, f64::max);
    let mut constant = growth_constant;
    let mut pairs = Vec::new();
    for n in 1..=n_max {
        for m in 1..=n.min(n_max - n) {
            pairs.push((n, m));
            if d(n) > 0.0 && d(m) > 0.0 {
                let need = d(n) * d(m) * cube(n + m) / (cube(n) * cube(m) * d(n + m));
                constant = constant.max(need);
            }
        }
    }
    let chain_holds = constant.is_finite()
        && pairs.iter().all(|&(n, m)| {
            let lhs = d(n) / (constant * cube(n)) * d(m) / (constant * cube(m));
            lhs <= d(n + m) / (constant * cube(n + m)) * (1.0 + 1e-12)
        });
    let pts: Vec<(f64, f64)> = sup_dist
        .iter()
        .filter(|p| p.1 > 0.0)
        .map(|&(n, v)| (f64::from(n + 1).ln(), v.ln()))
        .collect();
    let exponent = slope(&pts);
    Ok(DistGrowthReport {
        chain_pairs: pairs.len(),
        sup_dist,
        growth_constant,
        constant,
        exponent,
        chain_holds,
    })
}

fn slope(pts: &[(f64, f64)]) -> f64 {
    let k = pts.len() as f64;
    if pts.len() < 2 {
        return 0.0;
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GromovReport {
    /// `max ||phi||^2 / ((1 + sum|a_i|)^2 <phi, phi>)` over all samples.
    pub constant: f64,
    /// The same maximum restricted to the random integer sections.
    pub section_constant: f64,
    pub samples: usize,
    /// Draws whose combination had no sections.
    pub skipped: usize,
}

/// Sup-to-`L^2` ratios for random sections of random combinations `sum a_i D_i`.
///
/// For each draw of `a_i` in `[-2, 2]` the ratio is maximised over all
/// sections through `sup dist`, and sampled at `sections` random integer
/// sections, which never exceed it.
pub fn gromov_probe(
    divisors: &[ModelDivisor],
    samples: usize,
    sections: usize,
    seed: u64,
    tol: f64,
) -> Result<GromovReport, SectionsError> {
    if divisors.is_empty() {
        return Err(SectionsError::InvalidParameter("no divisors given".into()));
    }
    for d in divisors {
        d.validate()?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut constant = 0.0f64;
    let mut section_constant = 0.0f64;
    let mut skipped = 0;
    for _ in 0..samples {
        let a: Vec<f64> = divisors.iter().map(|_| rng.gen_range(-2.0..=2.0)).collect();
        let combo = divisors
            .iter()
            .zip(&a)
            .fold(Profile::zero(), |acc, (d, &t)| acc.add(&d.profile().scaled(t)));
        let space = SectionSpace::from_profile(combo, 1)?;
        if space.dim() == 0 {
            skipped += 1;
            continue;
        }
        let weight = (1.0 + a.iter().map(|x| x.abs()).sum::<f64>()).powi(2);
        let log_ip = space.log_inner_products(tol)?;
        let all: Vec<usize> = (0..space.dim()).collect();
        let sup = sup_log_distortion(&space, &all, &log_ip).exp();
        constant = constant.max(sup / weight);
        for _ in 0..sections {
            let s = IntegerSection::new(
                space
                    .exponents()
                    .iter()
                    .map(|&i| (i, rng.gen_range(-3..=3))),
            );
            if s.is_zero() {
                continue;
            }
            let dense = s.dense(&space)?;
            let norm = space.sup_dense(&dense, tol);
            let l2: f64 = dense
                .iter()
                .zip(&log_ip)
                .map(|(c, l)| c * c * l.exp())
                .sum();
            section_constant = section_constant.max(norm * norm / (l2 * weight));
        }
    }
    Ok(GromovReport {
        constant: constant.max(section_constant),
        section_constant,
        samples,
        skipped,
    })
}
