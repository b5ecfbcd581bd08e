use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::error::SectionsError;
use super::trig::TrigTable;
use crate::numeric::golden_max;
use crate::p1::{ModelDivisor, Profile};

/// Snap for exponent bounds `-n cinf <= i <= n c0` computed in floating point.
const EXPONENT_EDGE: f64 = 1e-9;

/// Half-width of the radial search window around the monomial maxima.
const RADIAL_MARGIN: f64 = 80.0;

/// `H^0(P^1, nD)` with the monomial basis `z^{-i}` and the sup norms of `n g`.
#[derive(Debug, Clone)]
pub struct SectionSpace {
    divisor: Option<ModelDivisor>,
    n: u32,
    profile: Profile,
    exponents: Vec<i64>,
    log_norms: Vec<f64>,
    circles: Vec<f64>,
    table: TrigTable,
}

impl SectionSpace {
    pub fn new(divisor: &ModelDivisor, n: u32) -> Result<Self, SectionsError> {
        divisor.validate()?;
        let mut space = Self::from_profile(divisor.profile(), n)?;
        space.divisor = Some(divisor.clone());
        Ok(space)
    }

    /// The space of `nD` for a normal form not tied to a [`ModelDivisor`],
    /// such as a combination with negative coefficients.
    pub fn from_profile(base: Profile, n: u32) -> Result<Self, SectionsError> {
        if n == 0 {
            return Err(SectionsError::InvalidParameter("n must be positive".into()));
        }
        let profile = base.scaled(f64::from(n));
        let lo = (-profile.cinf - EXPONENT_EDGE).ceil() as i64;
        let hi = (profile.c0 + EXPONENT_EDGE).floor() as i64;
        let exponents: Vec<i64> = (lo..=hi).collect();
        let log_norms: Vec<f64> = exponents
            .iter()
            .map(|&i| profile.log_monomial_norm(i as f64))
            .collect();
        let circles = if profile.is_piecewise_linear() {
            let mut c = profile.kink_locations();
            c.sort_by(f64::total_cmp);
            c.dedup();
            if c.is_empty() {
                c.push(0.0);
            }
            c
        } else {
            let (a, b) = profile.span();
            let mut c: Vec<f64> = exponents
                .iter()
                .map(|&i| {
                    let p = profile.c0 - i as f64;
                    golden_max(
                        |s| p * s - 0.5 * profile.phi(s),
                        a - RADIAL_MARGIN,
                        b + RADIAL_MARGIN,
                        1e-10,
                    )
                    .0
                })
                .collect();
            c.sort_by(f64::total_cmp);
            c.dedup_by(|x, y| (*x - *y).abs() < 1e-9);
            c
        };
        let table = TrigTable::new(exponents.len().saturating_sub(1));
        Ok(Self {
            divisor: None,
            n,
            profile,
            exponents,
            log_norms,
            circles,
            table,
        })
    }

    pub fn divisor(&self) -> Option<&ModelDivisor> {
        self.divisor.as_ref()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Normal form of `nD`.
    pub fn profile(&self) -> &Profile {
        &self.profile
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn dim(&self) -> usize {
        self.exponents.len()
    }

    /// `log ||z^{-i}||_{ng}`, aligned with [`SectionSpace::exponents`].
    pub fn log_norms(&self) -> &[f64] {
        &self.log_norms
    }

    pub fn index_of(&self, i: i64) -> Option<usize> {
        let first = *self.exponents.first()?;
        let k = i.checked_sub(first)?;
        (k >= 0 && (k as usize) < self.exponents.len()).then_some(k as usize)
    }

    /// Radii `log|z|` where the sup norm is searched first; for piecewise
    /// linear metrics they are the only circles that matter.
    pub fn circles(&self) -> &[f64] {
        &self.circles
    }

    pub fn is_piecewise_linear(&self) -> bool {
        self.profile.is_piecewise_linear()
    }

    /// `log |z^{-i}|_{ng}` on `|z| = e^s`.
    pub fn log_amplitude(&self, k: usize, s: f64) -> f64 {
        (self.profile.c0 - self.exponents[k] as f64) * s - 0.5 * self.profile.phi(s)
    }

    pub(crate) fn amplitudes(&self, s: f64) -> Vec<f64> {
        let half_phi = 0.5 * self.profile.phi(s);
        self.exponents
            .iter()
            .map(|&i| ((self.profile.c0 - i as f64) * s - half_phi).exp())
            .collect()
    }

    pub(crate) fn table(&self) -> &TrigTable {
        &self.table
    }
}

/// `sum c_i z^{-i}` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct IntegerSection {
    coeffs: BTreeMap<i64, i64>,
}

impl IntegerSection {
    pub fn new<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut coeffs = BTreeMap::new();
        for (i, c) in terms {
            *coeffs.entry(i).or_insert(0) += c;
        }
        coeffs.retain(|_, c| *c != 0);
        Self { coeffs }
    }

    pub fn monomial(i: i64, c: i64) -> Self {
        Self::new([(i, c)])
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, i64> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficients in the basis order of `space`.
    pub fn dense(&self, space: &SectionSpace) -> Result<Vec<f64>, SectionsError> {
        let mut out = vec![0.0; space.dim()];
        for (&i, &c) in &self.coeffs {
            let k = space.index_of(i).ok_or(SectionsError::ExponentOutOfRange(i))?;
            out[k] = c as f64;
        }
        Ok(out)
    }
}
