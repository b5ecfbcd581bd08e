use super::error::SectionsError;
use super::space::{IntegerSection, SectionSpace};
use crate::numeric::golden_max;

const GRID_STEP: f64 = 0.05;
const GRID_MARGIN: f64 = 10.0;

impl SectionSpace {
    /// Largest modulus of `sum coeffs[k] z^{-i_k}` on the circle `|z| = e^s`.
    pub(crate) fn circle_max(&self, coeffs: &[f64], s: f64, refine: bool) -> f64 {
        let a: Vec<f64> = coeffs
            .iter()
            .zip(self.amplitudes(s))
            .map(|(c, w)| c * w)
            .collect();
        if refine {
            self.table().abs_max(&a)
        } else {
            self.table().abs_max_sampled(&a)
        }
    }

    /// Sup norm of a dense coefficient vector; `tol` is the relative accuracy
    /// targeted by the radial refinement.
    pub(crate) fn sup_dense(&self, coeffs: &[f64], tol: f64) -> f64 {
        if self.is_piecewise_linear() {
            // Between kinks |s|_g is |polynomial| times |z|^c with c real, so
            // the maximum on each closed annulus sits on a kink circle.
            return self
                .circles()
                .iter()
                .map(|&s| self.circle_max(coeffs, s, true))
                .fold(0.0, f64::max);
        }
        let p = self.profile();
        let mut best = 0.0f64;
        if let Some(k) = self.index_of(p.c0.round() as i64) {
            if (p.c0 - self.exponents()[k] as f64).abs() < 1e-9 {
                best = best.max(coeffs[k].abs() * (-0.5 * p.limit_at_zero()).exp());
            }
        }
        if let Some(k) = self.index_of((-p.cinf).round() as i64) {
            if (p.cinf + self.exponents()[k] as f64).abs() < 1e-9 {
                best = best.max(coeffs[k].abs() * (-0.5 * p.limit_at_infinity()).exp());
            }
        }
        let lo = self.circles().first().copied().unwrap_or(0.0) - GRID_MARGIN;
        let hi = self.circles().last().copied().unwrap_or(0.0) + GRID_MARGIN;
        let steps = ((hi - lo) / GRID_STEP).ceil() as usize;
        let grid: Vec<(f64, f64)> = (0..=steps)
            .map(|j| {
                let s = lo + (hi - lo) * j as f64 / steps as f64;
                (s, self.circle_max(coeffs, s, false))
            })
            .collect();
        let top = grid.iter().map(|g| g.1).fold(0.0, f64::max);
        let s_tol = tol.sqrt().clamp(1e-12, 1e-4);
        for j in 0..grid.len() {
            let v = grid[j].1;
            let left = if j == 0 { 0.0 } else { grid[j - 1].1 };
            let right = grid.get(j + 1).map_or(0.0, |g| g.1);
            if v < left || v < right || v < 0.9 * top {
                continue;
            }
            let a = grid[j.saturating_sub(1)].0;
            let b = grid[(j + 1).min(grid.len() - 1)].0;
            let (_, m) = golden_max(|s| self.circle_max(coeffs, s, true), a, b, s_tol);
            best = best.max(m);
        }
        best.max(top)
    }
}

/// `sup_z |s(z)| exp(-n g(z) / 2)`.
pub fn sup_norm(s: &IntegerSection, space: &SectionSpace, tol: f64) -> Result<f64, SectionsError> {
    if !(tol > 0.0) {
        return Err(SectionsError::InvalidParameter(format!("tol must be positive, got {tol}")));
    }
    if s.is_zero() {
        return Err(SectionsError::ZeroSection);
    }
    let dense = s.dense(space)?;
    Ok(space.sup_dense(&dense, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::p1::ModelDivisor;
    use std::f64::consts::E;

    #[test]
    fn monomials_match_closed_form() {
        let d = ModelDivisor::one_kink(1.0, 1.0, -1.0);
        let sp = SectionSpace::new(&d, 4).unwrap();
        for (k, &i) in sp.exponents().iter().enumerate() {
            let v = sup_norm(&IntegerSection::monomial(i, 1), &sp, 1e-10).unwrap();
            assert!((v / sp.log_norms()[k].exp() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn two_term_section_exceeds_l2_bound() {
        let sp = SectionSpace::new(&ModelDivisor::one_kink(1.0, 1.0, 0.0), 1).unwrap();
        let v = sup_norm(&IntegerSection::new([(0, 1), (1, 1)]), &sp, 1e-10).unwrap();
        assert!(v >= (E.powi(-2) + 1.0).sqrt());
        assert!((v - (1.0 / E + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn smooth_metric_monomials() {
        let sp = SectionSpace::new(&ModelDivisor::admissible(0.5), 3).unwrap();
        for (k, &i) in sp.exponents().iter().enumerate() {
            let v = sup_norm(&IntegerSection::monomial(i, 1), &sp, 1e-12).unwrap();
            assert!((v.ln() - sp.log_norms()[k]).abs() < 1e-9, "{i}");
        }
        assert_eq!(
            sup_norm(&IntegerSection::default(), &sp, 1e-10),
            Err(SectionsError::ZeroSection)
        );
    }
}
