use std::thread;

use serde::Serialize;

use super::error::SectionsError;
use super::space::SectionSpace;

/// Largest enumeration box accepted by [`hhat0_exact`].
pub const MAX_BOX: f64 = 1e7;

/// Slack for comparisons whose two sides are closed-form values.
const CLOSED_FORM_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SmallSectionCount {
    /// Number of sections with sup norm at most 1, zero included.
    pub count: u64,
    pub log_count: f64,
    /// Size of the coefficient box `|c_i| <= 1/||z^{-i}||`.
    pub box_size: f64,
    /// Leaves of the pruned search that needed a norm test.
    pub tested: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CountBounds {
    pub log_lower: f64,
    pub log_upper: f64,
}

enum Verdict {
    Inside,
    Outside,
    Ambiguous,
}

struct Search<'a> {
    space: &'a SectionSpace,
    tol: f64,
    /// Indices with a non-trivial coefficient range, largest range first.
    order: Vec<usize>,
    radius: Vec<i64>,
    norms: Vec<f64>,
    /// Squared monomial amplitudes on each circle, for the Parseval bound.
    circle_sq: Vec<Vec<f64>>,
}

#[derive(Default, Clone, Copy)]
struct Tally {
    inside: u64,
    ambiguous: u64,
    tested: u64,
}

impl Tally {
    fn add(self, o: Tally) -> Tally {
        Tally {
            inside: self.inside + o.inside,
            ambiguous: self.ambiguous + o.ambiguous,
            tested: self.tested + o.tested,
        }
    }
}

impl Search<'_> {
    fn classify(&self, coeffs: &[f64]) -> Verdict {
        let nonzero: Vec<usize> = (0..coeffs.len()).filter(|&k| coeffs[k] != 0.0).collect();
        if let [k] = nonzero[..] {
            let v = coeffs[k].abs().ln() + self.space.log_norms()[k];
            return if v <= CLOSED_FORM_EPS {
                Verdict::Inside
            } else {
                Verdict::Outside
            };
        }
        let triangle: f64 = nonzero.iter().map(|&k| coeffs[k].abs() * self.norms[k]).sum();
        if triangle <= 1.0 - CLOSED_FORM_EPS {
            return Verdict::Inside;
        }
        for sq in &self.circle_sq {
            let (mut even, mut alt) = (0.0, 0.0);
            for &k in &nonzero {
                let a = coeffs[k] * sq[k].sqrt();
                even += a;
                alt += if k % 2 == 0 { a } else { -a };
            }
            if even.abs().max(alt.abs()) > 1.0 + CLOSED_FORM_EPS {
                return Verdict::Outside;
            }
        }
        let mut tol = self.tol;
        for _ in 0..2 {
            let v = self.space.sup_dense(coeffs, tol);
            if v <= 1.0 - tol {
                return Verdict::Inside;
            }
            if v > 1.0 + tol {
                return Verdict::Outside;
            }
            tol /= 10.0;
        }
        Verdict::Ambiguous
    }

    fn dfs(&self, depth: usize, leading: bool, l2: &mut [f64], coeffs: &mut [f64], t: &mut Tally) {
        if depth == self.order.len() {
            if leading {
                return;
            }
            t.tested += 1;
            match self.classify(coeffs) {
                Verdict::Inside => t.inside += 1,
                Verdict::Outside => {}
                Verdict::Ambiguous => t.ambiguous += 1,
            }
            return;
        }
        let k = self.order[depth];
        for m in 0..=self.radius[k] {
            let signs: &[f64] = if m == 0 {
                &[0.0]
            } else if leading {
                &[1.0]
            } else {
                &[1.0, -1.0]
            };
            let mf = m as f64;
            let over = self
                .circle_sq
                .iter()
                .zip(l2.iter())
                .any(|(sq, acc)| acc + mf * mf * sq[k] > 1.0 + CLOSED_FORM_EPS);
            if over {
                break;
            }
            for (c, acc) in self.circle_sq.iter().zip(l2.iter_mut()) {
                *acc += mf * mf * c[k];
            }
            for &sgn in signs {
                coeffs[k] = sgn * mf;
                self.dfs(depth + 1, leading && m == 0, l2, coeffs, t);
            }
            coeffs[k] = 0.0;
            for (c, acc) in self.circle_sq.iter().zip(l2.iter_mut()) {
                *acc -= mf * mf * c[k];
            }
        }
    }

    /// The subtree with first coordinate magnitude `m`.
    fn branch(&self, m: i64) -> Tally {
        let mut t = Tally::default();
        let mut l2 = vec![0.0; self.circle_sq.len()];
        let mut coeffs = vec![0.0; self.space.dim()];
        let Some(&k) = self.order.first() else {
            return t;
        };
        let mf = m as f64;
        if self
            .circle_sq
            .iter()
            .any(|sq| mf * mf * sq[k] > 1.0 + CLOSED_FORM_EPS)
        {
            return t;
        }
        for (c, acc) in self.circle_sq.iter().zip(l2.iter_mut()) {
            *acc = mf * mf * c[k];
        }
        coeffs[k] = mf;
        self.dfs(1, m == 0, &mut l2, &mut coeffs, &mut t);
        t
    }
}

/// `max(0, floor(e^{-l}))` with room for rounding at integer values.
fn box_radius(log_norm: f64) -> i64 {
    let r = (-log_norm).exp() + 1e-9;
    if r >= i64::MAX as f64 {
        i64::MAX
    } else {
        r.floor() as i64
    }
}

/// Exact count of `{ s in H^0(nD) : ||s||_{ng} <= 1 }` by pruned enumeration
/// of the coefficient box, split over `jobs` threads.
pub fn hhat0_exact(
    space: &SectionSpace,
    tol: f64,
    jobs: usize,
) -> Result<SmallSectionCount, SectionsError> {
    if !(tol > 0.0) {
        return Err(SectionsError::InvalidParameter(format!("tol must be positive, got {tol}")));
    }
    let radius: Vec<i64> = space.log_norms().iter().map(|&l| box_radius(l)).collect();
    let box_size: f64 = radius.iter().map(|&r| 2.0 * r as f64 + 1.0).product();
    if box_size > MAX_BOX {
        return Err(SectionsError::BoxTooLarge { size: box_size });
    }
    let mut order: Vec<usize> = (0..space.dim()).filter(|&k| radius[k] > 0).collect();
    order.sort_by_key(|&k| std::cmp::Reverse(radius[k]));
    let circle_sq = space
        .circles()
        .iter()
        .map(|&s| space.amplitudes(s).iter().map(|a| a * a).collect())
        .collect();
    let search = Search {
        space,
        tol,
        radius: radius.clone(),
        norms: space.log_norms().iter().map(|l| l.exp()).collect(),
        order,
        circle_sq,
    };
    let top = search.order.first().map_or(0, |&k| radius[k]);
    let jobs = jobs.max(1);
    let tally = if jobs == 1 {
        (0..=top).map(|m| search.branch(m)).fold(Tally::default(), Tally::add)
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> = (0..jobs)
                .map(|j| {
                    let search = &search;
                    scope.spawn(move || {
                        (0..=top)
                            .filter(|m| *m as usize % jobs == j)
                            .map(|m| search.branch(m))
                            .fold(Tally::default(), Tally::add)
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("enumeration thread panicked"))
                .fold(Tally::default(), Tally::add)
        })
    };
    if tally.ambiguous > 0 {
        return Err(SectionsError::AmbiguousBoundary {
            count: 2 * tally.ambiguous,
        });
    }
    let count = 1 + 2 * tally.inside;
    Ok(SmallSectionCount {
        count,
        log_count: (count as f64).ln(),
        box_size,
        tested: tally.tested,
    })
}

/// `log(2 floor(e^x) + 1)` without overflow; the large-`x` branch rounds down.
fn log_odd_count(x: f64) -> f64 {
    if x < 0.0 {
        0.0
    } else if x > 40.0 {
        std::f64::consts::LN_2 + x - 1e-12
    } else {
        (2.0 * x.exp().floor() + 1.0).ln()
    }
}

/// Log-domain bounds on `log #{||s|| <= 1}` without enumeration.
///
/// The upper bound is the coefficient box `|c_i| <= e^{-l_i}`. The lower
/// bound is the best box `|c_i| <= e^{-l_i}/k` over the `k` largest ranges,
/// which lies in the unit ball by the triangle inequality.
pub fn hhat0_bounds(space: &SectionSpace) -> CountBounds {
    let log_upper = space
        .log_norms()
        .iter()
        .map(|&l| {
            if l < 0.0 {
                -l + (2.0 + l.exp()).ln()
            } else {
                (2.0 * (-l).exp()).ln_1p()
            }
        })
        .sum();
    let mut ranges: Vec<f64> = space.log_norms().iter().map(|&l| -l).collect();
    ranges.sort_by(|a, b| b.total_cmp(a));
    let mut log_lower = 0.0f64;
    let shrink = (1.0 - CLOSED_FORM_EPS).ln();
    for k in 1..=ranges.len() {
        let lk = (k as f64).ln();
        if ranges[k - 1] - lk < 0.0 {
            break;
        }
        let v: f64 = ranges[..k]
            .iter()
            .map(|&x| log_odd_count(x - lk + shrink))
            .sum();
        log_lower = log_lower.max(v);
    }
    CountBounds {
        log_lower,
        log_upper,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::p1::ModelDivisor;

    #[test]
    fn small_cases() {
        let sp = SectionSpace::new(&ModelDivisor::one_kink(1.0, 1.0, -1.0), 1).unwrap();
        let c = hhat0_exact(&sp, 1e-10, 1).unwrap();
        assert_eq!(c.count, 5);
        let sp = SectionSpace::new(&ModelDivisor::one_kink(1.0, -0.5, -0.1), 3).unwrap();
        assert_eq!(hhat0_exact(&sp, 1e-10, 1).unwrap().count, 1);
        let sp = SectionSpace::new(&ModelDivisor::one_kink(1.0, 0.0, 0.0), 2).unwrap();
        assert_eq!(hhat0_exact(&sp, 1e-10, 1).unwrap().count, 7);
    }

    #[test]
    fn threads_agree() {
        let sp = SectionSpace::new(&ModelDivisor::one_kink(1.0, 1.0, -1.0), 4).unwrap();
        let a = hhat0_exact(&sp, 1e-10, 1).unwrap();
        let b = hhat0_exact(&sp, 1e-10, 3).unwrap();
        assert_eq!(a, b);
        let bounds = hhat0_bounds(&sp);
        assert!(bounds.log_lower <= a.log_count && a.log_count <= bounds.log_upper);
    }

    #[test]
    fn box_limit() {
        let sp = SectionSpace::new(&ModelDivisor::one_kink(1.0, 1.0, -1.0), 12).unwrap();
        assert!(matches!(
            hhat0_exact(&sp, 1e-10, 1),
            Err(SectionsError::BoxTooLarge { .. })
        ));
    }
}
