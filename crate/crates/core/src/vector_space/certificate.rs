//! Triangular certificates that the negative part of a decomposition is
//! genuinely negative: `A Q' B = -I` with `A`, `B` triangular and non-negative.

use super::error::CertificateError;
use super::linalg::{determinant, mat_mul, rank, transpose};
use super::system::ZariskiSystem;
use crate::scalar::ExactScalar;

#[derive(Debug, Clone, PartialEq)]
pub struct NegativityCertificate<T> {
    /// Indices of the support, in system order.
    pub support: Vec<usize>,
    /// Lower-triangular `A`.
    pub lower: Vec<Vec<T>>,
    /// Upper-triangular `B`.
    pub upper: Vec<Vec<T>>,
    /// Positive pivots `d_k` of the reduction; `B = (diag(d) A)^t` when `Q'` is symmetric.
    pub pivots: Vec<T>,
    pub det_sign_ok: bool,
    /// Leading principal minors alternate in sign; only reported for symmetric `Q'`.
    pub symmetric_negdef: Option<bool>,
}

impl<T: ExactScalar> NegativityCertificate<T> {
    /// Re-checks every claim of the certificate by exact arithmetic.
    pub fn verify(&self, system: &ZariskiSystem<T>) -> bool {
        let k = self.support.len();
        if self.support.iter().any(|&i| i >= system.dim()) {
            return false;
        }
        let q = system.restrict(&self.support);
        let a = &self.lower;
        let b = &self.upper;
        if a.len() != k || b.len() != k || a.iter().chain(b).any(|r| r.len() != k) {
            return false;
        }
        for i in 0..k {
            for j in 0..k {
                if a[i][j].is_negative() || b[i][j].is_negative() {
                    return false;
                }
                if (j > i && !a[i][j].is_zero()) || (j < i && !b[i][j].is_zero()) {
                    return false;
                }
            }
        }
        if !determinant(a).is_positive() || !determinant(b).is_positive() {
            return false;
        }
        let product = mat_mul(&mat_mul(a, &q), b);
        let minus_identity = (0..k).all(|i| {
            (0..k).all(|j| {
                let expected = if i == j { -T::one() } else { T::zero() };
                product[i][j] == expected
            })
        });
        if !minus_identity || self.det_sign_ok != det_sign(&q) {
            return false;
        }
        if is_symmetric(&q) {
            let scaled: Vec<Vec<T>> = a
                .iter()
                .zip(&self.pivots)
                .map(|(row, d)| row.iter().map(|v| v.clone() * d.clone()).collect())
                .collect();
            transpose(&scaled) == *b && self.symmetric_negdef == Some(negative_definite(&q))
        } else {
            self.symmetric_negdef.is_none()
        }
    }
}

fn is_symmetric<T: ExactScalar>(q: &[Vec<T>]) -> bool {
    (0..q.len()).all(|i| (0..i).all(|j| q[i][j] == q[j][i]))
}

fn det_sign<T: ExactScalar>(q: &[Vec<T>]) -> bool {
    let det = determinant(q);
    if q.len() % 2 == 0 {
        det.is_positive()
    } else {
        det.is_negative()
    }
}

/// Leading principal minors alternate in sign, starting negative.
fn negative_definite<T: ExactScalar>(q: &[Vec<T>]) -> bool {
    (1..=q.len()).all(|k| {
        let minor: Vec<Vec<T>> = q[..k].iter().map(|r| r[..k].to_vec()).collect();
        let d = determinant(&minor);
        if k % 2 == 0 {
            d.is_positive()
        } else {
            d.is_negative()
        }
    })
}

/// Unscaled pivot reduction: returns `(A_u, B_u, d)` with `A_u Q B_u = -diag(d)`.
fn reduce<T: ExactScalar>(
    q: &[Vec<T>],
    step: usize,
) -> Result<(Vec<Vec<T>>, Vec<Vec<T>>, Vec<T>), CertificateError> {
    let n = q.len();
    let q11 = q[0][0].clone();
    if !q11.is_negative() {
        return Err(CertificateError::SingularReduction { step });
    }
    let mut a1 = vec![vec![T::zero(); n]; n];
    let mut b1 = vec![vec![T::zero(); n]; n];
    a1[0][0] = T::one();
    b1[0][0] = T::one();
    for i in 1..n {
        a1[i][0] = q[i][0].clone();
        a1[i][i] = -q11.clone();
        b1[0][i] = q[0][i].clone();
        b1[i][i] = -q11.clone();
    }
    if n == 1 {
        return Ok((a1, b1, vec![-q11]));
    }
    let reduced: Vec<Vec<T>> = (1..n)
        .map(|i| {
            (1..n)
                .map(|j| {
                    q11.clone() * q11.clone() * q[i][j].clone()
                        - q11.clone() * q[i][0].clone() * q[0][j].clone()
                })
                .collect()
        })
        .collect();
    let (a_inner, b_inner, d_inner) = reduce(&reduced, step + 1)?;
    let embed = |inner: &[Vec<T>]| -> Vec<Vec<T>> {
        let mut m = vec![vec![T::zero(); n]; n];
        m[0][0] = T::one();
        for i in 1..n {
            for j in 1..n {
                m[i][j] = inner[i - 1][j - 1].clone();
            }
        }
        m
    };
    let a = mat_mul(&embed(&a_inner), &a1);
    let b = mat_mul(&b1, &embed(&b_inner));
    let mut d = vec![-q11];
    d.extend(d_inner);
    Ok((a, b, d))
}

/// Builds the certificate for the support block `Q'` of `system`.
pub fn certify_negative_part<T: ExactScalar>(
    system: &ZariskiSystem<T>,
    support: &[usize],
) -> Result<NegativityCertificate<T>, CertificateError> {
    if support.is_empty() {
        return Err(CertificateError::EmptySupport);
    }
    let mut support = support.to_vec();
    support.sort_unstable();
    support.dedup();
    if let Some(&bad) = support.iter().find(|&&i| i >= system.dim()) {
        return Err(CertificateError::SupportOutOfRange(bad));
    }
    let q = system.restrict(&support);
    for (k, &idx) in support.iter().enumerate() {
        if !q[k][k].is_negative() {
            return Err(CertificateError::NonNegativeDiagonal {
                index: idx,
                label: system.labels()[idx].clone(),
            });
        }
    }
    let (a_u, b_u, pivots) = reduce(&q, 0)?;
    let lower = a_u
        .into_iter()
        .zip(&pivots)
        .map(|(row, d)| row.into_iter().map(|v| v / d.clone()).collect())
        .collect();
    let symmetric_negdef = is_symmetric(&q).then(|| negative_definite(&q));
    Ok(NegativityCertificate {
        support,
        lower,
        upper: b_u,
        pivots,
        det_sign_ok: det_sign(&q),
        symmetric_negdef,
    })
}

/// The columns of `Q` indexed by `support` are linearly independent.
pub fn independence_check<T: ExactScalar>(system: &ZariskiSystem<T>, support: &[usize]) -> bool {
    let mut cols = support.to_vec();
    cols.sort_unstable();
    cols.dedup();
    if cols.iter().any(|&i| i >= system.dim()) {
        return false;
    }
    let columns: Vec<Vec<T>> = cols
        .iter()
        .map(|&j| system.matrix().iter().map(|row| row[j].clone()).collect())
        .collect();
    rank(&columns) == cols.len()
}
