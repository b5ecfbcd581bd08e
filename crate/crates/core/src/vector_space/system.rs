use std::collections::HashSet;

use super::error::SystemError;
use crate::scalar::ExactScalar;

/// A finite system of Zariski decompositions: a basis `e` indexed by labels
/// and functionals `phi` with `phi_l(e_m) >= 0` whenever `l != m`.
///
/// The matrix is stored row-major, `q[l][m] = phi_l(e_m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZariskiSystem<T> {
    labels: Vec<String>,
    q: Vec<Vec<T>>,
}

impl<T: ExactScalar> ZariskiSystem<T> {
    pub fn new(labels: Vec<String>, q: Vec<Vec<T>>) -> Result<Self, SystemError> {
        let n = q.len();
        if n == 0 {
            return Err(SystemError::Empty);
        }
        for (row, entries) in q.iter().enumerate() {
            if entries.len() != n {
                return Err(SystemError::NotSquare {
                    row,
                    len: entries.len(),
                    expected: n,
                });
            }
        }
        if labels.len() != n {
            return Err(SystemError::LabelCount {
                expected: n,
                got: labels.len(),
            });
        }
        let mut seen = HashSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(SystemError::DuplicateLabel(label.clone()));
            }
        }
        for (row, entries) in q.iter().enumerate() {
            for (col, entry) in entries.iter().enumerate() {
                if row != col && entry.is_negative() {
                    return Err(SystemError::OffDiagonalNegative {
                        row,
                        col,
                        row_label: labels[row].clone(),
                        col_label: labels[col].clone(),
                    });
                }
            }
        }
        Ok(Self { labels, q })
    }

    /// Builds a system with the labels `"1"`, `"2"`, ...
    pub fn from_matrix(q: Vec<Vec<T>>) -> Result<Self, SystemError> {
        let labels = (1..=q.len()).map(|i| i.to_string()).collect();
        Self::new(labels, q)
    }

    pub fn dim(&self) -> usize {
        self.q.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn matrix(&self) -> &[Vec<T>] {
        &self.q
    }

    pub fn entry(&self, row: usize, col: usize) -> &T {
        &self.q[row][col]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `(phi_l(v))_l`, evaluated exactly.
    pub fn apply(&self, v: &BasisVector<T>) -> Result<Vec<T>, SystemError> {
        self.check(v)?;
        Ok(self
            .q
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&v.coords)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    /// The square block of `q` on the given indices.
    pub fn restrict(&self, indices: &[usize]) -> Vec<Vec<T>> {
        indices
            .iter()
            .map(|&i| indices.iter().map(|&j| self.q[i][j].clone()).collect())
            .collect()
    }

    /// The system relabelled so that new index `i` is old index `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.dim(), "permutation length");
        Self {
            labels: perm.iter().map(|&i| self.labels[i].clone()).collect(),
            q: perm
                .iter()
                .map(|&i| perm.iter().map(|&j| self.q[i][j].clone()).collect())
                .collect(),
        }
    }

    pub(crate) fn check(&self, v: &BasisVector<T>) -> Result<(), SystemError> {
        if v.coords.len() != self.dim() {
            return Err(SystemError::LabelMismatch(format!(
                "vector has {} coordinates, system has {} labels",
                v.coords.len(),
                self.dim()
            )));
        }
        Ok(())
    }
}

/// Coefficients `x(l; e)` of a vector in the basis of a system, in label order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisVector<T> {
    coords: Vec<T>,
}

impl<T: ExactScalar> BasisVector<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Self { coords }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            coords: vec![T::zero(); n],
        }
    }

    /// Builds a vector from `(label, value)` pairs; labels not mentioned read as zero.
    pub fn from_labeled<'a, I>(system: &ZariskiSystem<T>, pairs: I) -> Result<Self, SystemError>
    where
        I: IntoIterator<Item = (&'a str, T)>,
    {
        let mut coords = vec![T::zero(); system.dim()];
        let mut seen = vec![false; system.dim()];
        for (label, value) in pairs {
            let idx = system
                .index_of(label)
                .ok_or_else(|| SystemError::LabelMismatch(format!("unknown label {label:?}")))?;
            if seen[idx] {
                return Err(SystemError::LabelMismatch(format!(
                    "label {label:?} given twice"
                )));
            }
            seen[idx] = true;
            coords[idx] = value;
        }
        Ok(Self { coords })
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<T> {
        self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn get(&self, index: usize) -> &T {
        &self.coords[index]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// `self <=_e other`, coordinate-wise.
    pub fn le(&self, other: &Self) -> bool {
        self.coords.len() == other.coords.len()
            && self.coords.iter().zip(&other.coords).all(|(a, b)| a <= b)
    }

    /// `Supp(x; e)`.
    pub fn support(&self) -> Vec<usize> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, factor: &T) -> Self {
        Self {
            coords: self.coords.iter().map(|c| c.clone() * factor.clone()).collect(),
        }
    }

    /// The vector re-indexed so that new index `i` holds old index `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self {
            coords: perm.iter().map(|&i| self.coords[i].clone()).collect(),
        }
    }

    /// Inverse of [`BasisVector::permuted`].
    pub fn unpermuted(&self, perm: &[usize]) -> Self {
        let mut coords = vec![T::zero(); self.coords.len()];
        for (new, &old) in perm.iter().enumerate() {
            coords[old] = self.coords[new].clone();
        }
        Self { coords }
    }
}

/// Validates a functional matrix, labelling its rows `"1"`, `"2"`, ...
pub fn validate_system<T: ExactScalar>(q: Vec<Vec<T>>) -> Result<ZariskiSystem<T>, SystemError> {
    ZariskiSystem::from_matrix(q)
}

/// `v` lies in `Nef(phi)`: every functional is non-negative on it.
pub fn is_nef<T: ExactScalar>(
    system: &ZariskiSystem<T>,
    v: &BasisVector<T>,
) -> Result<bool, SystemError> {
    Ok(system.apply(v)?.iter().all(|w| !w.is_negative()))
}

/// Coordinate-wise maximum of a non-empty list of vectors.
pub fn coordinate_max<T: ExactScalar>(
    system: &ZariskiSystem<T>,
    vs: &[BasisVector<T>],
) -> Result<BasisVector<T>, SystemError> {
    let (first, rest) = vs.split_first().ok_or(SystemError::EmptyList)?;
    system.check(first)?;
    let mut out = first.coords.clone();
    for v in rest {
        system.check(v)?;
        for (slot, c) in out.iter_mut().zip(&v.coords) {
            if c > slot {
                *slot = c.clone();
            }
        }
    }
    Ok(BasisVector::new(out))
}
