//! Exact Gaussian elimination over an ordered field.

use crate::scalar::ExactScalar;

/// Row-echelon reduction in place; returns the pivot columns and the sign of
/// the row permutation applied.
fn eliminate<T: ExactScalar>(m: &mut [Vec<T>], ncols: usize) -> (Vec<usize>, bool) {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut flipped = false;
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        if p != row {
            m.swap(p, row);
            flipped = !flipped;
        }
        let pivot = m[row][col].clone();
        for r in row + 1..nrows {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() / pivot.clone();
            for c in col..m[row].len() {
                let delta = factor.clone() * m[row][c].clone();
                m[r][c] = m[r][c].clone() - delta;
            }
        }
        pivots.push(col);
        row += 1;
    }
    (pivots, flipped)
}

pub fn determinant<T: ExactScalar>(matrix: &[Vec<T>]) -> T {
    let n = matrix.len();
    if n == 0 {
        return T::one();
    }
    let mut m = matrix.to_vec();
    let (pivots, flipped) = eliminate(&mut m, n);
    if pivots.len() < n {
        return T::zero();
    }
    let det = (0..n).fold(T::one(), |acc, i| acc * m[i][i].clone());
    if flipped {
        -det
    } else {
        det
    }
}

pub fn rank<T: ExactScalar>(matrix: &[Vec<T>]) -> usize {
    let ncols = matrix.first().map_or(0, Vec::len);
    let mut m = matrix.to_vec();
    eliminate(&mut m, ncols).0.len()
}

/// Solves `a x = b` for square non-singular `a`; `None` when singular.
pub fn solve<T: ExactScalar>(a: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let n = a.len();
    let mut m: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let (pivots, _) = eliminate(&mut m, n);
    if pivots.len() < n {
        return None;
    }
    let mut x = vec![T::zero(); n];
    for i in (0..n).rev() {
        let mut acc = m[i][n].clone();
        for j in i + 1..n {
            acc = acc - m[i][j].clone() * x[j].clone();
        }
        x[i] = acc / m[i][i].clone();
    }
    Some(x)
}

pub fn mat_mul<T: ExactScalar>(a: &[Vec<T>], b: &[Vec<T>]) -> Vec<Vec<T>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(T::zero(), |acc, k| acc + row[k].clone() * b[k][j].clone())
                })
                .collect()
        })
        .collect()
}

pub fn transpose<T: ExactScalar>(a: &[Vec<T>]) -> Vec<Vec<T>> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn identity<T: ExactScalar>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { T::one() } else { T::zero() })
                .collect()
        })
        .collect()
}
