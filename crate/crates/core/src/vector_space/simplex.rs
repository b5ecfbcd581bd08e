//! Dense two-phase tableau simplex with Bland's rule, exact arithmetic.

use crate::scalar::ExactScalar;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<T> {
    Optimal { point: Vec<T>, value: T },
    Infeasible,
    Unbounded,
}

struct Tableau<T> {
    rows: Vec<Vec<T>>,
    objective: Vec<T>,
    basis: Vec<usize>,
    rhs: usize,
}

impl<T: ExactScalar> Tableau<T> {
    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        for v in self.rows[row].iter_mut() {
            *v = v.clone() / p.clone();
        }
        let pivot_row = self.rows[row].clone();
        for (r, other) in self.rows.iter_mut().enumerate() {
            if r != row {
                eliminate(other, &pivot_row, col);
            }
        }
        eliminate(&mut self.objective, &pivot_row, col);
        self.basis[row] = col;
    }

    /// Runs Bland's rule over the columns `allowed`; `false` when unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        loop {
            let Some(col) = (0..allowed).find(|&j| self.objective[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, T)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = row[self.rhs].clone() / row[col].clone();
                let better = match &best {
                    None => true,
                    Some((br, bv)) => {
                        ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br])
                    }
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, col),
                None => return false,
            }
        }
    }
}

fn eliminate<T: ExactScalar>(target: &mut [T], pivot_row: &[T], col: usize) {
    let factor = target[col].clone();
    if factor.is_zero() {
        return;
    }
    for (t, p) in target.iter_mut().zip(pivot_row) {
        if !p.is_zero() {
            *t = t.clone() - factor.clone() * p.clone();
        }
    }
}

/// Minimizes `c·v` subject to `a v = b`, `v >= 0`.
pub fn minimize<T: ExactScalar>(a: &[Vec<T>], b: &[T], c: &[T]) -> LpOutcome<T> {
    let m = a.len();
    let n = c.len();
    let rhs = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut r: Vec<T> = row
            .iter()
            .map(|v| if flip { -v.clone() } else { v.clone() })
            .collect();
        r.extend((0..m).map(|k| if k == i { T::one() } else { T::zero() }));
        r.push(if flip { -bi.clone() } else { bi.clone() });
        rows.push(r);
    }
    // Phase one: minimize the sum of artificials, reduced costs priced out.
    let mut objective = vec![T::zero(); rhs + 1];
    for r in &rows {
        for j in (0..n).chain(std::iter::once(rhs)) {
            objective[j] = objective[j].clone() - r[j].clone();
        }
    }
    let mut t = Tableau {
        rows,
        objective,
        basis: (n..n + m).collect(),
        rhs,
    };
    t.optimize(n);
    if !t.objective[rhs].is_zero() {
        return LpOutcome::Infeasible;
    }
    // Drive zero-level artificials out of the basis; drop redundant rows.
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] >= n {
            match (0..n).find(|&j| !t.rows[r][j].is_zero()) {
                Some(j) => t.pivot(r, j),
                None => {
                    t.rows.remove(r);
                    t.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }
    let mut objective = vec![T::zero(); rhs + 1];
    objective[..n].clone_from_slice(c);
    for (row, &bv) in t.rows.iter().zip(&t.basis) {
        let cb = c[bv].clone();
        if cb.is_zero() {
            continue;
        }
        for j in (0..n).chain(std::iter::once(rhs)) {
            objective[j] = objective[j].clone() - cb.clone() * row[j].clone();
        }
    }
    t.objective = objective;
    if !t.optimize(n) {
        return LpOutcome::Unbounded;
    }
    let mut point = vec![T::zero(); n];
    for (row, &bv) in t.rows.iter().zip(&t.basis) {
        point[bv] = row[rhs].clone();
    }
    let value = -t.objective[rhs].clone();
    LpOutcome::Optimal { point, value }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn q(n: i64) -> Q {
        Q::from_integer(n)
    }

    #[test]
    fn small_program() {
        // min -x - y  s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
        let a = vec![vec![q(1), q(2), q(1), q(0)], vec![q(3), q(1), q(0), q(1)]];
        let b = vec![q(4), q(6)];
        let c = vec![q(-1), q(-1), q(0), q(0)];
        match minimize(&a, &b, &c) {
            LpOutcome::Optimal { point, value } => {
                assert_eq!(point[0], Q::new(8, 5));
                assert_eq!(point[1], Q::new(6, 5));
                assert_eq!(value, Q::new(-14, 5));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        // x = -1, x >= 0
        assert_eq!(minimize(&[vec![q(1)]], &[q(-1)], &[q(1)]), LpOutcome::Infeasible);
        // min -x s.t. x - s = 1
        assert_eq!(
            minimize(&[vec![q(1), q(-1)]], &[q(1)], &[q(-1), q(0)]),
            LpOutcome::Unbounded
        );
    }

    #[test]
    fn redundant_rows() {
        let a = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        match minimize(&a, &[q(1), q(2)], &[q(1), q(2)]) {
            LpOutcome::Optimal { point, value } => {
                assert_eq!(point, vec![q(1), q(0)]);
                assert_eq!(value, q(1));
            }
            other => panic!("{other:?}"),
        }
    }
}
