//! Maxima of `|sum_k a_k e^{-ikt}|` for real `a_k`.

use std::f64::consts::PI;

use crate::numeric::golden_max;

/// Cosine and sine samples on `[0, pi]` for frequencies `0..=degree`.
///
/// Real coefficients make the modulus even in `t`, so half a period suffices.
#[derive(Debug, Clone)]
pub(crate) struct TrigTable {
    degree: usize,
    ts: Vec<f64>,
    cos: Vec<Vec<f64>>,
    sin: Vec<Vec<f64>>,
}

impl TrigTable {
    pub(crate) fn new(degree: usize) -> Self {
        let samples = (16 * degree).max(32);
        let ts: Vec<f64> = (0..=samples).map(|j| PI * j as f64 / samples as f64).collect();
        let cos = ts
            .iter()
            .map(|&t| (0..=degree).map(|k| (k as f64 * t).cos()).collect())
            .collect();
        let sin = ts
            .iter()
            .map(|&t| (0..=degree).map(|k| (k as f64 * t).sin()).collect())
            .collect();
        Self {
            degree,
            ts,
            cos,
            sin,
        }
    }

    fn sample(&self, j: usize, a: &[f64]) -> f64 {
        let (c, s) = (&self.cos[j], &self.sin[j]);
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, &ak) in a.iter().enumerate() {
            if ak != 0.0 {
                re += ak * c[k];
                im += ak * s[k];
            }
        }
        re * re + im * im
    }

    /// `max_t |sum_k a[k] e^{-ikt}|`.
    pub(crate) fn abs_max(&self, a: &[f64]) -> f64 {
        self.max_squared(a, true).sqrt()
    }

    /// Sampled maximum only, a lower bound within a few percent.
    pub(crate) fn abs_max_sampled(&self, a: &[f64]) -> f64 {
        self.max_squared(a, false).sqrt()
    }

    fn max_squared(&self, a: &[f64], refine: bool) -> f64 {
        debug_assert!(a.len() <= self.degree + 1);
        let total: f64 = a.iter().map(|x| x.abs()).sum();
        let mut signs = a.iter().enumerate().filter(|(_, &x)| x != 0.0);
        let Some((k0, &first)) = signs.next() else {
            return 0.0;
        };
        let rest: Vec<(usize, f64)> = signs.map(|(k, &x)| (k, x)).collect();
        if rest.is_empty() {
            return first * first;
        }
        if rest.iter().all(|&(_, x)| (x > 0.0) == (first > 0.0)) {
            return total * total;
        }
        let parity = |k: usize, x: f64| (x > 0.0) == ((k - k0) % 2 == 0);
        if rest.iter().all(|&(k, x)| parity(k, x) == (first > 0.0)) {
            return total * total;
        }

        let values: Vec<f64> = (0..self.ts.len()).map(|j| self.sample(j, a)).collect();
        let best = values.iter().copied().fold(0.0, f64::max);
        if !refine {
            return best;
        }
        let f = |t: f64| {
            let mut re = 0.0;
            let mut im = 0.0;
            for (k, &ak) in a.iter().enumerate() {
                if ak != 0.0 {
                    let (s, c) = (k as f64 * t).sin_cos();
                    re += ak * c;
                    im += ak * s;
                }
            }
            re * re + im * im
        };
        let last = values.len() - 1;
        let mut out = best;
        for j in 0..=last {
            let left = if j == 0 { values[1] } else { values[j - 1] };
            let right = if j == last { values[last - 1] } else { values[j + 1] };
            if values[j] < left || values[j] < right || values[j] < 0.94 * best {
                continue;
            }
            let lo = self.ts[j.saturating_sub(1)];
            let hi = self.ts[(j + 1).min(last)];
            let (_, v) = golden_max(f, lo, hi, 1e-11);
            out = out.max(v);
        }
        out.min(total * total)
    }
}
