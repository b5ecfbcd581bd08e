//! Radial normal form shared by every divisor family.
//!
//! A rotation-invariant arithmetic divisor `(c0 C_0 + cinf C_inf, g)` is stored
//! through `phi(s) = g(e^s) + 2 c0 s`, `s = log|z|`. `phi` stays bounded as
//! `s -> -inf` and grows like `2 (c0 + cinf) s` as `s -> +inf`.

use crate::numeric::{golden_max, integrate_pieces, QuadratureError};

/// `weight * max(i1 + m1 s, i2 + m2 s)` with `m1 < m2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kink {
    pub weight: f64,
    pub i1: f64,
    pub m1: f64,
    pub i2: f64,
    pub m2: f64,
}

impl Kink {
    pub fn location(&self) -> f64 {
        (self.i1 - self.i2) / (self.m2 - self.m1)
    }

    /// Mass of the curvature atom on the circle `log|z| = location`.
    pub fn mass(&self) -> f64 {
        0.5 * self.weight * (self.m2 - self.m1)
    }

    fn eval(&self, s: f64) -> f64 {
        self.weight * (self.i1 + self.m1 * s).max(self.i2 + self.m2 * s)
    }

    fn slope(&self, s: f64) -> f64 {
        self.weight * if s < self.location() { self.m1 } else { self.m2 }
    }
}

/// `weight * log(e^{2s} + e^{log_lambda})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogSum {
    pub weight: f64,
    pub log_lambda: f64,
}

impl LogSum {
    /// Centre of the smooth curvature density.
    pub fn center(&self) -> f64 {
        0.5 * self.log_lambda
    }

    fn eval(&self, s: f64) -> f64 {
        let (a, b) = (2.0 * s, self.log_lambda);
        let m = a.max(b);
        self.weight * (m + (-(a - b).abs()).exp().ln_1p())
    }

    fn slope(&self, s: f64) -> f64 {
        self.weight * 2.0 * sigmoid(2.0 * s - self.log_lambda)
    }

    /// Curvature density `phi''/2` in the variable `s`.
    pub fn density(&self, s: f64) -> f64 {
        let u = 2.0 * s - self.log_lambda;
        let sg = sigmoid(u);
        2.0 * self.weight * sg * (1.0 - sg)
    }
}

fn sigmoid(u: f64) -> f64 {
    if u >= 0.0 {
        1.0 / (1.0 + (-u).exp())
    } else {
        let e = u.exp();
        e / (1.0 + e)
    }
}

/// Half-width, in `s`, of the window where a smooth density is integrated.
pub const DENSITY_WINDOW: f64 = 40.0;

#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    pub c0: f64,
    pub cinf: f64,
    pub a0: f64,
    pub a1: f64,
    pub kinks: Vec<Kink>,
    pub logsums: Vec<LogSum>,
}

impl Profile {
    pub fn zero() -> Self {
        Self {
            c0: 0.0,
            cinf: 0.0,
            a0: 0.0,
            a1: 0.0,
            kinks: Vec::new(),
            logsums: Vec::new(),
        }
    }

    pub fn with_kink(mut self, weight: f64, (i1, m1): (f64, f64), (i2, m2): (f64, f64)) -> Self {
        if m1 == m2 {
            self.a0 += weight * i1.max(i2);
            self.a1 += weight * m1;
        } else if m1 < m2 {
            self.kinks.push(Kink { weight, i1, m1, i2, m2 });
        } else {
            self.kinks.push(Kink {
                weight,
                i1: i2,
                m1: m2,
                i2: i1,
                m2: m1,
            });
        }
        self
    }

    pub fn with_logsum(mut self, weight: f64, log_lambda: f64) -> Self {
        self.logsums.push(LogSum { weight, log_lambda });
        self
    }

    /// Total degree `c0 + cinf`, also half the slope of `phi` at `+inf`.
    pub fn total_degree(&self) -> f64 {
        self.c0 + self.cinf
    }

    pub fn phi(&self, s: f64) -> f64 {
        self.a0
            + self.a1 * s
            + self.kinks.iter().map(|k| k.eval(s)).sum::<f64>()
            + self.logsums.iter().map(|l| l.eval(s)).sum::<f64>()
    }

    /// Right derivative of `phi`.
    pub fn phi_slope(&self, s: f64) -> f64 {
        self.a1
            + self.kinks.iter().map(|k| k.slope(s)).sum::<f64>()
            + self.logsums.iter().map(|l| l.slope(s)).sum::<f64>()
    }

    /// The Green function at `|z| = e^s`.
    pub fn green(&self, s: f64) -> f64 {
        self.phi(s) - 2.0 * self.c0 * s
    }

    /// `lim phi(s)` as `s -> -inf`.
    pub fn limit_at_zero(&self) -> f64 {
        self.a0
            + self.kinks.iter().map(|k| k.weight * k.i1).sum::<f64>()
            + self.logsums.iter().map(|l| l.weight * l.log_lambda).sum::<f64>()
    }

    /// `lim phi(s) - 2 (c0 + cinf) s` as `s -> +inf`.
    pub fn limit_at_infinity(&self) -> f64 {
        self.a0 + self.kinks.iter().map(|k| k.weight * k.i2).sum::<f64>()
    }

    pub fn kink_locations(&self) -> Vec<f64> {
        self.kinks.iter().map(Kink::location).collect()
    }

    pub fn is_piecewise_linear(&self) -> bool {
        self.logsums.iter().all(|l| l.weight == 0.0)
    }

    /// Every term has non-negative weight, so the curvature measure is positive.
    pub fn has_positive_curvature(&self) -> bool {
        self.kinks.iter().all(|k| k.weight >= 0.0) && self.logsums.iter().all(|l| l.weight >= 0.0)
    }

    /// A window in `s` that contains every kink and every smooth centre.
    pub fn span(&self) -> (f64, f64) {
        let pts = self
            .kink_locations()
            .into_iter()
            .chain(self.logsums.iter().map(LogSum::center));
        let (lo, hi) = pts.fold((0.0f64, 0.0f64), |(lo, hi), p| (lo.min(p), hi.max(p)));
        (lo, hi)
    }

    /// `D + k (z)`; `phi` is unchanged.
    pub fn shifted(&self, k: f64) -> Self {
        let mut p = self.clone();
        p.c0 += k;
        p.cinf -= k;
        p
    }

    pub fn scaled(&self, t: f64) -> Self {
        if t == 0.0 {
            return Self::zero();
        }
        Self {
            c0: t * self.c0,
            cinf: t * self.cinf,
            a0: t * self.a0,
            a1: t * self.a1,
            kinks: self
                .kinks
                .iter()
                .map(|k| Kink {
                    weight: t * k.weight,
                    ..*k
                })
                .collect(),
            logsums: self
                .logsums
                .iter()
                .map(|l| LogSum {
                    weight: t * l.weight,
                    ..*l
                })
                .collect(),
        }
    }

    /// Pull-back under `z -> 1/z`.
    pub fn inverted(&self) -> Self {
        let mut out = Self {
            c0: self.cinf,
            cinf: self.c0,
            a0: self.a0,
            a1: -self.a1 + 2.0 * self.total_degree(),
            kinks: self
                .kinks
                .iter()
                .map(|k| Kink {
                    weight: k.weight,
                    i1: k.i2,
                    m1: -k.m2,
                    i2: k.i1,
                    m2: -k.m1,
                })
                .collect(),
            logsums: Vec::new(),
        };
        for l in &self.logsums {
            // log(e^{-2s} + lambda) = log(lambda) - 2s + log(e^{2s} + 1/lambda)
            out.a0 += l.weight * l.log_lambda;
            out.a1 -= 2.0 * l.weight;
            out.logsums.push(LogSum {
                weight: l.weight,
                log_lambda: -l.log_lambda,
            });
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.c0 += other.c0;
        out.cinf += other.cinf;
        out.a0 += other.a0;
        out.a1 += other.a1;
        out.kinks.extend(other.kinks.iter().copied());
        out.logsums.extend(other.logsums.iter().copied());
        out
    }

    /// `int f dω` over the curvature measure `ω = phi''/2 ds` on `C^*`.
    ///
    /// `breaks` lists the points where `f` fails to be smooth.
    pub fn integrate_curvature<F: Fn(f64) -> f64>(
        &self,
        f: F,
        breaks: &[f64],
        tol: f64,
    ) -> Result<f64, QuadratureError> {
        let mut total: f64 = self
            .kinks
            .iter()
            .filter(|k| k.weight != 0.0)
            .map(|k| k.mass() * f(k.location()))
            .sum();
        let smooth: Vec<&LogSum> = self.logsums.iter().filter(|l| l.weight != 0.0).collect();
        for l in &smooth {
            let c = l.center();
            total += integrate_pieces(
                |s| f(s) * l.density(s),
                breaks,
                c - DENSITY_WINDOW,
                c + DENSITY_WINDOW,
                tol / smooth.len() as f64,
            )?;
        }
        Ok(total)
    }

    /// `max_s [(c0 - i) s - phi(s)/2]`: the log sup-norm of `z^{-i}`.
    ///
    /// Returns `+inf` when `z^{-i}` is not a section.
    pub fn log_monomial_norm(&self, i: f64) -> f64 {
        const EDGE: f64 = 1e-9;
        let mut p = self.c0 - i;
        let mut q = self.cinf + i;
        if p.abs() <= EDGE {
            p = 0.0;
        }
        if q.abs() <= EDGE {
            q = 0.0;
        }
        if p < 0.0 || q < 0.0 {
            return f64::INFINITY;
        }
        let h = |s: f64| p * s - 0.5 * self.phi(s);
        let mut best = f64::NEG_INFINITY;
        if p == 0.0 {
            best = best.max(-0.5 * self.limit_at_zero());
        }
        if q == 0.0 {
            best = best.max(-0.5 * self.limit_at_infinity());
        }
        if self.is_piecewise_linear() {
            for s in self.kink_locations() {
                best = best.max(h(s));
            }
            if self.kinks.is_empty() {
                best = best.max(h(0.0));
            }
            return best;
        }
        let (lo, hi) = self.span();
        let (_, v) = golden_max(h, lo - 80.0, hi + 80.0, 1e-12);
        best.max(v)
    }

    /// Points where `phi` has a kink, together with `s` values bracketing every
    /// smooth bump; used as candidate circles for sup computations.
    pub fn critical_circles(&self) -> Vec<f64> {
        let mut pts = self.kink_locations();
        pts.extend(self.logsums.iter().map(LogSum::center));
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }
}
