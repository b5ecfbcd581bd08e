use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("quadrature did not reach tolerance {tol:e} (error estimate {estimate:e})")]
pub struct QuadratureError {
    pub estimate: f64,
    pub tol: f64,
}

const MAX_DEPTH: u32 = 24;
/// Longest interval handed to a single double-exponential rule; its error
/// estimate is unreliable on long stretches of a decaying integrand.
const MAX_WIDTH: f64 = 1.0;

fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> (f64, f64) {
    let out = quadrature::integrate(f, a, b, tol);
    if out.error_estimate <= tol || depth == 0 {
        return (out.integral, out.error_estimate);
    }
    let mid = 0.5 * (a + b);
    let (l, el) = adaptive(f, a, mid, 0.5 * tol, depth - 1);
    let (r, er) = adaptive(f, mid, b, 0.5 * tol, depth - 1);
    (l + r, el + er)
}

/// Integrates `f` over `[lo, hi]`, splitting at every breakpoint inside the
/// interval and bisecting pieces until the absolute tolerance is met.
pub fn integrate_pieces<F: Fn(f64) -> f64>(
    f: F,
    breakpoints: &[f64],
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<f64, QuadratureError> {
    let mut cuts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|&b| b > lo && b < hi)
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut coarse = vec![lo];
    coarse.extend(cuts);
    coarse.push(hi);
    let mut edges = vec![lo];
    for w in coarse.windows(2) {
        let parts = ((w[1] - w[0]) / MAX_WIDTH).ceil().max(1.0) as usize;
        let step = (w[1] - w[0]) / parts as f64;
        edges.extend((1..parts).map(|k| w[0] + step * k as f64));
        edges.push(w[1]);
    }
    let per_piece = tol / (edges.len() - 1) as f64;
    let mut total = 0.0;
    let mut estimate = 0.0;
    for w in edges.windows(2) {
        let (v, e) = adaptive(&f, w[0], w[1], per_piece, MAX_DEPTH);
        total += v;
        estimate += e;
    }
    if estimate > tol || !total.is_finite() {
        return Err(QuadratureError { estimate, tol });
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinked_integrand() {
        let v = integrate_pieces(|x: f64| (-(x.abs()) * 200.0).exp(), &[0.0], -40.0, 40.0, 1e-12)
            .unwrap();
        assert!((v - 0.01).abs() < 1e-12);
    }

    #[test]
    fn smooth_integrand() {
        // int log(1 + 1/u) / (1 + u)^2 du over (0, inf) is 1; with u = e^{2s}.
        let f = |s: f64| {
            let u = (2.0 * s).exp();
            (1.0 + 1.0 / u).ln() / (1.0 + u).powi(2) * 2.0 * u
        };
        let v = integrate_pieces(f, &[], -40.0, 40.0, 1e-11).unwrap();
        assert!((v - 1.0).abs() < 1e-10, "{v}");
    }
}
