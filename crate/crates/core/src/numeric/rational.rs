use num_bigint::BigInt;
use num_rational::BigRational;

/// The first continued-fraction convergent of `x` within `tol`.
///
/// Returns `None` for non-finite input or non-positive `tol`.
pub fn rationalize(x: f64, tol: f64) -> Option<BigRational> {
    if !x.is_finite() || tol <= 0.0 {
        return None;
    }
    if x < 0.0 {
        return rationalize(-x, tol).map(|r| -r);
    }
    let (mut p0, mut q0) = (BigInt::from(0), BigInt::from(1));
    let (mut p1, mut q1) = (BigInt::from(1), BigInt::from(0));
    let mut rest = x;
    for _ in 0..64 {
        let a = rest.floor();
        let ai = BigInt::from(a as i64);
        let p2 = &ai * &p1 + &p0;
        let q2 = &ai * &q1 + &q0;
        let approx = BigRational::new(p2.clone(), q2.clone());
        let value = to_f64(&approx);
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = rest - a;
        if (value - x).abs() <= tol || frac == 0.0 {
            return Some(approx);
        }
        rest = 1.0 / frac;
    }
    Some(BigRational::new(p1, q1))
}

fn to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
