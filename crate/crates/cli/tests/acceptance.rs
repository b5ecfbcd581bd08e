//! One pass/fail line per acceptance criterion.

use std::f64::consts::LN_2;
use std::io::Write;
use std::process::{Command, Stdio};
use std::time::Instant;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zariski::numeric::rationalize;
use zariski::p1::{
    degree_on_curve, negative_part_matrix, pairing, volume_p1, zariski_decompose_p1,
    HorizontalCurve, ModelDivisor, P1Error,
};
use zariski::scalar::format_fraction;
use zariski::sections::{
    asymptotic_multiplicity, dist_growth_probe, distortion, hhat0_bounds, hhat0_exact,
    orthogonality_probe, sigma_decomposition, SectionSpace,
};
use zariski::vector_space::{certify_negative_part, solve_decomposition, DecompositionError};
use zariski::{BigInt, Rational, RationalDecomposition, System, Vector};

type Mat = Vec<Vec<Rational>>;

fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Cofactor expansion; only used on blocks of size at most three.
fn det(m: &Mat) -> Rational {
    match m.len() {
        0 => Rational::one(),
        1 => m[0][0].clone(),
        k => (0..k).fold(Rational::zero(), |acc, j| {
            let minor: Mat = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
                .collect();
            let term = &m[0][j] * det(&minor);
            if j % 2 == 0 {
                acc + term
            } else {
                acc - term
            }
        }),
    }
}

fn mul(a: &Mat, b: &Mat) -> Mat {
    (0..a.len())
        .map(|i| {
            (0..b[0].len())
                .map(|j| (0..b.len()).fold(Rational::zero(), |s, k| s + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

fn apply(q: &Mat, v: &[Rational]) -> Vec<Rational> {
    q.iter()
        .map(|row| row.iter().zip(v).fold(Rational::zero(), |s, (a, b)| s + a * b))
        .collect()
}

fn is_nef(q: &Mat, v: &[Rational]) -> bool {
    apply(q, v).iter().all(|w| !w.is_negative())
}

/// Greatest nef vector below `x` by exhausting supports: on `S = Supp(x - y)`
/// the functionals vanish, so `y_S` solves the block system (Cramer's rule).
fn support_oracle(q: &Mat, x: &[Rational]) -> Option<Vec<Rational>> {
    let n = x.len();
    let mut candidates: Vec<Vec<Rational>> = Vec::new();
    for mask in 0u32..(1 << n) {
        let s: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let block: Mat = s.iter().map(|&i| s.iter().map(|&j| q[i][j].clone()).collect()).collect();
        let d = det(&block);
        if d.is_zero() {
            continue;
        }
        let rhs: Vec<Rational> = s
            .iter()
            .map(|&l| {
                (0..n)
                    .filter(|m| !s.contains(m))
                    .fold(Rational::zero(), |acc, m| acc - &q[l][m] * &x[m])
            })
            .collect();
        let mut y = x.to_vec();
        for (col, &l) in s.iter().enumerate() {
            let mut b = block.clone();
            for (row, r) in b.iter_mut().enumerate() {
                r[col] = rhs[row].clone();
            }
            y[l] = det(&b) / &d;
        }
        if y.iter().zip(x).all(|(a, b)| a <= b) && is_nef(q, &y) {
            candidates.push(y);
        }
    }
    let top: Vec<Rational> = (0..n)
        .map(|i| candidates.iter().map(|c| c[i].clone()).max())
        .collect::<Option<_>>()?;
    assert!(candidates.contains(&top), "the maximum of the candidates is not a candidate");
    Some(top)
}

/// Every nef point of the half-integer grid below `x` lies below `top`.
fn grid_agrees(q: &Mat, x: &[Rational], top: Option<&[Rational]>) -> bool {
    let n = x.len();
    let steps = 7usize;
    (0..steps.pow(n as u32)).all(|code| {
        let v: Vec<Rational> = (0..n)
            .map(|i| &x[i] - rat(((code / steps.pow(i as u32)) % steps) as i64, 2))
            .collect();
        if !is_nef(q, &v) {
            return true;
        }
        top.is_some_and(|t| v.iter().zip(t).all(|(a, b)| a <= b))
    })
}

struct Instance {
    q: Mat,
    x: Vec<Rational>,
    symmetric: bool,
}

fn random_instance(rng: &mut ChaCha8Rng) -> Instance {
    let n = rng.gen_range(1..=3usize);
    let symmetric = rng.gen_bool(0.5);
    let mut q = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if symmetric && j < i {
                q[i][j] = q[j][i].clone();
                continue;
            }
            let den = rng.gen_range(1..=8);
            q[i][j] = if i == j {
                let p = if rng.gen_bool(0.75) { -rng.gen_range(1..=8) } else { rng.gen_range(0..=8) };
                rat(p, den)
            } else {
                rat(rng.gen_range(0..=8), den)
            };
        }
    }
    let x = (0..n)
        .map(|_| rat(rng.gen_range(-8..=8), rng.gen_range(1..=8)))
        .collect();
    Instance { q, x, symmetric }
}

type Verdict = (bool, String);

fn tier_one() -> [Verdict; 3] {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let instances: Vec<Instance> = (0..200).map(|_| random_instance(&mut rng)).collect();
    let mut solved: Vec<(usize, RationalDecomposition)> = Vec::new();
    let mut mismatches = 0;
    for (k, inst) in instances.iter().enumerate() {
        let system = System::from_matrix(inst.q.clone()).unwrap();
        let got = solve_decomposition(&system, &Vector::new(inst.x.clone()));
        let expected = support_oracle(&inst.q, &inst.x);
        let grid_ok = grid_agrees(&inst.q, &inst.x, expected.as_deref());
        let agree = match (&got, &expected) {
            (Ok(d), Some(y)) => d.positive.coords() == y.as_slice(),
            (Err(DecompositionError::NoNefBelow), None) => true,
            _ => false,
        };
        if !(agree && grid_ok) {
            mismatches += 1;
        }
        if let Ok(d) = got {
            solved.push((k, d));
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let c1 = (
        mismatches == 0 && elapsed < 10.0,
        format!("{} systems, {} solved, {mismatches} mismatches, {elapsed:.2} s", instances.len(), solved.len()),
    );

    let mut checked = 0;
    let mut symmetric = 0;
    let mut bad = 0;
    for (k, d) in &solved {
        let Some(cert) = &d.certificate else { continue };
        checked += 1;
        let inst = &instances[*k];
        let block: Mat = cert
            .support
            .iter()
            .map(|&i| cert.support.iter().map(|&j| inst.q[i][j].clone()).collect())
            .collect();
        let m = block.len();
        let product = mul(&mul(&cert.lower, &block), &cert.upper);
        let identity_ok = (0..m).all(|i| {
            (0..m).all(|j| product[i][j] == if i == j { -Rational::one() } else { Rational::zero() })
        });
        let sign = if m % 2 == 0 { det(&block) } else { -det(&block) };
        let mut ok = identity_ok && sign.is_positive() && cert.det_sign_ok;
        if inst.symmetric {
            symmetric += 1;
            let minors_alternate = (1..=m).all(|j| {
                let lead: Mat = block[..j].iter().map(|r| r[..j].to_vec()).collect();
                let v = det(&lead);
                if j % 2 == 0 { v.is_positive() } else { v.is_negative() }
            });
            ok &= minors_alternate && cert.symmetric_negdef == Some(true);
        }
        if !ok {
            bad += 1;
        }
    }
    let c2 = (
        checked > 0 && bad == 0,
        format!("{checked} certificates ({symmetric} symmetric), {bad} failures"),
    );

    let mut ok = true;
    for (k, d) in &solved {
        let inst = &instances[*k];
        let n = inst.x.len();
        let perm: Vec<usize> = (0..n).rev().collect();
        let system = System::from_matrix(inst.q.clone()).unwrap().permuted(&perm);
        let back = solve_decomposition(&system, &Vector::new(inst.x.clone()).permuted(&perm)).unwrap();
        let render = |v: &Vector| v.coords().iter().map(format_fraction).collect::<Vec<_>>().join(",");
        let parse_ok = d
            .positive
            .coords()
            .iter()
            .chain(d.negative.coords())
            .all(|c| format_fraction(c).parse::<Rational>().as_ref() == Ok(c));
        ok &= parse_ok
            && render(&back.positive.unpermuted(&perm)) == render(&d.positive)
            && render(&back.negative.unpermuted(&perm)) == render(&d.negative);
    }
    let c3 = (ok, format!("{} outputs rational and permutation-stable", solved.len()));
    [c1, c2, c3]
}

fn theta() -> Verdict {
    let dec = zariski_decompose_p1(&ModelDivisor::one_kink(1.0, 1.0, -1.0)).unwrap();
    let deg = degree_on_curve(&dec.positive, HorizontalCurve::C0);
    (
        dec.theta == Some(0.5) && deg == 0.0,
        format!("theta = {:?}, deg(P|C0) = {deg}", dec.theta),
    )
}

fn self_intersections() -> Verdict {
    let start = Instant::now();
    let lambdas = [0.25, 0.5, 1.0, 2.0];
    let mut worst: f64 = 0.0;
    for &l in &lambdas {
        let d = ModelDivisor::admissible(l);
        let v = pairing(&d, &d, 1e-11).unwrap();
        worst = worst.max((v - (l.ln() + 1.0) / 2.0).abs());
    }
    let mut asym: f64 = 0.0;
    for &a in &lambdas {
        for &b in &lambdas {
            let (da, db) = (ModelDivisor::admissible(a), ModelDivisor::admissible(b).shifted(1));
            asym = asym.max((pairing(&da, &db, 1e-10).unwrap() - pairing(&db, &da, 1e-10).unwrap()).abs());
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    (
        worst <= 1e-8 && asym <= 2e-8 && elapsed < 5.0,
        format!("max error {worst:.1e}, asymmetry {asym:.1e}, {elapsed:.2} s"),
    )
}

fn volume_identity() -> Verdict {
    let d = ModelDivisor::one_kink(1.0, 1.0, -1.0);
    let vol = volume_p1(&d, 1e-12).unwrap();
    let start = Instant::now();
    let b = hhat0_bounds(&SectionSpace::new(&d, 200).unwrap());
    let bounds_time = start.elapsed().as_secs_f64();
    let half_sq = 200.0 * 200.0 / 2.0;
    let (lo, hi) = (b.log_lower / half_sq, b.log_upper / half_sq);
    let in_band = (0.45..=0.55).contains(&lo) && (0.45..=0.55).contains(&hi);
    let mut sandwich = true;
    for n in 1..=6 {
        let space = SectionSpace::new(&d, n).unwrap();
        let b = hhat0_bounds(&space);
        let c = hhat0_exact(&space, 1e-10, 4).unwrap();
        sandwich &= b.log_lower <= c.log_count && c.log_count <= b.log_upper;
    }
    (
        (vol - 0.5).abs() < 1e-12 && in_band && bounds_time < 1.0 && sandwich,
        format!("vol = {vol}, bounds/(n^2/2) at n = 200 in [{lo:.4}, {hi:.4}] ({bounds_time:.3} s), sandwich n <= 6: {sandwich}"),
    )
}

fn sigma() -> Verdict {
    let d = ModelDivisor::one_kink(1.0, 1.0, -1.0);
    let mut worst: f64 = 0.0;
    for n in 1..=32u32 {
        let s = sigma_decomposition(&d, n, &[], 1e-10).unwrap();
        let expected = f64::from(n - n / 2) / f64::from(n);
        worst = worst.max((s.fixed_c0 - expected).abs()).max(s.fixed_cinf.abs());
    }
    let mu = asymptotic_multiplicity(&d, HorizontalCurve::C0, 32).unwrap().value;
    (
        worst < 1e-12 && (mu - 0.5).abs() <= 1.0 / 32.0,
        format!("max F_n deviation {worst:.1e}, mu_C0 = {mu}"),
    )
}

fn mu_vanishing() -> Verdict {
    let d = ModelDivisor::one_kink(1.0, 1.0, 1.0);
    let mut ok = true;
    for c in [HorizontalCurve::C0, HorizontalCurve::CInf] {
        let r = asymptotic_multiplicity(&d, c, 32).unwrap();
        ok &= r.value == 0.0 && r.sequence.len() == 32 && r.sequence.iter().all(|p| p.1 == 0.0);
    }
    (ok, "mu_C0 = mu_Cinf = 0 at every n <= 32".into())
}

fn orthogonality() -> Verdict {
    let start = Instant::now();
    let d = ModelDivisor::one_kink(1.0, 1.0, -1.0);
    let r = orthogonality_probe(&d, &[4, 8, 16, 32], 0.05).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let first = r.rows.first().unwrap().value;
    let last = r.rows.last().unwrap().value;
    (
        r.non_negative && last < first && r.limit.abs() <= 0.05 && elapsed < 60.0,
        format!("deg(M_4|F_4) = {first:.4}, deg(M_32|F_32) = {last:.4}, limit {:.4}, {elapsed:.2} s", r.limit),
    )
}

fn distortion_laws() -> Verdict {
    let d = ModelDivisor::one_kink(1.0, 1.0, -1.0);
    let n = 4;
    let space = SectionSpace::new(&d, n).unwrap();
    let exps = space.exponents().to_vec();
    let log_ip = space.log_inner_products(1e-12).unwrap();
    let grid: Vec<f64> = (0..100).map(|j| -6.0 + 12.0 * f64::from(j) / 99.0).collect();
    let dist = distortion(&space, &exps, &grid, 1e-12).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut pointwise = true;
    for _ in 0..100 {
        let c: Vec<f64> = exps.iter().map(|_| f64::from(rng.gen_range(-3i32..=3))).collect();
        let norm_sq: f64 = c.iter().zip(&log_ip).map(|(c, l)| c * c * l.exp()).sum();
        for (j, p) in dist.iter().enumerate() {
            let t = std::f64::consts::TAU * (j as f64 * 0.618_033_988_75).fract();
            let (re, im) = (0..exps.len()).fold((0.0, 0.0), |(re, im), k| {
                let a = c[k] * space.log_amplitude(k, p.log_r).exp();
                let angle = k as f64 * t;
                (re + a * angle.cos(), im + a * angle.sin())
            });
            pointwise &= re * re + im * im <= norm_sq * p.dist * (1.0 + 1e-9);
        }
    }

    let lifted = ModelDivisor::one_kink(1.0, 1.5, -0.5);
    let other = SectionSpace::new(&lifted, n).unwrap();
    let dist2 = distortion(&other, &exps, &grid, 1e-12).unwrap();
    let comparison = dist.iter().zip(&dist2).all(|(a, b)| {
        let u = other.profile().phi(a.log_r) - space.profile().phi(a.log_r);
        u >= 0.0 && a.dist <= u.exp() * b.dist * (1.0 + 1e-9)
    });

    let r = dist_growth_probe(&d, 16, 1e-10).unwrap();
    let growth = r
        .sup_dist
        .iter()
        .all(|&(n, v)| v <= r.constant * f64::from(n + 1).powi(3) * (1.0 + 1e-12));
    (
        pointwise && comparison && growth && r.chain_holds && r.constant.is_finite(),
        format!(
            "pointwise {pointwise}, comparison {comparison}, C = {:.4} with chain over {} pairs: {}",
            r.constant, r.chain_pairs, r.chain_holds
        ),
    )
}

fn negative_part() -> Verdict {
    let m = negative_part_matrix(&ModelDivisor::two_kink(0.0, 0.0, -LN_2, -LN_2)).unwrap();
    let close = (m[0][0] + LN_2).abs() <= 1e-10
        && (m[1][1] + LN_2).abs() <= 1e-10
        && m[0][1].abs() <= 1e-10
        && m[1][0].abs() <= 1e-10;
    let q: Mat = m
        .iter()
        .map(|row| row.iter().map(|&v| rationalize(v, 1e-8).unwrap()).collect())
        .collect();
    let shown = format_fraction(&q[0][0]);
    let system = System::from_matrix(q).unwrap();
    let cert = certify_negative_part(&system, &[0, 1]).unwrap();
    (
        close && cert.verify(&system) && cert.det_sign_ok,
        format!("diag({:.12}, {:.12}) -> diag({shown}, ...) certified", m[0][0], m[1][1]),
    )
}

fn nonexistence() -> Verdict {
    let half = (0.5f64).ln();
    let lib = matches!(
        zariski_decompose_p1(&ModelDivisor::one_kink(1.0, half, half)),
        Err(P1Error::NoDecomposition(_))
    );
    let job = format!(
        r#"{{"command":"p1-decompose","payload":{{"family":"one-kink","log_alpha":{half},"log_beta":{half}}}}}"#
    );
    let mut child = Command::new(env!("CARGO_BIN_EXE_zariski"))
        .stdin(Stdio::piped())
        .stdout(Stdio::null())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(job.as_bytes()).unwrap();
    let code = child.wait().unwrap().code();
    (lib && code == Some(3), format!("NoDecomposition: {lib}, exit code {code:?}"))
}

#[test]
fn acceptance() {
    let [c1, c2, c3] = tier_one();
    let verdicts = [
        ("tier-1 oracle equivalence", c1),
        ("certificate soundness", c2),
        ("rationality and permutation invariance", c3),
        ("theta formula", theta()),
        ("self-intersection values", self_intersections()),
        ("volume identity", volume_identity()),
        ("sigma-decomposition", sigma()),
        ("mu vanishing for nef and big", mu_vanishing()),
        ("asymptotic orthogonality", orthogonality()),
        ("distortion laws", distortion_laws()),
        ("cross-module negative part", negative_part()),
        ("nonexistence", nonexistence()),
    ];
    let mut out = std::io::stdout().lock();
    let mut failed = Vec::new();
    for (k, (name, (ok, detail))) in verdicts.iter().enumerate() {
        let tag = if *ok { "PASS" } else { "FAIL" };
        writeln!(out, "criterion {:>2} {tag} {name}: {detail}", k + 1).unwrap();
        if !ok {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
