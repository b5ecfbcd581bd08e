use num_rational::BigRational;
use serde::de::DeserializeOwned;
use serde_json::{json, Map, Value};

use zariski::p1::{
    degree_on_curve, pairing, volume_estimate, volume_p1, zariski_decompose_p1, HorizontalCurve,
    ModelDivisor, P1Error,
};
use zariski::scalar::format_fraction;
use zariski::sections::{
    asymptotic_multiplicity, dist_growth_probe, distortion, gromov_probe, hhat0_bounds,
    hhat0_exact, orthogonality_probe, sigma_decomposition, small_monomials, SectionSpace,
    SectionsError, MAX_BOX,
};
use zariski::vector_space::{
    certify_negative_part, independence_check, solve_decomposition, BasisVector, ZariskiSystem,
};
use zariski::Rational;

use crate::error::CliError;
use crate::job::Command;
use crate::render::{real, Artifact};

pub struct Context {
    pub tol: f64,
    pub jobs: usize,
}

/// The payload object, consumed key by key so that leftovers can be rejected.
struct Payload(Map<String, Value>);

impl Payload {
    fn new(v: Value) -> Result<Self, CliError> {
        match v {
            Value::Object(m) => Ok(Self(m)),
            other => Err(CliError::Malformed(format!("payload must be an object, got {other}"))),
        }
    }

    fn take<T: DeserializeOwned>(&mut self, key: &str) -> Result<Option<T>, CliError> {
        self.0
            .remove(key)
            .map(|v| serde_json::from_value(v).map_err(|e| CliError::Malformed(format!("{key}: {e}"))))
            .transpose()
    }

    fn require<T: DeserializeOwned>(&mut self, key: &str) -> Result<T, CliError> {
        self.take(key)?
            .ok_or_else(|| CliError::Malformed(format!("missing field {key:?}")))
    }

    fn finish(self) -> Result<(), CliError> {
        match self.0.keys().next() {
            Some(k) => Err(CliError::Malformed(format!("unknown field {k:?}"))),
            None => Ok(()),
        }
    }

    /// The remaining keys as a divisor, with the optional `shift` and then
    /// `scale` modifiers applied.
    fn divisor(mut self) -> Result<ModelDivisor, CliError> {
        let shift: Option<i64> = self.take("shift")?;
        let scale: Option<f64> = self.take("scale")?;
        let mut d: ModelDivisor = serde_json::from_value(Value::Object(self.0))
            .map_err(|e| CliError::Malformed(format!("divisor: {e}")))?;
        if let Some(k) = shift {
            d = d.shifted(k);
        }
        if let Some(t) = scale {
            d = d.scaled(t);
        }
        d.validate()?;
        Ok(d)
    }
}

fn divisor_value(v: Value) -> Result<ModelDivisor, CliError> {
    Payload::new(v)?.divisor()
}

fn rational(v: &Value) -> Result<Rational, CliError> {
    match v {
        Value::String(s) => s
            .trim()
            .parse::<BigRational>()
            .map_err(|_| CliError::Malformed(format!("not a rational: {s:?}"))),
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rational::from_integer(i.into()))
            .ok_or_else(|| CliError::Malformed(format!("non-integer number {n}; write rationals as \"p/q\""))),
        other => Err(CliError::Malformed(format!("not a rational: {other}"))),
    }
}

fn system(p: &mut Payload) -> Result<ZariskiSystem<Rational>, CliError> {
    let q: Vec<Vec<Value>> = p.require("q")?;
    let q = q
        .iter()
        .map(|row| row.iter().map(rational).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    let labels: Option<Vec<String>> = p.take("labels")?;
    Ok(match labels {
        Some(l) => ZariskiSystem::new(l, q)?,
        None => ZariskiSystem::from_matrix(q)?,
    })
}

fn vector(p: &mut Payload, key: &str) -> Result<BasisVector<Rational>, CliError> {
    let x: Vec<Value> = p.require(key)?;
    Ok(BasisVector::new(x.iter().map(rational).collect::<Result<_, _>>()?))
}

fn fractions(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_fraction).collect()
}

/// Support given by index or by label.
fn support(sys: &ZariskiSystem<Rational>, items: &[Value]) -> Result<Vec<usize>, CliError> {
    let mut out: Vec<usize> = items
        .iter()
        .map(|v| match v {
            Value::Number(n) => n
                .as_u64()
                .map(|i| i as usize)
                .ok_or_else(|| CliError::Malformed(format!("bad index {n}"))),
            Value::String(s) => sys
                .index_of(s)
                .ok_or_else(|| CliError::Malformed(format!("unknown label {s:?}"))),
            other => Err(CliError::Malformed(format!("bad support entry {other}"))),
        })
        .collect::<Result<_, _>>()?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn key_values(json: Value, pairs: Vec<(&str, String)>) -> Artifact {
    Artifact::new(
        json,
        &["quantity", "value"],
        pairs.into_iter().map(|(k, v)| vec![k.to_string(), v]).collect(),
    )
}

fn opt_real(x: Option<f64>) -> String {
    x.map_or_else(|| "-".into(), real)
}

pub fn run(command: Command, payload: Value, ctx: &Context) -> Result<Artifact, CliError> {
    let p = Payload::new(payload)?;
    match command {
        Command::Solve => solve(p),
        Command::Certify => certify(p),
        Command::P1Decompose => p1_decompose(p),
        Command::P1Degree => p1_degree(p),
        Command::P1Pair => p1_pair(p, ctx),
        Command::P1Vol => p1_vol(p, ctx),
        Command::SectionsCount => sections_count(p, ctx),
        Command::SectionsSigma => sections_sigma(p, ctx),
        Command::ProbeDist => probe_dist(p, ctx),
        Command::ProbeGromov => probe_gromov(p, ctx),
        Command::ProbeOrth => probe_orth(p),
    }
}

fn solve(mut p: Payload) -> Result<Artifact, CliError> {
    let sys = system(&mut p)?;
    let x = vector(&mut p, "x")?;
    p.finish()?;
    let d = solve_decomposition(&sys, &x)?;
    let y = fractions(d.positive.coords());
    let z = fractions(d.negative.coords());
    let rows = sys
        .labels()
        .iter()
        .enumerate()
        .map(|(k, l)| {
            let mark = if d.support.contains(&k) { "*" } else { "" };
            vec![l.clone(), y[k].clone(), z[k].clone(), mark.to_string()]
        })
        .collect();
    let json = json!({ "y": y, "z": z, "support": d.support });
    Ok(Artifact::new(json, &["label", "y", "z", "support"], rows))
}

fn certify(mut p: Payload) -> Result<Artifact, CliError> {
    let sys = system(&mut p)?;
    let given: Option<Vec<Value>> = p.take("support")?;
    let supp = match given {
        Some(items) => {
            if p.0.contains_key("x") {
                return Err(CliError::Malformed("give either support or x, not both".into()));
            }
            support(&sys, &items)?
        }
        None => {
            let x = vector(&mut p, "x")?;
            solve_decomposition(&sys, &x)?.support
        }
    };
    p.finish()?;
    if supp.is_empty() {
        let json = json!({ "support": [], "certificate": null });
        return Ok(key_values(json, vec![("support", "empty".into())]));
    }
    let cert = certify_negative_part(&sys, &supp)?;
    let verified = cert.verify(&sys);
    let independent = independence_check(&sys, &supp);
    let matrix = |m: &[Vec<Rational>]| m.iter().map(|r| fractions(r)).collect::<Vec<_>>();
    let labels: Vec<&str> = supp.iter().map(|&k| sys.labels()[k].as_str()).collect();
    let json = json!({
        "support": supp,
        "labels": labels,
        "pivots": fractions(&cert.pivots),
        "lower": matrix(&cert.lower),
        "upper": matrix(&cert.upper),
        "det_sign_ok": cert.det_sign_ok,
        "symmetric_negdef": cert.symmetric_negdef,
        "independent": independent,
        "verified": verified,
    });
    let mut rows: Vec<(&str, String)> = vec![("support", labels.join(" "))];
    rows.push(("pivots", fractions(&cert.pivots).join(" ")));
    rows.push(("det_sign_ok", cert.det_sign_ok.to_string()));
    rows.push((
        "symmetric_negdef",
        cert.symmetric_negdef.map_or("-".into(), |b| b.to_string()),
    ));
    rows.push(("independent", independent.to_string()));
    rows.push(("verified", verified.to_string()));
    Ok(key_values(json, rows))
}

fn p1_decompose(p: Payload) -> Result<Artifact, CliError> {
    let d = p.divisor()?;
    let dec = zariski_decompose_p1(&d)?;
    let deg0 = degree_on_curve(&dec.positive, HorizontalCurve::C0);
    let deginf = degree_on_curve(&dec.positive, HorizontalCurve::CInf);
    let json = json!({
        "theta": dec.theta,
        "theta_inf": dec.theta_inf,
        "negative": { "C0": dec.negative_c0, "Cinf": dec.negative_cinf },
        "positive": dec.positive,
        "positive_degree": { "C0": deg0, "Cinf": deginf },
    });
    let rows = vec![
        ("theta", opt_real(dec.theta)),
        ("theta_inf", opt_real(dec.theta_inf)),
        ("negative C0", real(dec.negative_c0)),
        ("negative Cinf", real(dec.negative_cinf)),
        ("deg(P|C0)", real(deg0)),
        ("deg(P|Cinf)", real(deginf)),
    ];
    Ok(key_values(json, rows))
}

fn p1_degree(mut p: Payload) -> Result<Artifact, CliError> {
    let one: Option<HorizontalCurve> = p.take("curve")?;
    let many: Option<Vec<HorizontalCurve>> = p.take("curves")?;
    let d = p.divisor()?;
    let curves = match (one, many) {
        (Some(c), None) => vec![c],
        (None, Some(cs)) => cs,
        (None, None) => vec![HorizontalCurve::C0, HorizontalCurve::CInf],
        (Some(_), Some(_)) => {
            return Err(CliError::Malformed("give either curve or curves".into()))
        }
    };
    let degs: Vec<(HorizontalCurve, f64)> =
        curves.into_iter().map(|c| (c, degree_on_curve(&d, c))).collect();
    let json = json!({
        "degrees": degs
            .iter()
            .map(|(c, v)| json!({ "curve": c.to_string(), "degree": v }))
            .collect::<Vec<_>>()
    });
    let rows = degs.iter().map(|(c, v)| vec![c.to_string(), real(*v)]).collect();
    Ok(Artifact::new(json, &["curve", "degree"], rows))
}

fn p1_pair(mut p: Payload, ctx: &Context) -> Result<Artifact, CliError> {
    let d1 = divisor_value(p.require("d1")?)?;
    let d2 = divisor_value(p.require("d2")?)?;
    p.finish()?;
    let v = pairing(&d1, &d2, ctx.tol)?;
    Ok(key_values(json!({ "pairing": v }), vec![("pairing", real(v))]))
}

fn p1_vol(p: Payload, ctx: &Context) -> Result<Artifact, CliError> {
    let d = p.divisor()?;
    let (volume, source) = match volume_p1(&d, ctx.tol) {
        Ok(v) => (v, "positive-part"),
        Err(P1Error::NotComputed(_)) => (volume_estimate(&d.profile(), ctx.tol)?, "monomial-norms"),
        Err(e) => return Err(e.into()),
    };
    let json = json!({ "volume": volume, "source": source });
    Ok(key_values(json, vec![("volume", real(volume)), ("source", source.into())]))
}

fn levels(p: &mut Payload) -> Result<Vec<u32>, CliError> {
    let n: Option<u32> = p.take("n")?;
    let list: Option<Vec<u32>> = p.take("n_list")?;
    match (n, list) {
        (Some(n), None) => Ok(vec![n]),
        (None, Some(l)) if !l.is_empty() => Ok(l),
        _ => Err(CliError::Malformed("give exactly one of n or a non-empty n_list".into())),
    }
}

fn sections_count(mut p: Payload, ctx: &Context) -> Result<Artifact, CliError> {
    let ns = levels(&mut p)?;
    let exact: Option<bool> = p.take("exact")?;
    let d = p.divisor()?;
    let mut out = Vec::new();
    let mut rows = Vec::new();
    for n in ns {
        let space = SectionSpace::new(&d, n)?;
        let b = hhat0_bounds(&space);
        let count = match exact {
            Some(false) => None,
            Some(true) => Some(hhat0_exact(&space, ctx.tol, ctx.jobs)?),
            None => match hhat0_exact(&space, ctx.tol, ctx.jobs) {
                Ok(c) => Some(c),
                Err(SectionsError::BoxTooLarge { .. }) => None,
                Err(e) => return Err(e.into()),
            },
        };
        out.push(json!({
            "n": n,
            "log_count": count.map(|c| c.log_count),
            "count": count.map(|c| c.count),
            "lower": b.log_lower,
            "upper": b.log_upper,
        }));
        rows.push(vec![
            n.to_string(),
            opt_real(count.map(|c| c.log_count)),
            real(b.log_lower),
            real(b.log_upper),
        ]);
    }
    let json = json!({ "levels": out, "max_box": MAX_BOX });
    Ok(Artifact::new(json, &["n", "log_count", "lower", "upper"], rows))
}

fn sections_sigma(mut p: Payload, ctx: &Context) -> Result<Artifact, CliError> {
    let ns = levels(&mut p)?;
    let grid: Option<Vec<f64>> = p.take("grid")?;
    let n_max: Option<u32> = p.take("n_max")?;
    let d = p.divisor()?;
    let grid = grid.unwrap_or_default();
    let mut out = Vec::new();
    let mut rows = Vec::new();
    for n in ns {
        let s = sigma_decomposition(&d, n, &grid, ctx.tol)?;
        rows.push(vec![
            n.to_string(),
            real(s.fixed_c0),
            real(s.fixed_cinf),
            real(s.movable_c0),
            real(s.movable_cinf),
        ]);
        out.push(json!({
            "n": n,
            "fixed": { "C0": s.fixed_c0, "Cinf": s.fixed_cinf },
            "movable": { "C0": s.movable_c0, "Cinf": s.movable_cinf },
            "small_exponents": s.small_exponents,
            "green": s.green,
        }));
    }
    let mut json = json!({ "levels": out });
    if let Some(m) = n_max {
        let mu0 = asymptotic_multiplicity(&d, HorizontalCurve::C0, m)?;
        let muinf = asymptotic_multiplicity(&d, HorizontalCurve::CInf, m)?;
        json["mu"] = json!({ "n_max": m, "C0": mu0.value, "Cinf": muinf.value });
    }
    Ok(Artifact::new(
        json,
        &["n", "fixed_C0", "fixed_Cinf", "movable_C0", "movable_Cinf"],
        rows,
    ))
}

fn probe_dist(mut p: Payload, ctx: &Context) -> Result<Artifact, CliError> {
    let grid: Option<Vec<f64>> = p.take("grid")?;
    if let Some(grid) = grid {
        let n: u32 = p.require("n")?;
        let sub: Option<Vec<i64>> = p.take("sub_basis")?;
        let d = p.divisor()?;
        let space = SectionSpace::new(&d, n)?;
        let sub = sub.unwrap_or_else(|| {
            small_monomials(&space)
                .into_iter()
                .map(|k| space.exponents()[k])
                .collect()
        });
        let table = distortion(&space, &sub, &grid, ctx.tol)?;
        let rows = table.iter().map(|t| vec![real(t.log_r), real(t.dist)]).collect();
        let json = json!({ "n": n, "sub_basis": sub, "table": table });
        return Ok(Artifact::new(json, &["log_r", "dist"], rows));
    }
    let n_max: u32 = p.require("n_max")?;
    let d = p.divisor()?;
    let r = dist_growth_probe(&d, n_max, ctx.tol)?;
    let rows = r.sup_dist.iter().map(|(n, v)| vec![n.to_string(), real(*v)]).collect();
    Ok(Artifact::new(serde_json::to_value(&r).expect("serializable"), &["n", "sup_dist"], rows))
}

fn probe_gromov(mut p: Payload, ctx: &Context) -> Result<Artifact, CliError> {
    let divisors: Vec<Value> = p.require("divisors")?;
    let samples: usize = p.take("samples")?.unwrap_or(100);
    let sections: usize = p.take("sections")?.unwrap_or(3);
    let seed: u64 = p.take("seed")?.unwrap_or(0);
    p.finish()?;
    let divisors = divisors
        .into_iter()
        .map(divisor_value)
        .collect::<Result<Vec<_>, _>>()?;
    let r = gromov_probe(&divisors, samples, sections, seed, ctx.tol)?;
    let rows = vec![
        ("constant", real(r.constant)),
        ("section_constant", real(r.section_constant)),
        ("samples", r.samples.to_string()),
        ("skipped", r.skipped.to_string()),
    ];
    Ok(key_values(serde_json::to_value(&r).expect("serializable"), rows))
}

fn probe_orth(mut p: Payload) -> Result<Artifact, CliError> {
    let ns: Vec<u32> = p.require("n_list")?;
    let limit_tol: f64 = p.take("limit_tol")?.unwrap_or(0.05);
    let d = p.divisor()?;
    let r = orthogonality_probe(&d, &ns, limit_tol)?;
    let rows = r.rows.iter().map(|row| vec![row.n.to_string(), real(row.value)]).collect();
    Ok(Artifact::new(serde_json::to_value(&r).expect("serializable"), &["n", "deg_M_F"], rows))
}
