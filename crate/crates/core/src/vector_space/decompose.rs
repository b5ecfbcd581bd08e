use super::certificate::{certify_negative_part, NegativityCertificate};
use super::error::DecompositionError;
use super::linalg::solve;
use super::simplex::{minimize, LpOutcome};
use super::system::{is_nef, BasisVector, ZariskiSystem};
use crate::scalar::ExactScalar;

/// `x = y + z` with `y` the greatest nef vector below `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition<T> {
    pub positive: BasisVector<T>,
    pub negative: BasisVector<T>,
    /// `Supp(z)`, as indices into the system labels.
    pub support: Vec<usize>,
    /// `None` exactly when `z = 0`.
    pub certificate: Option<NegativityCertificate<T>>,
}

impl<T: ExactScalar> Decomposition<T> {
    /// Checks the decomposition conditions and the attached certificate.
    pub fn check(&self, system: &ZariskiSystem<T>, x: &BasisVector<T>) -> Result<(), String> {
        if self.positive.add(&self.negative) != *x {
            return Err("positive + negative differs from the input".into());
        }
        if self.negative.coords().iter().any(|c| c.is_negative()) {
            return Err("negative part has a negative coordinate".into());
        }
        let qy = system.apply(&self.positive).map_err(|e| e.to_string())?;
        if qy.iter().any(|w| w.is_negative()) {
            return Err("positive part is not nef".into());
        }
        if let Some(&bad) = self.support.iter().find(|&&l| !qy[l].is_zero()) {
            return Err(format!(
                "functional {} does not vanish on the positive part",
                system.labels()[bad]
            ));
        }
        if self.support != self.negative.support() {
            return Err("support does not match the negative part".into());
        }
        match &self.certificate {
            None if self.support.is_empty() => Ok(()),
            Some(c) if c.support == self.support && c.verify(system) => Ok(()),
            _ => Err("negativity certificate is missing or invalid".into()),
        }
    }
}

fn assemble<T: ExactScalar>(
    system: &ZariskiSystem<T>,
    x: &BasisVector<T>,
    positive: BasisVector<T>,
) -> Result<Decomposition<T>, DecompositionError> {
    let negative = x.sub(&positive);
    let support = negative.support();
    let certificate = if support.is_empty() {
        None
    } else {
        Some(
            certify_negative_part(system, &support)
                .map_err(|e| DecompositionError::CertificateFailure(e.to_string()))?,
        )
    };
    let d = Decomposition {
        positive,
        negative,
        support,
        certificate,
    };
    d.check(system, x)
        .map_err(DecompositionError::CertificateFailure)?;
    Ok(d)
}

/// The Zariski decomposition of `x`, by an exact linear program.
///
/// With `s = x - y` the program is `min sum(s)` over `Q s <= Q x`, `s >= 0`.
pub fn solve_decomposition<T: ExactScalar>(
    system: &ZariskiSystem<T>,
    x: &BasisVector<T>,
) -> Result<Decomposition<T>, DecompositionError> {
    let qx = system.apply(x)?;
    if qx.iter().all(|w| !w.is_negative()) {
        return assemble(system, x, x.clone());
    }
    let n = system.dim();
    let rows: Vec<Vec<T>> = system
        .matrix()
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|k| if k == i { T::one() } else { T::zero() }));
            r
        })
        .collect();
    let mut cost = vec![T::one(); n];
    cost.extend(vec![T::zero(); n]);
    match minimize(&rows, &qx, &cost) {
        LpOutcome::Optimal { point, .. } => {
            let s = BasisVector::new(point[..n].to_vec());
            assemble(system, x, x.sub(&s))
        }
        LpOutcome::Infeasible => Err(DecompositionError::NoNefBelow),
        LpOutcome::Unbounded => Err(DecompositionError::CertificateFailure(
            "linear program reported unbounded".into(),
        )),
    }
}

/// Independent solver: clip violated coordinates, then solve the active
/// block `Q_SS y_S = -Q_{S,S^c} x_{S^c}` exactly until nothing is violated.
pub fn clip_decomposition<T: ExactScalar>(
    system: &ZariskiSystem<T>,
    x: &BasisVector<T>,
) -> Result<Decomposition<T>, DecompositionError> {
    let n = system.dim();
    let mut active = vec![false; n];
    let mut y = x.clone();
    loop {
        let qy = system.apply(&y)?;
        let violated: Vec<usize> = (0..n).filter(|&l| qy[l].is_negative()).collect();
        if violated.is_empty() {
            break;
        }
        for &l in &violated {
            if active[l] || !system.entry(l, l).is_negative() {
                return Err(DecompositionError::NoNefBelow);
            }
            active[l] = true;
        }
        let s: Vec<usize> = (0..n).filter(|&l| active[l]).collect();
        let block = system.restrict(&s);
        let rhs: Vec<T> = s
            .iter()
            .map(|&l| {
                (0..n).filter(|&m| !active[m]).fold(T::zero(), |acc, m| {
                    acc - system.entry(l, m).clone() * x.get(m).clone()
                })
            })
            .collect();
        let ys = solve(&block, &rhs).ok_or(DecompositionError::NoNefBelow)?;
        let mut coords = x.coords().to_vec();
        for (&l, v) in s.iter().zip(ys) {
            if v > *x.get(l) {
                return Err(DecompositionError::NoNefBelow);
            }
            coords[l] = v;
        }
        y = BasisVector::new(coords);
    }
    debug_assert!(is_nef(system, &y).unwrap_or(false));
    assemble(system, x, y)
}
