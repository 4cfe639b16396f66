use serde::Serialize;

use super::generators::annihilated;
use super::{Analysis, GeneratorKind, GeneratorRecord, Provenance};
use crate::burnside::{is_relative, BurnsideElement};
use crate::error::{Error, Result};
use crate::linalg::Int;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateTerm {
    pub record: GeneratorRecord,
    pub coefficient: Int,
}

/// A relative relation written as an integer combination of indufted ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub target: BurnsideElement,
    pub terms: Vec<CertificateTerm>,
    /// Indufted generators available, and how many of them the span needed.
    pub generators_available: usize,
    pub generators_essential: usize,
}

impl Certificate {
    /// `Σ coefficient · record`.
    pub fn reexpand(&self) -> Result<BurnsideElement> {
        let mut acc = self.target.scaled(&Int::ZERO);
        for t in &self.terms {
            acc = acc.add(&t.record.element.scaled(&t.coefficient))?;
        }
        Ok(acc)
    }

    pub fn is_valid(&self) -> bool {
        self.reexpand().is_ok_and(|x| x == self.target)
    }
}

/// Writes `x ∈ K(G, C_p)` over the generators of `K′`.
pub fn decompose_relation(an: &Analysis, x: &BurnsideElement) -> Result<Certificate> {
    let gl = an.gamma_lattice();
    let gamma = gl.gamma();
    x.check(gamma)?;
    if !is_relative(gl, x) {
        return Err(Error::NotARelation("the element has non-graph terms".into()));
    }
    let v = x.to_sparse();
    if !annihilated(an.f_matrix(), &v) {
        return Err(Error::NotARelation("the element has nonzero linearization".into()));
    }
    let kp = an.kprime()?;
    let solver = an.solver()?;
    let combo = solver.solve(&v).ok_or_else(|| {
        Error::NoCertificate(format!(
            "{} is outside the span of {} indufted generators from {} sub-quotients",
            serde_json::to_string(x).unwrap_or_default(),
            kp.generators.len(),
            kp.pairs
        ))
    })?;
    let terms = combo
        .entries()
        .iter()
        .map(|(i, c)| {
            let g = &kp.generators[*i];
            Ok(CertificateTerm {
                record: GeneratorRecord {
                    kind: GeneratorKind::Induft,
                    provenance: Provenance::Pair { k: g.k, n: g.n },
                    element: BurnsideElement::from_sparse(gamma, &g.vector)?,
                },
                coefficient: c.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let cert = Certificate {
        target: x.clone(),
        terms,
        generators_available: solver.generator_count(),
        generators_essential: solver.essential().len(),
    };
    if !cert.is_valid() {
        return Err(Error::NoCertificate(
            "the solved combination does not re-expand to the target".into(),
        ));
    }
    Ok(cert)
}
