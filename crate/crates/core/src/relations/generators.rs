use std::collections::BTreeMap;

use serde::Serialize;

use crate::burnside::BurnsideElement;
use crate::error::{Error, Result};
use crate::group::{homomorphisms, GraphDescriptor};
use crate::lattice::{subquotient_pairs, GammaLattice, LatticeIndex};
use crate::linalg::{Int, IntMatrix, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    Theta,
    Type1,
    Type2,
    Type3,
    Induft,
}

/// The subgroups a generator was built from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Provenance {
    /// Section indices of a sub-quotient `K/N`.
    Pair { k: usize, n: usize },
    /// G-indices of `G′ ⊇ L` and the Γ-index of the graph carrying the twist
    /// (`G′×α` for the first family, `C×β` for the second).
    Twisted { g_prime: usize, sub: usize, graph: usize },
    /// G-indices of `G′ ⊇ L`.
    Untwisted { g_prime: usize, sub: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorRecord {
    pub kind: GeneratorKind,
    pub provenance: Provenance,
    pub element: BurnsideElement,
}

/// Subgroups strictly between `N` and `K` when `K/N ≅ C_p×C_p`.
pub(crate) fn intermediates(index: &LatticeIndex, k: usize, n: usize) -> Vec<usize> {
    index
        .covers_above(n)
        .iter()
        .copied()
        .filter(|&c| index.contains(c, k))
        .collect()
}

/// `N − Σ C′ + pK` without checking the quotient type.
pub(crate) fn theta_vector(index: &LatticeIndex, k: usize, n: usize) -> SparseVec {
    let p = Int::from(index.spec().p());
    let mut terms = vec![(n, Int::ONE), (k, p)];
    terms.extend(intermediates(index, k, n).into_iter().map(|c| (c, Int::from(-1))));
    SparseVec::from_pairs(terms)
}

/// `Induf(Θ_{K/N}) = N − Σ_{C′} C′ + pK` for `K/N ≅ C_p×C_p`.
pub fn theta_induft(index: &LatticeIndex, k: usize, n: usize) -> Result<GeneratorRecord> {
    let p = index.spec().p();
    let found = if index.contains(n, k) {
        index.quotient_invariants(k, n)?
    } else {
        return Err(Error::NotASubgroup(format!("{} ⊄ {}", index.get(n), index.get(k))));
    };
    if found != [p, p] {
        return Err(Error::WrongQuotientType {
            expected: vec![p, p],
            found,
        });
    }
    Ok(GeneratorRecord {
        kind: GeneratorKind::Theta,
        provenance: Provenance::Pair { k, n },
        element: BurnsideElement::from_sparse(index, &theta_vector(index, k, n))?,
    })
}

/// `A_{G′,L,α} = L×α − Σ C′×α + p·G′×α`.
pub fn type1(gl: &GammaLattice, g_prime: usize, l: usize, alpha: &GraphDescriptor) -> Result<GeneratorRecord> {
    let gamma = gl.gamma();
    let k = gl.graph_index(alpha)?;
    let n = gl.graph_index(&alpha.restrict(gl.g_subgroup(l))?)?;
    let mut rec = theta_induft(gamma, k, n)?;
    rec.kind = GeneratorKind::Type1;
    rec.provenance = Provenance::Twisted {
        g_prime,
        sub: l,
        graph: k,
    };
    Ok(rec)
}

/// `D_{G′,L} = L×C_p − Σ C′×C_p + p·G′×C_p`.
pub fn type3(gl: &GammaLattice, g_prime: usize, l: usize) -> Result<GeneratorRecord> {
    let mut rec = theta_induft(gl.gamma(), gl.full_fiber(g_prime), gl.full_fiber(l))?;
    rec.kind = GeneratorKind::Type3;
    rec.provenance = Provenance::Untwisted { g_prime, sub: l };
    Ok(rec)
}

/// Every `B_{G′,C,β}` for one index-`p` pair `C < G′`, keyed by `β`.
fn type2_family(gl: &GammaLattice, g_prime: usize, c: usize) -> Result<Vec<GeneratorRecord>> {
    let gamma = gl.gamma();
    let csub = gl.g_subgroup(c);
    let mut ext: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for alpha in homomorphisms(gl.g_subgroup(g_prime)) {
        let beta = gl.graph_index(&alpha.restrict(csub)?)?;
        ext.entry(beta).or_default().push(gl.graph_index(&alpha)?);
    }
    let p = gl.p() as i64;
    ext.into_iter()
        .map(|(beta, lifts)| {
            let mut terms = vec![(beta, 1), (gl.full_fiber(c), -1), (gl.full_fiber(g_prime), p)];
            terms.extend(lifts.into_iter().map(|a| (a, -1)));
            Ok(GeneratorRecord {
                kind: GeneratorKind::Type2,
                provenance: Provenance::Twisted {
                    g_prime,
                    sub: c,
                    graph: beta,
                },
                element: BurnsideElement::from_terms(gamma, terms)?,
            })
        })
        .collect()
}

/// `B_{G′,C,β}` for `C < G′` of index `p` and `β: C → C_p` trivial on `pG′`.
pub fn type2(gl: &GammaLattice, g_prime: usize, c: usize, beta: &GraphDescriptor) -> Result<GeneratorRecord> {
    if !gl.g_index().covers_above(c).contains(&g_prime) {
        return Err(Error::WrongQuotientType {
            expected: vec![gl.p()],
            found: gl.g_index().quotient_invariants(g_prime, c).unwrap_or_default(),
        });
    }
    let want = gl.graph_index(beta)?;
    type2_family(gl, g_prime, c)?
        .into_iter()
        .find(|r| matches!(r.provenance, Provenance::Twisted { graph, .. } if graph == want))
        .ok_or_else(|| {
            Error::Validation(format!(
                "β does not extend from {} to {}",
                beta.domain,
                gl.g_subgroup(g_prime)
            ))
        })
}

/// Whether `f(x) = 0`.
pub(crate) fn annihilated(f: &IntMatrix, x: &SparseVec) -> bool {
    f.left_mul_sparse(x).is_zero()
}

/// All three families, each record checked against the linearization map.
pub fn classified_generators(gl: &GammaLattice, f: &IntMatrix) -> Result<Vec<GeneratorRecord>> {
    let gi = gl.g_index();
    let p = gl.p();
    let pairs = subquotient_pairs(gi, &[p, p])?;
    let mut out = Vec::new();
    for &(gp, l) in &pairs {
        for alpha in homomorphisms(gi.get(gp)) {
            out.push(type1(gl, gp, l, &alpha)?);
        }
    }
    for c in 0..gi.len() {
        for &gp in gi.covers_above(c) {
            out.extend(type2_family(gl, gp, c)?);
        }
    }
    for &(gp, l) in &pairs {
        out.push(type3(gl, gp, l)?);
    }
    let bad: Vec<String> = out
        .iter()
        .filter(|r| {
            !annihilated(f, &r.element.to_sparse())
                || (r.kind == GeneratorKind::Type1 && !r.element.support().into_iter().all(|i| gl.is_graph(i)))
        })
        .map(|r| format!("{:?} {:?} is not a relative relation", r.kind, r.provenance))
        .collect();
    if !bad.is_empty() {
        return Err(Error::VerificationFailure(bad));
    }
    Ok(out)
}
