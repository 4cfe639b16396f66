use std::collections::HashSet;

use serde::Serialize;

use super::kernel_absolute;
use crate::error::{Error, Result};
use crate::lattice::{subquotient_pairs, GammaLattice, LatticeIndex};
use crate::linalg::{Lattice, SparseVec};

/// Basis rows, in Γ-coordinates, of the relative relations indufted from
/// `K/N ≅ C_p³`.
pub(crate) fn induft_rows(gl: &GammaLattice, k: usize, n: usize) -> Result<Vec<SparseVec>> {
    let gamma = gl.gamma();
    let p = gl.p();
    let found = gamma.quotient_invariants(k, n)?;
    if found != [p, p, p] || !gamma.contains(n, k) {
        return Err(Error::WrongQuotientType {
            expected: vec![p, p, p],
            found,
        });
    }
    let section = LatticeIndex::section(gamma.get(n), gamma.get(k))?;
    let local = kernel_absolute(&section);
    let non_graph: Vec<usize> = (0..section.len())
        .filter(|&i| section.get(i).contains_code(1))
        .collect();
    let col_map: Vec<usize> = section
        .subgroups()
        .iter()
        .map(|s| gamma.index_of(s).expect("section subgroups are Γ-subgroups"))
        .collect();
    Ok(local.zero_on(&non_graph).embed(gamma.len(), &col_map).rows().to_vec())
}

/// `Induf(K(K/N))` intersected with the graph coordinates.
pub fn induft_relative_lattice(gl: &GammaLattice, k: usize, n: usize) -> Result<Lattice> {
    Ok(Lattice::from_rows(gl.gamma().len(), induft_rows(gl, k, n)?))
}

/// One generator of `K′`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InduftGenerator {
    /// Γ-indices of the sub-quotient `K/N ≅ C_p³`.
    pub k: usize,
    pub n: usize,
    pub vector: SparseVec,
}

/// `K′(G, C_p)` with the generators it was summed from.
#[derive(Clone, Debug)]
pub struct KPrime {
    pub lattice: Lattice,
    pub generators: Vec<InduftGenerator>,
    /// Number of `C_p³` sub-quotients of Γ.
    pub pairs: usize,
}

/// Sum of the relative indufted lattices over every `C_p³` sub-quotient of Γ.
pub fn kprime(gl: &GammaLattice) -> Result<KPrime> {
    let p = gl.p();
    let pairs = subquotient_pairs(gl.gamma(), &[p, p, p])?;
    let per_pair: Vec<Vec<InduftGenerator>> = pairs
        .iter()
        .map(|&(k, n)| {
            Ok(induft_rows(gl, k, n)?
                .into_iter()
                .map(|vector| InduftGenerator { k, n, vector })
                .collect())
        })
        .collect::<Result<_>>()?;
    let mut generators: Vec<InduftGenerator> = per_pair.into_iter().flatten().collect();
    // One generator per leading column, the one with the smallest leading
    // entry, goes first; tracked eliminations then stay close to triangular.
    generators.sort_by_cached_key(|g| {
        let (c, a) = g.vector.leading().expect("kernel rows are nonzero");
        (c, a.abs(), g.vector.nnz())
    });
    let mut seen = HashSet::new();
    let (mut firsts, rest): (Vec<_>, Vec<_>) = generators
        .into_iter()
        .partition(|g| seen.insert(g.vector.leading().map(|e| e.0)));
    firsts.extend(rest);
    let generators = firsts;
    let lattice = Lattice::from_rows(gl.gamma().len(), generators.iter().map(|g| g.vector.clone()));
    Ok(KPrime {
        lattice,
        generators,
        pairs: pairs.len(),
    })
}
