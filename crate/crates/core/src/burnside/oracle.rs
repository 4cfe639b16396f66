//! Brute-force orbit decompositions, independent of the closed-form products.

use std::collections::HashSet;

use super::BurnsideElement;
use crate::group::Subgroup;
use crate::lattice::LatticeIndex;
use crate::linalg::Int;

/// Decomposes the product of coset spaces `space_i / stab_i`, acted on
/// diagonally by `acting`, into transitive pieces and records each orbit by
/// its explicitly computed stabilizer in `target`.
pub(crate) fn orbit_decomposition(
    acting: &Subgroup,
    factors: &[(&Subgroup, &Subgroup)],
    target: &LatticeIndex,
) -> BurnsideElement {
    let spec = acting.spec();
    let reps: Vec<Vec<u32>> = factors.iter().map(|(space, stab)| stab.coset_reps_in(space)).collect();
    let mut points: Vec<Vec<u32>> = vec![Vec::new()];
    for r in &reps {
        points = points
            .into_iter()
            .flat_map(|pt| {
                r.iter().map(move |&c| {
                    let mut q = pt.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    let act = |g: u32, pt: &[u32]| -> Vec<u32> {
        pt.iter()
            .zip(factors)
            .map(|(&c, (_, stab))| stab.coset_min(spec.add(g, c)))
            .collect()
    };
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut out = BurnsideElement::zero(target);
    for pt in points {
        if seen.contains(&pt) {
            continue;
        }
        let mut stabilizer = Vec::new();
        for &g in acting.codes() {
            let img = act(g, &pt);
            if img == pt {
                stabilizer.push(g);
            }
            seen.insert(img);
        }
        let j = target
            .index_of_codes(&stabilizer)
            .expect("stabilizers lie in the target lattice");
        out.add_basis(j, &Int::ONE);
    }
    out
}

/// `[T/L] · [T/M]` by decomposing `T/L × T/M` into orbits.
pub fn orbit_oracle_product(idx: &LatticeIndex, i: usize, j: usize) -> BurnsideElement {
    let top = idx.top();
    orbit_decomposition(top, &[(top, idx.get(i)), (top, idx.get(j))], idx)
}

/// `Res_L [T/M]` by decomposing `T/M` into `L`-orbits.
pub fn orbit_oracle_restrict(from: &LatticeIndex, to: &LatticeIndex, i: usize) -> BurnsideElement {
    orbit_decomposition(to.top(), &[(from.top(), from.get(i))], to)
}
