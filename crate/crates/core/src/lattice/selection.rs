use serde::Serialize;

use super::GammaLattice;
use crate::group::{homomorphisms, GraphDescriptor};

/// Which `L′` to pick among the admissible ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChoicePolicy {
    First,
    Last,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectionCase {
    /// `(G′×C_p, L′×C_p)` with `G′/L′ ≅ C_p×C_p`.
    FullFiber,
    /// `(G′×λ, L′×λ)`, `λ` surjective.
    Surjective,
    /// `(G′×ε, L′×ε)`.
    Trivial,
    /// `(G′×C_p, L′×ε)` with `G′/L′ ≅ C_p`.
    Cyclic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelectionPair {
    /// Γ-index of `K`.
    pub k: usize,
    /// Γ-index of `N′`.
    pub n: usize,
    pub case: SelectionCase,
    /// G-indices of `G′` and `L′`.
    pub g_prime: usize,
    pub l_prime: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelectionList {
    pub policy: ChoicePolicy,
    pub pairs: Vec<SelectionPair>,
}

impl SelectionList {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs whose `K` is a graph subgroup.
    pub fn graph_pairs(&self) -> impl Iterator<Item = &SelectionPair> {
        self.pairs
            .iter()
            .filter(|s| matches!(s.case, SelectionCase::Surjective | SelectionCase::Trivial))
    }
}

/// One pair `(K, N′)` with `K/N′ ≅ C_p×C_p` for every non-cyclic `K ≤ Γ`.
pub fn build_selection_list(gl: &GammaLattice, policy: ChoicePolicy) -> SelectionList {
    let gi = gl.g_index();
    let p = gl.p();
    let mut pairs = Vec::new();
    for gp in 1..gi.len() {
        let order = gi.order(gp);
        let pick = |quot: u64, want: &[u64]| {
            let mut cands = gi
                .with_order(order / quot)
                .filter(|&l| gi.contains(l, gp))
                .filter(|&l| gi.quotient_invariants(gp, l).expect("l ⊆ gp") == want);
            match policy {
                ChoicePolicy::First => cands.next(),
                ChoicePolicy::Last => cands.next_back(),
            }
        };
        let gsub = gi.get(gp);
        if let Some(lp) = order.is_multiple_of(p * p).then(|| pick(p * p, &[p, p])).flatten() {
            let lsub = gi.get(lp);
            let graph_pair = |d: &GraphDescriptor| {
                let r = d.restrict(lsub).expect("L′ ≤ G′");
                (gl.graph_index(d).expect("same G"), gl.graph_index(&r).expect("same G"))
            };
            pairs.push(SelectionPair {
                k: gl.full_fiber(gp),
                n: gl.full_fiber(lp),
                case: SelectionCase::FullFiber,
                g_prime: gp,
                l_prime: lp,
            });
            for lambda in homomorphisms(gsub).iter().filter(|h| h.is_surjective()) {
                let (k, n) = graph_pair(lambda);
                pairs.push(SelectionPair {
                    k,
                    n,
                    case: SelectionCase::Surjective,
                    g_prime: gp,
                    l_prime: lp,
                });
            }
            pairs.push(SelectionPair {
                k: gl.flat(gp),
                n: gl.flat(lp),
                case: SelectionCase::Trivial,
                g_prime: gp,
                l_prime: lp,
            });
        } else {
            let lp = pick(p, &[p]).expect("nontrivial p-groups have maximal subgroups");
            pairs.push(SelectionPair {
                k: gl.full_fiber(gp),
                n: gl.flat(lp),
                case: SelectionCase::Cyclic,
                g_prime: gp,
                l_prime: lp,
            });
        }
    }
    SelectionList { policy, pairs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn gl(s: &str) -> GammaLattice {
        GammaLattice::new(&GroupSpec::parse(s).unwrap()).unwrap()
    }

    fn check(gl: &GammaLattice, list: &SelectionList) {
        let gamma = gl.gamma();
        let p = gl.p();
        let mut ks: Vec<usize> = list.pairs.iter().map(|s| s.k).collect();
        ks.sort_unstable();
        let before = ks.len();
        ks.dedup();
        assert_eq!(ks.len(), before, "some K repeats");
        let noncyclic: Vec<usize> = (0..gamma.len()).filter(|&i| !gamma.is_cyclic(i)).collect();
        assert_eq!(ks, noncyclic);
        for s in &list.pairs {
            assert_eq!(gamma.quotient_invariants(s.k, s.n).unwrap(), vec![p, p]);
        }
        let non_graph = list.pairs.iter().filter(|s| !gl.is_graph(s.k)).count();
        assert_eq!(non_graph, gl.g_index().len() - 1);
        assert_eq!(list.graph_pairs().count(), list.len() - non_graph);
    }

    #[test]
    fn klein_list() {
        let g = gl("2:[1,1]");
        let list = build_selection_list(&g, ChoicePolicy::First);
        assert_eq!(list.len(), 8);
        assert_eq!(list.pairs.iter().filter(|s| s.g_prime == 4).count(), 5);
        assert_eq!(list.pairs.iter().filter(|s| !g.is_graph(s.k)).count(), 4);
        check(&g, &list);
    }

    #[test]
    fn cyclic_list() {
        let g = gl("2:[2]");
        let list = build_selection_list(&g, ChoicePolicy::First);
        assert_eq!(list.len(), 2);
        assert!(list.pairs.iter().all(|s| s.case == SelectionCase::Cyclic));
        check(&g, &list);
    }

    #[test]
    fn both_policies_cover_every_noncyclic_subgroup() {
        for s in ["2:[2,1]", "2:[1,1,1]", "3:[1,1]", "2:[2,2]", "3:[2,1]"] {
            let g = gl(s);
            let first = build_selection_list(&g, ChoicePolicy::First);
            let last = build_selection_list(&g, ChoicePolicy::Last);
            check(&g, &first);
            check(&g, &last);
            assert_eq!(first.len(), last.len());
        }
    }
}
