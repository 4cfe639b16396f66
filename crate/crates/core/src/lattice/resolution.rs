use serde::Serialize;

use super::LatticeIndex;
use crate::error::{Error, Result};

/// A maximal chain `L = G_e < … < G_0 = G′` with every step of index `p`,
/// stored bottom-up as lattice indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Resolution {
    pub chain: Vec<usize>,
}

impl Resolution {
    /// The length `e`.
    pub fn length(&self) -> usize {
        self.chain.len() - 1
    }

    pub fn bottom(&self) -> usize {
        self.chain[0]
    }

    pub fn top(&self) -> usize {
        *self.chain.last().expect("chains are nonempty")
    }
}

/// All resolutions from `l` up to `gp`, in lexicographic order of their
/// index sequences.
pub fn resolutions(index: &LatticeIndex, l: usize, gp: usize) -> Result<Vec<Resolution>> {
    if !index.contains(l, gp) {
        return Err(Error::NotASubgroup(format!("{} ⊄ {}", index.get(l), index.get(gp))));
    }
    let mut out = Vec::new();
    let mut chain = vec![l];
    extend(index, gp, &mut chain, &mut out);
    Ok(out)
}

fn extend(index: &LatticeIndex, gp: usize, chain: &mut Vec<usize>, out: &mut Vec<Resolution>) {
    let cur = *chain.last().unwrap();
    if cur == gp {
        out.push(Resolution { chain: chain.clone() });
        return;
    }
    for &next in index.covers_above(cur) {
        if index.contains(next, gp) {
            chain.push(next);
            extend(index, gp, chain, out);
            chain.pop();
        }
    }
}

/// All pairs `(K, N)` with `K/N ≅ C_p^t` for the elementary `target = [p; t]`,
/// `t ∈ {2, 3}`, ordered by `K` then `N`.
pub fn subquotient_pairs(index: &LatticeIndex, target: &[u64]) -> Result<Vec<(usize, usize)>> {
    let p = index.spec().p();
    let t = target.len();
    if !(2..=3).contains(&t) || target.iter().any(|&x| x != p) {
        return Err(Error::UnsupportedTarget(target.to_vec()));
    }
    let step = p.pow(t as u32);
    let mut out = Vec::new();
    for k in 0..index.len() {
        let ok = index.order(k);
        if !ok.is_multiple_of(step) {
            continue;
        }
        let frattini = index.get(k).power(1).join_unchecked(index.bottom());
        for n in index.with_order(ok / step) {
            let ns = index.get(n);
            if frattini.is_subgroup_of(ns) && ns.is_subgroup_of(index.get(k)) {
                out.push((k, n));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn idx(s: &str) -> LatticeIndex {
        LatticeIndex::of_group(&GroupSpec::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn resolution_counts() {
        let c4 = idx("2:[2]");
        assert_eq!(resolutions(&c4, 0, 2).unwrap().len(), 1);
        assert_eq!(resolutions(&c4, 1, 1).unwrap(), vec![Resolution { chain: vec![1] }]);
        assert!(resolutions(&c4, 2, 0).is_err());
        let klein = idx("2:[1,1]");
        let r = resolutions(&klein, 0, 4).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r.windows(2).all(|w| w[0].chain < w[1].chain));
        assert_eq!(idx("3:[1,1]").len(), 6);
        assert_eq!(resolutions(&idx("3:[1,1]"), 0, 5).unwrap().len(), 4);
    }

    #[test]
    fn index_p_squared_dichotomy() {
        for s in ["2:[2,1,1]", "3:[2,1]", "2:[3,1]"] {
            let l = idx(s);
            let p = l.spec().p();
            for a in 0..l.len() {
                for b in 0..l.len() {
                    if !l.contains(a, b) || l.get(b).order() != p * p * l.get(a).order() {
                        continue;
                    }
                    let n = resolutions(&l, a, b).unwrap().len() as u64;
                    let inv = l.quotient_invariants(b, a).unwrap();
                    if inv.len() == 1 {
                        assert_eq!(n, 1);
                    } else {
                        assert_eq!(n, p + 1);
                    }
                }
            }
        }
    }

    /// Every pair with the right quotient, by scanning all pairs.
    fn pair_oracle(l: &LatticeIndex, target: &[u64]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for k in 0..l.len() {
            for n in 0..l.len() {
                if l.contains(n, k) && l.quotient_invariants(k, n).unwrap() == target {
                    out.push((k, n));
                }
            }
        }
        out
    }

    #[test]
    fn subquotient_pair_examples() {
        assert!(subquotient_pairs(&idx("2:[2]"), &[2, 2]).unwrap().is_empty());
        let c23 = idx("2:[1,1,1]");
        assert_eq!(subquotient_pairs(&c23, &[2, 2, 2]).unwrap(), vec![(15, 0)]);
        let pp = subquotient_pairs(&c23, &[2, 2]).unwrap();
        assert_eq!(pp, pair_oracle(&c23, &[2, 2]));
        // 7 quotients of C_2^3 by lines, plus the 7 Klein subgroups over 1.
        assert_eq!(pp.len(), 14);
        assert!(matches!(
            subquotient_pairs(&c23, &[4]),
            Err(Error::UnsupportedTarget(_))
        ));
        for s in ["2:[2,1,1]", "3:[1,1,1]", "2:[2,2]"] {
            let l = idx(s);
            let p = l.spec().p();
            assert_eq!(subquotient_pairs(&l, &[p, p]).unwrap(), pair_oracle(&l, &[p, p]));
            assert_eq!(subquotient_pairs(&l, &[p, p, p]).unwrap(), pair_oracle(&l, &[p, p, p]));
        }
    }
}
