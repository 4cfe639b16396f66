use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{GroupElement, GroupSpec};
use crate::error::{Error, Result};

/// A subgroup, stored as its full sorted element set together with a
/// minimal generating list. Ordered by `(order, element list)`.
#[derive(Clone)]
pub struct Subgroup {
    spec: GroupSpec,
    elements: Vec<u32>,
    generators: Vec<u32>,
    bits: Vec<u64>,
}

pub(crate) fn bitset(order: u32, codes: &[u32]) -> Vec<u64> {
    let mut bits = vec![0u64; (order as usize).div_ceil(64)];
    for &c in codes {
        bits[c as usize / 64] |= 1 << (c % 64);
    }
    bits
}

fn has(bits: &[u64], c: u32) -> bool {
    bits[c as usize / 64] >> (c % 64) & 1 == 1
}

/// Extends the subgroup `set` (with membership `bits`) by `g`.
fn adjoin(spec: &GroupSpec, set: &mut Vec<u32>, bits: &mut [u64], g: u32) {
    if has(bits, g) {
        return;
    }
    let base = set.clone();
    let mut shift = g;
    while !has(bits, shift) {
        for &h in &base {
            let x = spec.add(h, shift);
            bits[x as usize / 64] |= 1 << (x % 64);
            set.push(x);
        }
        shift = spec.add(shift, g);
    }
}

impl Subgroup {
    /// Wraps a sorted element set that is known to be a subgroup.
    pub(crate) fn from_sorted_set(spec: &GroupSpec, elements: Vec<u32>) -> Subgroup {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        let bits = bitset(spec.order, &elements);
        let generators = minimal_generators(spec, &elements, &bits);
        Subgroup {
            spec: spec.clone(),
            elements,
            generators,
            bits,
        }
    }

    pub(crate) fn from_codes(spec: &GroupSpec, gens: &[u32]) -> Subgroup {
        let mut set = vec![0u32];
        let mut bits = bitset(spec.order, &set);
        for &g in gens {
            adjoin(spec, &mut set, &mut bits, g);
        }
        set.sort_unstable();
        Self::from_sorted_set(spec, set)
    }

    pub fn trivial(spec: &GroupSpec) -> Subgroup {
        Self::from_sorted_set(spec, vec![0])
    }

    pub fn whole(spec: &GroupSpec) -> Subgroup {
        Self::from_sorted_set(spec, (0..spec.order).collect())
    }

    /// Smallest subgroup containing `gens`.
    pub fn from_generators(spec: &GroupSpec, gens: &[GroupElement]) -> Result<Subgroup> {
        let codes = gens
            .iter()
            .map(|g| spec.element(g.residues()).map(|e| spec.encode(&e)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_codes(spec, &codes))
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn codes(&self) -> &[u32] {
        &self.elements
    }

    pub fn generator_codes(&self) -> &[u32] {
        &self.generators
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        self.elements.iter().map(|&c| self.spec.decode(c)).collect()
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        self.generators.iter().map(|&c| self.spec.decode(c)).collect()
    }

    pub(crate) fn contains_code(&self, c: u32) -> bool {
        has(&self.bits, c)
    }

    pub fn contains(&self, e: &GroupElement) -> bool {
        self.spec.element(e.residues()).is_ok() && self.contains_code(self.spec.encode(e))
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.spec == other.spec
            && self.elements.len() <= other.elements.len()
            && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// `[other : self]` when `self ≤ other`.
    pub fn index_in(&self, other: &Subgroup) -> Option<u64> {
        self.is_subgroup_of(other).then(|| other.order() / self.order())
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn exponent(&self) -> u64 {
        self.elements
            .iter()
            .map(|&c| self.spec.element_order(c))
            .max()
            .unwrap_or(1)
    }

    pub fn is_cyclic(&self) -> bool {
        self.exponent() == self.order()
    }

    /// `{p^k · x : x ∈ self}`.
    pub fn power(&self, k: u32) -> Subgroup {
        let m = self.spec.p.pow(k);
        let mut set: Vec<u32> = self.elements.iter().map(|&c| self.spec.mul(m, c)).collect();
        set.sort_unstable();
        set.dedup();
        Self::from_sorted_set(&self.spec, set)
    }

    pub(crate) fn meet_unchecked(&self, other: &Subgroup) -> Subgroup {
        let set: Vec<u32> = self
            .elements
            .iter()
            .copied()
            .filter(|&c| other.contains_code(c))
            .collect();
        Self::from_sorted_set(&self.spec, set)
    }

    pub(crate) fn join_unchecked(&self, other: &Subgroup) -> Subgroup {
        let mut set = self.elements.clone();
        let mut bits = self.bits.clone();
        for &g in &other.generators {
            adjoin(&self.spec, &mut set, &mut bits, g);
        }
        set.sort_unstable();
        Self::from_sorted_set(&self.spec, set)
    }

    /// Smallest coset representative of `c + self`.
    pub(crate) fn coset_min(&self, c: u32) -> u32 {
        self.elements
            .iter()
            .map(|&h| self.spec.add(c, h))
            .min()
            .expect("subgroups are nonempty")
    }

    /// Sorted smallest representatives of the cosets of `self` in `top`.
    pub(crate) fn coset_reps_in(&self, top: &Subgroup) -> Vec<u32> {
        let mut seen = vec![false; self.spec.order as usize];
        let mut reps = Vec::new();
        for &c in &top.elements {
            if seen[c as usize] {
                continue;
            }
            reps.push(c);
            for &h in &self.elements {
                seen[self.spec.add(c, h) as usize] = true;
            }
        }
        reps
    }
}

/// Greedy choice of elements of maximal order that are independent modulo
/// the Frattini subgroup `pH`; by the Burnside basis theorem these generate.
fn minimal_generators(spec: &GroupSpec, elements: &[u32], bits: &[u64]) -> Vec<u32> {
    let mut span: Vec<u32> = elements.iter().map(|&c| spec.mul(spec.p, c)).collect();
    span.sort_unstable();
    span.dedup();
    let mut span_bits = bitset(spec.order, &span);
    debug_assert!(span.iter().all(|&c| has(bits, c)));
    let mut by_order: Vec<(u64, u32)> = elements.iter().map(|&c| (spec.element_order(c), c)).collect();
    by_order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut gens = Vec::new();
    for (_, c) in by_order {
        if span.len() == elements.len() {
            break;
        }
        if !has(&span_bits, c) {
            gens.push(c);
            adjoin(spec, &mut span, &mut span_bits, c);
        }
    }
    gens
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.spec.hash(state);
        self.elements.hash(state);
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.spec
            .cmp(&other.spec)
            .then(self.elements.len().cmp(&other.elements.len()))
            .then_with(|| self.elements.cmp(&other.elements))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        let g: Vec<String> = self.generators().iter().map(|e| e.to_string()).collect();
        write!(f, "<{}>", g.join(","))
    }
}

impl Serialize for Subgroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Subgroup", 2)?;
        st.serialize_field("order", &self.order())?;
        st.serialize_field("generators", &self.generators())?;
        st.end()
    }
}

fn same_ambient(a: &Subgroup, b: &Subgroup) -> Result<()> {
    if a.spec != b.spec {
        return Err(Error::AmbientMismatch);
    }
    Ok(())
}

/// `(a ∩ b, a ∨ b)`.
pub fn meet_join(a: &Subgroup, b: &Subgroup) -> Result<(Subgroup, Subgroup)> {
    same_ambient(a, b)?;
    Ok((a.meet_unchecked(b), a.join_unchecked(b)))
}

/// Invariant factors of `K/N`, non-increasing, from the element-order census
/// `#{x ∈ K : p^j x ∈ N}`.
pub fn quotient_invariants(k: &Subgroup, n: &Subgroup) -> Result<Vec<u64>> {
    same_ambient(k, n)?;
    if !n.is_subgroup_of(k) {
        return Err(Error::NotASubgroup(format!("{n} is not contained in {k}")));
    }
    let spec = &k.spec;
    let p = spec.p;
    let log = |mut x: u64| {
        let mut l = 0u32;
        while x > 1 {
            x /= p;
            l += 1;
        }
        l
    };
    let target = log(k.order() / n.order());
    // counts[j] = log_p #{q ∈ K/N : p^j q = 0}
    let mut counts = vec![0u32];
    let mut pj = 1u64;
    while *counts.last().unwrap() < target {
        pj *= p;
        let c = k.elements.iter().filter(|&&x| n.contains_code(spec.mul(pj, x))).count() as u64;
        counts.push(log(c / n.order()));
    }
    // Number of cyclic factors of order ≥ p^j is counts[j] - counts[j-1].
    let mut factors = Vec::new();
    let jmax = counts.len() - 1;
    for j in (1..=jmax).rev() {
        let at_least_j = counts[j] - counts[j - 1];
        let at_least_next = if j < jmax { counts[j + 1] - counts[j] } else { 0 };
        for _ in 0..at_least_j - at_least_next {
            factors.push(p.pow(j as u32));
        }
    }
    Ok(factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> GroupSpec {
        GroupSpec::parse(s).unwrap()
    }

    fn sub(g: &GroupSpec, gens: &[&[u64]]) -> Subgroup {
        let gens: Vec<GroupElement> = gens.iter().map(|r| g.element(r).unwrap()).collect();
        Subgroup::from_generators(g, &gens).unwrap()
    }

    /// Closure by repeated addition until nothing new appears.
    fn closure_oracle(g: &GroupSpec, gens: &[&[u64]]) -> Vec<Vec<u64>> {
        let mods = g.invariants();
        let mut set: Vec<Vec<u64>> = vec![vec![0; g.rank()]];
        loop {
            let mut grew = false;
            for a in set.clone() {
                for b in gens {
                    let s: Vec<u64> = a.iter().zip(*b).zip(&mods).map(|((x, y), m)| (x + y) % m).collect();
                    if !set.contains(&s) {
                        set.push(s);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        set.sort();
        set
    }

    #[test]
    fn closure_examples() {
        let g = spec("2:[1,1]");
        assert_eq!(sub(&g, &[&[1, 0]]).order(), 2);
        assert_eq!(sub(&g, &[&[1, 0], &[0, 1]]).order(), 4);
        assert!(sub(&g, &[]).is_trivial());
        let g = spec("2:[2,1]");
        let c = sub(&g, &[&[1, 1]]);
        let want: Vec<Vec<u64>> = vec![vec![0, 0], vec![1, 1], vec![2, 0], vec![3, 1]];
        assert_eq!(closure_oracle(&g, &[&[1, 1]]), want);
        let got: Vec<Vec<u64>> = c.elements().iter().map(|e| e.residues().to_vec()).collect();
        assert_eq!(got, want);
        assert!(Subgroup::from_generators(&g, &[GroupElement { residues: vec![4, 0] }]).is_err());
    }

    #[test]
    fn closure_agrees_with_oracle_on_pairs() {
        let g = spec("2:[2,1,1]");
        let all: Vec<GroupElement> = g.elements().collect();
        for a in &all {
            for b in &all {
                let s = Subgroup::from_generators(&g, &[a.clone(), b.clone()]).unwrap();
                let want = closure_oracle(&g, &[a.residues(), b.residues()]);
                let got: Vec<Vec<u64>> = s.elements().iter().map(|e| e.residues().to_vec()).collect();
                assert_eq!(got, want);
                let again = Subgroup::from_generators(&g, &s.generators()).unwrap();
                assert_eq!(again, s);
                assert!(s.generators().len() <= 2);
            }
        }
    }

    #[test]
    fn meet_join_examples() {
        let g = spec("2:[1,1]");
        let a = sub(&g, &[&[1, 0]]);
        let b = sub(&g, &[&[0, 1]]);
        let (m, j) = meet_join(&a, &b).unwrap();
        assert!(m.is_trivial());
        assert_eq!(j, Subgroup::whole(&g));
        assert_eq!(meet_join(&a, &a).unwrap(), (a.clone(), a.clone()));
        let g = spec("2:[2,1]");
        let a = sub(&g, &[&[1, 1]]);
        let b = sub(&g, &[&[2, 0]]);
        let (m, j) = meet_join(&a, &b).unwrap();
        assert_eq!(m, b);
        assert_eq!(j, a);
        let other = Subgroup::trivial(&spec("2:[2]"));
        assert_eq!(meet_join(&a, &other), Err(Error::AmbientMismatch));
    }

    #[test]
    fn quotient_invariant_examples() {
        let g = spec("2:[1,1,1]");
        let whole = Subgroup::whole(&g);
        let triv = Subgroup::trivial(&g);
        assert_eq!(quotient_invariants(&whole, &triv).unwrap(), vec![2, 2, 2]);
        let g = spec("2:[2]");
        let c4 = Subgroup::whole(&g);
        let c2 = sub(&g, &[&[2]]);
        assert_eq!(quotient_invariants(&c4, &c2).unwrap(), vec![2]);
        assert!(quotient_invariants(&c2, &c4).is_err());
        let g = spec("3:[2,1,1]");
        let w = Subgroup::whole(&g);
        assert_eq!(quotient_invariants(&w, &Subgroup::trivial(&g)).unwrap(), g.invariants());
        assert_eq!(quotient_invariants(&w, &w).unwrap(), Vec::<u64>::new());
    }

    #[test]
    fn graph_of_nontrivial_rho_gives_cyclic_quotient() {
        // G' = C_4 = <x>, Γ' = G' × C_2, L = <x^2>, ρ(x^2) ≠ 1: the graph
        // L×ρ = <(2,1)> has quotient C_4 in G'×C_2.
        let g = spec("2:[2,1]");
        let whole = Subgroup::whole(&g);
        let graph = sub(&g, &[&[2, 1]]);
        assert_eq!(quotient_invariants(&whole, &graph).unwrap(), vec![4]);
        let eps = sub(&g, &[&[2, 0]]);
        assert_eq!(quotient_invariants(&whole, &eps).unwrap(), vec![2, 2]);
    }

    #[test]
    fn ordering_and_json() {
        let g = spec("2:[1,1]");
        let a = sub(&g, &[&[1, 0]]);
        let b = sub(&g, &[&[0, 1]]);
        assert!(b < a);
        assert!(Subgroup::trivial(&g) < b);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            r#"{"order":2,"generators":[[1,0]]}"#
        );
        assert_eq!(a.to_string(), "<(1,0)>");
    }

    #[test]
    fn cyclicity() {
        let g = spec("2:[2,1]");
        assert!(Subgroup::trivial(&g).is_cyclic());
        let klein = sub(&g, &[&[2, 0], &[0, 1]]);
        assert!(!klein.is_cyclic());
        assert!(sub(&g, &[&[1, 1]]).is_cyclic());
    }
}
