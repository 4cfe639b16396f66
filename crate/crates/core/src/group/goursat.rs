//! Subgroups of `Γ = G × C_p` through the Goursat correspondence, and graph
//! subgroups `K×ρ = {(k, ρ(k))}` of homomorphisms `ρ: K → C_p`.

use std::collections::HashMap;

use serde::Serialize;

use super::{GroupElement, GroupSpec, Subgroup};
use crate::error::{Error, Result};

/// `(K, N, A, B, θ)` with `N ⊆ K ≤ G`, `B ⊆ A ≤ C_p` and `θ: K/N ≅ A/B`,
/// given on coset representatives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoursatQuintuple {
    pub k: Subgroup,
    pub n: Subgroup,
    pub a: Subgroup,
    pub b: Subgroup,
    pub theta: Vec<(GroupElement, GroupElement)>,
}

/// A homomorphism `ρ: K → C_p`, stored by its values on the generators of `K`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GraphDescriptor {
    pub domain: Subgroup,
    pub values: Vec<u64>,
}

fn check_gamma(g: &GroupSpec, s: &Subgroup) -> Result<()> {
    if *s.spec() != g.gamma() {
        return Err(Error::AmbientMismatch);
    }
    Ok(())
}

fn project(s: &Subgroup, p: u64, f: impl Fn(u32, u32) -> Option<u32>) -> Vec<u32> {
    let p = p as u32;
    let mut out: Vec<u32> = s.codes().iter().filter_map(|&c| f(c / p, c % p)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub fn goursat_decompose(g: &GroupSpec, s: &Subgroup) -> Result<GoursatQuintuple> {
    check_gamma(g, s)?;
    let p = g.p();
    let cp = GroupSpec::cyclic_p(p)?;
    let k = Subgroup::from_sorted_set(g, project(s, p, |x, _| Some(x)));
    let n = Subgroup::from_sorted_set(g, project(s, p, |x, c| (c == 0).then_some(x)));
    let a = Subgroup::from_sorted_set(&cp, project(s, p, |_, c| Some(c)));
    let b = Subgroup::from_sorted_set(&cp, project(s, p, |x, c| (x == 0).then_some(c)));
    let mut theta = Vec::new();
    for rep in n.coset_reps_in(&k) {
        let c = s
            .codes()
            .iter()
            .find(|&&sc| sc / p as u32 == rep)
            .map(|&sc| sc % p as u32)
            .expect("K is the projection of S");
        theta.push((g.decode(rep), cp.decode(b.coset_min(c))));
    }
    Ok(GoursatQuintuple { k, n, a, b, theta })
}

pub fn goursat_compose(g: &GroupSpec, q: &GoursatQuintuple) -> Result<Subgroup> {
    let p = g.p();
    let cp = GroupSpec::cyclic_p(p)?;
    let invalid = |m: &str| Error::InvalidQuintuple(m.to_string());
    if q.k.spec() != g || q.n.spec() != g || q.a.spec() != &cp || q.b.spec() != &cp {
        return Err(Error::AmbientMismatch);
    }
    if !q.n.is_subgroup_of(&q.k) || !q.b.is_subgroup_of(&q.a) {
        return Err(invalid("N ⊆ K and B ⊆ A are required"));
    }
    if q.k.order() / q.n.order() != q.a.order() / q.b.order() {
        return Err(invalid("|K/N| and |A/B| differ"));
    }
    let mut map: HashMap<u32, u32> = HashMap::new();
    for (x, c) in &q.theta {
        let xc = g.element(x.residues()).map(|e| g.encode(&e))?;
        let cc = cp.element(c.residues()).map(|e| cp.encode(&e))?;
        if !q.k.contains_code(xc) || !q.a.contains_code(cc) {
            return Err(invalid("theta maps outside K/N → A/B"));
        }
        if map.insert(q.n.coset_min(xc), q.b.coset_min(cc)).is_some() {
            return Err(invalid("theta lists a coset twice"));
        }
    }
    let reps = q.n.coset_reps_in(&q.k);
    if reps.iter().any(|r| !map.contains_key(r)) {
        return Err(invalid("theta is not defined on every coset"));
    }
    let mut images: Vec<u32> = map.values().copied().collect();
    images.sort_unstable();
    images.dedup();
    if images.len() != reps.len() {
        return Err(invalid("theta is not injective"));
    }
    for &x in &reps {
        for &y in &reps {
            let lhs = map[&q.n.coset_min(g.add(x, y))];
            let rhs = q.b.coset_min(cp.add(map[&x], map[&y]));
            if lhs != rhs {
                return Err(invalid("theta is not a homomorphism"));
            }
        }
    }
    let mut set = Vec::with_capacity(q.k.codes().len() * q.b.codes().len());
    for &x in q.k.codes() {
        let t = map[&q.n.coset_min(x)];
        for &b in q.b.codes() {
            set.push(x * p as u32 + cp.add(t, b));
        }
    }
    set.sort_unstable();
    Ok(Subgroup::from_sorted_set(&g.gamma(), set))
}

impl GraphDescriptor {
    /// The trivial homomorphism `ε` on `domain`.
    pub fn trivial(domain: &Subgroup) -> Self {
        GraphDescriptor {
            domain: domain.clone(),
            values: vec![0; domain.generator_codes().len()],
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn is_surjective(&self) -> bool {
        !self.is_trivial()
    }

    /// Value of `ρ` on every element of the domain, keyed by element code.
    pub(crate) fn table(&self) -> HashMap<u32, u32> {
        let spec = self.domain.spec();
        let p = spec.p() as u32;
        let mut map: HashMap<u32, u32> = HashMap::from([(0, 0)]);
        for (&g, &v) in self.domain.generator_codes().iter().zip(&self.values) {
            let base: Vec<(u32, u32)> = map.iter().map(|(&k, &v)| (k, v)).collect();
            let (mut shift, mut sv) = (g, v as u32 % p);
            while !map.contains_key(&shift) {
                for &(h, hv) in &base {
                    map.insert(spec.add(h, shift), (hv + sv) % p);
                }
                shift = spec.add(shift, g);
                sv = (sv + v as u32) % p;
            }
            debug_assert_eq!(map[&shift], sv, "generator values do not define a homomorphism");
        }
        map
    }

    pub fn value_at(&self, e: &GroupElement) -> Option<u64> {
        let spec = self.domain.spec();
        let code = spec.element(e.residues()).ok().map(|e| spec.encode(&e))?;
        self.table().get(&code).map(|&v| v as u64)
    }

    /// `ρ|_L` for `L ≤ K`.
    pub fn restrict(&self, l: &Subgroup) -> Result<GraphDescriptor> {
        if !l.is_subgroup_of(&self.domain) {
            return Err(Error::NotASubgroup(format!("{l} ⊄ {}", self.domain)));
        }
        let table = self.table();
        Ok(GraphDescriptor {
            domain: l.clone(),
            values: l.generator_codes().iter().map(|c| table[c] as u64).collect(),
        })
    }
}

/// All homomorphisms `domain → C_p`, in lexicographic order of their values
/// on the generators.
pub fn homomorphisms(domain: &Subgroup) -> Vec<GraphDescriptor> {
    let p = domain.spec().p();
    let r = domain.generator_codes().len();
    let count = p.pow(r as u32);
    (0..count)
        .map(|mut i| {
            let mut values = vec![0u64; r];
            for v in values.iter_mut().rev() {
                *v = i % p;
                i /= p;
            }
            GraphDescriptor {
                domain: domain.clone(),
                values,
            }
        })
        .collect()
}

/// `K×ρ ≤ Γ`.
pub fn graph_compose(g: &GroupSpec, d: &GraphDescriptor) -> Result<Subgroup> {
    if d.domain.spec() != g {
        return Err(Error::AmbientMismatch);
    }
    let p = g.p() as u32;
    let table = d.table();
    let mut set: Vec<u32> = d.domain.codes().iter().map(|&x| x * p + table[&x]).collect();
    set.sort_unstable();
    Ok(Subgroup::from_sorted_set(&g.gamma(), set))
}

/// The descriptor `(K, ρ)` of `S` when `S ∩ (1×C_p)` is trivial.
pub fn graph_classify(g: &GroupSpec, s: &Subgroup) -> Result<Option<GraphDescriptor>> {
    check_gamma(g, s)?;
    if s.contains_code(1) {
        return Ok(None);
    }
    let p = g.p() as u32;
    let domain = Subgroup::from_sorted_set(g, project(s, g.p(), |x, _| Some(x)));
    let by_x: HashMap<u32, u32> = s.codes().iter().map(|&c| (c / p, c % p)).collect();
    let values = domain.generator_codes().iter().map(|x| by_x[x] as u64).collect();
    Ok(Some(GraphDescriptor { domain, values }))
}

/// `L × C_p ≤ Γ`.
pub(crate) fn full_fiber(g: &GroupSpec, l: &Subgroup) -> Subgroup {
    let p = g.p() as u32;
    let mut set: Vec<u32> = l.codes().iter().flat_map(|&x| (0..p).map(move |c| x * p + c)).collect();
    set.sort_unstable();
    Subgroup::from_sorted_set(&g.gamma(), set)
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

    /// Every subgroup of a small group, by closing all generator pairs and triples.
    fn all_subgroups_oracle(g: &GroupSpec) -> Vec<Subgroup> {
        let els: Vec<GroupElement> = g.elements().collect();
        let mut out = Vec::new();
        for a in &els {
            for b in &els {
                for c in &els {
                    let s = Subgroup::from_generators(g, &[a.clone(), b.clone(), c.clone()]).unwrap();
                    if !out.contains(&s) {
                        out.push(s);
                    }
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn full_product_decomposes_trivially() {
        let g = spec("2:[1,1]");
        let gamma = g.gamma();
        let q = goursat_decompose(&g, &Subgroup::whole(&gamma)).unwrap();
        assert_eq!(q.k, Subgroup::whole(&g));
        assert_eq!(q.n, Subgroup::whole(&g));
        assert_eq!(q.a.order(), 2);
        assert_eq!(q.b.order(), 2);
        assert_eq!(q.theta.len(), 1);
    }

    #[test]
    fn diagonal_graph_decomposes_to_delta() {
        let g = spec("2:[1,1]");
        let gamma = g.gamma();
        let s = sub(&gamma, &[&[1, 1, 1]]);
        let q = goursat_decompose(&g, &s).unwrap();
        assert_eq!(q.k, sub(&g, &[&[1, 1]]));
        assert!(q.n.is_trivial());
        assert_eq!(q.a.order(), 2);
        assert!(q.b.is_trivial());
        let d = graph_classify(&g, &s).unwrap().unwrap();
        assert_eq!(d.domain, sub(&g, &[&[1, 1]]));
        assert_eq!(d.values, vec![1]);
    }

    #[test]
    fn compose_examples() {
        let g = spec("2:[1,1]");
        let cp = GroupSpec::cyclic_p(2).unwrap();
        let triv = Subgroup::trivial(&g);
        let q = GoursatQuintuple {
            k: triv.clone(),
            n: triv.clone(),
            a: Subgroup::trivial(&cp),
            b: Subgroup::trivial(&cp),
            theta: vec![(g.element(&[0, 0]).unwrap(), cp.element(&[0]).unwrap())],
        };
        assert!(goursat_compose(&g, &q).unwrap().is_trivial());
        let first = sub(&g, &[&[1, 0]]);
        let q = GoursatQuintuple {
            k: first.clone(),
            n: triv.clone(),
            a: Subgroup::whole(&cp),
            b: Subgroup::trivial(&cp),
            theta: vec![
                (g.element(&[0, 0]).unwrap(), cp.element(&[0]).unwrap()),
                (g.element(&[1, 0]).unwrap(), cp.element(&[1]).unwrap()),
            ],
        };
        assert_eq!(goursat_compose(&g, &q).unwrap(), sub(&g.gamma(), &[&[1, 0, 1]]));
        let mut bad = q.clone();
        bad.theta[1].1 = cp.element(&[0]).unwrap();
        assert!(matches!(goursat_compose(&g, &bad), Err(Error::InvalidQuintuple(_))));
        let mut short = q;
        short.theta.pop();
        assert!(matches!(goursat_compose(&g, &short), Err(Error::InvalidQuintuple(_))));
    }

    #[test]
    fn quintuples_of_c2_are_in_bijection_with_subgroups() {
        // Γ = C_2 × C_2 as G × C_p with G = C_2.
        let g = spec("2:[1]");
        let subs = all_subgroups_oracle(&g.gamma());
        assert_eq!(subs.len(), 5);
        let mut quints = Vec::new();
        for s in &subs {
            let q = goursat_decompose(&g, s).unwrap();
            assert_eq!(&goursat_compose(&g, &q).unwrap(), s);
            assert!(!quints.contains(&q));
            quints.push(q);
        }
    }

    #[test]
    fn goursat_roundtrip_on_c4_c2_c2() {
        let g = spec("2:[2,1]");
        for s in all_subgroups_oracle(&g.gamma()) {
            let q = goursat_decompose(&g, &s).unwrap();
            assert_eq!(goursat_compose(&g, &q).unwrap(), s);
            let graph = graph_classify(&g, &s).unwrap();
            let criterion = q.b.is_trivial();
            assert_eq!(graph.is_some(), criterion);
            assert_eq!(graph.is_some(), !s.contains_code(1));
            if let Some(d) = graph {
                assert_eq!(graph_compose(&g, &d).unwrap(), s);
                assert_eq!(graph_classify(&g, &graph_compose(&g, &d).unwrap()).unwrap(), Some(d));
            }
        }
    }

    #[test]
    fn graph_count_over_klein_times_c2() {
        let g = spec("2:[1,1]");
        let subs = all_subgroups_oracle(&g.gamma());
        assert_eq!(subs.len(), 16);
        let graphs = subs.iter().filter(|s| graph_classify(&g, s).unwrap().is_some()).count();
        assert_eq!(graphs, 11);
        assert!(graph_classify(&g, &sub(&g.gamma(), &[&[0, 0, 1]])).unwrap().is_none());
    }

    #[test]
    fn homomorphisms_and_restriction() {
        let g = spec("2:[2,1]");
        let whole = Subgroup::whole(&g);
        let homs = homomorphisms(&whole);
        assert_eq!(homs.len(), 4);
        let graphs: Vec<Subgroup> = homs.iter().map(|h| graph_compose(&g, h).unwrap()).collect();
        for (i, a) in graphs.iter().enumerate() {
            assert_eq!(a.order(), 8);
            for b in &graphs[i + 1..] {
                assert_ne!(a, b);
            }
        }
        let l = sub(&g, &[&[2, 0]]);
        for h in &homs {
            let r = h.restrict(&l).unwrap();
            assert_eq!(r.values, vec![0]);
        }
        let c = sub(&g, &[&[0, 1]]);
        let vals: Vec<u64> = homs.iter().map(|h| h.restrict(&c).unwrap().values[0]).collect();
        assert_eq!(vals.iter().filter(|&&v| v == 1).count(), 2);
    }

    #[test]
    fn mismatched_ambient_is_rejected() {
        let g = spec("2:[1,1]");
        assert_eq!(
            goursat_decompose(&g, &Subgroup::trivial(&g)),
            Err(Error::AmbientMismatch)
        );
    }
}
