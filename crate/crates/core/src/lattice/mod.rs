//! Subgroup lattices of finite abelian groups and of their sections `T/B`.
//!
//! A [`LatticeIndex`] lists every subgroup `S` with `B ≤ S ≤ T` in canonical
//! order. With `B` trivial and `T` the whole group this is the ordinary
//! subgroup lattice; in general it is the lattice of the section `T/B`, whose
//! subgroups `S/B` are recorded by their preimages `S`.

mod product;
mod resolution;
mod selection;

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, VecDeque};
use std::fmt::Write;
use std::hash::{Hash, Hasher};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{quotient_invariants, GroupSpec, Subgroup};

pub use product::GammaLattice;
pub use resolution::{resolutions, subquotient_pairs, Resolution};
pub use selection::{build_selection_list, ChoicePolicy, SelectionCase, SelectionList, SelectionPair};

/// Groups with more subgroups than this are rejected.
pub const MAX_SUBGROUPS: usize = 20_000;

#[derive(Clone, Debug)]
pub struct LatticeIndex {
    spec: GroupSpec,
    bottom: Subgroup,
    top: Subgroup,
    subgroups: Vec<Subgroup>,
    lookup: HashMap<Vec<u32>, usize>,
    covers: Vec<(usize, usize)>,
    up: Vec<Vec<usize>>,
    cyclic: Vec<bool>,
    tag: u64,
}

/// The full subgroup lattice of `spec`.
pub fn all_subgroups(spec: &GroupSpec) -> Result<LatticeIndex> {
    LatticeIndex::of_group(spec)
}

impl LatticeIndex {
    pub fn of_group(spec: &GroupSpec) -> Result<Self> {
        Self::section(&Subgroup::trivial(spec), &Subgroup::whole(spec))
    }

    /// The lattice of the section `top/bottom`.
    pub fn section(bottom: &Subgroup, top: &Subgroup) -> Result<Self> {
        if bottom.spec() != top.spec() {
            return Err(Error::AmbientMismatch);
        }
        if !bottom.is_subgroup_of(top) {
            return Err(Error::NotASubgroup(format!("{bottom} ⊄ {top}")));
        }
        let spec = top.spec().clone();
        let p = spec.p();
        let mut found: Vec<Subgroup> = vec![bottom.clone()];
        let mut lookup: HashMap<Vec<u32>, usize> = HashMap::from([(bottom.codes().to_vec(), 0)]);
        let mut raw_covers = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(hi) = queue.pop_front() {
            let h = found[hi].clone();
            let mut supers: Vec<Subgroup> = Vec::new();
            for &x in top.codes() {
                if h.contains_code(x) || !h.contains_code(spec.mul(p, x)) || supers.iter().any(|k| k.contains_code(x)) {
                    continue;
                }
                let mut set = Vec::with_capacity(h.codes().len() * p as usize);
                let mut shift = 0u32;
                for _ in 0..p {
                    set.extend(h.codes().iter().map(|&e| spec.add(e, shift)));
                    shift = spec.add(shift, x);
                }
                set.sort_unstable();
                let k = Subgroup::from_sorted_set(&spec, set);
                let ki = match lookup.get(k.codes()) {
                    Some(&i) => i,
                    None => {
                        if found.len() >= MAX_SUBGROUPS {
                            return Err(Error::OrderBoundExceeded(format!(
                                "more than {MAX_SUBGROUPS} subgroups"
                            )));
                        }
                        let i = found.len();
                        lookup.insert(k.codes().to_vec(), i);
                        found.push(k.clone());
                        queue.push_back(i);
                        i
                    }
                };
                raw_covers.push((hi, ki));
                supers.push(k);
            }
        }
        let mut order: Vec<usize> = (0..found.len()).collect();
        order.sort_by(|&a, &b| found[a].cmp(&found[b]));
        let mut rank = vec![0usize; found.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        let mut slots: Vec<Option<Subgroup>> = found.into_iter().map(Some).collect();
        let subgroups: Vec<Subgroup> = order.iter().map(|&o| slots[o].take().unwrap()).collect();
        let lookup = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.codes().to_vec(), i))
            .collect();
        let mut covers: Vec<(usize, usize)> = raw_covers.into_iter().map(|(a, b)| (rank[a], rank[b])).collect();
        covers.sort_unstable();
        let mut up = vec![Vec::new(); subgroups.len()];
        for &(a, b) in &covers {
            up[a].push(b);
        }
        let cyclic = subgroups
            .iter()
            .map(|s| {
                if bottom.is_trivial() {
                    s.is_cyclic()
                } else {
                    quotient_invariants(s, bottom).expect("contains bottom").len() <= 1
                }
            })
            .collect();
        let mut hasher = DefaultHasher::new();
        spec.hash(&mut hasher);
        bottom.codes().hash(&mut hasher);
        top.codes().hash(&mut hasher);
        Ok(LatticeIndex {
            spec,
            bottom: bottom.clone(),
            top: top.clone(),
            subgroups,
            lookup,
            covers,
            up,
            cyclic,
            tag: hasher.finish(),
        })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn bottom(&self) -> &Subgroup {
        &self.bottom
    }

    pub fn top(&self) -> &Subgroup {
        &self.top
    }

    /// Whether this is the lattice of a whole group rather than a proper section.
    pub fn is_full_group(&self) -> bool {
        self.bottom.is_trivial() && self.top.order() == self.spec.order()
    }

    /// Order of the section `top/bottom`.
    pub fn section_order(&self) -> u64 {
        self.top.order() / self.bottom.order()
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn get(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn index_of(&self, s: &Subgroup) -> Option<usize> {
        if s.spec() != &self.spec {
            return None;
        }
        self.lookup.get(s.codes()).copied()
    }

    pub(crate) fn index_of_codes(&self, codes: &[u32]) -> Option<usize> {
        self.lookup.get(codes).copied()
    }

    pub fn bottom_index(&self) -> usize {
        0
    }

    pub fn top_index(&self) -> usize {
        self.subgroups.len() - 1
    }

    /// Cover edges `(i, j)`: `S_i < S_j` of index `p`.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Subgroups covering `S_i`, ascending.
    pub fn covers_above(&self, i: usize) -> &[usize] {
        &self.up[i]
    }

    pub fn tag(&self) -> u64 {
        self.tag
    }

    /// `|S_i / bottom|`.
    pub fn order(&self, i: usize) -> u64 {
        self.subgroups[i].order() / self.bottom.order()
    }

    /// `[top : S_i]`.
    pub fn index_in_top(&self, i: usize) -> u64 {
        self.top.order() / self.subgroups[i].order()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.subgroups[i].is_subgroup_of(&self.subgroups[j])
    }

    /// Whether `S_i / bottom` is cyclic.
    pub fn is_cyclic(&self, i: usize) -> bool {
        self.cyclic[i]
    }

    pub fn cyclic_count(&self) -> usize {
        self.cyclic.iter().filter(|&&c| c).count()
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        let m = self.subgroups[i].meet_unchecked(&self.subgroups[j]);
        self.index_of(&m).expect("meet stays in the section")
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        if self.contains(i, j) {
            return j;
        }
        if self.contains(j, i) {
            return i;
        }
        let m = self.subgroups[i].join_unchecked(&self.subgroups[j]);
        self.index_of(&m).expect("join stays in the section")
    }

    /// Invariant factors of `S_k / S_n`.
    pub fn quotient_invariants(&self, k: usize, n: usize) -> Result<Vec<u64>> {
        quotient_invariants(&self.subgroups[k], &self.subgroups[n])
    }

    /// Indices of all `S_j ⊆ S_i`.
    pub fn subgroups_of(&self, i: usize) -> Vec<usize> {
        (0..=i).filter(|&j| self.contains(j, i)).collect()
    }

    /// Indices of all subgroups of a given section order, a contiguous range.
    pub fn with_order(&self, order: u64) -> std::ops::Range<usize> {
        let b = self.bottom.order();
        let lo = self.subgroups.partition_point(|s| s.order() / b < order);
        let hi = self.subgroups.partition_point(|s| s.order() / b <= order);
        lo..hi
    }

    /// Graphviz rendering of the cover graph.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph subgroups {\n  rankdir=BT;\n");
        for i in 0..self.len() {
            let _ = writeln!(out, "  n{i} [label=\"#{i}:{}\"];", self.order(i));
        }
        for &(a, b) in &self.covers {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }
}

impl Serialize for LatticeIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            index: usize,
            order: u64,
            cyclic: bool,
            generators: Vec<crate::group::GroupElement>,
        }
        let entries: Vec<Entry> = self
            .subgroups
            .iter()
            .enumerate()
            .map(|(i, sg)| Entry {
                index: i,
                order: self.order(i),
                cyclic: self.cyclic[i],
                generators: sg.generators(),
            })
            .collect();
        let mut st = s.serialize_struct("LatticeIndex", 6)?;
        st.serialize_field("group", &self.spec)?;
        st.serialize_field("bottom", &self.bottom)?;
        st.serialize_field("top", &self.top)?;
        st.serialize_field("count", &self.len())?;
        st.serialize_field("subgroups", &entries)?;
        st.serialize_field("covers", &self.covers)?;
        st.end()
    }
}
