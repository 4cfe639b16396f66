//! The Burnside ring of a section on its subgroup basis, its functorial
//! operations, the relative submodule spanned by graph subgroups and the
//! signature map onto `B(G)`.

mod oracle;

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::GraphDescriptor;
use crate::lattice::{GammaLattice, LatticeIndex};
use crate::linalg::{Int, SparseVec};

pub use oracle::{orbit_oracle_product, orbit_oracle_restrict};

/// An integer combination of the basis `[Γ/S]` of a fixed [`LatticeIndex`],
/// stored sparsely.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BurnsideElement {
    tag: u64,
    len: usize,
    vec: SparseVec,
}

impl BurnsideElement {
    pub fn zero(idx: &LatticeIndex) -> Self {
        BurnsideElement {
            tag: idx.tag(),
            len: idx.len(),
            vec: SparseVec::new(),
        }
    }

    pub fn basis(idx: &LatticeIndex, i: usize) -> Self {
        let mut x = Self::zero(idx);
        x.add_basis(i, &Int::ONE);
        x
    }

    pub fn from_coeffs(idx: &LatticeIndex, coeffs: Vec<Int>) -> Result<Self> {
        if coeffs.len() != idx.len() {
            return Err(Error::Validation(format!(
                "{} coefficients for a basis of {} subgroups",
                coeffs.len(),
                idx.len()
            )));
        }
        Self::from_sparse(idx, &SparseVec::from_dense(&coeffs))
    }

    pub fn from_sparse(idx: &LatticeIndex, v: &SparseVec) -> Result<Self> {
        if v.max_col().is_some_and(|c| c >= idx.len()) {
            return Err(Error::Validation("basis index out of range".into()));
        }
        Ok(BurnsideElement {
            tag: idx.tag(),
            len: idx.len(),
            vec: v.clone(),
        })
    }

    /// Builds from `(basis index, coefficient)` terms.
    pub fn from_terms<I: IntoIterator<Item = (usize, i64)>>(idx: &LatticeIndex, terms: I) -> Result<Self> {
        let v = SparseVec::from_pairs(terms.into_iter().map(|(i, c)| (i, Int::from(c))));
        Self::from_sparse(idx, &v)
    }

    pub fn tag(&self) -> u64 {
        self.tag
    }

    /// Rank of the ambient Burnside ring.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Nonzero `(basis index, coefficient)` pairs, ascending.
    pub fn terms(&self) -> &[(usize, Int)] {
        self.vec.entries()
    }

    pub fn coeff(&self, i: usize) -> Int {
        self.vec.get(i)
    }

    pub fn to_dense(&self) -> Vec<Int> {
        self.vec.to_dense(self.len)
    }

    pub fn is_zero(&self) -> bool {
        self.vec.is_zero()
    }

    pub fn support(&self) -> Vec<usize> {
        self.vec.entries().iter().map(|e| e.0).collect()
    }

    pub fn to_sparse(&self) -> SparseVec {
        self.vec.clone()
    }

    pub(crate) fn add_basis(&mut self, i: usize, k: &Int) {
        debug_assert!(i < self.len);
        self.vec.add_at(i, k);
    }

    pub fn check(&self, idx: &LatticeIndex) -> Result<()> {
        if self.tag != idx.tag() || self.len != idx.len() {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    fn same(&self, other: &Self) -> Result<()> {
        if self.tag != other.tag || self.len != other.len {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(BurnsideElement {
            vec: self.vec.add(&other.vec),
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(BurnsideElement {
            vec: self.vec.sub_scaled(&Int::ONE, &other.vec),
            ..self.clone()
        })
    }

    pub fn scaled(&self, k: &Int) -> Self {
        BurnsideElement {
            tag: self.tag,
            len: self.len,
            vec: self.vec.scaled(k),
        }
    }

    /// Renders as e.g. `1 − <(1,0)> + 2Γ`, using `label` for basis names.
    pub fn pretty(&self, label: &dyn Fn(usize) -> String) -> String {
        let mut out = String::new();
        for (i, c) in self.terms() {
            let name = label(*i);
            let first = out.is_empty();
            let sign = match (first, c.is_negative()) {
                (true, true) => "−",
                (true, false) => "",
                (false, true) => " − ",
                (false, false) => " + ",
            };
            let a = c.abs();
            let mag = if a.is_one() {
                String::new()
            } else if name.starts_with(|ch: char| ch.is_alphabetic()) {
                a.to_string()
            } else {
                format!("{a}·")
            };
            let _ = write!(out, "{sign}{mag}{name}");
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Default basis names: `1`, `Γ`, or the generator list.
pub fn default_label(idx: &LatticeIndex) -> impl Fn(usize) -> String + '_ {
    move |i| {
        if i == idx.top_index() {
            "Γ".to_string()
        } else if i == idx.bottom_index() {
            "1".to_string()
        } else {
            idx.get(i).to_string()
        }
    }
}

impl Serialize for BurnsideElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<usize, &Int> = self.terms().iter().map(|(i, c)| (*i, c)).collect();
        map.serialize(s)
    }
}

/// `L*M = [T : L∨M] · (L∩M)` on basis indices.
pub fn basis_product(idx: &LatticeIndex, i: usize, j: usize) -> (u64, usize) {
    let join = idx.join(i, j);
    (idx.index_in_top(join), idx.meet(i, j))
}

pub fn product(idx: &LatticeIndex, x: &BurnsideElement, y: &BurnsideElement) -> Result<BurnsideElement> {
    x.check(idx)?;
    y.check(idx)?;
    let mut out = BurnsideElement::zero(idx);
    for (i, a) in x.terms() {
        for (j, b) in y.terms() {
            let (k, m) = basis_product(idx, *i, *j);
            let c = &(a * b) * &Int::from(k);
            out.add_basis(m, &c);
        }
    }
    Ok(out)
}

fn same_bottom(a: &LatticeIndex, b: &LatticeIndex) -> bool {
    a.spec() == b.spec() && a.bottom() == b.bottom()
}

/// `Ind_L^T`: a subgroup of the smaller section is the same subgroup of the larger.
pub fn induce(from: &LatticeIndex, to: &LatticeIndex, x: &BurnsideElement) -> Result<BurnsideElement> {
    x.check(from)?;
    if !same_bottom(from, to) || !from.top().is_subgroup_of(to.top()) {
        return Err(Error::NotASubgroup(format!("{} ⊄ {}", from.top(), to.top())));
    }
    let mut out = BurnsideElement::zero(to);
    for (i, c) in x.terms() {
        let j = to.index_of(from.get(*i)).expect("subgroup of a subgroup");
        out.add_basis(j, c);
    }
    Ok(out)
}

/// `Res^T_L M = [T : L∨M] · (L∩M)`.
pub fn restrict(from: &LatticeIndex, to: &LatticeIndex, x: &BurnsideElement) -> Result<BurnsideElement> {
    x.check(from)?;
    if !same_bottom(from, to) || !to.top().is_subgroup_of(from.top()) {
        return Err(Error::NotASubgroup(format!("{} ⊄ {}", to.top(), from.top())));
    }
    let l = from.index_of(to.top()).expect("section top is a subgroup");
    let mut out = BurnsideElement::zero(to);
    for (i, c) in x.terms() {
        let (k, m) = basis_product(from, l, *i);
        let j = to.index_of(from.get(m)).expect("meet lies below L");
        out.add_basis(j, &(c * &Int::from(k)));
    }
    Ok(out)
}

fn check_quotient(small: &LatticeIndex, big: &LatticeIndex) -> Result<()> {
    if small.spec() != big.spec() || small.top() != big.top() || !big.bottom().is_subgroup_of(small.bottom()) {
        return Err(Error::NotAQuotient(format!(
            "{}/{} is not a quotient of {}/{}",
            small.top(),
            small.bottom(),
            big.top(),
            big.bottom()
        )));
    }
    Ok(())
}

/// `Inf`: `S/N ↦ S`.
pub fn inflate(from: &LatticeIndex, to: &LatticeIndex, x: &BurnsideElement) -> Result<BurnsideElement> {
    x.check(from)?;
    check_quotient(from, to)?;
    let mut out = BurnsideElement::zero(to);
    for (i, c) in x.terms() {
        let j = to.index_of(from.get(*i)).expect("preimage is a subgroup");
        out.add_basis(j, c);
    }
    Ok(out)
}

/// `Def`: `M ↦ (M∨N)/N`.
pub fn deflate(from: &LatticeIndex, to: &LatticeIndex, x: &BurnsideElement) -> Result<BurnsideElement> {
    x.check(from)?;
    check_quotient(to, from)?;
    let mut out = BurnsideElement::zero(to);
    for (i, c) in x.terms() {
        let s = from.get(*i).join_unchecked(to.bottom());
        let j = to.index_of(&s).expect("join contains N");
        out.add_basis(j, c);
    }
    Ok(out)
}

/// `M * (K×ρ) = [G : K∨M] · (K∩M)×ρ|`.
pub fn module_action(gl: &GammaLattice, m: usize, graph: &GraphDescriptor) -> Result<BurnsideElement> {
    let gi = gl.g_index();
    let k = gi.index_of(&graph.domain).ok_or(Error::AmbientMismatch)?;
    let meet = gi.meet(k, m);
    let coeff = gi.index_in_top(gi.join(k, m));
    let restricted = graph.restrict(gi.get(meet))?;
    let target = gl.graph_index(&restricted)?;
    let mut out = BurnsideElement::zero(gl.gamma());
    out.add_basis(target, &Int::from(coeff));
    Ok(out)
}

/// Whether `x` is supported on graph subgroups only.
pub fn is_relative(gl: &GammaLattice, x: &BurnsideElement) -> bool {
    x.support().into_iter().all(|i| gl.is_graph(i))
}

/// The part of `x` on non-graph subgroups.
pub fn project_nongraph(gl: &GammaLattice, x: &BurnsideElement) -> BurnsideElement {
    BurnsideElement {
        vec: x.vec.remap(|i| (!gl.is_graph(i)).then_some(i)),
        ..x.clone()
    }
}

/// An element of `B(G)` on the subgroup basis of `G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignatureElement {
    pub coeffs: Vec<Int>,
}

impl SignatureElement {
    pub fn from_terms<I: IntoIterator<Item = (usize, Int)>>(len: usize, terms: I) -> Self {
        let mut coeffs = vec![Int::ZERO; len];
        for (i, c) in terms {
            coeffs[i] += &c;
        }
        SignatureElement { coeffs }
    }
}

/// `σ: L×C_p ↦ L`, every other basis subgroup `↦ 0`.
pub fn signature(gl: &GammaLattice, x: &BurnsideElement) -> Result<SignatureElement> {
    x.check(gl.gamma())?;
    let n = gl.g_index().len();
    Ok(SignatureElement {
        coeffs: (0..n).map(|l| x.coeff(gl.full_fiber(l))).collect(),
    })
}

/// The section `ℓ: L ↦ L×C_p` of the signature.
pub fn signature_section(gl: &GammaLattice, s: &SignatureElement) -> BurnsideElement {
    let mut out = BurnsideElement::zero(gl.gamma());
    for (l, c) in s.coeffs.iter().enumerate() {
        out.add_basis(gl.full_fiber(l), c);
    }
    out
}
