//! Rational characters of abelian sections and the linearization map from
//! the Burnside ring into the rational representation ring, written in the
//! basis of irreducible rational characters.

use serde::Serialize;

use crate::burnside::BurnsideElement;
use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::lattice::{GammaLattice, LatticeIndex};
use crate::linalg::{invariant_factors, Int, IntMatrix};

/// An integer class function on the top of a section, stored per element in
/// the order of `top.codes()`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalCharacter {
    #[serde(skip)]
    top: Subgroup,
    values: Vec<i64>,
}

impl RationalCharacter {
    pub fn zero(index: &LatticeIndex) -> Self {
        RationalCharacter {
            top: index.top().clone(),
            values: vec![0; index.top().codes().len()],
        }
    }

    pub fn from_values(index: &LatticeIndex, values: Vec<i64>) -> Result<Self> {
        if values.len() != index.top().codes().len() {
            return Err(Error::NotACharacter(format!(
                "{} values for a group of order {}",
                values.len(),
                index.top().order()
            )));
        }
        let chi = RationalCharacter {
            top: index.top().clone(),
            values,
        };
        if !chi.is_rational() {
            return Err(Error::NotACharacter(
                "values differ on generators of one cyclic subgroup".into(),
            ));
        }
        if !chi.is_constant_on(index.bottom()) {
            return Err(Error::NotACharacter(
                "values are not constant on cosets of the section bottom".into(),
            ));
        }
        Ok(chi)
    }

    pub fn top(&self) -> &Subgroup {
        &self.top
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn degree(&self) -> i64 {
        self.values[0]
    }

    pub fn value_at_code(&self, c: u32) -> Option<i64> {
        self.top.codes().binary_search(&c).ok().map(|i| self.values[i])
    }

    fn same_top(&self, other: &Self) -> Result<()> {
        if self.top != other.top {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(i64, i64) -> i64) -> Result<Self> {
        self.same_top(other)?;
        Ok(RationalCharacter {
            top: self.top.clone(),
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Pointwise product, the character of the tensor product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scaled(&self, k: i64) -> Self {
        RationalCharacter {
            top: self.top.clone(),
            values: self.values.iter().map(|v| v * k).collect(),
        }
    }

    /// `Σ_γ χ(γ)ψ(γ)`, without the `1/|T|` factor.
    pub fn pairing(&self, other: &Self) -> Result<i128> {
        self.same_top(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| a as i128 * b as i128)
            .sum())
    }

    /// Equal values on elements generating the same cyclic subgroup.
    pub fn is_rational(&self) -> bool {
        let spec = self.top.spec();
        let codes = self.top.codes();
        codes.iter().zip(&self.values).all(|(&c, &v)| {
            let ord = spec.element_order(c);
            (2..ord)
                .filter(|k| k % spec.p() != 0)
                .all(|k| self.value_at_code(spec.mul(k, c)) == Some(v))
        })
    }

    fn is_constant_on(&self, n: &Subgroup) -> bool {
        let spec = self.top.spec();
        self.top.codes().iter().zip(&self.values).all(|(&c, &v)| {
            n.generator_codes()
                .iter()
                .all(|&h| self.value_at_code(spec.add(c, h)) == Some(v))
        })
    }
}

fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            let mut e = 0;
            while n.is_multiple_of(q) {
                n /= q;
                e += 1;
            }
            out.push((q, e));
        }
        q += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factor(n).iter().map(|&(q, e)| (q - 1) * q.pow(e - 1)).product()
}

pub fn moebius(n: u64) -> i64 {
    let f = factor(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `Σ_{(k,m)=1} ζ_m^{ka} = μ(m/d)·φ(m)/φ(m/d)` with `d = gcd(a, m)`.
pub fn ramanujan_sum(m: u64, a: i64) -> i64 {
    assert!(m >= 1, "ramanujan_sum needs m >= 1");
    let d = num_integer::gcd(a.unsigned_abs(), m);
    let q = m / d;
    moebius(q) * (euler_phi(m) / euler_phi(q)) as i64
}

/// The character of the permutation module on `T/L`.
pub fn perm_character(index: &LatticeIndex, l: &Subgroup) -> Result<RationalCharacter> {
    if index.index_of(l).is_none() {
        return Err(Error::NotASubgroup(format!("{l} is not in the section")));
    }
    let idx = index.top().order() / l.order();
    let values = index
        .top()
        .codes()
        .iter()
        .map(|&c| if l.contains_code(c) { idx as i64 } else { 0 })
        .collect();
    Ok(RationalCharacter {
        top: index.top().clone(),
        values,
    })
}

/// `Σ x_S · perm_character(S)`.
pub fn character_of(index: &LatticeIndex, x: &BurnsideElement) -> Result<RationalCharacter> {
    x.check(index)?;
    let mut out = RationalCharacter::zero(index);
    for (i, c) in x.terms() {
        let k = c
            .to_i64()
            .ok_or_else(|| Error::NotACharacter("coefficient too large".into()))?;
        let chi = perm_character(index, index.get(*i))?;
        for (o, v) in out.values.iter_mut().zip(chi.values) {
            *o += k * v;
        }
    }
    Ok(out)
}

/// `Ind_L^T χ(γ) = [T:L]·χ(γ)` on `L`, zero off `L`.
pub fn induce_character(from: &LatticeIndex, to: &LatticeIndex, chi: &RationalCharacter) -> Result<RationalCharacter> {
    if chi.top != *from.top() {
        return Err(Error::AmbientMismatch);
    }
    if from.bottom() != to.bottom() || !from.top().is_subgroup_of(to.top()) {
        return Err(Error::NotASubgroup(format!("{} ⊄ {}", from.top(), to.top())));
    }
    let idx = (to.top().order() / from.top().order()) as i64;
    let values = to
        .top()
        .codes()
        .iter()
        .map(|&c| chi.value_at_code(c).map_or(0, |v| idx * v))
        .collect();
    Ok(RationalCharacter {
        top: to.top().clone(),
        values,
    })
}

/// Pulls a character of `T/N` back to `T/B` for `B ≤ N`.
pub fn inflate_character(from: &LatticeIndex, to: &LatticeIndex, chi: &RationalCharacter) -> Result<RationalCharacter> {
    if chi.top != *from.top() {
        return Err(Error::AmbientMismatch);
    }
    if from.top() != to.top() || !to.bottom().is_subgroup_of(from.bottom()) {
        return Err(Error::NotAQuotient(format!("{}/{}", from.top(), from.bottom())));
    }
    Ok(chi.clone())
}

#[derive(Clone, Debug, Serialize)]
pub struct IrreducibleItem {
    /// Section index of the kernel `N`.
    pub kernel: usize,
    /// `|T/N|`.
    pub order: u64,
    pub character: RationalCharacter,
}

/// The irreducible rational characters of a section, one per `N` with `T/N` cyclic.
#[derive(Clone, Debug, Serialize)]
pub struct IrreducibleBasis {
    #[serde(skip)]
    top: Subgroup,
    items: Vec<IrreducibleItem>,
}

impl IrreducibleBasis {
    pub fn items(&self) -> &[IrreducibleItem] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// `Σ m_N χ_N`.
    pub fn build(&self, mult: &[i64]) -> Result<RationalCharacter> {
        if mult.len() != self.items.len() {
            return Err(Error::NotACharacter(format!(
                "{} multiplicities for {} irreducibles",
                mult.len(),
                self.items.len()
            )));
        }
        let mut values = vec![0; self.top.codes().len()];
        for (m, item) in mult.iter().zip(&self.items) {
            for (o, v) in values.iter_mut().zip(&item.character.values) {
                *o += m * v;
            }
        }
        Ok(RationalCharacter {
            top: self.top.clone(),
            values,
        })
    }
}

fn order_modulo(index: &LatticeIndex, n: &Subgroup, c: u32) -> u64 {
    let spec = index.spec();
    let mut k = 1;
    let mut x = c;
    while !n.contains_code(x) {
        x = spec.mul(spec.p(), x);
        k *= spec.p();
    }
    k
}

fn quotient_character(index: &LatticeIndex, n: &Subgroup) -> (u64, RationalCharacter) {
    let spec = index.spec();
    let top = index.top();
    let m = top.order() / n.order();
    let g = *top
        .codes()
        .iter()
        .find(|&&c| order_modulo(index, n, c) == m)
        .expect("cyclic quotients have generators");
    let mut log = std::collections::HashMap::new();
    let mut x = 0;
    for k in 0..m {
        log.insert(n.coset_min(x), k);
        x = spec.add(x, g);
    }
    let values = top
        .codes()
        .iter()
        .map(|&c| ramanujan_sum(m, log[&n.coset_min(c)] as i64))
        .collect();
    (
        m,
        RationalCharacter {
            top: top.clone(),
            values,
        },
    )
}

pub fn irreducible_basis(index: &LatticeIndex) -> IrreducibleBasis {
    let t = index.top_index();
    let items: Vec<IrreducibleItem> = (0..index.len())
        .filter(|&i| index.quotient_invariants(t, i).expect("S ≤ T").len() <= 1)
        .map(|i| {
            let (order, character) = quotient_character(index, index.get(i));
            IrreducibleItem {
                kernel: i,
                order,
                character,
            }
        })
        .collect();
    assert_eq!(
        items.len(),
        index.cyclic_count(),
        "cyclic quotients and cyclic subgroups are equinumerous"
    );
    IrreducibleBasis {
        top: index.top().clone(),
        items,
    }
}

/// Multiplicities `m_N = ⟨ψ, χ_N⟩ / φ(|T/N|)`.
pub fn decompose(psi: &RationalCharacter, basis: &IrreducibleBasis) -> Result<Vec<i64>> {
    if psi.top != basis.top {
        return Err(Error::AmbientMismatch);
    }
    let size = psi.values.len() as i128;
    let mult = basis
        .items
        .iter()
        .map(|item| {
            let num = psi.pairing(&item.character)?;
            let den = size * euler_phi(item.order) as i128;
            if num % den != 0 {
                return Err(Error::NotACharacter(format!(
                    "inner product {num}/{den} with the irreducible of kernel #{} is not integral",
                    item.kernel
                )));
            }
            Ok((num / den) as i64)
        })
        .collect::<Result<Vec<_>>>()?;
    if basis.build(&mult)? != *psi {
        return Err(Error::NotACharacter(
            "not a combination of irreducible rational characters".into(),
        ));
    }
    Ok(mult)
}

/// One row per listed subgroup: its permutation character in irreducible coordinates.
pub fn f_matrix_rows(index: &LatticeIndex, rows: &[usize]) -> IntMatrix {
    let basis = irreducible_basis(index);
    let out: Vec<Vec<i64>> = rows
        .iter()
        .map(|&i| {
            let chi = perm_character(index, index.get(i)).expect("basis subgroup");
            decompose(&chi, &basis).expect("permutation characters are characters")
        })
        .collect();
    if out.is_empty() {
        return IntMatrix::zeros(0, basis.len());
    }
    IntMatrix::from_i64(&out)
}

/// The linearization map on the whole basis of `B`.
pub fn f_matrix(index: &LatticeIndex) -> IntMatrix {
    let rows: Vec<usize> = (0..index.len()).collect();
    f_matrix_rows(index, &rows)
}

/// The relative map, restricted to graph subgroups of `G×C_p`.
pub fn f_matrix_graphs(gl: &GammaLattice) -> IntMatrix {
    f_matrix_rows(gl.gamma(), gl.graph_columns())
}

/// Nonzero invariant factors of the cokernel presentation.
pub fn cokernel_invariants(m: &IntMatrix) -> Vec<Int> {
    invariant_factors(m)
}

/// Whether the row span of `m` is all of `Z^cols`.
pub fn is_surjective(m: &IntMatrix) -> bool {
    let d = cokernel_invariants(m);
    d.len() == m.ncols() && d.iter().all(Int::is_one)
}
