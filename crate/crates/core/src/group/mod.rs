//! Finite abelian p-groups `C_{p^e1} × … × C_{p^er}`.
//!
//! Elements are residue vectors. Internally every element also has a `u32`
//! code: the mixed-radix number whose most significant digit is the first
//! residue, so that numeric order on codes is lexicographic order on residues.

pub(crate) mod goursat;
mod subgroup;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use goursat::{
    goursat_compose, goursat_decompose, graph_classify, graph_compose, homomorphisms, GoursatQuintuple, GraphDescriptor,
};
pub use subgroup::{meet_join, quotient_invariants, Subgroup};

/// Default bound on `log_p |G|`.
pub const DEFAULT_MAX_LOG_ORDER: u32 = 6;

/// Largest accepted group order; keeps element codes in `u32`.
const MAX_ORDER: u64 = 1 << 24;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupSpec {
    p: u64,
    exponents: Vec<u32>,
    moduli: Vec<u32>,
    order: u32,
}

fn partitions(n: u32, largest: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for part in (1..=largest.min(n)).rev() {
        prefix.push(part);
        partitions(n - part, part, prefix, out);
        prefix.pop();
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl GroupSpec {
    /// Validated spec with the default order bound `p^6`.
    pub fn new(p: u64, exponents: Vec<u32>) -> Result<Self> {
        Self::with_bound(p, exponents, DEFAULT_MAX_LOG_ORDER)
    }

    /// Validated spec with `|G| ≤ p^max_log_order`.
    pub fn with_bound(p: u64, exponents: Vec<u32>, max_log_order: u32) -> Result<Self> {
        let spec = Self::unbounded(p, exponents)?;
        if spec.log_order() > max_log_order {
            return Err(Error::OrderBoundExceeded(format!(
                "|G| = {}^{} exceeds the bound {}^{}",
                p,
                spec.log_order(),
                p,
                max_log_order
            )));
        }
        Ok(spec)
    }

    fn unbounded(p: u64, exponents: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Validation(format!("{p} is not prime")));
        }
        if exponents.contains(&0) {
            return Err(Error::Validation("exponents must be positive".into()));
        }
        if exponents.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Validation(format!(
                "exponents {exponents:?} are not non-increasing"
            )));
        }
        let mut order: u64 = 1;
        let mut moduli = Vec::with_capacity(exponents.len());
        for &e in &exponents {
            let m = p
                .checked_pow(e)
                .filter(|m| *m <= MAX_ORDER)
                .ok_or_else(|| Error::OrderBoundExceeded(format!("{p}^{e} is too large")))?;
            order = order
                .checked_mul(m)
                .filter(|o| *o <= MAX_ORDER)
                .ok_or_else(|| Error::OrderBoundExceeded("group order too large".into()))?;
            moduli.push(m as u32);
        }
        Ok(GroupSpec {
            p,
            exponents,
            moduli,
            order: order as u32,
        })
    }

    /// Parses `<p>:[e1,...,er]` with the default bound.
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with_bound(text, DEFAULT_MAX_LOG_ORDER)
    }

    pub fn parse_with_bound(text: &str, max_log_order: u32) -> Result<Self> {
        let bad = || Error::Parse(format!("expected <p>:[e1,...], got {text:?}"));
        let (p, rest) = text.trim().split_once(':').ok_or_else(bad)?;
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        let inner = rest
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let exponents = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|e| e.trim().parse::<u32>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?
        };
        Self::with_bound(p, exponents, max_log_order)
    }

    /// The cyclic group `C_p`.
    pub fn cyclic_p(p: u64) -> Result<Self> {
        Self::unbounded(p, vec![1])
    }

    /// Every abelian `p`-group with `|G| ≤ max_order`, trivial group first,
    /// then by order and by partition in decreasing lexicographic order.
    pub fn family(p: u64, max_order: u64) -> Result<Vec<Self>> {
        if !is_prime(p) {
            return Err(Error::Validation(format!("{p} is not prime")));
        }
        let mut top = 0;
        while p.checked_pow(top + 1).is_some_and(|o| o <= max_order) {
            top += 1;
        }
        let mut out = Vec::new();
        for k in 0..=top {
            let mut parts = Vec::new();
            partitions(k, k, &mut Vec::new(), &mut parts);
            for e in parts {
                out.push(Self::with_bound(p, e, top.max(DEFAULT_MAX_LOG_ORDER))?);
            }
        }
        Ok(out)
    }

    /// `Γ = G × C_p`, the C_p factor as the last coordinate.
    pub fn gamma(&self) -> GroupSpec {
        let mut e = self.exponents.clone();
        e.push(1);
        Self::unbounded(self.p, e).expect("appending C_p keeps the spec valid")
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    pub fn order(&self) -> u64 {
        self.order as u64
    }

    pub fn log_order(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// Invariant factors `p^e1 ≥ … ≥ p^er`.
    pub fn invariants(&self) -> Vec<u64> {
        self.moduli.iter().map(|&m| m as u64).collect()
    }

    pub fn element(&self, residues: &[u64]) -> Result<GroupElement> {
        if residues.len() != self.rank() {
            return Err(Error::Validation(format!(
                "element {residues:?} has {} coordinates, group {} has {}",
                residues.len(),
                self,
                self.rank()
            )));
        }
        for (r, m) in residues.iter().zip(&self.moduli) {
            if *r >= *m as u64 {
                return Err(Error::Validation(format!("residue {r} out of range for modulus {m}")));
            }
        }
        Ok(GroupElement {
            residues: residues.to_vec(),
        })
    }

    pub(crate) fn encode(&self, e: &GroupElement) -> u32 {
        let mut code = 0u32;
        for (r, m) in e.residues.iter().zip(&self.moduli) {
            code = code * m + *r as u32;
        }
        code
    }

    pub(crate) fn decode(&self, mut code: u32) -> GroupElement {
        let mut residues = vec![0u64; self.rank()];
        for (r, m) in residues.iter_mut().zip(&self.moduli).rev() {
            *r = (code % m) as u64;
            code /= m;
        }
        GroupElement { residues }
    }

    pub(crate) fn add(&self, mut a: u32, mut b: u32) -> u32 {
        let mut out = 0u32;
        let mut weight = 1u32;
        for m in self.moduli.iter().rev() {
            let s = (a % m + b % m) % m;
            out += s * weight;
            weight *= m;
            a /= m;
            b /= m;
        }
        out
    }

    #[cfg(test)]
    pub(crate) fn neg(&self, mut a: u32) -> u32 {
        let mut out = 0u32;
        let mut weight = 1u32;
        for m in self.moduli.iter().rev() {
            let s = (m - a % m) % m;
            out += s * weight;
            weight *= m;
            a /= m;
        }
        out
    }

    pub(crate) fn mul(&self, k: u64, mut a: u32) -> u32 {
        let mut out = 0u32;
        let mut weight = 1u32;
        for m in self.moduli.iter().rev() {
            let s = ((a % m) as u64 * (k % *m as u64) % *m as u64) as u32;
            out += s * weight;
            weight *= m;
            a /= m;
        }
        out
    }

    /// Order of the element with code `a`.
    pub(crate) fn element_order(&self, mut a: u32) -> u64 {
        let mut ord = 1u64;
        for m in self.moduli.iter().rev() {
            let r = a % m;
            a /= m;
            let mut o = 1u64;
            let mut x = r as u64;
            while x != 0 {
                x = x * self.p % *m as u64;
                o *= self.p;
            }
            ord = ord.max(o);
        }
        ord
    }

    pub fn order_of(&self, e: &GroupElement) -> u64 {
        self.element_order(self.encode(e))
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(|c| self.decode(c))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.exponents.iter().map(u32::to_string).collect();
        write!(f, "{}:[{}]", self.p, e.join(","))
    }
}

impl fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupSpec({self})")
    }
}

impl FromStr for GroupSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        GroupSpec::parse_with_bound(&s, u32::MAX).map_err(serde::de::Error::custom)
    }
}

/// A residue vector; meaningful relative to a [`GroupSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    residues: Vec<u64>,
}

impl GroupElement {
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r: Vec<String> = self.residues.iter().map(u64::to_string).collect();
        write!(f, "({})", r.join(","))
    }
}
