use serde::{Deserialize, Serialize};

use super::Int;

/// A sparse integer row vector: `(column, value)` pairs with strictly
/// increasing columns and no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SparseVec {
    entries: Vec<(usize, Int)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds from arbitrary `(column, value)` pairs, summing duplicates.
    pub fn from_pairs<I: IntoIterator<Item = (usize, Int)>>(pairs: I) -> Self {
        let mut v: Vec<(usize, Int)> = pairs.into_iter().collect();
        v.sort_by_key(|(c, _)| *c);
        let mut entries: Vec<(usize, Int)> = Vec::with_capacity(v.len());
        for (c, a) in v {
            match entries.last_mut() {
                Some((lc, la)) if *lc == c => *la += &a,
                _ => entries.push((c, a)),
            }
        }
        entries.retain(|(_, a)| !a.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(values: &[Int]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .map(|(c, a)| (c, a.clone()))
                .collect(),
        }
    }

    pub fn unit(col: usize) -> Self {
        SparseVec {
            entries: vec![(col, Int::ONE)],
        }
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Int> {
        let mut out = vec![Int::ZERO; dim];
        for (c, a) in &self.entries {
            out[*c] = a.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Int)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Int)> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn leading(&self) -> Option<(usize, &Int)> {
        self.entries.first().map(|(c, a)| (*c, a))
    }

    pub fn max_col(&self) -> Option<usize> {
        self.entries.last().map(|(c, _)| *c)
    }

    pub fn get(&self, col: usize) -> Int {
        match self.entries.binary_search_by_key(&col, |(c, _)| *c) {
            Ok(i) => self.entries[i].1.clone(),
            Err(_) => Int::ZERO,
        }
    }

    pub fn scaled(&self, k: &Int) -> SparseVec {
        if k.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(c, a)| (*c, a * k)).collect(),
        }
    }

    pub fn negated(&self) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(c, a)| (*c, -a)).collect(),
        }
    }

    /// `self - q·other`.
    pub fn sub_scaled(&self, q: &Int, other: &SparseVec) -> SparseVec {
        if q.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ca = a.get(i).map(|e| e.0).unwrap_or(usize::MAX);
            let cb = b.get(j).map(|e| e.0).unwrap_or(usize::MAX);
            if ca < cb {
                out.push(a[i].clone());
                i += 1;
            } else if cb < ca {
                out.push((cb, -(q * &b[j].1)));
                j += 1;
            } else {
                let mut v = a[i].1.clone();
                v.sub_mul(q, &b[j].1);
                if !v.is_zero() {
                    out.push((ca, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }

    /// `self[col] += k` in place.
    pub(crate) fn add_at(&mut self, col: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        match self.entries.binary_search_by_key(&col, |e| e.0) {
            Ok(i) => {
                self.entries[i].1 += k;
                if self.entries[i].1.is_zero() {
                    self.entries.remove(i);
                }
            }
            Err(i) => self.entries.insert(i, (col, k.clone())),
        }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.sub_scaled(&Int::from(-1), other)
    }

    /// `a·x + b·y`.
    pub fn lin_comb(a: &Int, x: &SparseVec, b: &Int, y: &SparseVec) -> SparseVec {
        x.scaled(a).sub_scaled(&-b, y)
    }

    /// Re-indexes columns through `map`; entries mapping to `None` are dropped.
    pub fn remap<F: Fn(usize) -> Option<usize>>(&self, map: F) -> SparseVec {
        SparseVec::from_pairs(
            self.entries
                .iter()
                .filter_map(|(c, a)| map(*c).map(|nc| (nc, a.clone()))),
        )
    }
}
