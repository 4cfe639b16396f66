//! Sublattices of `Z^n` in canonical Hermite normal form.

use serde::Serialize;

use super::{Echelon, Insert, Int, IntMatrix, SparseVec};
use crate::error::LinalgError;

/// A sublattice of `Z^dim`, stored as the nonzero rows of its HNF basis.
/// Two lattices are equal exactly when their bases are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Lattice {
    dim: usize,
    rows: Vec<SparseVec>,
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice { dim, rows: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        Lattice {
            dim,
            rows: (0..dim).map(SparseVec::unit).collect(),
        }
    }

    /// The lattice spanned by `rows`.
    pub fn from_rows<I: IntoIterator<Item = SparseVec>>(dim: usize, rows: I) -> Self {
        let mut ech = Echelon::new(dim, false);
        for (i, r) in rows.into_iter().enumerate() {
            ech.insert(r, i);
        }
        Self::from_echelon(ech)
    }

    pub fn from_matrix(a: &IntMatrix) -> Self {
        Self::from_rows(a.ncols(), a.sparse_rows())
    }

    pub(crate) fn from_echelon(ech: Echelon) -> Self {
        let dim = ech.dim();
        Lattice {
            dim,
            rows: ech.into_hnf().into_iter().map(|r| r.vec).collect(),
        }
    }

    /// Wraps rows already known to be in HNF; checked in debug builds.
    pub(crate) fn from_hnf_rows(dim: usize, rows: Vec<SparseVec>) -> Self {
        let lat = Lattice { dim, rows };
        debug_assert!(lat.is_hnf(), "rows are not in Hermite normal form");
        lat
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn basis(&self) -> IntMatrix {
        IntMatrix::from_sparse_rows(&self.rows, self.dim)
    }

    /// `(pivot column, pivot value)` of every basis row.
    pub fn pivots(&self) -> Vec<(usize, Int)> {
        self.rows
            .iter()
            .map(|r| {
                let (c, a) = r.leading().expect("nonzero row");
                (c, a.clone())
            })
            .collect()
    }

    /// Product of the pivots; the covolume of the lattice inside its own
    /// pivot coordinates.
    pub fn pivot_product(&self) -> Int {
        self.pivots().into_iter().map(|(_, a)| a).product()
    }

    fn is_hnf(&self) -> bool {
        let piv = self.pivots();
        if piv.windows(2).any(|w| w[0].0 >= w[1].0) || piv.iter().any(|(_, a)| !a.is_positive()) {
            return false;
        }
        self.rows.iter().zip(&piv).all(|(r, (own, _))| {
            piv.iter().filter(|(c, _)| c > own).all(|(c, d)| {
                let x = r.get(*c);
                !x.is_negative() && x < *d
            })
        })
    }

    fn row_with_pivot(&self, col: usize) -> Option<&SparseVec> {
        self.rows
            .binary_search_by_key(&col, |r| r.leading().expect("nonzero row").0)
            .ok()
            .map(|i| &self.rows[i])
    }

    /// Coordinates of `v` in the HNF basis, or `None` if `v` is not a member.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Int>> {
        let mut coords = vec![Int::ZERO; self.rows.len()];
        let mut v = v.clone();
        while let Some((c, a)) = v.leading().map(|(c, a)| (c, a.clone())) {
            let i = self
                .rows
                .binary_search_by_key(&c, |r| r.leading().expect("nonzero row").0)
                .ok()?;
            let row = &self.rows[i];
            let q = a.div_exact(row.leading().expect("nonzero row").1)?;
            v = v.sub_scaled(&q, row);
            coords[i] = q;
        }
        Some(coords)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        let mut v = v.clone();
        while let Some((c, a)) = v.leading().map(|(c, a)| (c, a.clone())) {
            let Some(row) = self.row_with_pivot(c) else {
                return false;
            };
            let Some(q) = a.div_exact(row.leading().expect("nonzero row").1) else {
                return false;
            };
            v = v.sub_scaled(&q, row);
        }
        true
    }

    pub fn contains_dense(&self, v: &[Int]) -> bool {
        v.len() == self.dim && self.contains(&SparseVec::from_dense(v))
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.dim == other.dim && self.rows.iter().all(|r| other.contains(r))
    }

    fn check_dim(&self, other: &Lattice) -> Result<(), LinalgError> {
        if self.dim != other.dim {
            return Err(LinalgError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice, LinalgError> {
        self.check_dim(other)?;
        Ok(Lattice::from_rows(
            self.dim,
            self.rows.iter().chain(other.rows.iter()).cloned(),
        ))
    }

    /// Intersection via the kernel of the stacked bases: if `x·A + y·B = 0`
    /// then `x·A = -y·B` lies in both lattices, and every common vector arises so.
    pub fn intersect(&self, other: &Lattice) -> Result<Lattice, LinalgError> {
        self.check_dim(other)?;
        let ra = self.rank();
        let stacked: Vec<SparseVec> = self.rows.iter().chain(other.rows.iter()).cloned().collect();
        let (ker, _) = left_kernel(&stacked, self.dim);
        let gens = ker.rows.iter().map(|k| {
            let mut acc = SparseVec::new();
            for (i, c) in k.entries() {
                if *i < ra {
                    acc = acc.sub_scaled(&-c, &self.rows[*i]);
                }
            }
            acc
        });
        Ok(Lattice::from_rows(self.dim, gens))
    }

    /// Intersection with the coordinate subspace where every column in
    /// `cols` vanishes.
    pub fn zero_on(&self, cols: &[usize]) -> Lattice {
        let mut pos = vec![None; self.dim];
        for (k, &c) in cols.iter().enumerate() {
            pos[c] = Some(k);
        }
        let restricted: Vec<SparseVec> = self.rows.iter().map(|r| r.remap(|c| pos[c])).collect();
        let (ker, _) = left_kernel(&restricted, cols.len());
        let gens = ker.rows.iter().map(|k| {
            let mut acc = SparseVec::new();
            for (i, c) in k.entries() {
                acc = acc.sub_scaled(&-c, &self.rows[*i]);
            }
            acc
        });
        Lattice::from_rows(self.dim, gens)
    }

    /// Re-embeds into `Z^new_dim` through a strictly increasing column map,
    /// which preserves Hermite normal form.
    pub fn embed(&self, new_dim: usize, col_map: &[usize]) -> Lattice {
        assert_eq!(col_map.len(), self.dim);
        assert!(col_map.windows(2).all(|w| w[0] < w[1]));
        assert!(col_map.last().is_none_or(|&c| c < new_dim));
        Lattice::from_hnf_rows(
            new_dim,
            self.rows.iter().map(|r| r.remap(|c| Some(col_map[c]))).collect(),
        )
    }

    pub fn scaled(&self, k: &Int) -> Lattice {
        Lattice::from_rows(self.dim, self.rows.iter().map(|r| r.scaled(k)))
    }
}

/// Left kernel `{x : Σ x_i rows_i = 0}` of sparse rows living in `Z^m`,
/// together with the rank of the row span.
///
/// Uses the augmented rows `[row_i | e_i]`; rows are inserted last-first so
/// that when the leading block has unit pivots each kernel vector comes out
/// as `e_i` plus entries in later columns, already in normal form.
pub(crate) fn left_kernel(rows: &[SparseVec], m: usize) -> (Lattice, usize) {
    let n = rows.len();
    let mut ech = Echelon::new(m + n, false);
    for i in (0..n).rev() {
        let mut pairs = rows[i].entries().to_vec();
        pairs.push((m + i, Int::ONE));
        ech.insert(SparseVec::from_pairs(pairs), i);
    }
    let hnf_rows = ech.into_hnf();
    let mut rank = 0;
    let mut kernel = Vec::new();
    for r in hnf_rows {
        let lead = r.vec.leading().expect("nonzero row").0;
        if lead < m {
            rank += 1;
        } else {
            kernel.push(r.vec.remap(|c| c.checked_sub(m)));
        }
    }
    (Lattice::from_hnf_rows(n, kernel), rank)
}

/// The full integer left kernel `{x : x·a = 0}` in HNF.
pub fn kernel_lattice(a: &IntMatrix) -> Lattice {
    left_kernel(&a.sparse_rows(), a.ncols()).0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CombineMode {
    Sum,
    Intersect,
}

pub fn lattice_combine(a: &Lattice, b: &Lattice, mode: CombineMode) -> Result<Lattice, LinalgError> {
    match mode {
        CombineMode::Sum => a.sum(b),
        CombineMode::Intersect => a.intersect(b),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeComparison {
    pub equal: bool,
    pub a_in_b: bool,
    /// `[b : a]` when `a ⊆ b` with equal rank.
    pub index: Option<Int>,
    /// Whether the two lattices span the same rational subspace, i.e. have
    /// equal saturations.
    pub saturation_equal: bool,
}

pub fn lattice_compare(a: &Lattice, b: &Lattice) -> Result<LatticeComparison, LinalgError> {
    a.check_dim(b)?;
    let equal = a == b;
    let a_in_b = equal || a.is_sublattice_of(b);
    let index = (a_in_b && a.rank() == b.rank()).then(|| {
        a.pivot_product()
            .div_exact(&b.pivot_product())
            .expect("sublattice covolume divides")
    });
    let saturation_equal = if a.rank() != b.rank() {
        false
    } else if a_in_b {
        true
    } else {
        a.sum(b)?.rank() == a.rank()
    };
    Ok(LatticeComparison {
        equal,
        a_in_b,
        index,
        saturation_equal,
    })
}

/// Expresses targets as integer combinations of a fixed generator list.
///
/// Built in two passes: an untracked pass finds the generators that actually
/// change the echelon form, then only those are re-inserted with their
/// combinations tracked. The resulting coefficients are deterministic.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    ech: Echelon,
    essential: Vec<usize>,
    generator_count: usize,
}

impl SpanSolver {
    pub fn new(dim: usize, gens: &[SparseVec]) -> Self {
        let mut probe = Echelon::new(dim, false);
        let mut essential = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            if probe.insert(g.clone(), i) == Insert::Changed {
                essential.push(i);
            }
        }
        let mut ech = Echelon::new(dim, true);
        for &i in &essential {
            ech.insert(gens[i].clone(), i);
        }
        SpanSolver {
            ech,
            essential,
            generator_count: gens.len(),
        }
    }

    /// Indices of the generators that the span actually needed.
    pub fn essential(&self) -> &[usize] {
        &self.essential
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn rank(&self) -> usize {
        self.ech.rank()
    }

    /// Sparse coefficient vector over generator indices, or `None`.
    pub fn solve(&self, target: &SparseVec) -> Option<SparseVec> {
        self.ech.solve(target)
    }
}

/// Integer coefficients `c` with `c·gens = target`, or `None` when the target
/// is outside the integer span of the rows of `gens`.
pub fn solve_in_span(gens: &IntMatrix, target: &[Int]) -> Option<Vec<Int>> {
    assert_eq!(target.len(), gens.ncols());
    let solver = SpanSolver::new(gens.ncols(), &gens.sparse_rows());
    solver
        .solve(&SparseVec::from_dense(target))
        .map(|c| c.to_dense(gens.nrows()))
}
