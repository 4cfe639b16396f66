use serde::Serialize;

use super::{Echelon, Int, IntMatrix, Lattice, SparseVec};

/// Row Hermite normal form `h = u·a` with `u` unimodular.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hnf {
    pub h: IntMatrix,
    pub u: IntMatrix,
}

/// Smith normal form `s = u·a·v` with `u`, `v` unimodular and `s` diagonal,
/// each diagonal entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Snf {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<Int> {
        let k = self.s.nrows().min(self.s.ncols());
        (0..k).map(|i| self.s.get(i, i).clone()).collect()
    }
}

/// Hermite normal form with transform.
///
/// Computed as the echelon form of the augmented rows `[a_i | e_i]`: the
/// first block of the result is `HNF(a)` padded with zero rows, the second is
/// the transform. Pivots are the first nonzero entry of each row, positive,
/// with entries above a pivot reduced into `[0, pivot)`.
pub fn hnf(a: &IntMatrix) -> Hnf {
    let (n, m) = (a.nrows(), a.ncols());
    let mut ech = Echelon::new(m + n, false);
    for i in (0..n).rev() {
        let mut pairs: Vec<(usize, Int)> = a.sparse_row(i).into_entries();
        pairs.push((m + i, Int::ONE));
        ech.insert(SparseVec::from_pairs(pairs), i);
    }
    let rows = ech.into_hnf();
    debug_assert_eq!(rows.len(), n);
    let mut h = IntMatrix::zeros(n, m);
    let mut u = IntMatrix::zeros(n, n);
    for (i, row) in rows.iter().enumerate() {
        for (c, v) in row.vec.entries() {
            if *c < m {
                h.set(i, *c, v.clone());
            } else {
                u.set(i, c - m, v.clone());
            }
        }
    }
    Hnf { h, u }
}

/// Smith normal form with both transforms.
pub fn snf(a: &IntMatrix) -> Snf {
    let (m, n) = (a.nrows(), a.ncols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = s.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < s.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish_signs(s, u, v);
            };
            s.swap_rows(t, bi);
            u.swap_rows(t, bi);
            s.swap_cols(t, bj);
            v.swap_cols(t, bj);
            let pivot = s.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                let q = s.get(i, t).div_floor(&pivot);
                s.row_sub_mul(i, t, &q);
                u.row_sub_mul(i, t, &q);
                clean &= s.get(i, t).is_zero();
            }
            for j in t + 1..n {
                let q = s.get(t, j).div_floor(&pivot);
                s.col_sub_mul(j, t, &q);
                v.col_sub_mul(j, t, &q);
                clean &= s.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let bad_row = (t + 1..m).find(|&i| (t + 1..n).any(|j| !s.get(i, j).mod_floor(&pivot).is_zero()));
            match bad_row {
                Some(i) => {
                    s.row_sub_mul(t, i, &Int::from(-1));
                    u.row_sub_mul(t, i, &Int::from(-1));
                }
                None => break,
            }
        }
    }
    finish_signs(s, u, v)
}

fn finish_signs(mut s: IntMatrix, mut u: IntMatrix, v: IntMatrix) -> Snf {
    for t in 0..s.nrows().min(s.ncols()) {
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    Snf { s, u, v }
}

/// Nonzero invariant factors of the cokernel of `x ↦ x·a`, i.e. of
/// `Z^cols / rowspace(a)`. Reduces to the row HNF first so that tall
/// matrices only pay for a rank-sized Smith form.
pub fn invariant_factors(a: &IntMatrix) -> Vec<Int> {
    let lat = Lattice::from_rows(a.ncols(), a.sparse_rows());
    let basis = lat.basis();
    snf(&basis).diagonal().into_iter().filter(|d| !d.is_zero()).collect()
}
