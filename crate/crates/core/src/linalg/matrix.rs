use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Int, SparseVec};
use crate::error::LinalgError;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Int::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Int>>) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let ncols = rows.first().map(Vec::len).unwrap_or(0);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(LinalgError::Ragged);
        }
        Ok(IntMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor for literals; panics on ragged input.
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| Int::from(v)).collect()).collect())
            .expect("rectangular literal")
    }

    /// Builds a `rows × cols` matrix from sparse rows.
    pub fn from_sparse_rows(rows: &[SparseVec], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (c, a) in r.entries() {
                m.set(i, *c, a.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Int] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn sparse_row(&self, i: usize) -> SparseVec {
        SparseVec::from_dense(self.row(i))
    }

    pub fn sparse_rows(&self) -> Vec<SparseVec> {
        (0..self.rows).map(|i| self.sparse_row(i)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Int::is_zero)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                left: self.cols,
                right: other.rows,
            });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j) + &(a * b);
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix: `v · self`.
    pub fn left_mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Int::ZERO; self.cols];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let b = self.get(i, j);
                if !b.is_zero() {
                    *o = &*o + &(a * b);
                }
            }
        }
        out
    }

    /// Sparse row vector times matrix.
    pub fn left_mul_sparse(&self, v: &SparseVec) -> SparseVec {
        let mut out = vec![Int::ZERO; self.cols];
        for (i, a) in v.entries() {
            for (j, o) in out.iter_mut().enumerate() {
                let b = self.get(*i, j);
                if !b.is_zero() {
                    *o = &*o + &(a * b);
                }
            }
        }
        SparseVec::from_dense(&out)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<Int, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Int::ONE);
        }
        let mut a = self.clone();
        let mut sign = Int::ONE;
        let mut prev = Int::ONE;
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                    return Ok(Int::ZERO);
                };
                a.swap_rows(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(a.get(i, j) * a.get(k, k)) - &(a.get(i, k) * a.get(k, j));
                    let v = num.div_exact(&prev).expect("Bareiss division is exact");
                    a.set(i, j, v);
                }
                a.set(i, k, Int::ZERO);
            }
            prev = a.get(k, k).clone();
        }
        Ok(&sign * a.get(n - 1, n - 1))
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// `row[dst] -= q · row[src]`.
    pub fn row_sub_mul(&mut self, dst: usize, src: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let s = self.get(src, c).clone();
            if !s.is_zero() {
                self.data[dst * self.cols + c].sub_mul(q, &s);
            }
        }
    }

    /// `col[dst] -= q · col[src]`.
    pub fn col_sub_mul(&mut self, dst: usize, src: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let s = self.get(r, src).clone();
            if !s.is_zero() {
                self.data[r * self.cols + dst].sub_mul(q, &s);
            }
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for v in self.row_mut(i) {
            *v = -&*v;
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for r in 0..self.rows {
            let idx = r * self.cols + j;
            self.data[idx] = -&self.data[idx];
        }
    }

    /// Writes the matrix as CSV, one row per line.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(Int::to_string).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<Int>>::deserialize(d)?;
        IntMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_small() {
        assert_eq!(
            IntMatrix::from_i64(&[vec![2, 4], vec![1, 3]]).det().unwrap(),
            Int::from(2)
        );
        assert_eq!(
            IntMatrix::from_i64(&[vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]])
                .det()
                .unwrap(),
            Int::from(-2)
        );
        assert_eq!(IntMatrix::zeros(0, 0).det().unwrap(), Int::ONE);
    }

    #[test]
    fn mul_and_transpose() {
        let a = IntMatrix::from_i64(&[vec![1, 2], vec![3, 4], vec![5, 6]]);
        let at = a.transpose();
        let g = at.mul(&a).unwrap();
        assert_eq!(g, IntMatrix::from_i64(&[vec![35, 44], vec![44, 56]]));
        assert!(a.mul(&a).is_err());
    }
}
