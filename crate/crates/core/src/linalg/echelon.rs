//! Incremental integer row echelon form.
//!
//! Vectors are inserted one at a time. The builder keeps one row per pivot
//! column and maintains the invariant that no row has a nonzero entry in the
//! pivot column of a *unit* pivot other than its own. For the sparse,
//! mostly-unimodular matrices that Burnside kernels produce this keeps rows
//! short, so insertion cost tracks the number of non-unit pivots rather than
//! the dimension. [`Echelon::into_hnf`] finishes the reduction above non-unit
//! pivots to reach the canonical Hermite normal form.
//!
//! Optionally every row carries a `combo`: its expression as an integer
//! combination of the inserted vectors, indexed by the caller's ids.

use super::{Int, SparseVec};

#[derive(Clone, Debug)]
pub(crate) struct Row {
    pub vec: SparseVec,
    pub combo: Option<SparseVec>,
}

impl Row {
    fn pivot_col(&self) -> usize {
        self.vec.leading().expect("echelon rows are nonzero").0
    }

    fn pivot(&self) -> &Int {
        self.vec.leading().expect("echelon rows are nonzero").1
    }
}

/// Outcome of inserting one vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Insert {
    /// Already in the span; nothing changed.
    Redundant,
    /// The row lattice grew.
    Changed,
}

#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    dim: usize,
    rows: Vec<Row>,
    pivot_row: Vec<Option<u32>>,
    track: bool,
}

impl Echelon {
    pub fn new(dim: usize, track: bool) -> Self {
        Echelon {
            dim,
            rows: Vec::new(),
            pivot_row: vec![None; dim],
            track,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn row_at(&self, col: usize) -> Option<usize> {
        self.pivot_row[col].map(|r| r as usize)
    }

    /// Reduces `v` against the current rows: entries in pivot columns end up
    /// in `[0, pivot)`, and in particular vanish in unit pivot columns.
    fn reduce(&self, v: &mut SparseVec, combo: &mut Option<SparseVec>) {
        let mut pos = 0;
        while pos < v.nnz() {
            let (c, a) = {
                let (c, a) = &v.entries()[pos];
                (*c, a.clone())
            };
            if let Some(r) = self.row_at(c) {
                let row = &self.rows[r];
                let q = a.div_floor(row.pivot());
                if !q.is_zero() {
                    *v = v.sub_scaled(&q, &row.vec);
                    if let (Some(cb), Some(rc)) = (combo.as_mut(), row.combo.as_ref()) {
                        *cb = cb.sub_scaled(&q, rc);
                    }
                    if pos < v.nnz() && v.entries()[pos].0 == c {
                        pos += 1;
                    }
                    continue;
                }
            }
            pos += 1;
        }
    }

    /// Clears column `col` from every row except `owner`, whose pivot there is 1.
    fn eliminate_column(&mut self, col: usize, owner: usize) {
        let (pivot_vec, pivot_combo) = {
            let r = &self.rows[owner];
            (r.vec.clone(), r.combo.clone())
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == owner || row.pivot_col() >= col {
                continue;
            }
            let q = row.vec.get(col);
            if q.is_zero() {
                continue;
            }
            row.vec = row.vec.sub_scaled(&q, &pivot_vec);
            if let (Some(cb), Some(pc)) = (row.combo.as_mut(), pivot_combo.as_ref()) {
                *cb = cb.sub_scaled(&q, pc);
            }
        }
    }

    /// Inserts `v`; `id` names it in row combinations when tracking is on.
    pub fn insert(&mut self, v: SparseVec, id: usize) -> Insert {
        let combo = self.track.then(|| SparseVec::unit(id));
        self.insert_with(v, combo)
    }

    pub fn insert_with(&mut self, mut v: SparseVec, mut combo: Option<SparseVec>) -> Insert {
        if let Some(m) = v.max_col() {
            assert!(m < self.dim, "vector column {m} out of range {}", self.dim);
        }
        if !self.track {
            combo = None;
        }
        let mut outcome = Insert::Redundant;
        loop {
            self.reduce(&mut v, &mut combo);
            let Some((c, a)) = v.leading().map(|(c, a)| (c, a.clone())) else {
                return outcome;
            };
            outcome = Insert::Changed;
            match self.row_at(c) {
                None => {
                    if a.is_negative() {
                        v = v.negated();
                        combo = combo.map(|cb| cb.negated());
                    }
                    let unit = v.leading().map(|(_, a)| a.is_one()).unwrap_or(false);
                    let idx = self.rows.len();
                    self.rows.push(Row { vec: v, combo });
                    self.pivot_row[c] = Some(idx as u32);
                    if unit {
                        self.eliminate_column(c, idx);
                    }
                    return outcome;
                }
                Some(r) => {
                    // Unimodular 2x2 step: [s t; a/g -d/g] has determinant -1.
                    let d = self.rows[r].pivot().clone();
                    let (g, s, t) = Int::ext_gcd(&d, &a);
                    let a_g = a.div_exact(&g).expect("gcd divides");
                    let d_g = d.div_exact(&g).expect("gcd divides");
                    let row = &self.rows[r];
                    let new_row = SparseVec::lin_comb(&s, &row.vec, &t, &v);
                    let new_v = SparseVec::lin_comb(&a_g, &row.vec, &-&d_g, &v);
                    let (new_row_combo, new_v_combo) = match (&row.combo, &combo) {
                        (Some(rc), Some(vc)) => (
                            Some(SparseVec::lin_comb(&s, rc, &t, vc)),
                            Some(SparseVec::lin_comb(&a_g, rc, &-&d_g, vc)),
                        ),
                        _ => (None, None),
                    };
                    self.rows[r] = Row {
                        vec: new_row,
                        combo: new_row_combo,
                    };
                    if g.is_one() {
                        self.eliminate_column(c, r);
                    }
                    v = new_v;
                    combo = new_v_combo;
                }
            }
        }
    }

    /// Canonical Hermite normal form: rows sorted by pivot column, positive
    /// pivots, entries above each pivot reduced into `[0, pivot)`.
    pub fn into_hnf(mut self) -> Vec<Row> {
        self.rows.sort_by_key(|r| r.pivot_col());
        let n = self.rows.len();
        for j in 0..n {
            let (pc, d) = {
                let r = &self.rows[j];
                (r.pivot_col(), r.pivot().clone())
            };
            if d.is_one() {
                continue;
            }
            let (pv, pcombo) = (self.rows[j].vec.clone(), self.rows[j].combo.clone());
            for i in 0..j {
                let row = &mut self.rows[i];
                let q = row.vec.get(pc).div_floor(&d);
                if q.is_zero() {
                    continue;
                }
                row.vec = row.vec.sub_scaled(&q, &pv);
                if let (Some(cb), Some(pcb)) = (row.combo.as_mut(), pcombo.as_ref()) {
                    *cb = cb.sub_scaled(&q, pcb);
                }
            }
        }
        self.rows
    }

    /// Expresses `target` through the current rows, returning the combination
    /// of inserted ids when tracking is on. `None` if `target` is not in the span.
    pub fn solve(&self, target: &SparseVec) -> Option<SparseVec> {
        let mut v = target.clone();
        let mut combo = Some(SparseVec::new());
        // Leading-column reduction only: each step must divide exactly.
        while let Some((c, a)) = v.leading().map(|(c, a)| (c, a.clone())) {
            let r = self.row_at(c)?;
            let row = &self.rows[r];
            let q = a.div_exact(row.pivot())?;
            v = v.sub_scaled(&q, &row.vec);
            if let (Some(cb), Some(rc)) = (combo.as_mut(), row.combo.as_ref()) {
                *cb = cb.sub_scaled(&-&q, rc);
            }
        }
        if self.track {
            combo
        } else {
            Some(SparseVec::new())
        }
    }
}
