//! Small dense linear algebra over GF(q), sized for desk-scale matroids
//! (vectors of length at most ~8, at most a few dozen columns).

use crate::field::FieldSpec;

/// Incremental column eliminator. Pivot columns are kept with their pivot
/// entry scaled to 1 so reduction is subtraction only.
#[derive(Clone)]
pub struct Eliminator<'f> {
    field: &'f FieldSpec,
    /// (pivot row, reduced column) pairs, pivot entry = 1.
    pivots: Vec<(usize, Vec<u8>)>,
}

impl<'f> Eliminator<'f> {
    pub fn new(field: &'f FieldSpec) -> Self {
        Eliminator {
            field,
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `col` against the current pivots, in place.
    pub fn reduce(&self, col: &mut [u8]) {
        let f = self.field;
        for (row, pv) in &self.pivots {
            let c = col[*row];
            if c != 0 {
                for (x, &p) in col.iter_mut().zip(pv.iter()) {
                    *x = f.sub(*x, f.mul(c, p));
                }
            }
        }
    }

    /// Reduces and, if independent of the span so far, inserts as a new
    /// pivot. Returns true when the rank grew.
    pub fn push(&mut self, col: &[u8]) -> bool {
        let f = self.field;
        let mut v = col.to_vec();
        self.reduce(&mut v);
        match v.iter().position(|&x| x != 0) {
            None => false,
            Some(row) => {
                let inv = f.inv(v[row]);
                for x in v.iter_mut() {
                    *x = f.mul(inv, *x);
                }
                self.pivots.push((row, v));
                true
            }
        }
    }

    /// Undoes the most recent successful `push`.
    pub fn pop(&mut self) {
        self.pivots.pop();
    }

    /// True iff `col` lies in the span of the pivots.
    pub fn contains(&self, col: &[u8]) -> bool {
        let mut v = col.to_vec();
        self.reduce(&mut v);
        v.iter().all(|&x| x == 0)
    }
}

pub fn rank_of_columns(field: &FieldSpec, cols: &[&[u8]]) -> usize {
    let mut e = Eliminator::new(field);
    for c in cols {
        e.push(c);
    }
    e.rank()
}

/// Scales a nonzero vector so its first nonzero coordinate is 1.
pub fn normalize(field: &FieldSpec, col: &mut [u8]) {
    if let Some(i) = col.iter().position(|&x| x != 0) {
        let inv = field.inv(col[i]);
        if inv != 1 || col[i] != 1 {
            for x in col.iter_mut() {
                *x = field.mul(inv, *x);
            }
        }
    }
}

/// Row-reduces the matrix whose columns are `cols` and drops the zero rows,
/// returning columns re-expressed in a full-row-rank ambient space. The row
/// operations are invertible, so the matroid on the columns is unchanged.
pub fn trim_rows(field: &FieldSpec, cols: &[Vec<u8>]) -> Vec<Vec<u8>> {
    if cols.is_empty() {
        return Vec::new();
    }
    let r = cols[0].len();
    let n = cols.len();
    // rows[i][j] = entry of column j in row i
    let mut rows: Vec<Vec<u8>> = (0..r).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    let mut pivot_rows: Vec<usize> = Vec::new();
    for j in 0..n {
        if let Some(pi) = (0..r)
            .find(|i| !pivot_rows.contains(i) && rows[*i][j] != 0)
        {
            let inv = field.inv(rows[pi][j]);
            for x in rows[pi].iter_mut() {
                *x = field.mul(inv, *x);
            }
            for i in 0..r {
                if i != pi && rows[i][j] != 0 {
                    let c = rows[i][j];
                    for k in 0..n {
                        let s = field.mul(c, rows[pi][k]);
                        rows[i][k] = field.sub(rows[i][k], s);
                    }
                }
            }
            pivot_rows.push(pi);
        }
    }
    let kept: Vec<Vec<u8>> = pivot_rows.iter().map(|&i| std::mem::take(&mut rows[i])).collect();
    (0..n)
        .map(|j| kept.iter().map(|row| row[j]).collect())
        .collect()
}

/// Quotient by the span of the columns indexed by `contract`: establishes
/// pivot rows on those columns, eliminates them from every other row, and
/// drops the pivot rows. Returns the remaining columns (length r - t) in
/// the original column order. Rows stay independent throughout, so the
/// result has full row rank.
pub fn contract_rows(field: &FieldSpec, cols: &[Vec<u8>], contract: &[usize]) -> Vec<Vec<u8>> {
    if cols.is_empty() {
        return Vec::new();
    }
    let r = cols[0].len();
    let n = cols.len();
    let mut rows: Vec<Vec<u8>> = (0..r).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    let mut used: Vec<bool> = vec![false; r];
    for &j in contract {
        if let Some(pi) = (0..r).find(|&i| !used[i] && rows[i][j] != 0) {
            let inv = field.inv(rows[pi][j]);
            for x in rows[pi].iter_mut() {
                *x = field.mul(inv, *x);
            }
            for i in 0..r {
                if i != pi && rows[i][j] != 0 {
                    let c = rows[i][j];
                    for k in 0..n {
                        let s = field.mul(c, rows[pi][k]);
                        rows[i][k] = field.sub(rows[i][k], s);
                    }
                }
            }
            used[pi] = true;
        }
    }
    let keep: Vec<usize> = (0..r).filter(|&i| !used[i]).collect();
    (0..n)
        .map(|j| keep.iter().map(|&i| rows[i][j]).collect())
        .collect()
}
