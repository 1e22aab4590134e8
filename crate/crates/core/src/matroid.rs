//! Represented simple matroids and the core operations on them: rank,
//! closure, flats, circuits, cocircuits, restriction, deletion, and
//! contraction-with-simplification.
//!
//! A matroid is an ordered list of distinct normalized nonzero columns
//! over GF(q), trimmed to full row rank, with one stable label per column.
//! Element subsets travel through the public API as label sets; internally
//! everything runs on bitmasks over column positions.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::{self, Eliminator};

pub type Mask = u128;
pub type LabelSet = BTreeSet<String>;

/// Largest ground set for the exponential-scan operations (dividers,
/// canonical forms, induced minors).
pub const MAX_SCAN_ELEMENTS: usize = 24;

const RANK_TABLE_MAX: usize = 22;

/// Iterates the set bit positions of a mask, lowest first.
pub fn bits(mask: Mask) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

#[derive(Debug, Clone)]
pub struct Matroid {
    field: FieldSpec,
    ambient_rank: usize,
    points: Vec<Vec<u8>>,
    labels: Vec<String>,
    rank_table: OnceLock<Vec<u8>>,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.field.q == other.field.q && self.points == other.points && self.labels == other.labels
    }
}
impl Eq for Matroid {}

impl Matroid {
    /// Builds a matroid from raw columns. Columns are normalized, must be
    /// nonzero and pairwise non-parallel, and the ambient space is trimmed
    /// to the rank of the column set. Labels default to "e0", "e1", ...
    pub fn new(
        field: FieldSpec,
        columns: Vec<Vec<u8>>,
        labels: Option<Vec<String>>,
    ) -> Result<Matroid> {
        if columns.len() > 128 {
            return Err(Error::TooLarge {
                what: "ground set",
                got: columns.len(),
                bound: 128,
            });
        }
        let len0 = columns.first().map(|c| c.len());
        let mut cols = columns;
        for c in cols.iter_mut() {
            if Some(c.len()) != len0 {
                return Err(Error::MalformedDocument("ragged column lengths".into()));
            }
            if c.iter().any(|&x| x as u32 >= field.q) {
                return Err(Error::MalformedDocument(format!(
                    "coordinate out of range for GF({})",
                    field.q
                )));
            }
            if c.iter().all(|&x| x == 0) {
                return Err(Error::MalformedDocument("zero column (loop) not allowed".into()));
            }
            linalg::normalize(&field, c);
        }
        let mut cols = linalg::trim_rows(&field, &cols);
        for c in cols.iter_mut() {
            linalg::normalize(&field, c);
        }
        for i in 0..cols.len() {
            for j in i + 1..cols.len() {
                if cols[i] == cols[j] {
                    return Err(Error::MalformedDocument(format!(
                        "parallel columns at positions {i} and {j}"
                    )));
                }
            }
        }
        let labels = match labels {
            Some(ls) => {
                if ls.len() != cols.len() {
                    return Err(Error::MalformedDocument("label count != point count".into()));
                }
                let set: BTreeSet<&String> = ls.iter().collect();
                if set.len() != ls.len() {
                    return Err(Error::MalformedDocument("duplicate labels".into()));
                }
                ls
            }
            None => (0..cols.len()).map(|i| format!("e{i}")).collect(),
        };
        let ambient_rank = cols.first().map(|c| c.len()).unwrap_or(0);
        Ok(Matroid {
            field,
            ambient_rank,
            points: cols,
            labels,
            rank_table: OnceLock::new(),
        })
    }

    pub fn empty(field: FieldSpec) -> Matroid {
        Matroid {
            field,
            ambient_rank: 0,
            points: Vec::new(),
            labels: Vec::new(),
            rank_table: OnceLock::new(),
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// Rank of the whole matroid (= ambient dimension, by the trim invariant).
    pub fn rank_full(&self) -> usize {
        self.ambient_rank
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn points(&self) -> &[Vec<u8>] {
        &self.points
    }

    pub fn col(&self, i: usize) -> &[u8] {
        &self.points[i]
    }

    pub fn full_mask(&self) -> Mask {
        if self.n() == 0 {
            0
        } else {
            (Mask::MAX >> (128 - self.n())) as Mask
        }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn mask_of(&self, set: &LabelSet) -> Result<Mask> {
        let mut m = 0;
        for l in set {
            let i = self
                .index_of(l)
                .ok_or_else(|| Error::UnknownLabel(l.clone()))?;
            m |= 1 << i;
        }
        Ok(m)
    }

    pub fn labels_of(&self, mask: Mask) -> LabelSet {
        bits(mask).map(|i| self.labels[i].clone()).collect()
    }

    pub fn ground_set(&self) -> LabelSet {
        self.labels.iter().cloned().collect()
    }

    fn ranks_by_subset(&self) -> Option<&[u8]> {
        if self.n() > RANK_TABLE_MAX {
            return None;
        }
        Some(self.rank_table.get_or_init(|| {
            let n = self.n();
            let mut table = vec![0u8; 1usize << n];
            let mut elim = Eliminator::new(&self.field);
            build_rank_table(self, 0, 0, &mut elim, &mut table);
            table
        }))
    }

    pub fn rank_mask(&self, mask: Mask) -> usize {
        if let Some(t) = self.rank_table.get() {
            return t[mask as usize] as usize;
        }
        let mut e = Eliminator::new(&self.field);
        for i in bits(mask) {
            e.push(&self.points[i]);
        }
        e.rank()
    }

    /// Forces the full subset-rank table; cheap amortization for the
    /// exponential partition scans. No-op above the size cutoff.
    pub fn warm_rank_table(&self) {
        let _ = self.ranks_by_subset();
    }

    pub fn closure_mask(&self, mask: Mask) -> Mask {
        if let Some(t) = self.ranks_by_subset() {
            let r = t[mask as usize];
            let mut cl = mask;
            for i in 0..self.n() {
                if mask >> i & 1 == 0 && t[(mask | 1 << i) as usize] == r {
                    cl |= 1 << i;
                }
            }
            return cl;
        }
        let mut e = Eliminator::new(&self.field);
        for i in bits(mask) {
            e.push(&self.points[i]);
        }
        let mut cl = mask;
        for i in 0..self.n() {
            if mask >> i & 1 == 0 && e.contains(&self.points[i]) {
                cl |= 1 << i;
            }
        }
        cl
    }

    pub fn is_flat_mask(&self, mask: Mask) -> bool {
        self.closure_mask(mask) == mask
    }

    /// All flats of each rank 0..=r(M), level by level, each level sorted
    /// by mask value.
    pub fn all_flats_mask(&self) -> Vec<Vec<Mask>> {
        let r = self.rank_full();
        let mut levels: Vec<Vec<Mask>> = Vec::with_capacity(r + 1);
        levels.push(vec![0]); // simple: cl(emptyset) = emptyset
        for k in 0..r {
            let mut next: BTreeSet<Mask> = BTreeSet::new();
            for &f in &levels[k] {
                for i in 0..self.n() {
                    if f >> i & 1 == 0 {
                        next.insert(self.closure_mask(f | 1 << i));
                    }
                }
            }
            levels.push(next.into_iter().collect());
        }
        levels
    }

    pub fn flats_mask(&self, k: usize) -> Result<Vec<Mask>> {
        let r = self.rank_full();
        if k > r {
            return Err(Error::RankOutOfRange { k, max: r });
        }
        Ok(self.all_flats_mask().into_iter().nth(k).unwrap())
    }

    /// All circuits, each exactly once. A circuit C is generated from the
    /// independent set C - max(C) plus its spanned completion.
    pub fn circuits_mask(&self) -> Vec<Mask> {
        let mut out = Vec::new();
        let mut elim = Eliminator::new(&self.field);
        self.circuits_rec(0, 0, &mut elim, &mut out);
        out.sort_unstable();
        out
    }

    fn circuits_rec(&self, start: usize, mask: Mask, elim: &mut Eliminator, out: &mut Vec<Mask>) {
        for e in start..self.n() {
            if elim.contains(&self.points[e]) {
                let cand = mask | 1 << e;
                if self.is_circuit(cand) {
                    out.push(cand);
                }
            } else {
                elim.push(&self.points[e]);
                self.circuits_rec(e + 1, mask | 1 << e, elim, out);
                elim.pop();
            }
        }
    }

    fn is_circuit(&self, mask: Mask) -> bool {
        let sz = mask.count_ones() as usize;
        if self.rank_mask(mask) != sz - 1 {
            return false;
        }
        bits(mask).all(|f| self.rank_mask(mask & !(1 << f)) == sz - 1)
    }

    /// Complements of hyperplanes.
    pub fn cocircuits_mask(&self) -> Vec<Mask> {
        let r = self.rank_full();
        if r == 0 {
            return Vec::new();
        }
        let full = self.full_mask();
        let mut out: Vec<Mask> = self.all_flats_mask()[r - 1]
            .iter()
            .map(|h| full & !h)
            .collect();
        out.sort_unstable();
        out
    }

    /// The matroid on the complement of `mask`, ambient trimmed, labels
    /// and element order preserved.
    pub fn delete_mask(&self, mask: Mask) -> Matroid {
        let keep: Vec<usize> = (0..self.n()).filter(|i| mask >> i & 1 == 0).collect();
        let cols: Vec<Vec<u8>> = keep.iter().map(|&i| self.points[i].clone()).collect();
        let labels: Vec<String> = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let mut cols = linalg::trim_rows(&self.field, &cols);
        for c in cols.iter_mut() {
            linalg::normalize(&self.field, c);
        }
        let ambient_rank = cols.first().map(|c| c.len()).unwrap_or(0);
        Matroid {
            field: self.field.clone(),
            ambient_rank,
            points: cols,
            labels,
            rank_table: OnceLock::new(),
        }
    }

    pub fn restrict_mask(&self, mask: Mask) -> Matroid {
        self.delete_mask(self.full_mask() & !mask)
    }

    /// Simplification of M/S: quotient by span(S), drop loops, keep the
    /// lowest-position representative of each parallel class, re-normalize.
    pub fn contract_simplify_mask(&self, mask: Mask) -> Matroid {
        let contract: Vec<usize> = bits(mask).collect();
        let mut quotient = linalg::contract_rows(&self.field, &self.points, &contract);
        for c in quotient.iter_mut() {
            linalg::normalize(&self.field, c);
        }
        let mut keep: Vec<usize> = Vec::new();
        for i in 0..self.n() {
            if mask >> i & 1 == 1 || quotient[i].iter().all(|&x| x == 0) {
                continue;
            }
            if !keep.iter().any(|&j| quotient[j] == quotient[i]) {
                keep.push(i);
            }
        }
        let cols: Vec<Vec<u8>> = keep.iter().map(|&i| quotient[i].clone()).collect();
        let labels: Vec<String> = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let ambient_rank = cols.first().map(|c| c.len()).unwrap_or(0);
        Matroid {
            field: self.field.clone(),
            ambient_rank,
            points: cols,
            labels,
            rank_table: OnceLock::new(),
        }
    }

    // ---- label-set front ends ----

    pub fn rank(&self, set: &LabelSet) -> Result<usize> {
        Ok(self.rank_mask(self.mask_of(set)?))
    }

    pub fn closure(&self, set: &LabelSet) -> Result<LabelSet> {
        Ok(self.labels_of(self.closure_mask(self.mask_of(set)?)))
    }

    pub fn flats(&self, k: usize) -> Result<Vec<LabelSet>> {
        Ok(self.flats_mask(k)?.into_iter().map(|m| self.labels_of(m)).collect())
    }

    pub fn circuits(&self) -> Vec<LabelSet> {
        self.circuits_mask().into_iter().map(|m| self.labels_of(m)).collect()
    }

    pub fn cocircuits(&self) -> Vec<LabelSet> {
        self.cocircuits_mask().into_iter().map(|m| self.labels_of(m)).collect()
    }

    pub fn restrict_to_flat(&self, set: &LabelSet) -> Result<Matroid> {
        let mask = self.mask_of(set)?;
        if !self.is_flat_mask(mask) {
            return Err(Error::NotAFlat(format!("{set:?}")));
        }
        Ok(self.restrict_mask(mask))
    }

    pub fn delete(&self, set: &LabelSet) -> Result<Matroid> {
        Ok(self.delete_mask(self.mask_of(set)?))
    }

    pub fn contract_simplify(&self, set: &LabelSet) -> Result<Matroid> {
        Ok(self.contract_simplify_mask(self.mask_of(set)?))
    }
}

fn build_rank_table(m: &Matroid, i: usize, mask: Mask, elim: &mut Eliminator, table: &mut [u8]) {
    if i == m.n() {
        table[mask as usize] = elim.rank() as u8;
        return;
    }
    build_rank_table(m, i + 1, mask, elim, table);
    if elim.push(m.col(i)) {
        build_rank_table(m, i + 1, mask | 1 << i, elim, table);
        elim.pop();
    } else {
        build_rank_table(m, i + 1, mask | 1 << i, elim, table);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn mk4() -> Matroid {
        let f = make_field(2).unwrap();
        let cols = vec![
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![1, 1, 0],
            vec![1, 0, 1],
            vec![0, 1, 1],
        ];
        let labels = ["12", "13", "14", "23", "24", "34"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        Matroid::new(f, cols, Some(labels)).unwrap()
    }

    fn fano() -> Matroid {
        let f = make_field(2).unwrap();
        let cols = (1u8..8).map(|v| vec![v >> 2 & 1, v >> 1 & 1, v & 1]).collect();
        Matroid::new(f, cols, None).unwrap()
    }

    fn ls(items: &[&str]) -> LabelSet {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn rank_basics() {
        let m = fano();
        assert_eq!(m.rank(&m.ground_set()).unwrap(), 3);
        assert_eq!(m.rank(&LabelSet::new()).unwrap(), 0);
        let k4 = mk4();
        assert_eq!(k4.rank(&ls(&["12", "13", "23"])).unwrap(), 2);
        assert!(matches!(
            k4.rank(&ls(&["nope"])),
            Err(Error::UnknownLabel(_))
        ));
    }

    #[test]
    fn closure_examples() {
        let m = fano();
        // Two points of the Fano plane close to the full 3-point line.
        let two = ls(&["e0", "e1"]);
        let cl = m.closure(&two).unwrap();
        assert_eq!(cl.len(), 3);
        assert_eq!(m.rank(&cl).unwrap(), 2);
        assert_eq!(m.closure(&LabelSet::new()).unwrap(), LabelSet::new());
        let k4 = mk4();
        // {12,34} is its own closure: no third column in span(110, 001).
        assert_eq!(k4.closure(&ls(&["12", "34"])).unwrap(), ls(&["12", "34"]));
    }

    #[test]
    fn flats_counts() {
        let m = fano();
        assert_eq!(m.flats(2).unwrap().len(), 7);
        assert_eq!(m.flats(0).unwrap(), vec![LabelSet::new()]);
        let k4 = mk4();
        let lines = k4.flats(2).unwrap();
        assert_eq!(lines.len(), 7);
        let triangles = lines.iter().filter(|l| l.len() == 3).count();
        assert_eq!(triangles, 4);
        assert_eq!(lines.len() - triangles, 3);
        assert!(matches!(m.flats(4), Err(Error::RankOutOfRange { .. })));
    }

    #[test]
    fn circuit_families() {
        let k4 = mk4();
        let cs = k4.circuits();
        assert_eq!(cs.len(), 7);
        assert_eq!(cs.iter().filter(|c| c.len() == 3).count(), 4);
        assert_eq!(cs.iter().filter(|c| c.len() == 4).count(), 3);
        // U_{2,3}: the unique circuit is the full set.
        let f = make_field(2).unwrap();
        let u23 = Matroid::new(f, vec![vec![1, 0], vec![0, 1], vec![1, 1]], None).unwrap();
        assert_eq!(u23.circuits(), vec![u23.ground_set()]);
    }

    #[test]
    fn cocircuit_families() {
        let m = fano();
        let cc = m.cocircuits();
        assert_eq!(cc.len(), 7);
        assert!(cc.iter().all(|c| c.len() == 4));
        let f = make_field(2).unwrap();
        let u22 = Matroid::new(f, vec![vec![1, 0], vec![0, 1]], None).unwrap();
        let cc = u22.cocircuits();
        assert_eq!(cc.len(), 2);
        assert!(cc.iter().all(|c| c.len() == 1));
    }

    #[test]
    fn restrict_to_flat_only() {
        let m = fano();
        let line = m.closure(&ls(&["e0", "e1"])).unwrap();
        let restriction = m.restrict_to_flat(&line).unwrap();
        assert_eq!(restriction.n(), 3);
        assert_eq!(restriction.rank_full(), 2);
        // A non-flat is rejected rather than silently closed.
        assert!(matches!(
            m.restrict_to_flat(&ls(&["e0", "e1"])),
            Err(Error::NotAFlat(_))
        ));
        assert_eq!(m.restrict_to_flat(&m.ground_set()).unwrap(), m);
    }

    #[test]
    fn contract_simplify_fano_point() {
        let m = fano();
        for l in m.labels() {
            let c = m.contract_simplify(&ls(&[l])).unwrap();
            assert_eq!(c.n(), 3);
            assert_eq!(c.rank_full(), 2);
        }
        assert_eq!(m.contract_simplify(&LabelSet::new()).unwrap(), m);
        let k4 = mk4();
        let c = k4.contract_simplify(&ls(&["12"])).unwrap();
        assert_eq!((c.n(), c.rank_full()), (3, 2));
    }

    #[test]
    fn contract_matches_closure_contract() {
        let k4 = mk4();
        let s = ls(&["12", "13"]);
        let cl = k4.closure(&s).unwrap();
        let a = k4.contract_simplify(&s).unwrap();
        let b = k4.contract_simplify(&cl).unwrap();
        assert_eq!(a.n(), b.n());
        assert_eq!(a.rank_full(), b.rank_full());
    }

    #[test]
    fn delete_examples() {
        let m = fano();
        let d = m.delete(&ls(&["e0"])).unwrap();
        assert_eq!((d.n(), d.rank_full()), (6, 3));
        let line = m.closure(&ls(&["e0", "e1"])).unwrap();
        let d = m.delete(&line).unwrap();
        assert_eq!((d.n(), d.rank_full()), (4, 3));
        // no 3 of the remaining 4 points collinear
        for f in d.flats(2).unwrap() {
            assert_eq!(f.len(), 2);
        }
        assert_eq!(m.delete(&LabelSet::new()).unwrap(), m);
    }

    #[test]
    fn rank_table_matches_direct() {
        let m = mk4();
        m.warm_rank_table();
        for mask in 0..=m.full_mask() {
            let mut e = Eliminator::new(m.field());
            for i in bits(mask) {
                e.push(m.col(i));
            }
            assert_eq!(m.rank_mask(mask), e.rank());
        }
    }
}
