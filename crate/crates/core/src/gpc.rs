//! Modular flats and the generalized parallel connection.
//!
//! The connection is built as a representation amalgam: both sides are
//! re-coordinatized so the glue flat occupies the leading coordinates,
//! the second representation is adjusted by a field automorphism and a
//! diagonal scaling until the glue columns coincide, and the two blocks
//! are assembled with fresh rows for the second side's complement. The
//! abstract flats definition is computed only as an oracle, in
//! `verify_flats_definition`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::{self, Eliminator};
use crate::matroid::{bits, LabelSet, Mask, Matroid};

/// Two matroids plus a label bijection from a flat of the first onto a
/// flat of the second.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GpcSpec {
    pub m1: Matroid,
    pub m2: Matroid,
    pub glue: Vec<(String, String)>,
}

/// The standard modular-pair test against every flat of M:
/// r(F) + r(F') = r(F u F') + r(F n F').
pub fn is_modular_flat(m: &Matroid, f: &LabelSet) -> Result<bool> {
    let fm = m.mask_of(f)?;
    if !m.is_flat_mask(fm) {
        return Err(Error::NotAFlat(format!("{f:?}")));
    }
    Ok(is_modular_flat_mask(m, fm))
}

pub fn is_modular_flat_mask(m: &Matroid, fm: Mask) -> bool {
    let rf = m.rank_mask(fm);
    for level in m.all_flats_mask() {
        for &g in &level {
            let rg = m.rank_mask(g);
            if rf + rg != m.rank_mask(fm | g) + m.rank_mask(fm & g) {
                return false;
            }
        }
    }
    true
}

struct Glue {
    /// index pairs (into m1 / m2) in glue order
    pairs: Vec<(usize, usize)>,
    t1: Mask,
    t2: Mask,
}

fn resolve_glue(spec: &GpcSpec) -> Result<Glue> {
    let mut pairs = Vec::new();
    let (mut t1, mut t2) = (0 as Mask, 0 as Mask);
    for (a, b) in &spec.glue {
        let i = spec
            .m1
            .index_of(a)
            .ok_or_else(|| Error::UnknownLabel(a.clone()))?;
        let j = spec
            .m2
            .index_of(b)
            .ok_or_else(|| Error::UnknownLabel(b.clone()))?;
        if t1 >> i & 1 == 1 || t2 >> j & 1 == 1 {
            return Err(Error::PreconditionViolation(
                "glue is not a bijection: repeated label".into(),
            ));
        }
        t1 |= 1 << i;
        t2 |= 1 << j;
        pairs.push((i, j));
    }
    Ok(Glue { pairs, t1, t2 })
}

fn check_preconditions(spec: &GpcSpec, glue: &Glue) -> Result<()> {
    let (m1, m2) = (&spec.m1, &spec.m2);
    if m1.q() != m2.q() {
        return Err(Error::PreconditionViolation(
            "operands must share the field".into(),
        ));
    }
    if !m1.is_flat_mask(glue.t1) {
        return Err(Error::PreconditionViolation(
            "glue image in the first operand is not a flat".into(),
        ));
    }
    if !m2.is_flat_mask(glue.t2) {
        return Err(Error::PreconditionViolation(
            "glue image in the second operand is not a flat".into(),
        ));
    }
    if !is_modular_flat_mask(m1, glue.t1) {
        return Err(Error::PreconditionViolation(
            "glue flat is not modular in the first operand".into(),
        ));
    }
    // The bijection must be an isomorphism of the two restrictions: rank
    // agreement on every subset of the glue (glue flats are small).
    let t = glue.pairs.len();
    if t > 16 {
        return Err(Error::TooLarge {
            what: "glue flat",
            got: t,
            bound: 16,
        });
    }
    for s in 0..(1u32 << t) {
        let (mut s1, mut s2) = (0 as Mask, 0 as Mask);
        for (bit, &(i, j)) in glue.pairs.iter().enumerate() {
            if s >> bit & 1 == 1 {
                s1 |= 1 << i;
                s2 |= 1 << j;
            }
        }
        if m1.rank_mask(s1) != m2.rank_mask(s2) {
            return Err(Error::PreconditionViolation(
                "glue bijection is not an isomorphism of the restrictions".into(),
            ));
        }
    }
    // Ground sets meet exactly in the glue.
    let shared: BTreeSet<&String> = m1.labels().iter().collect();
    for (j, l) in m2.labels().iter().enumerate() {
        if glue.t2 >> j & 1 == 0 && shared.contains(l) {
            return Err(Error::PreconditionViolation(format!(
                "label {l:?} appears on both sides outside the glue"
            )));
        }
    }
    Ok(())
}

/// Re-coordinatizes so that the columns indexed by `basis` become the
/// leading unit vectors. Returns all columns in the new coordinates.
fn align_to_basis(field: &FieldSpec, cols: &[Vec<u8>], basis: &[usize]) -> Vec<Vec<u8>> {
    let r = cols.first().map(|c| c.len()).unwrap_or(0);
    // full basis: chosen columns first, completed with unit vectors
    let mut bmat: Vec<Vec<u8>> = basis.iter().map(|&i| cols[i].clone()).collect();
    let mut elim = Eliminator::new(field);
    for b in &bmat {
        let grew = elim.push(b);
        assert!(grew, "alignment basis columns must be independent");
    }
    for i in 0..r {
        let mut unit = vec![0u8; r];
        unit[i] = 1;
        if elim.push(&unit) {
            bmat.push(unit);
        }
    }
    // Solve B x = col for each column by Gaussian elimination on [B | cols].
    let n = cols.len();
    let mut rows: Vec<Vec<u8>> = (0..r)
        .map(|i| {
            let mut row: Vec<u8> = bmat.iter().map(|b| b[i]).collect();
            row.extend(cols.iter().map(|c| c[i]));
            row
        })
        .collect();
    let width = r + n;
    for j in 0..r {
        let pi = (j..r).find(|&i| rows[i][j] != 0).expect("basis is invertible");
        rows.swap(j, pi);
        let inv = field.inv(rows[j][j]);
        for x in rows[j].iter_mut() {
            *x = field.mul(inv, *x);
        }
        for i in 0..r {
            if i != j && rows[i][j] != 0 {
                let c = rows[i][j];
                for k in 0..width {
                    let s = field.mul(c, rows[j][k]);
                    rows[i][k] = field.sub(rows[i][k], s);
                }
            }
        }
    }
    (0..n).map(|j| (0..r).map(|i| rows[i][r + j]).collect()).collect()
}

fn proportional(field: &FieldSpec, a: &[u8], b: &[u8]) -> bool {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    linalg::normalize(field, &mut x);
    linalg::normalize(field, &mut y);
    x == y
}

/// The generalized parallel connection of spec.m1 and spec.m2 across the
/// glue flat. The result lives on E(m1) together with the unglued part of
/// E(m2); glued elements keep their m1 labels.
pub fn gpc(spec: &GpcSpec) -> Result<Matroid> {
    let glue = resolve_glue(spec)?;
    check_preconditions(spec, &glue)?;
    let (m1, m2) = (&spec.m1, &spec.m2);
    let field = m1.field().clone();
    let r1 = m1.rank_full();
    let r2 = m2.rank_full();
    let t = m1.rank_mask(glue.t1);

    // A basis of the glue flat, chosen greedily among m1's glue columns,
    // and its partner basis on the m2 side.
    let mut basis1: Vec<usize> = Vec::new();
    let mut basis2: Vec<usize> = Vec::new();
    let mut elim = Eliminator::new(&field);
    for &(i, j) in &glue.pairs {
        if elim.push(m1.col(i)) {
            basis1.push(i);
            basis2.push(j);
        }
    }
    debug_assert_eq!(basis1.len(), t);

    let cols1 = align_to_basis(&field, m1.points(), &basis1);
    let cols2_base = align_to_basis(&field, m2.points(), &basis2);

    // Find a field automorphism and a diagonal scaling of the glue
    // coordinates sending each m2 glue column onto its m1 partner.
    let nonzero: Vec<u8> = (1..field.q as u8).collect();
    let mut fixed: Option<Vec<Vec<u8>>> = None;
    'outer: for aut_pow in 0..field.d {
        let twist: Vec<Vec<u8>> = cols2_base
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&x| {
                        let mut y = x;
                        for _ in 0..aut_pow {
                            y = field.frobenius(y);
                        }
                        y
                    })
                    .collect()
            })
            .collect();
        let mut lambda = vec![1u8; t];
        loop {
            let ok = glue.pairs.iter().all(|&(i, j)| {
                let mut v: Vec<u8> = twist[j][..t].to_vec();
                for (x, &l) in v.iter_mut().zip(&lambda) {
                    *x = field.mul(*x, l);
                }
                proportional(&field, &v, &cols1[i][..t])
            });
            if ok {
                let scaled: Vec<Vec<u8>> = twist
                    .iter()
                    .map(|c| {
                        let mut v = c.clone();
                        for (k, x) in v.iter_mut().take(t).enumerate() {
                            *x = field.mul(*x, lambda[k]);
                        }
                        v
                    })
                    .collect();
                fixed = Some(scaled);
                break 'outer;
            }
            // odometer over (F*)^t
            let mut k = 0;
            loop {
                if k == t {
                    continue 'outer;
                }
                let idx = nonzero.iter().position(|&z| z == lambda[k]).unwrap();
                if idx + 1 < nonzero.len() {
                    lambda[k] = nonzero[idx + 1];
                    break;
                }
                lambda[k] = nonzero[0];
                k += 1;
            }
        }
    }
    let cols2 = fixed.ok_or(Error::NotRepresentableAmalgam)?;

    // Block assembly: m1 keeps its r1 coordinates, m2's complement of the
    // glue span contributes r2 - t fresh rows.
    let rank = r1 + r2 - t;
    let mut out_cols: Vec<Vec<u8>> = Vec::new();
    let mut out_labels: Vec<String> = Vec::new();
    for (i, c) in cols1.iter().enumerate() {
        let mut v = vec![0u8; rank];
        v[..r1].copy_from_slice(c);
        out_cols.push(v);
        out_labels.push(m1.labels()[i].clone());
    }
    for (j, c) in cols2.iter().enumerate() {
        if glue.t2 >> j & 1 == 1 {
            continue;
        }
        let mut v = vec![0u8; rank];
        v[..t].copy_from_slice(&c[..t]);
        v[r1..].copy_from_slice(&c[t..]);
        out_cols.push(v);
        out_labels.push(m2.labels()[j].clone());
    }
    Matroid::new(field, out_cols, Some(out_labels)).map_err(|_| Error::NotRepresentableAmalgam)
}

/// Outcome of checking a connection against the abstract flats definition.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FlatsCheck {
    pub ok: bool,
    /// A flat (as labels of the connection) violating either the flats
    /// family prediction or the rank identity, when ok is false.
    pub counterexample: Option<LabelSet>,
}

/// Oracle check: the flat family of P equals {X : X n E(M1) flat of M1,
/// X n E(M2) flat of M2}, and every flat satisfies
/// r(F) = r(F n E(M1)) + r(F n E(M2)) - r(F n E(N)).
pub fn verify_flats_definition(p: &Matroid, spec: &GpcSpec) -> Result<FlatsCheck> {
    let glue = resolve_glue(spec)?;
    let (m1, m2) = (&spec.m1, &spec.m2);

    // masks of the three ground-set regions inside P
    let mut e1 = 0 as Mask;
    for l in m1.labels() {
        let i = p
            .index_of(l)
            .ok_or_else(|| Error::UnknownLabel(l.clone()))?;
        e1 |= 1 << i;
    }
    let mut e2 = 0 as Mask;
    let mut n_mask = 0 as Mask;
    for &(i1, _) in &glue.pairs {
        let i = p.index_of(&m1.labels()[i1]).unwrap();
        e2 |= 1 << i;
        n_mask |= 1 << i;
    }
    for (j, l) in m2.labels().iter().enumerate() {
        if glue.t2 >> j & 1 == 0 {
            let i = p
                .index_of(l)
                .ok_or_else(|| Error::UnknownLabel(l.clone()))?;
            e2 |= 1 << i;
        }
    }

    // index translation tables: m1 position -> P position, m2 -> P
    let map1: Vec<usize> = m1
        .labels()
        .iter()
        .map(|l| p.index_of(l).unwrap())
        .collect();
    let map2: Vec<usize> = m2
        .labels()
        .iter()
        .enumerate()
        .map(|(j, l)| {
            if let Some(k) = glue.pairs.iter().position(|&(_, j2)| j2 == j) {
                p.index_of(&m1.labels()[glue.pairs[k].0]).unwrap()
            } else {
                p.index_of(l).unwrap()
            }
        })
        .collect();

    // predicted family: pairs of flats agreeing on the glue
    let flats1: Vec<Mask> = m1.all_flats_mask().into_iter().flatten().collect();
    let flats2: Vec<Mask> = m2.all_flats_mask().into_iter().flatten().collect();
    let to_p1 = |f: Mask| -> Mask { bits(f).map(|i| (1 as Mask) << map1[i]).sum() };
    let to_p2 = |f: Mask| -> Mask { bits(f).map(|j| (1 as Mask) << map2[j]).sum() };
    let mut predicted: BTreeSet<Mask> = BTreeSet::new();
    for &f1 in &flats1 {
        let p1 = to_p1(f1);
        for &f2 in &flats2 {
            let p2 = to_p2(f2);
            if p1 & n_mask == p2 & n_mask {
                predicted.insert(p1 | p2);
            }
        }
    }

    let actual: BTreeSet<Mask> = p.all_flats_mask().into_iter().flatten().collect();
    if predicted != actual {
        let bad = predicted
            .symmetric_difference(&actual)
            .next()
            .copied()
            .unwrap();
        return Ok(FlatsCheck {
            ok: false,
            counterexample: Some(p.labels_of(bad)),
        });
    }
    for &f in &actual {
        let lhs = p.rank_mask(f);
        let rhs = p.rank_mask(f & e1) + p.rank_mask(f & e2) - p.rank_mask(f & n_mask);
        if lhs != rhs {
            return Ok(FlatsCheck {
                ok: false,
                counterexample: Some(p.labels_of(f)),
            });
        }
    }
    Ok(FlatsCheck {
        ok: true,
        counterexample: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::geometry::{construct_mk4, projective_geometry};

    fn relabel(m: &Matroid, prefix: &str) -> Matroid {
        let labels = (0..m.n()).map(|i| format!("{prefix}{i}")).collect();
        Matroid::new(m.field().clone(), m.points().to_vec(), Some(labels)).unwrap()
    }

    fn ls(items: &[&str]) -> LabelSet {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn modular_flats_of_mk4() {
        let f = make_field(2).unwrap();
        let k4 = construct_mk4(&f).unwrap();
        // triangles are modular, 2-point lines are not
        assert!(is_modular_flat(&k4, &ls(&["12", "13", "23"])).unwrap());
        assert!(!is_modular_flat(&k4, &ls(&["12", "34"])).unwrap());
        // rank-1 flats always are
        for l in k4.labels() {
            assert!(is_modular_flat(&k4, &ls(&[l])).unwrap());
        }
        assert!(matches!(
            is_modular_flat(&k4, &ls(&["12", "13"])),
            Err(Error::NotAFlat(_))
        ));
    }

    #[test]
    fn mk4_triangle_join() {
        let f = make_field(2).unwrap();
        let a = construct_mk4(&f).unwrap();
        let b = relabel(&construct_mk4(&f).unwrap(), "b");
        // glue a triangle of a to a triangle of b; b's triangle is b0,b1,b3
        let spec = GpcSpec {
            m1: a,
            m2: b,
            glue: vec![
                ("12".into(), "b0".into()),
                ("13".into(), "b1".into()),
                ("23".into(), "b3".into()),
            ],
        };
        let p = gpc(&spec).unwrap();
        assert_eq!((p.n(), p.rank_full()), (9, 4));
        let check = verify_flats_definition(&p, &spec).unwrap();
        assert!(check.ok, "counterexample: {:?}", check.counterexample);
        // E(m1)'s image is a modular flat of the connection
        let e1: LabelSet = spec.m1.ground_set();
        assert!(is_modular_flat(&p, &e1).unwrap());
    }

    #[test]
    fn fano_line_join() {
        let f = make_field(2).unwrap();
        let a = projective_geometry(3, &f).unwrap();
        let b = relabel(&projective_geometry(3, &f).unwrap(), "b");
        // e0,e1 span a line whose third point is e2 (001,010,011); the
        // matching line on the b side is b0,b1,b2.
        let line = a.closure(&ls(&["e0", "e1"])).unwrap();
        assert_eq!(line, ls(&["e0", "e1", "e2"]));
        let spec = GpcSpec {
            m1: a,
            m2: b,
            glue: vec![
                ("e0".into(), "b0".into()),
                ("e1".into(), "b1".into()),
                ("e2".into(), "b2".into()),
            ],
        };
        let p = gpc(&spec).unwrap();
        assert_eq!((p.n(), p.rank_full()), (11, 4));
        assert!(verify_flats_definition(&p, &spec).unwrap().ok);
    }

    #[test]
    fn empty_glue_is_direct_sum() {
        let f = make_field(2).unwrap();
        let a = construct_mk4(&f).unwrap();
        let b = relabel(&construct_mk4(&f).unwrap(), "b");
        let spec = GpcSpec {
            m1: a,
            m2: b,
            glue: vec![],
        };
        let p = gpc(&spec).unwrap();
        assert_eq!((p.n(), p.rank_full()), (12, 6));
        let check = verify_flats_definition(&p, &spec).unwrap();
        assert!(check.ok);
    }

    #[test]
    fn restrictions_recover_operands() {
        let f = make_field(2).unwrap();
        let a = construct_mk4(&f).unwrap();
        let b = relabel(&construct_mk4(&f).unwrap(), "b");
        let spec = GpcSpec {
            m1: a.clone(),
            m2: b.clone(),
            glue: vec![
                ("12".into(), "b0".into()),
                ("13".into(), "b1".into()),
                ("23".into(), "b3".into()),
            ],
        };
        let p = gpc(&spec).unwrap();
        // circuits of P restricted to E(m1) equal the circuits of m1
        let e1 = p.mask_of(&a.ground_set()).unwrap();
        let r1 = p.restrict_mask(e1);
        let mut c_p: Vec<LabelSet> = r1.circuits();
        let mut c_a: Vec<LabelSet> = a.circuits();
        c_p.sort();
        c_a.sort();
        assert_eq!(c_p, c_a);
    }

    #[test]
    fn non_modular_glue_rejected() {
        let f = make_field(2).unwrap();
        let a = construct_mk4(&f).unwrap();
        let b = relabel(&construct_mk4(&f).unwrap(), "b");
        // {12,34} is a flat of m1 but not modular
        let spec = GpcSpec {
            m1: a,
            m2: b,
            glue: vec![("12".into(), "b0".into()), ("34".into(), "b5".into())],
        };
        assert!(matches!(gpc(&spec), Err(Error::PreconditionViolation(_))));
    }
}
