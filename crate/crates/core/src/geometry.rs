//! Projective geometries PG(r-1,q) and the named point configurations:
//! uniform lines, hyperovals, PG minus a flat, and M(K_4).

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matroid::Matroid;

/// All normalized points of PG(r-1,q) in lexicographic coordinate order.
/// Normalized means the first nonzero coordinate is 1; there are
/// (q^r - 1)/(q - 1) of them.
pub fn pg_points(r: usize, field: &FieldSpec) -> Vec<Vec<u8>> {
    let q = field.q as u8;
    let mut out = Vec::new();
    let mut v = vec![0u8; r];
    loop {
        // a vector is normalized iff its first nonzero entry is 1
        if let Some(i) = v.iter().position(|&x| x != 0) {
            if v[i] == 1 {
                out.push(v.clone());
            }
        }
        // lexicographic odometer, most significant coordinate first
        let mut j = r;
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            if v[j] + 1 < q {
                v[j] += 1;
                break;
            }
            v[j] = 0;
        }
    }
}

/// The full projective geometry PG(r-1,q) as a matroid, points in
/// lexicographic order with default labels.
pub fn projective_geometry(r: usize, field: &FieldSpec) -> Result<Matroid> {
    if r == 0 {
        return Ok(Matroid::empty(field.clone()));
    }
    Matroid::new(field.clone(), pg_points(r, field), None)
}

/// U_{2,k} as the first k points of the projective line over GF(q).
pub fn construct_uniform_line(k: usize, field: &FieldSpec) -> Result<Matroid> {
    let q = field.q as usize;
    if k > q + 1 {
        return Err(Error::TooManyPoints {
            q: field.q,
            requested: k,
            max: q + 1,
        });
    }
    if k < 2 {
        return Err(Error::PreconditionViolation(format!(
            "a uniform line needs at least 2 points, got {k}"
        )));
    }
    let pts = pg_points(2, field).into_iter().take(k).collect();
    Matroid::new(field.clone(), pts, None)
}

/// The hyperoval U_{3,q+2}: the conic {(1, t, t^2)} plus the two points
/// (0,1,0) and (0,0,1). Only exists for even q.
pub fn construct_hyperoval(field: &FieldSpec) -> Result<Matroid> {
    if field.p != 2 {
        return Err(Error::OddCharacteristic(field.q));
    }
    let mut pts: Vec<Vec<u8>> = (0..field.q as u8)
        .map(|t| vec![1, t, field.mul(t, t)])
        .collect();
    pts.push(vec![0, 1, 0]);
    pts.push(vec![0, 0, 1]);
    Matroid::new(field.clone(), pts, None)
}

/// P_r minus a rank-(r-i) flat: deletes the coordinate subspace of points
/// whose first i coordinates vanish (the lexicographically first such
/// subspace). i = 0 deletes everything; i = r deletes nothing.
pub fn construct_pg_minus_flat(r: usize, i: usize, field: &FieldSpec) -> Result<Matroid> {
    if i > r {
        return Err(Error::IndexOutOfRange { r, i });
    }
    let pts: Vec<Vec<u8>> = pg_points(r, field)
        .into_iter()
        .filter(|p| p[..i].iter().any(|&x| x != 0))
        .collect();
    if pts.is_empty() {
        return Ok(Matroid::empty(field.clone()));
    }
    Matroid::new(field.clone(), pts, None)
}

/// M(K_4): the six binary columns {100,010,001,110,101,011}, labeled by
/// the edges of K_4 so that triangles map to dependent column triples.
pub fn construct_mk4(field: &FieldSpec) -> Result<Matroid> {
    if field.q != 2 {
        return Err(Error::PreconditionViolation(
            "M(K_4) is constructed over GF(2)".into(),
        ));
    }
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
    Matroid::new(field.clone(), cols, Some(labels))
}
