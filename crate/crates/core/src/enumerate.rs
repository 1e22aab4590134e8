//! Exhaustive enumeration of point subsets of PG(r-1, q) up to the
//! ambient collineation group, as a corpus for the verification suites.
//!
//! Orbits are found by a sweep over subset bitmasks in increasing order:
//! the first unseen mask is the orbit representative (numerically least),
//! and its whole orbit is obtained by applying every group permutation to
//! it. Total cost is the orbit count times the group order.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::geometry::pg_points;
use crate::linalg;
use crate::matroid::{bits, Mask, Matroid};

/// The action of PGammaL(r, q) on pg_points(r, q): every invertible
/// matrix modulo scalars, composed with the field automorphisms.
pub fn group_elements(r: usize, field: &FieldSpec) -> Result<Vec<Vec<u8>>> {
    if r > 4 || field.q > 4 {
        return Err(Error::TooLarge {
            what: "collineation group",
            got: (r as usize).max(field.q as usize),
            bound: 4,
        });
    }
    let pts = pg_points(r, field);
    let index: HashMap<Vec<u8>, usize> =
        pts.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let q = field.q as u8;
    let cells = r * r;
    let mut entries = vec![0u8; cells];
    let mut linear: BTreeSet<Vec<u8>> = BTreeSet::new();
    'matrices: loop {
        // column-major matrix in `entries`; apply to every point
        let mut perm = Vec::with_capacity(pts.len());
        let mut ok = true;
        for p in &pts {
            let mut img = vec![0u8; r];
            for (j, &x) in p.iter().enumerate() {
                if x != 0 {
                    for i in 0..r {
                        let prod = field.mul(entries[j * r + i], x);
                        img[i] = field.add(img[i], prod);
                    }
                }
            }
            linalg::normalize(field, &mut img);
            match index.get(&img) {
                Some(&k) => perm.push(k as u8),
                None => {
                    // the zero vector: matrix is singular
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            let mut hit = vec![false; pts.len()];
            for &k in &perm {
                hit[k as usize] = true;
            }
            if hit.iter().all(|&h| h) {
                linear.insert(perm);
            }
        }
        // odometer over all q^(r*r) matrices
        let mut c = 0;
        loop {
            if c == cells {
                break 'matrices;
            }
            entries[c] += 1;
            if entries[c] < q {
                break;
            }
            entries[c] = 0;
            c += 1;
        }
    }
    // Frobenius acts coordinate-wise on points.
    let frob: Vec<u8> = pts
        .iter()
        .map(|p| {
            let mut img: Vec<u8> = p.iter().map(|&x| field.frobenius(x)).collect();
            linalg::normalize(field, &mut img);
            index[&img] as u8
        })
        .collect();
    let mut all: BTreeSet<Vec<u8>> = BTreeSet::new();
    for g in &linear {
        let mut cur: Vec<u8> = g.clone();
        for _ in 0..field.d {
            all.insert(cur.clone());
            cur = cur.iter().map(|&k| frob[k as usize]).collect();
        }
    }
    Ok(all.into_iter().collect())
}

pub fn group_checksum(perms: &[Vec<u8>]) -> String {
    let mut h = Sha256::new();
    for p in perms {
        h.update(p);
        h.update([0xff]);
    }
    let out = h.finalize();
    out[..16].iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrbitEntry {
    pub mask: u64,
    pub orbit_size: u64,
    pub spanning: bool,
    pub matroid: Matroid,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrbitCatalog {
    pub q: u32,
    pub r: usize,
    pub points: usize,
    pub group_order: usize,
    pub group_checksum: String,
    /// sum of orbit sizes over every orbit, kept even when the entry list
    /// is filtered to spanning representatives
    pub orbit_size_total: u64,
    pub orbits: Vec<OrbitEntry>,
}

fn apply(perm: &[u8], mask: Mask) -> Mask {
    bits(mask).map(|i| (1 as Mask) << perm[i]).sum()
}

/// Matroid on a subset of PG points, labeled by ambient point index.
pub fn subset_matroid(field: &FieldSpec, pts: &[Vec<u8>], mask: Mask) -> Matroid {
    if mask == 0 {
        return Matroid::empty(field.clone());
    }
    let cols: Vec<Vec<u8>> = bits(mask).map(|i| pts[i].clone()).collect();
    let labels: Vec<String> = bits(mask).map(|i| format!("p{i}")).collect();
    Matroid::new(field.clone(), cols, Some(labels)).expect("PG points are distinct and nonzero")
}

pub fn enumerate_matroids(
    r: usize,
    field: &FieldSpec,
    spanning_only: bool,
) -> Result<OrbitCatalog> {
    let perms = group_elements(r, field)?;
    let pts = pg_points(r, field);
    let n = pts.len();
    if n > 24 {
        return Err(Error::TooLarge {
            what: "projective geometry",
            got: n,
            bound: 24,
        });
    }
    let total = 1u64 << n;
    let mut seen = vec![false; total as usize];
    let mut orbits = Vec::new();
    let mut orbit_size_total = 0u64;
    for rep in 0..total {
        if seen[rep as usize] {
            continue;
        }
        let mut orbit: Vec<Mask> = perms.iter().map(|g| apply(g, rep as Mask)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &x in &orbit {
            seen[x as usize] = true;
        }
        debug_assert_eq!(orbit[0], rep as Mask);
        let matroid = subset_matroid(field, &pts, rep as Mask);
        let spanning = matroid.rank_full() == r;
        orbit_size_total += orbit.len() as u64;
        if !spanning_only || spanning {
            orbits.push(OrbitEntry {
                mask: rep,
                orbit_size: orbit.len() as u64,
                spanning,
                matroid,
            });
        }
    }
    Ok(OrbitCatalog {
        q: field.q,
        r,
        points: n,
        group_order: perms.len(),
        group_checksum: group_checksum(&perms),
        orbit_size_total,
        orbits,
    })
}

#[derive(Serialize, Deserialize)]
struct CatalogHeader {
    q: u32,
    r: usize,
    points: usize,
    group_order: usize,
    group_checksum: String,
    orbit_size_total: u64,
}

impl OrbitCatalog {
    /// One JSON object per line: a header, then the entries.
    pub fn to_jsonl(&self) -> String {
        let mut out = serde_json::to_string(&CatalogHeader {
            q: self.q,
            r: self.r,
            points: self.points,
            group_order: self.group_order,
            group_checksum: self.group_checksum.clone(),
            orbit_size_total: self.orbit_size_total,
        })
        .unwrap();
        out.push('\n');
        for e in &self.orbits {
            out.push_str(&serde_json::to_string(e).unwrap());
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<OrbitCatalog> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header: CatalogHeader = lines
            .next()
            .ok_or_else(|| Error::MalformedDocument("empty catalog".into()))
            .and_then(|l| {
                serde_json::from_str(l).map_err(|e| Error::MalformedDocument(e.to_string()))
            })?;
        let mut orbits = Vec::new();
        for l in lines {
            orbits
                .push(serde_json::from_str(l).map_err(|e| Error::MalformedDocument(e.to_string()))?);
        }
        Ok(OrbitCatalog {
            q: header.q,
            r: header.r,
            points: header.points,
            group_order: header.group_order,
            group_checksum: header.group_checksum,
            orbit_size_total: header.orbit_size_total,
            orbits,
        })
    }
}
