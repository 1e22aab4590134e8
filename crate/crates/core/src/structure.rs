//! Connectivity structure: local connectivity, vertical separations,
//! dividers, and roundness.
//!
//! A partition (X, Y) of the ground set is a vertical k-separation when
//! r(X) + r(Y) - r(M) <= k - 1 and both sides have rank at least k; it is
//! exact at k = r(X) + r(Y) - r(M) + 1. A partition admits some such k
//! exactly when min{r(X), r(Y)} >= lambda + 1 with lambda = r(X)+r(Y)-r(M),
//! and then the exact order is lambda + 1. Dividers are these partitions
//! reported at their exact order, so scanning partitions once covers every
//! vertical separation of every order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matroid::{LabelSet, Mask, Matroid, MAX_SCAN_ELEMENTS};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationReport {
    pub x: LabelSet,
    pub y: LabelSet,
    pub k: usize,
    pub exact: bool,
    pub local_conn: usize,
    pub intersection_flat: LabelSet,
}

/// Same data keyed by masks, for internal reuse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaskSeparation {
    pub x: Mask,
    pub y: Mask,
    pub k: usize,
    pub local_conn: usize,
    pub intersection: Mask,
}

impl MaskSeparation {
    pub fn to_report(&self, m: &Matroid) -> SeparationReport {
        SeparationReport {
            x: m.labels_of(self.x),
            y: m.labels_of(self.y),
            k: self.k,
            exact: true,
            local_conn: self.local_conn,
            intersection_flat: m.labels_of(self.intersection),
        }
    }
}

/// r(X) + r(Y) - r(X u Y).
pub fn local_connectivity(m: &Matroid, x: &LabelSet, y: &LabelSet) -> Result<usize> {
    let xm = m.mask_of(x)?;
    let ym = m.mask_of(y)?;
    Ok(local_connectivity_mask(m, xm, ym))
}

pub fn local_connectivity_mask(m: &Matroid, x: Mask, y: Mask) -> usize {
    m.rank_mask(x) + m.rank_mask(y) - m.rank_mask(x | y)
}

fn check_size(m: &Matroid) -> Result<()> {
    if m.n() > MAX_SCAN_ELEMENTS {
        return Err(Error::TooLarge {
            what: "ground set",
            got: m.n(),
            bound: MAX_SCAN_ELEMENTS,
        });
    }
    Ok(())
}

/// All exact vertical separations, each unordered partition once with X
/// holding the first element, sorted by the X mask.
pub fn dividers_mask(m: &Matroid) -> Result<Vec<MaskSeparation>> {
    check_size(m)?;
    let n = m.n();
    let r = m.rank_full();
    let full = m.full_mask();
    let mut out = Vec::new();
    if n < 2 {
        return Ok(out);
    }
    m.warm_rank_table();
    // X ranges over subsets containing element 0, Y the complement.
    for half in 0..(1 as Mask) << (n - 1) {
        let x = half << 1 | 1;
        let y = full ^ x;
        if y == 0 {
            continue;
        }
        let (rx, ry) = (m.rank_mask(x), m.rank_mask(y));
        let lambda = rx + ry - r;
        let k = lambda + 1;
        if rx.min(ry) < k {
            continue;
        }
        let inter = m.closure_mask(x) & m.closure_mask(y);
        out.push(MaskSeparation {
            x,
            y,
            k,
            local_conn: lambda,
            intersection: inter,
        });
    }
    Ok(out)
}

pub fn dividers(m: &Matroid) -> Result<Vec<SeparationReport>> {
    Ok(dividers_mask(m)?.iter().map(|s| s.to_report(m)).collect())
}

/// Dividers whose closure-intersection is minimal under strict inclusion
/// over all vertical separations.
pub fn minimal_dividers_mask(m: &Matroid) -> Result<Vec<MaskSeparation>> {
    let all = dividers_mask(m)?;
    let mut inters: Vec<Mask> = all.iter().map(|s| s.intersection).collect();
    inters.sort_unstable();
    inters.dedup();
    Ok(all
        .into_iter()
        .filter(|s| {
            !inters
                .iter()
                .any(|&i| i & s.intersection == i && i != s.intersection)
        })
        .collect())
}

pub fn minimal_dividers(m: &Matroid) -> Result<Vec<SeparationReport>> {
    Ok(minimal_dividers_mask(m)?
        .iter()
        .map(|s| s.to_report(m))
        .collect())
}

/// No two hyperplanes cover E; by complementation, no two disjoint
/// cocircuits.
pub fn is_round(m: &Matroid) -> bool {
    let r = m.rank_full();
    if r == 0 {
        return true;
    }
    let hyperplanes = m.flats_mask(r - 1).expect("rank below full");
    let full = m.full_mask();
    for (i, &h1) in hyperplanes.iter().enumerate() {
        for &h2 in &hyperplanes[i..] {
            if h1 | h2 == full {
                return false;
            }
        }
    }
    true
}
