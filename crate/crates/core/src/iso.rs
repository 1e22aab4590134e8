//! Matroid isomorphism via canonical forms, plus recognizers for the named
//! matroids (projective geometries and the forbidden-set members).
//!
//! The canonical form is the lexicographically minimal relabeling of the
//! flat family of ranks 2..r-1 (which determines a simple matroid), found
//! by backtracking over permutations that respect an iterated-refinement
//! coloring of the elements. Flats are emitted into the certificate stream
//! in order of the position at which their last element is assigned, so
//! prefixes of the stream are comparable and most of the search tree is
//! cut off early. Interchangeable elements (transposition automorphisms)
//! are branched on only once.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::matroid::{bits, Mask, Matroid, MAX_SCAN_ELEMENTS};

/// A total-order key with: equal keys <=> isomorphic matroids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub n: usize,
    pub rank: usize,
    /// Sorted flat sizes per rank 0..=r; a cheap invariant kept for
    /// debugging output.
    pub profile: Vec<Vec<usize>>,
    /// Minimal relabeled flat family: (mask over canonical positions, rank).
    stream: Vec<(u32, u8)>,
}

impl CanonicalForm {
    /// Hex digest of the full key, for compact serialized output.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.n as u64).to_le_bytes());
        h.update((self.rank as u64).to_le_bytes());
        for (m, k) in &self.stream {
            h.update(m.to_le_bytes());
            h.update([*k]);
        }
        let out = h.finalize();
        out.iter().take(16).map(|b| format!("{b:02x}")).collect()
    }
}

fn fnv(h: &mut u64, x: u64) {
    for b in x.to_le_bytes() {
        *h ^= b as u64;
        *h = h.wrapping_mul(0x100000001b3);
    }
}

struct Search {
    n: usize,
    flats: Vec<Mask>,
    flat_rank: Vec<u8>,
    flat_size: Vec<u8>,
    flats_of: Vec<Vec<usize>>,
    /// Element order the permutation must respect: positions are filled
    /// block by block, one refinement class per block.
    blocks: Vec<Vec<usize>>,
    twin_root: Vec<usize>,
    // mutable search state
    pos_of: Vec<usize>,
    assigned_in_flat: Vec<u8>,
    stream: Vec<(u32, u8)>,
    best: Vec<(u32, u8)>,
    generation: u64,
}

const UNASSIGNED: usize = usize::MAX;

impl Search {
    fn new(m: &Matroid) -> Self {
        let n = m.n();
        let levels = m.all_flats_mask();
        let r = m.rank_full();
        let mut flats = Vec::new();
        let mut flat_rank = Vec::new();
        for k in 2..r {
            for &f in &levels[k] {
                flats.push(f);
                flat_rank.push(k as u8);
            }
        }
        let flat_size: Vec<u8> = flats.iter().map(|f| f.count_ones() as u8).collect();
        let mut flats_of = vec![Vec::new(); n];
        for (fi, &f) in flats.iter().enumerate() {
            for e in bits(f) {
                flats_of[e].push(fi);
            }
        }

        // Iterated refinement coloring.
        let mut colors = vec![0u64; n];
        let mut classes = 1usize;
        loop {
            let mut next = vec![0u64; n];
            for e in 0..n {
                let mut key: Vec<u64> = Vec::new();
                for &fi in &flats_of[e] {
                    let mut members: Vec<u64> = bits(flats[fi]).map(|x| colors[x]).collect();
                    members.sort_unstable();
                    let mut h = 0xcbf29ce484222325u64;
                    fnv(&mut h, flat_rank[fi] as u64);
                    fnv(&mut h, flat_size[fi] as u64);
                    for c in members {
                        fnv(&mut h, c);
                    }
                    key.push(h);
                }
                key.sort_unstable();
                let mut h = 0xcbf29ce484222325u64;
                fnv(&mut h, colors[e]);
                for k in key {
                    fnv(&mut h, k);
                }
                next[e] = h;
            }
            let c2 = next.iter().collect::<HashSet<_>>().len();
            colors = next;
            if c2 == classes {
                break;
            }
            classes = c2;
        }

        // Blocks in color order; within a block keep original order.
        let mut palette: Vec<u64> = colors.iter().copied().collect::<HashSet<_>>().into_iter().collect();
        palette.sort_unstable();
        let blocks: Vec<Vec<usize>> = palette
            .iter()
            .map(|&c| (0..n).filter(|&e| colors[e] == c).collect())
            .collect();

        // Twin classes: pairs whose transposition is an automorphism of
        // the flat family.
        let flat_set: HashSet<Mask> = flats.iter().copied().collect();
        let mut twin_root: Vec<usize> = (0..n).collect();
        fn find(r: &mut Vec<usize>, mut x: usize) -> usize {
            while r[x] != x {
                r[x] = r[r[x]];
                x = r[x];
            }
            x
        }
        for a in 0..n {
            for b in a + 1..n {
                if colors[a] != colors[b] {
                    continue;
                }
                let pa = find(&mut twin_root, a);
                let pb = find(&mut twin_root, b);
                if pa == pb {
                    continue;
                }
                let swap = (1 as Mask) << a | (1 as Mask) << b;
                let ok = flats.iter().all(|&f| {
                    let hits = (f & swap).count_ones();
                    hits != 1 || flat_set.contains(&(f ^ swap))
                });
                if ok {
                    twin_root[pb] = pa;
                }
            }
        }
        for x in 0..n {
            let r = find(&mut twin_root, x);
            twin_root[x] = r;
        }

        Search {
            n,
            flats,
            flat_rank,
            flat_size,
            flats_of,
            blocks,
            twin_root,
            pos_of: vec![UNASSIGNED; n],
            assigned_in_flat: Vec::new(),
            stream: Vec::new(),
            best: Vec::new(),
            generation: 0,
        }
    }

    fn run(&mut self) -> Vec<(u32, u8)> {
        if self.flats.is_empty() {
            return Vec::new();
        }
        self.assigned_in_flat = vec![0; self.flats.len()];
        self.rec(0, 0, true);
        std::mem::take(&mut self.best)
    }

    /// `better` means the current path is already strictly below `best`
    /// (or no best exists yet); otherwise the current stream equals the
    /// best prefix of the same length.
    fn rec(&mut self, pos: usize, block_idx: usize, better: bool) {
        if pos == self.n {
            if better {
                self.best = self.stream.clone();
                self.generation += 1;
            }
            return;
        }
        let (bi, block) = self.current_block(pos, block_idx);
        let mut tried_roots: Vec<usize> = Vec::new();
        let candidates: Vec<usize> = block
            .iter()
            .copied()
            .filter(|&e| self.pos_of[e] == UNASSIGNED)
            .collect();
        let mut better = better;
        for e in candidates {
            let root = self.twin_root[e];
            if tried_roots.contains(&root) {
                continue;
            }
            tried_roots.push(root);

            let saved_gen = self.generation;
            self.pos_of[e] = pos;
            let mut batch: Vec<(u32, u8)> = Vec::new();
            for &fi in &self.flats_of[e].clone() {
                self.assigned_in_flat[fi] += 1;
                if self.assigned_in_flat[fi] == self.flat_size[fi] {
                    let mask: u32 = bits(self.flats[fi])
                        .map(|x| 1u32 << self.pos_of[x])
                        .sum();
                    batch.push((mask, self.flat_rank[fi]));
                }
            }
            batch.sort_unstable();

            let mut child_better = better;
            let mut prune = false;
            if !child_better {
                let base = self.stream.len();
                for (i, entry) in batch.iter().enumerate() {
                    match entry.cmp(&self.best[base + i]) {
                        std::cmp::Ordering::Less => {
                            child_better = true;
                            break;
                        }
                        std::cmp::Ordering::Greater => {
                            prune = true;
                            break;
                        }
                        std::cmp::Ordering::Equal => {}
                    }
                }
                if !child_better && !prune {
                    // The best stream may owe an entry that completes at
                    // this position; ours is exhausted, so best is smaller.
                    let idx = base + batch.len();
                    if idx < self.best.len() {
                        let high = 31 - self.best[idx].0.leading_zeros() as usize;
                        if high <= pos {
                            prune = true;
                        }
                    }
                }
            }

            if !prune {
                let save_len = self.stream.len();
                self.stream.extend_from_slice(&batch);
                self.rec(pos + 1, bi, child_better);
                self.stream.truncate(save_len);
            }

            for &fi in &self.flats_of[e] {
                self.assigned_in_flat[fi] -= 1;
            }
            self.pos_of[e] = UNASSIGNED;

            if self.generation != saved_gen {
                // best was replaced by a descendant; our stream is now a
                // prefix of it, so later siblings compare from equality.
                better = false;
            }
        }
    }

    fn current_block(&self, pos: usize, from: usize) -> (usize, Vec<usize>) {
        let mut filled = 0;
        for (i, b) in self.blocks.iter().enumerate() {
            filled += b.len();
            if pos < filled {
                debug_assert!(i >= from);
                return (i, b.clone());
            }
        }
        unreachable!("position beyond ground set")
    }
}

/// Relabeling-invariant canonical key; two matroids have equal keys iff
/// they are isomorphic.
pub fn canonical_form(m: &Matroid) -> Result<CanonicalForm> {
    if m.n() > MAX_SCAN_ELEMENTS {
        return Err(Error::TooLarge {
            what: "canonical form ground set",
            got: m.n(),
            bound: MAX_SCAN_ELEMENTS,
        });
    }
    let levels = m.all_flats_mask();
    let profile: Vec<Vec<usize>> = levels
        .iter()
        .map(|fs| {
            let mut sizes: Vec<usize> = fs.iter().map(|f| f.count_ones() as usize).collect();
            sizes.sort_unstable();
            sizes
        })
        .collect();
    let mut search = Search::new(m);
    let stream = search.run();
    Ok(CanonicalForm {
        n: m.n(),
        rank: m.rank_full(),
        profile,
        stream,
    })
}

pub fn is_isomorphic(a: &Matroid, b: &Matroid) -> Result<bool> {
    if a.n() != b.n() || a.rank_full() != b.rank_full() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// Returns Some(k) iff M is (isomorphic to) the rank-k projective geometry
/// over its own field: a simple rank-k GF(q)-matroid has at most
/// (q^k - 1)/(q - 1) points, so the count alone decides. The empty matroid
/// is P_0.
pub fn is_projective_geometry(m: &Matroid) -> Option<usize> {
    let k = m.rank_full();
    let q = m.q() as u64;
    let expected = (0..k as u32).map(|i| q.pow(i)).sum::<u64>();
    (m.n() as u64 == expected).then_some(k)
}

/// Checks every 3-subset for independence.
fn no_three_collinear(m: &Matroid) -> bool {
    let n = m.n();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if m.rank_mask(1 << a | 1 << b | 1 << c) != 3 {
                    return false;
                }
            }
        }
    }
    true
}

/// Name of the forbidden induced minor M is isomorphic to, for the target
/// set of the given field order, or None.
pub fn detect_forbidden(m: &Matroid, q: u32) -> Option<String> {
    let n = m.n();
    let r = m.rank_full();
    if q == 2 {
        if r == 3 && n == 4 && no_three_collinear(m) {
            return Some("U(3,4)".to_string());
        }
        if r == 3 && n == 6 {
            let f = crate::field::make_field(2).ok()?;
            let k4 = crate::geometry::construct_mk4(&f).ok()?;
            if is_isomorphic(m, &k4).ok()? {
                return Some("M(K4)".to_string());
            }
        }
        None
    } else {
        if r == 2 && n > 2 && n as u32 <= q {
            return Some(format!("U(2,{n})"));
        }
        if r == 3 && n as u32 == q + 2 && no_three_collinear(m) {
            return Some(format!("U(3,{n})"));
        }
        None
    }
}
