//! Canonical forms for small graphs with loops.
//!
//! Vertices are first colored by (loop, degree) and the coloring is refined
//! until stable. The search then individualizes each vertex of the first
//! non-singleton cell in turn and refines again, down to discrete colorings.
//! Every discrete coloring is a labeling; the key is the least encoding
//! among them. The set of labelings explored depends only on the
//! isomorphism class, so equal keys mean isomorphic graphs.

use super::Graph;
use crate::error::{Error, Result};

/// Largest order accepted by [`canonical_form`].
pub const MAX_CANON_ORDER: usize = 10;

/// Upper-triangle adjacency bits (diagonal included) under a labeling,
/// packed most significant first so integer order is bit-string order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    order: u8,
    bits: u64,
}

impl CanonicalKey {
    pub fn order(&self) -> usize {
        self.order as usize
    }

    /// The encoding as a `0`/`1` string, row by row over pairs `i <= j`.
    pub fn bit_string(&self) -> String {
        let len = encoding_len(self.order());
        (0..len)
            .map(|k| {
                if (self.bits >> (len - 1 - k)) & 1 == 1 {
                    '1'
                } else {
                    '0'
                }
            })
            .collect()
    }
}

fn encoding_len(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Encoding of `rows` under `perm` (`perm[new] = old`).
fn encode(rows: &[u64], perm: &[usize]) -> u64 {
    let n = perm.len();
    let mut bits = 0u64;
    for i in 0..n {
        let r = rows[perm[i]];
        for &pj in &perm[i..] {
            bits = (bits << 1) | ((r >> pj) & 1);
        }
    }
    bits
}

#[cfg(test)]
/// Encoding of `g` under its own labeling.
pub(crate) fn identity_key(g: &Graph) -> CanonicalKey {
    let n = g.order();
    debug_assert!(n <= MAX_CANON_ORDER);
    let rows: Vec<u64> = (0..n).map(|v| g.row_word(v)).collect();
    let perm: Vec<usize> = (0..n).collect();
    CanonicalKey {
        order: n as u8,
        bits: encode(&rows, &perm),
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalKey> {
    canonical_labeling(g).map(|(key, _)| key)
}

/// Canonical key together with a labeling `perm` (`perm[new] = old`) such
/// that `g.permuted(&perm)` encodes to the key.
pub fn canonical_labeling(g: &Graph) -> Result<(CanonicalKey, Vec<usize>)> {
    let n = g.order();
    if n > MAX_CANON_ORDER {
        return Err(Error::OrderTooLarge {
            what: "canonical_form",
            order: n,
            max: MAX_CANON_ORDER,
        });
    }
    let rows: Vec<u64> = (0..n).map(|v| g.row_word(v)).collect();
    let mut colors: Vec<u8> = vec![0; n];
    let initial: Vec<(u8, u8)> = (0..n)
        .map(|v| {
            let looped = (rows[v] >> v) & 1;
            let deg = (rows[v] & !(1 << v)).count_ones() as u8;
            (looped as u8, deg)
        })
        .collect();
    assign_ranks(&initial, &mut colors);
    refine(&rows, &mut colors);

    let mut best: Option<(u64, Vec<usize>)> = None;
    search(&rows, colors, &mut best);
    let (bits, perm) = best.unwrap_or((0, Vec::new()));
    Ok((
        CanonicalKey {
            order: n as u8,
            bits,
        },
        perm,
    ))
}

/// Replaces `colors` with the dense rank of each vertex's signature.
fn assign_ranks<T: Ord + Copy>(sigs: &[T], colors: &mut [u8]) -> usize {
    let mut sorted: Vec<T> = sigs.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for (c, s) in colors.iter_mut().zip(sigs) {
        *c = sorted.binary_search(s).expect("present") as u8;
    }
    sorted.len()
}

fn count_colors(colors: &[u8]) -> usize {
    colors.iter().map(|&c| c as usize + 1).max().unwrap_or(0)
}

/// Refines until each cell is equitable: vertices sharing a color have the
/// same number of neighbors of every color.
fn refine(rows: &[u64], colors: &mut [u8]) {
    let n = colors.len();
    let mut k = count_colors(colors);
    loop {
        // color followed by per-color neighbor counts
        let sigs: Vec<[u8; MAX_CANON_ORDER + 1]> = (0..n)
            .map(|v| {
                let mut sig = [0u8; MAX_CANON_ORDER + 1];
                sig[0] = colors[v];
                let mut nbrs = rows[v] & !(1 << v);
                while nbrs != 0 {
                    let u = nbrs.trailing_zeros() as usize;
                    nbrs &= nbrs - 1;
                    sig[1 + colors[u] as usize] += 1;
                }
                sig
            })
            .collect();
        let next = assign_ranks(&sigs, colors);
        if next == k {
            return;
        }
        k = next;
    }
}

/// Same loop status and the same neighbors apart from each other.
fn twins(rows: &[u64], u: usize, v: usize) -> bool {
    let mask = !((1u64 << u) | (1u64 << v));
    (rows[u] ^ rows[v]) & mask == 0 && (rows[u] >> u & 1) == (rows[v] >> v & 1)
}

fn search(rows: &[u64], colors: Vec<u8>, best: &mut Option<(u64, Vec<usize>)>) {
    let n = colors.len();
    let k = count_colors(&colors);
    if k == n {
        let mut perm = vec![0; n];
        for (v, &c) in colors.iter().enumerate() {
            perm[c as usize] = v;
        }
        let bits = encode(rows, &perm);
        if best.as_ref().is_none_or(|(b, _)| bits < *b) {
            *best = Some((bits, perm));
        }
        return;
    }
    let mut sizes = [0u8; MAX_CANON_ORDER];
    for &c in &colors {
        sizes[c as usize] += 1;
    }
    let target = (0..k)
        .find(|&c| sizes[c] > 1)
        .expect("non-discrete coloring") as u8;
    let mut tried: Vec<usize> = Vec::new();
    for v in 0..n {
        if colors[v] != target {
            continue;
        }
        // Swapping twins is an automorphism fixing every individualized
        // vertex, so a twin of a tried vertex yields the same leaves.
        if tried.iter().any(|&u| twins(rows, u, v)) {
            continue;
        }
        tried.push(v);
        let mut next: Vec<u8> = colors
            .iter()
            .enumerate()
            .map(|(u, &c)| {
                if c > target || (c == target && u != v) {
                    c + 1
                } else {
                    c
                }
            })
            .collect();
        refine(rows, &mut next);
        search(rows, next, best);
    }
}
