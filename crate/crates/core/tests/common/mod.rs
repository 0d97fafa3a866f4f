//! Brute-force oracles shared by the integration tests. They work from raw
//! adjacency rows and share no code with the library's own evaluators.

#![allow(dead_code)]

use std::collections::HashSet;

use interlace_core::Graph;

pub fn rows(g: &Graph) -> Vec<u64> {
    let n = g.order();
    (0..n)
        .map(|u| {
            (0..n)
                .filter(|&v| g.is_adjacent(u, v))
                .fold(0u64, |acc, v| acc | 1 << v)
        })
        .collect()
}

/// GF(2) rank by textbook elimination, highest bit first.
pub fn gf2_rank(mut rows: Vec<u64>) -> usize {
    let mut rank = 0;
    for bit in (0..64).rev() {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i] >> bit & 1 == 1) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for (i, r) in rows.iter_mut().enumerate() {
            if i != rank && *r >> bit & 1 == 1 {
                *r ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

/// Rows of the induced subgraph on the vertex set `mask`, compacted.
pub fn induced_rows(rows: &[u64], mask: u64) -> Vec<u64> {
    let verts: Vec<usize> = (0..rows.len()).filter(|&v| mask >> v & 1 == 1).collect();
    verts
        .iter()
        .map(|&u| {
            verts
                .iter()
                .enumerate()
                .filter(|&(_, &v)| rows[u] >> v & 1 == 1)
                .fold(0u64, |acc, (j, _)| acc | 1 << j)
        })
        .collect()
}

pub fn rank_of(g: &Graph) -> usize {
    gf2_rank(rows(g))
}

/// Sets with no edge and no loop inside: (count, total size).
pub fn independent_sets(g: &Graph) -> (u64, u64) {
    let r = rows(g);
    let n = g.order();
    let mut count = 0;
    let mut size = 0;
    for mask in 0u64..(1 << n) {
        if (0..n).all(|v| mask >> v & 1 == 0 || r[v] & mask == 0) {
            count += 1;
            size += u64::from(mask.count_ones());
        }
    }
    (count, size)
}

pub fn full_rank_induced(g: &Graph) -> u64 {
    let r = rows(g);
    let n = g.order();
    (0u64..(1 << n))
        .filter(|&mask| gf2_rank(induced_rows(&r, mask)) == mask.count_ones() as usize)
        .count() as u64
}

pub fn max_independent(g: &Graph) -> usize {
    let r = rows(g);
    let n = g.order();
    (0u64..(1 << n))
        .filter(|&mask| (0..n).all(|v| mask >> v & 1 == 0 || r[v] & mask == 0))
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Adjacency lists of the labeled tree encoded by a Prüfer sequence.
pub fn prufer_tree(seq: &[usize], n: usize) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    if n == 2 {
        adj[0].push(1);
        adj[1].push(0);
        return adj;
    }
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        adj[leaf].push(s);
        adj[s].push(leaf);
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let last: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    adj[last[0]].push(last[1]);
    adj[last[1]].push(last[0]);
    adj
}

fn ahu(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = adj[v]
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| ahu(adj, w, v))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// Center-rooted AHU string, a complete invariant of unlabeled trees.
pub fn tree_code(adj: &[Vec<usize>]) -> String {
    let n = adj.len();
    if n == 1 {
        return "()".into();
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &w in &adj[leaf] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    let codes: Vec<String> = match layer[..] {
        [c] => vec![ahu(adj, c, usize::MAX)],
        [a, b] => {
            // root on the central edge
            let (x, y) = (ahu(adj, a, b), ahu(adj, b, a));
            vec![if x < y {
                format!("{x}{y}")
            } else {
                format!("{y}{x}")
            }]
        }
        _ => unreachable!("a tree has one or two centers"),
    };
    codes.concat()
}

/// Number of unlabeled trees on `n` vertices, by deduping every Prüfer
/// sequence.
pub fn count_trees_by_prufer(n: usize) -> usize {
    if n <= 2 {
        return 1;
    }
    let len = n - 2;
    let total = n.pow(len as u32);
    let mut seen = HashSet::new();
    let mut seq = vec![0usize; len];
    for mut idx in 0..total {
        for s in seq.iter_mut() {
            *s = idx % n;
            idx /= n;
        }
        seen.insert(tree_code(&prufer_tree(&seq, n)));
    }
    seen.len()
}
