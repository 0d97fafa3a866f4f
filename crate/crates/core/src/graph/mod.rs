//! Graphs with loops and the pivot / local complementation transforms.
//!
//! A [`Graph`] is a symmetric GF(2) adjacency matrix. A set diagonal entry
//! is a loop. Order zero is the null graph.

mod canon;
mod enumerate;
mod io;

pub use canon::{canonical_form, canonical_labeling, CanonicalKey, MAX_CANON_ORDER};
pub use enumerate::{
    enumerate_graphs, enumerate_graphs_upto, enumerate_trees, GraphCatalog, MAX_LOOPED_ORDER,
    MAX_SIMPLE_ORDER, MAX_TREE_ORDER,
};
pub use io::{parse_edge_list, parse_graph6, write_edge_list};

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

/// Largest Hamming cube dimension `hamming_cube` will build.
pub const MAX_HAMMING_DIM: usize = 16;

/// Largest order `independence_number` will search.
pub const MAX_INDEPENDENCE_ORDER: usize = 24;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: BitMatrix,
}

impl Graph {
    /// The null graph.
    pub fn null() -> Self {
        Self::empty(0)
    }

    /// `E_n`: `n` isolated loopless vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: BitMatrix::zeros(n),
        }
    }

    /// Wraps a matrix, which must be symmetric.
    pub fn from_adjacency(adj: BitMatrix) -> Result<Self> {
        if !adj.is_symmetric() {
            return Err(Error::InvalidArgument(
                "adjacency matrix is not symmetric".into(),
            ));
        }
        Ok(Graph { adj })
    }

    /// Builds a graph from vertex pairs; `(u, u)` is a loop.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.check(u)?;
            g.check(v)?;
            if g.adj.get(u, v) {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.set_edge(u, v, true);
            }
        }
        g
    }

    /// `K_{m,n}` with parts `0..m` and `m..m+n`.
    pub fn complete_bipartite(m: usize, n: usize) -> Self {
        let mut g = Self::empty(m + n);
        for u in 0..m {
            for v in m..m + n {
                g.set_edge(u, v, true);
            }
        }
        g
    }

    /// `P_n`: the path with `n` edges on vertices `0..=n`.
    pub fn path(n: usize) -> Self {
        let mut g = Self::empty(n + 1);
        for v in 0..n {
            g.set_edge(v, v + 1, true);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::path(n.saturating_sub(1));
        if n >= 3 {
            g.set_edge(0, n - 1, true);
        }
        g
    }

    /// The `d`-dimensional Hamming cube on bit strings `0..2^d`.
    pub fn hamming_cube(d: usize) -> Result<Self> {
        if d > MAX_HAMMING_DIM {
            return Err(Error::OrderTooLarge {
                what: "hamming_cube dimension",
                order: d,
                max: MAX_HAMMING_DIM,
            });
        }
        let n = 1usize << d;
        let mut g = Self::empty(n);
        for v in 0..n {
            for bit in 0..d {
                let w = v ^ (1 << bit);
                if v < w {
                    g.set_edge(v, w, true);
                }
            }
        }
        Ok(g)
    }

    /// Random graph with each edge present with probability 1/2 and, when
    /// `loops` is set, each loop present with probability 1/2.
    pub fn random<R: Rng + ?Sized>(n: usize, loops: bool, rng: &mut R) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            if loops && rng.gen_bool(0.5) {
                g.set_edge(u, u, true);
            }
            for v in u + 1..n {
                if rng.gen_bool(0.5) {
                    g.set_edge(u, v, true);
                }
            }
        }
        g
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.dim()
    }

    #[inline]
    pub fn adjacency(&self) -> &BitMatrix {
        &self.adj
    }

    #[inline]
    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj.get(u, v)
    }

    #[inline]
    pub fn has_loop(&self, v: usize) -> bool {
        self.adj.get(v, v)
    }

    pub fn is_loopless(&self) -> bool {
        (0..self.order()).all(|v| !self.has_loop(v))
    }

    pub fn loops(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.order()).filter(|&v| self.has_loop(v))
    }

    /// Sets or clears the pair `uv` in both orientations.
    pub fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        self.adj.set(u, v, present);
        self.adj.set(v, u, present);
    }

    pub fn toggle_edge(&mut self, u: usize, v: usize) {
        self.adj.toggle(u, v);
        if u != v {
            self.adj.toggle(v, u);
        }
    }

    /// Neighbors of `v`, excluding `v` itself.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.order()).filter(move |&u| u != v && self.adj.get(v, u))
    }

    /// Number of neighbors other than `v` itself.
    pub fn degree(&self, v: usize) -> usize {
        self.adj.row_weight(v) - usize::from(self.has_loop(v))
    }

    /// Non-loop edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.order();
        (0..n).flat_map(move |u| {
            (u + 1..n)
                .filter(move |&v| self.adj.get(u, v))
                .map(move |v| (u, v))
        })
    }

    /// Every adjacency, loops first as `(v, v)`, then edges `(u, v)` with `u < v`.
    pub fn adjacencies(&self) -> Vec<(usize, usize)> {
        let n = self.order();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u..n {
                if self.adj.get(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    pub fn rank(&self) -> usize {
        self.adj.rank()
    }

    pub fn nullity(&self) -> usize {
        self.adj.nullity()
    }

    /// Row `v` as a single word. Only valid for order at most 64.
    #[inline]
    pub(crate) fn row_word(&self, v: usize) -> u64 {
        debug_assert!(self.order() <= 64);
        self.adj.row(v)[0]
    }

    fn check(&self, v: usize) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            })
        }
    }

    /// Induced subgraph `G[S]`, relabeled `0..|S|` in ascending original order.
    pub fn induced(&self, subset: &[usize]) -> Result<Self> {
        for &v in subset {
            self.check(v)?;
        }
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        Ok(Graph {
            adj: self.adj.principal_submatrix(&sorted),
        })
    }

    /// `G - a - ...`: the subgraph induced by every vertex not in `removed`.
    pub fn delete_vertices(&self, removed: &[usize]) -> Result<Self> {
        for &v in removed {
            self.check(v)?;
        }
        let keep: Vec<usize> = (0..self.order()).filter(|v| !removed.contains(v)).collect();
        Ok(Graph {
            adj: self.adj.principal_submatrix(&keep),
        })
    }

    pub fn delete_vertex(&self, a: usize) -> Result<Self> {
        self.delete_vertices(&[a])
    }

    /// Relabels so that new vertex `i` is old vertex `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Graph {
            adj: self.adj.permuted(perm),
        }
    }

    /// Exchanges the labels of `a` and `b`.
    pub fn swap_labels(&self, a: usize, b: usize) -> Result<Self> {
        self.check(a)?;
        self.check(b)?;
        let mut perm: Vec<usize> = (0..self.order()).collect();
        perm.swap(a, b);
        Ok(self.permuted(&perm))
    }

    /// The pivot `G^{ab}`.
    ///
    /// Every vertex outside `{a, b}` falls in one of four classes by its
    /// adjacency to `a` and `b`: both, `a` only, `b` only, neither. A pair is
    /// toggled exactly when its endpoints lie in two different classes among
    /// the first three. Loops and the rows of `a` and `b` never change.
    pub fn pivot(&self, a: usize, b: usize) -> Result<Self> {
        self.check(a)?;
        self.check(b)?;
        if a == b {
            return Err(Error::SameVertex(a));
        }
        let n = self.order();
        // 0: neither, 1: a only, 2: b only, 3: both
        let class: Vec<u8> = (0..n)
            .map(|v| {
                if v == a || v == b {
                    0
                } else {
                    u8::from(self.adj.get(v, a)) | (u8::from(self.adj.get(v, b)) << 1)
                }
            })
            .collect();
        let mut g = self.clone();
        for x in 0..n {
            if class[x] == 0 {
                continue;
            }
            for y in x + 1..n {
                if class[y] != 0 && class[y] != class[x] {
                    g.toggle_edge(x, y);
                }
            }
        }
        Ok(g)
    }

    /// Local complement `G^a`: complements the subgraph induced on the
    /// neighbors of `a` other than `a`, loops of those neighbors included.
    /// Row and loop of `a` are unchanged.
    pub fn local_complement(&self, a: usize) -> Result<Self> {
        self.local_complement_impl(a, true)
    }

    /// As [`Graph::local_complement`] but leaves every loop untouched.
    pub fn local_complement_simple(&self, a: usize) -> Result<Self> {
        self.local_complement_impl(a, false)
    }

    fn local_complement_impl(&self, a: usize, toggle_loops: bool) -> Result<Self> {
        self.check(a)?;
        let nbrs: Vec<usize> = self.neighbors(a).collect();
        let mut g = self.clone();
        for (i, &x) in nbrs.iter().enumerate() {
            if toggle_loops {
                g.toggle_edge(x, x);
            }
            for &y in &nbrs[i + 1..] {
                g.toggle_edge(x, y);
            }
        }
        Ok(g)
    }

    /// Disjoint union; vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Self {
        let n1 = self.order();
        let mut g = Self::empty(n1 + other.order());
        for (u, v) in self.adjacencies() {
            g.set_edge(u, v, true);
        }
        for (u, v) in other.adjacencies() {
            g.set_edge(n1 + u, n1 + v, true);
        }
        g
    }

    /// Toggles every pair of distinct vertices; loops unchanged.
    pub fn complement(&self) -> Self {
        let mut g = self.clone();
        let n = self.order();
        for u in 0..n {
            for v in u + 1..n {
                g.toggle_edge(u, v);
            }
        }
        g
    }

    /// Size of a largest set of loopless, pairwise nonadjacent vertices.
    pub fn independence_number(&self) -> Result<usize> {
        let n = self.order();
        if n > MAX_INDEPENDENCE_ORDER {
            return Err(Error::OrderTooLarge {
                what: "independence_number",
                order: n,
                max: MAX_INDEPENDENCE_ORDER,
            });
        }
        let rows: Vec<u64> = (0..n).map(|v| self.row_word(v)).collect();
        let looped: u64 = self.loops().fold(0, |m, v| m | (1 << v));
        let all = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
        Ok(max_independent(&rows, all & !looped))
    }

    /// graph6 for loopless graphs, one-line edge list otherwise.
    pub fn encode(&self) -> String {
        if self.is_loopless() {
            io::to_graph6(self).expect("loopless graph encodes to graph6")
        } else {
            let mut s = format!("n {}", self.order());
            for (u, v) in self.adjacencies() {
                s.push_str(&format!("; e {u} {v}"));
            }
            s
        }
    }

    pub fn to_graph6(&self) -> Result<String> {
        io::to_graph6(self)
    }
}

fn max_independent(rows: &[u64], candidates: u64) -> usize {
    if candidates == 0 {
        return 0;
    }
    let v = candidates.trailing_zeros() as usize;
    let without = candidates & !(1 << v);
    let nbrs = rows[v] & without;
    if nbrs == 0 {
        return 1 + max_independent(rows, without);
    }
    let take = 1 + max_independent(rows, without & !nbrs);
    take.max(max_independent(rows, without))
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", self.encode())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}
