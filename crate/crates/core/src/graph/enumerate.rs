//! Isomorph-free enumeration of small graphs and trees.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::canon::{canonical_form, canonical_labeling, CanonicalKey};
use super::Graph;
use crate::error::{Error, Result};

pub const MAX_SIMPLE_ORDER: usize = 8;
pub const MAX_LOOPED_ORDER: usize = 5;
pub const MAX_TREE_ORDER: usize = 9;

/// One canonically labeled representative per isomorphism class.
#[derive(Clone, Debug)]
pub struct GraphCatalog {
    pub order: usize,
    pub loops_allowed: bool,
    members: Vec<Graph>,
    keys: Vec<CanonicalKey>,
}

impl GraphCatalog {
    fn from_map(order: usize, loops_allowed: bool, map: BTreeMap<CanonicalKey, Graph>) -> Self {
        let (keys, members) = map.into_iter().unzip();
        GraphCatalog {
            order,
            loops_allowed,
            members,
            keys,
        }
    }

    /// A catalog of the given graphs in the given order. Each must have
    /// order `order`, and loops only when `loops_allowed`. Members need not
    /// be canonically labeled or pairwise non-isomorphic.
    pub fn from_graphs(order: usize, loops_allowed: bool, members: Vec<Graph>) -> Result<Self> {
        let mut keys = Vec::with_capacity(members.len());
        for g in &members {
            if g.order() != order {
                return Err(Error::InvalidArgument(format!(
                    "catalog of order {order} given a graph of order {}",
                    g.order()
                )));
            }
            if !loops_allowed && !g.is_loopless() {
                return Err(Error::LoopsNotAllowed("catalog member"));
            }
            keys.push(canonical_form(g)?);
        }
        Ok(GraphCatalog {
            order,
            loops_allowed,
            members,
            keys,
        })
    }

    pub fn members(&self) -> &[Graph] {
        &self.members
    }

    pub fn into_members(self) -> Vec<Graph> {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn keys(&self) -> &[CanonicalKey] {
        &self.keys
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Graph> {
        self.members.iter()
    }
}

impl<'a> IntoIterator for &'a GraphCatalog {
    type Item = &'a Graph;
    type IntoIter = std::slice::Iter<'a, Graph>;
    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

fn check_order(n: usize, loops: bool) -> Result<()> {
    let max = if loops {
        MAX_LOOPED_ORDER
    } else {
        MAX_SIMPLE_ORDER
    };
    if n > max {
        return Err(Error::OrderTooLarge {
            what: if loops {
                "looped graph enumeration"
            } else {
                "simple graph enumeration"
            },
            order: n,
            max,
        });
    }
    Ok(())
}

/// All isomorphism classes of order `n`.
pub fn enumerate_graphs(n: usize, loops_allowed: bool) -> Result<GraphCatalog> {
    Ok(enumerate_graphs_upto(n, loops_allowed)?
        .pop()
        .expect("at least the order-0 catalog"))
}

/// Catalogs for every order `0..=n`, built by one-vertex extension.
pub fn enumerate_graphs_upto(n: usize, loops_allowed: bool) -> Result<Vec<GraphCatalog>> {
    check_order(n, loops_allowed)?;
    let mut base = BTreeMap::new();
    let null = Graph::null();
    base.insert(canonical_labeling(&null)?.0, null);
    let mut out = vec![GraphCatalog::from_map(0, loops_allowed, base)];
    for order in 1..=n {
        let prev = out.last().expect("nonempty");
        out.push(extend(prev, loops_allowed)?);
        debug_assert_eq!(out.last().unwrap().order, order);
    }
    Ok(out)
}

fn extend(prev: &GraphCatalog, loops_allowed: bool) -> Result<GraphCatalog> {
    let m = prev.order;
    let width = m + usize::from(loops_allowed);
    let found: Vec<(CanonicalKey, Graph)> = prev
        .members
        .par_iter()
        .flat_map_iter(|g| {
            (0u64..(1 << width)).map(move |mask| {
                let mut h = g.disjoint_union(&Graph::empty(1));
                for u in 0..m {
                    if (mask >> u) & 1 == 1 {
                        h.set_edge(u, m, true);
                    }
                }
                if loops_allowed && (mask >> m) & 1 == 1 {
                    h.set_edge(m, m, true);
                }
                let (key, perm) = canonical_labeling(&h).expect("order within guard");
                (key, h.permuted(&perm))
            })
        })
        .collect();
    let mut map = BTreeMap::new();
    for (key, g) in found {
        map.entry(key).or_insert(g);
    }
    Ok(GraphCatalog::from_map(m + 1, loops_allowed, map))
}

/// Decodes a Prüfer sequence over labels `0..seq.len() + 2`.
pub(crate) fn prufer_tree(seq: &[usize]) -> Graph {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut g = Graph::empty(n);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        g.set_edge(leaf, s, true);
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    g.set_edge(rest[0], rest[1], true);
    g
}

/// All trees on `n` vertices up to isomorphism, from every Prüfer sequence.
pub fn enumerate_trees(n: usize) -> Result<GraphCatalog> {
    if n == 0 {
        return Err(Error::OrderTooSmall {
            what: "enumerate_trees",
            order: n,
            min: 1,
        });
    }
    if n > MAX_TREE_ORDER {
        return Err(Error::OrderTooLarge {
            what: "enumerate_trees",
            order: n,
            max: MAX_TREE_ORDER,
        });
    }
    let mut map = BTreeMap::new();
    if n <= 2 {
        let g = Graph::complete(n);
        map.insert(canonical_labeling(&g)?.0, g);
        return Ok(GraphCatalog::from_map(n, false, map));
    }
    let len = n - 2;
    let total = (n as u64).pow(len as u32);
    let found: HashMap<CanonicalKey, Graph> = (0..total)
        .into_par_iter()
        .fold(HashMap::new, |mut acc, mut index| {
            let mut seq = vec![0usize; len];
            for s in seq.iter_mut() {
                *s = (index % n as u64) as usize;
                index /= n as u64;
            }
            let tree = prufer_tree(&seq);
            let (key, perm) = canonical_labeling(&tree).expect("order within guard");
            acc.entry(key).or_insert_with(|| tree.permuted(&perm));
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, g) in b {
                a.entry(k).or_insert(g);
            }
            a
        });
    map.extend(found);
    Ok(GraphCatalog::from_map(n, false, map))
}
