//! The two evaluators of `q(G; x, y)` and the specializations built on them.
//!
//! [`q_expansion`] sums `u^rank v^nullity` over every vertex subset.
//! [`Reducer`] applies the three-term pivot rule on an edge with loopless
//! endpoints, the two-term local complementation rule on a looped vertex,
//! and `y^n` on edgeless loopless graphs. Both return shifted-basis
//! polynomials.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bipoly::{Basis, BiPoly, UniPoly};
use crate::error::{Error, Result};
use crate::gf2::rank_of_words;
use crate::graph::{canonical_form, CanonicalKey, Graph, MAX_CANON_ORDER};

/// Largest order accepted by the subset expansion.
pub const EXPANSION_MAX_ORDER: usize = 25;

/// Graphs up to this order are memoized by canonical form.
pub const DEFAULT_MEMO_THRESHOLD: usize = 9;

const PARALLEL_FROM_ORDER: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalMethod {
    Expansion,
    Reduction,
    /// Runs both and fails unless they agree exactly.
    BothCheck,
}

/// `counts[r][k]` is the number of subsets whose induced subgraph has rank
/// `r` and nullity `k`.
pub fn expansion_counts(g: &Graph) -> Result<Vec<Vec<u64>>> {
    let n = g.order();
    if n > EXPANSION_MAX_ORDER {
        return Err(Error::OrderTooLarge {
            what: "subset expansion",
            order: n,
            max: EXPANSION_MAX_ORDER,
        });
    }
    let rows: Vec<u64> = (0..n).map(|v| g.row_word(v)).collect();
    let side = n + 1;
    let tally = |mut acc: Vec<u64>, subset: u64| {
        let mut work = [0u64; EXPANSION_MAX_ORDER];
        let mut size = 0;
        let mut rest = subset;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            work[size] = rows[v] & subset;
            size += 1;
        }
        let rank = rank_of_words(&mut work[..size]);
        let nullity = size - rank;
        debug_assert_eq!(rank + nullity, subset.count_ones() as usize);
        acc[rank * side + nullity] += 1;
        acc
    };
    let total = 1u64 << n;
    let flat = if n >= PARALLEL_FROM_ORDER {
        (0..total)
            .into_par_iter()
            .fold(|| vec![0u64; side * side], tally)
            .reduce(
                || vec![0u64; side * side],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            )
    } else {
        (0..total).fold(vec![0u64; side * side], tally)
    };
    Ok(flat.chunks(side).map(<[u64]>::to_vec).collect())
}

/// `q(G)` from the subset expansion, in the shifted basis.
pub fn q_expansion(g: &Graph) -> Result<BiPoly> {
    let counts = expansion_counts(g)?;
    let grid = counts
        .into_iter()
        .map(|row| row.into_iter().map(BigInt::from).collect())
        .collect();
    Ok(BiPoly::from_grid(Basis::Shifted, grid))
}

/// `q(G)` from the reduction rules with the default memo table.
pub fn q_reduction(g: &Graph) -> BiPoly {
    Reducer::new()
        .q(g)
        .expect("reduction with the standard pivot cannot fail")
}

pub fn evaluate(g: &Graph, method: EvalMethod) -> Result<BiPoly> {
    match method {
        EvalMethod::Expansion => q_expansion(g),
        EvalMethod::Reduction => Ok(q_reduction(g)),
        EvalMethod::BothCheck => {
            let expansion = q_expansion(g)?;
            let reduction = q_reduction(g);
            if expansion != reduction {
                return Err(Error::EvaluatorMismatch {
                    graph: g.encode(),
                    expansion: expansion.render_text(),
                    reduction: reduction.render_text(),
                });
            }
            Ok(expansion)
        }
    }
}

pub type PivotFn = fn(&Graph, usize, usize) -> Result<Graph>;
pub type LocalComplementFn = fn(&Graph, usize) -> Result<Graph>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum MemoKey {
    Canonical(CanonicalKey),
    Labeled(Graph),
}

/// Cache of reduction results. Entries are never overwritten.
#[derive(Clone, Debug, Default)]
pub struct MemoTable {
    map: HashMap<MemoKey, BiPoly>,
    threshold: usize,
}

impl MemoTable {
    pub fn new(threshold: usize) -> Self {
        MemoTable {
            map: HashMap::new(),
            threshold: threshold.min(MAX_CANON_ORDER),
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    fn key(&self, g: &Graph) -> MemoKey {
        if g.order() <= self.threshold {
            MemoKey::Canonical(canonical_form(g).expect("threshold within canonical guard"))
        } else {
            MemoKey::Labeled(g.clone())
        }
    }
}

enum Step {
    Pivot(usize, usize),
    Loop(usize),
    Edgeless,
}

/// Recursive evaluator over the pivot and local complementation rules.
pub struct Reducer {
    memo: Option<MemoTable>,
    rng: Option<ChaCha8Rng>,
    pivot: PivotFn,
    local_complement: LocalComplementFn,
}

impl Default for Reducer {
    fn default() -> Self {
        Self::new()
    }
}

impl Reducer {
    /// Deterministic choice (least loopless edge, else least looped vertex)
    /// with a canonical-form memo up to [`DEFAULT_MEMO_THRESHOLD`].
    pub fn new() -> Self {
        Reducer {
            memo: Some(MemoTable::new(DEFAULT_MEMO_THRESHOLD)),
            rng: None,
            pivot: Graph::pivot,
            local_complement: Graph::local_complement,
        }
    }

    pub fn with_memo_threshold(mut self, threshold: usize) -> Self {
        self.memo = Some(MemoTable::new(threshold));
        self
    }

    pub fn without_memo(mut self) -> Self {
        self.memo = None;
        self
    }

    /// Picks the rule and its edge or vertex uniformly at random among all
    /// applicable ones. Memoization is disabled so every choice is exercised.
    pub fn randomized(seed: u64) -> Self {
        Reducer {
            memo: None,
            rng: Some(ChaCha8Rng::seed_from_u64(seed)),
            ..Self::new()
        }
    }

    /// Substitutes the pivot; used to check that a wrong pivot is detected.
    pub fn with_pivot(mut self, pivot: PivotFn) -> Self {
        self.pivot = pivot;
        self
    }

    pub fn with_local_complement(mut self, local_complement: LocalComplementFn) -> Self {
        self.local_complement = local_complement;
        self
    }

    pub fn memo(&self) -> Option<&MemoTable> {
        self.memo.as_ref()
    }

    fn choose(&mut self, g: &Graph) -> Step {
        match self.rng.as_mut() {
            None => {
                for (a, b) in g.edges() {
                    if !g.has_loop(a) && !g.has_loop(b) {
                        return Step::Pivot(a, b);
                    }
                }
                match g.loops().next() {
                    Some(a) => Step::Loop(a),
                    None => Step::Edgeless,
                }
            }
            Some(rng) => {
                let mut options: Vec<Step> = g
                    .edges()
                    .filter(|&(a, b)| !g.has_loop(a) && !g.has_loop(b))
                    .map(|(a, b)| {
                        if rng.gen_bool(0.5) {
                            Step::Pivot(a, b)
                        } else {
                            Step::Pivot(b, a)
                        }
                    })
                    .collect();
                options.extend(g.loops().map(Step::Loop));
                if options.is_empty() {
                    debug_assert_eq!(g.edge_count(), 0);
                    return Step::Edgeless;
                }
                let pick = rng.gen_range(0..options.len());
                options.swap_remove(pick)
            }
        }
    }

    pub fn q(&mut self, g: &Graph) -> Result<BiPoly> {
        if g.order() == 0 {
            return Ok(BiPoly::one(Basis::Shifted));
        }
        let key = self.memo.as_ref().map(|m| m.key(g));
        if let (Some(memo), Some(key)) = (self.memo.as_ref(), key.as_ref()) {
            if let Some(hit) = memo.map.get(key) {
                return Ok(hit.clone());
            }
        }
        let result = match self.choose(g) {
            Step::Pivot(a, b) => {
                let pivoted = (self.pivot)(g, a, b)?;
                let without_a = self.q(&g.delete_vertex(a)?)?;
                let without_b = self.q(&pivoted.delete_vertex(b)?)?;
                let without_ab = self.q(&pivoted.delete_vertices(&[a, b])?)?;
                // (x-1)^2 - 1 = u^2 - 1
                let factor = BiPoly::from_i64_grid(Basis::Shifted, &[&[-1], &[0], &[1]]);
                without_a.add(&without_b)?.add(&factor.mul(&without_ab)?)?
            }
            Step::Loop(a) => {
                let without_a = self.q(&g.delete_vertex(a)?)?;
                let complemented = (self.local_complement)(g, a)?.delete_vertex(a)?;
                let u = BiPoly::from_i64_grid(Basis::Shifted, &[&[0], &[1]]);
                without_a.add(&u.mul(&self.q(&complemented)?)?)?
            }
            Step::Edgeless => {
                // y^n = (1 + v)^n
                let one_plus_v = BiPoly::from_i64_grid(Basis::Shifted, &[&[1, 1]]);
                let mut acc = BiPoly::one(Basis::Shifted);
                for _ in 0..g.order() {
                    acc = acc.mul(&one_plus_v)?;
                }
                acc
            }
        };
        if let (Some(memo), Some(key)) = (self.memo.as_mut(), key) {
            memo.map.entry(key).or_insert_with(|| result.clone());
        }
        Ok(result)
    }
}

/// `q_N(G; y) = q(G; 2, y)`.
pub fn nullity_polynomial(q: &BiPoly) -> UniPoly {
    q.specialize_x(&BigInt::from(2))
}

/// `q_R(G; x) = q(G; x, 2)`.
pub fn rank_polynomial(q: &BiPoly) -> UniPoly {
    q.specialize_y(&BigInt::from(2))
}

/// `q(G; 1, 1 + λ)`, the independent-set polynomial in `λ`.
pub fn independence_polynomial(q: &BiPoly) -> UniPoly {
    q.specialize_x(&BigInt::from(1)).shift(1, 'λ')
}

fn integer(value: BigRational) -> BigInt {
    debug_assert!(value.is_integer());
    value.to_integer()
}

pub fn q_nullity(g: &Graph) -> Result<UniPoly> {
    Ok(nullity_polynomial(&q_expansion(g)?))
}

pub fn q_rank(g: &Graph) -> Result<UniPoly> {
    Ok(rank_polynomial(&q_expansion(g)?))
}

pub fn independent_set_poly(g: &Graph) -> Result<UniPoly> {
    Ok(independence_polynomial(&q_expansion(g)?))
}

/// `q(G; 1, 2)`: independent sets, the empty set included.
pub fn count_independent_sets(g: &Graph) -> Result<BigInt> {
    Ok(integer(q_expansion(g)?.evaluate_int(1, 2)))
}

/// `q(G; 2, 1)`: induced subgraphs of nullity zero, the null graph included.
pub fn count_full_rank_induced(g: &Graph) -> Result<BigInt> {
    Ok(integer(q_expansion(g)?.evaluate_int(2, 1)))
}

/// `dq/dy (1, 2)`: total size of all independent sets.
pub fn total_independent_size(g: &Graph) -> Result<BigInt> {
    let dq = q_expansion(g)?.to_xy().partial_y()?;
    Ok(integer(dq.evaluate_int(1, 2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy(grid: &[&[i64]]) -> BiPoly {
        BiPoly::from_i64_grid(Basis::Standard, grid)
    }

    fn uv(grid: &[&[i64]]) -> BiPoly {
        BiPoly::from_i64_grid(Basis::Shifted, grid)
    }

    fn looped_k2() -> Graph {
        Graph::from_edge_list(2, &[(0, 0), (0, 1)]).unwrap()
    }

    fn looped_triangle() -> Graph {
        Graph::from_edge_list(3, &[(0, 0), (0, 1), (0, 2), (1, 2)]).unwrap()
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(
            q_expansion(&Graph::empty(2)).unwrap().to_xy(),
            xy(&[&[0, 0, 1]])
        );
        assert_eq!(
            q_expansion(&Graph::complete(2)).unwrap().to_xy(),
            xy(&[&[0, 2], &[-2], &[1]])
        );
        // 1 + 3v + 3u^2 + u^2 v
        assert_eq!(
            q_expansion(&Graph::complete(3)).unwrap(),
            uv(&[&[1, 3], &[0, 0], &[3, 1]])
        );
        let single_loop = Graph::from_edge_list(1, &[(0, 0)]).unwrap();
        assert_eq!(
            q_expansion(&single_loop).unwrap().to_xy(),
            xy(&[&[0], &[1]])
        );
        // x^2 - x + y
        assert_eq!(
            q_expansion(&looped_k2()).unwrap().to_xy(),
            xy(&[&[0, 1], &[-1], &[1]])
        );
        assert_eq!(
            q_expansion(&Graph::null()).unwrap(),
            BiPoly::one(Basis::Shifted)
        );
    }

    #[test]
    fn expansion_guard() {
        assert!(matches!(
            q_expansion(&Graph::empty(26)),
            Err(Error::OrderTooLarge { .. })
        ));
    }

    #[test]
    fn reduction_examples() {
        let p2 = q_reduction(&Graph::path(2)).to_xy();
        assert_eq!(p2, xy(&[&[0, 2, 1], &[-2, -2], &[1, 1]]));
        // 1 + u + 2v + 3u^2 + u^3
        let tri = q_reduction(&looped_triangle());
        assert_eq!(tri, uv(&[&[1, 2], &[1, 0], &[3, 0], &[1, 0]]));
        assert_eq!(q_reduction(&Graph::null()), BiPoly::one(Basis::Shifted));
    }

    #[test]
    fn looped_triangle_red2_terms() {
        let g = looped_triangle();
        let without_a = g.delete_vertex(0).unwrap();
        assert_eq!(without_a, Graph::complete(2));
        let lc = g.local_complement(0).unwrap().delete_vertex(0).unwrap();
        assert_eq!(lc, Graph::from_edge_list(2, &[(0, 0), (1, 1)]).unwrap());
        assert_eq!(q_expansion(&lc).unwrap().to_xy(), xy(&[&[0], &[0], &[1]]));
    }

    #[test]
    fn both_check_and_reducers_agree() {
        for g in [
            Graph::complete(4),
            Graph::cycle(5),
            looped_triangle(),
            looped_k2(),
        ] {
            let e = evaluate(&g, EvalMethod::BothCheck).unwrap();
            assert_eq!(Reducer::new().without_memo().q(&g).unwrap(), e);
            assert_eq!(Reducer::randomized(1).q(&g).unwrap(), e);
        }
    }

    #[test]
    fn nullity_examples() {
        assert_eq!(
            q_nullity(&Graph::empty(3)).unwrap(),
            UniPoly::from_i64('y', &[0, 0, 0, 1])
        );
        assert_eq!(
            q_nullity(&Graph::path(3)).unwrap(),
            UniPoly::from_i64('y', &[0, 2, 3])
        );
        assert_eq!(
            q_nullity(&Graph::complete(3)).unwrap(),
            UniPoly::from_i64('y', &[0, 4])
        );
    }

    #[test]
    fn rank_examples() {
        assert_eq!(
            q_rank(&Graph::complete(3)).unwrap(),
            UniPoly::from_i64('x', &[8, -8, 4])
        );
        assert_eq!(
            q_rank(&Graph::empty(4)).unwrap(),
            UniPoly::from_i64('x', &[16])
        );
    }

    #[test]
    fn independence_examples() {
        let l = |c: &[i64]| UniPoly::from_i64('λ', c);
        assert_eq!(
            independent_set_poly(&Graph::complete(3)).unwrap(),
            l(&[1, 3])
        );
        assert_eq!(
            independent_set_poly(&Graph::empty(3)).unwrap(),
            l(&[1, 3, 3, 1])
        );
        assert_eq!(
            independent_set_poly(&Graph::path(2)).unwrap(),
            l(&[1, 3, 1])
        );
    }

    #[test]
    fn counts_for_three_vertex_path() {
        let p2 = Graph::path(2);
        assert_eq!(count_independent_sets(&p2).unwrap(), BigInt::from(5));
        assert_eq!(count_full_rank_induced(&p2).unwrap(), BigInt::from(3));
        assert_eq!(total_independent_size(&p2).unwrap(), BigInt::from(5));
    }

    #[test]
    fn parallel_expansion_matches_reduction() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let g = Graph::random(15, true, &mut rng);
        assert_eq!(q_expansion(&g).unwrap(), q_reduction(&g));
    }
}
