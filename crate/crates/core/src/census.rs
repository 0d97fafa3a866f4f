//! Batch checks over enumerated catalogs.
//!
//! Reports are assembled in catalog order whatever the evaluation order, so
//! a given catalog and seed always produce the same bytes.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bipoly::{first_unimodal_violation, rows_cols_unimodal, UnimodalViolation};
use crate::error::{Error, Result};
use crate::eval::{nullity_polynomial, q_expansion, rank_polynomial, PivotFn, Reducer};
use crate::families::hamming_nullities;
use crate::gf2::BitMatrix;
use crate::graph::{enumerate_graphs_upto, enumerate_trees, Graph, GraphCatalog};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportKind {
    Distinguish,
    Unimodal,
    Identities,
    Trees,
    Hamming,
}

/// Which polynomial a distinguishing count compares.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PolyChoice {
    Full,
    Nullity,
    Rank,
}

impl PolyChoice {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(PolyChoice::Full),
            "nullity" => Ok(PolyChoice::Nullity),
            "rank" => Ok(PolyChoice::Rank),
            other => Err(Error::InvalidArgument(format!(
                "unknown polynomial {other:?}; expected full, nullity or rank"
            ))),
        }
    }

    fn name(self) -> &'static str {
        match self {
            PolyChoice::Full => "full",
            PolyChoice::Nullity => "nullity",
            PolyChoice::Rank => "rank",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: String,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ViolatorDetail {
    pub graph: String,
    pub violations: Vec<UnimodalViolation>,
    pub rank_unimodal: bool,
    pub nullity_unimodal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub kind: ReportKind,
    pub order: usize,
    pub loops: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poly: Option<PolyChoice>,
    pub total: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distinct: Option<usize>,
    pub collisions: Vec<Vec<String>>,
    pub violators: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violator_details: Vec<ViolatorDetail>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sections: Vec<Report>,
}

impl Report {
    fn new(kind: ReportKind, order: usize, loops: bool) -> Self {
        Report {
            kind,
            order,
            loops,
            poly: None,
            total: 0,
            distinct: None,
            collisions: Vec::new(),
            violators: Vec::new(),
            violator_details: Vec::new(),
            checks: Vec::new(),
            failures: Vec::new(),
            sections: Vec::new(),
        }
    }

    /// True when no check failed and no violator was found, recursively.
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.sections.iter().all(Report::passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        self.write_text(&mut s, "");
        s
    }

    fn write_text(&self, s: &mut String, indent: &str) {
        let kind = serde_json::to_value(self.kind).expect("kind serializes");
        let _ = writeln!(s, "{indent}kind: {}", kind.as_str().unwrap_or_default());
        let _ = writeln!(s, "{indent}order: {}", self.order);
        let _ = writeln!(s, "{indent}loops: {}", self.loops);
        if let Some(p) = self.poly {
            let _ = writeln!(s, "{indent}poly: {}", p.name());
        }
        let _ = writeln!(s, "{indent}total: {}", self.total);
        if let Some(d) = self.distinct {
            let _ = writeln!(s, "{indent}distinct: {d}");
        }
        let _ = writeln!(s, "{indent}collisions: {}", self.collisions.len());
        for class in &self.collisions {
            let _ = writeln!(s, "{indent}  {}", class.join(" | "));
        }
        let _ = writeln!(s, "{indent}violators: {}", self.violators.len());
        for d in &self.violator_details {
            let _ = writeln!(
                s,
                "{indent}  {} rank-unimodal={} nullity-unimodal={}",
                d.graph, d.rank_unimodal, d.nullity_unimodal
            );
        }
        for c in &self.checks {
            let status = if c.failures == 0 { "ok" } else { "FAIL" };
            let _ = writeln!(
                s,
                "{indent}check {}: {status} ({} cases, {} failures)",
                c.name, c.cases, c.failures
            );
        }
        for f in &self.failures {
            let _ = writeln!(s, "{indent}failure {}: {}", f.check, f.witness);
        }
        for section in &self.sections {
            let _ = writeln!(s, "{indent}section:");
            section.write_text(s, &format!("{indent}  "));
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_text())
    }
}

type CoeffKey = Vec<Vec<BigInt>>;

fn poly_key(g: &Graph, which: PolyChoice) -> Result<CoeffKey> {
    let q = q_expansion(g)?;
    Ok(match which {
        PolyChoice::Full => q.grid().to_vec(),
        PolyChoice::Nullity => vec![nullity_polynomial(&q).coeffs().to_vec()],
        PolyChoice::Rank => vec![rank_polynomial(&q).coeffs().to_vec()],
    })
}

/// Number of distinct polynomial values over `graphs`, and the classes of
/// graphs sharing a value.
fn group_by_value(graphs: &[Graph], which: PolyChoice) -> Result<(usize, Vec<Vec<usize>>)> {
    let keys: Vec<CoeffKey> = graphs
        .par_iter()
        .map(|g| poly_key(g, which))
        .collect::<Result<_>>()?;
    let mut groups: BTreeMap<CoeffKey, Vec<usize>> = BTreeMap::new();
    for (i, k) in keys.into_iter().enumerate() {
        groups.entry(k).or_default().push(i);
    }
    let distinct = groups.len();
    let mut classes: Vec<Vec<usize>> = groups.into_values().filter(|c| c.len() > 1).collect();
    classes.sort();
    Ok((distinct, classes))
}

pub fn distinguish_report(catalog: &GraphCatalog, which: PolyChoice) -> Result<Report> {
    if catalog.is_empty() {
        return Err(Error::InvalidArgument("empty catalog".into()));
    }
    let (distinct, classes) = group_by_value(catalog.members(), which)?;
    let mut report = Report::new(
        ReportKind::Distinguish,
        catalog.order,
        catalog.loops_allowed,
    );
    report.poly = Some(which);
    report.total = catalog.len();
    report.distinct = Some(distinct);
    report.collisions = classes
        .into_iter()
        .map(|c| {
            c.into_iter()
                .map(|i| catalog.members()[i].encode())
                .collect()
        })
        .collect();
    Ok(report)
}

struct UnimodalOutcome {
    violations: Vec<UnimodalViolation>,
    negative: bool,
    rank_unimodal: bool,
    nullity_unimodal: bool,
}

fn unimodal_outcome(g: &Graph) -> Result<UnimodalOutcome> {
    let q = q_expansion(g)?;
    let grid = q.to_xy().negx_coeff_grid()?;
    let negative = grid.iter().flatten().any(Signed::is_negative);
    let (_, violations) = rows_cols_unimodal(&grid);
    // q_R(-x) carries the nonnegative coefficients of q_R
    let rank = rank_polynomial(&q).negate_var();
    let nullity = nullity_polynomial(&q);
    Ok(UnimodalOutcome {
        violations,
        negative,
        rank_unimodal: first_unimodal_violation(rank.coeffs()).is_none(),
        nullity_unimodal: first_unimodal_violation(nullity.coeffs()).is_none(),
    })
}

/// Rows and columns of the coefficient array of `q(G; -x, y)` for every
/// member; members with a non-unimodal row or column are violators.
/// Negative coefficients are recorded as failures.
pub fn unimodality_report(catalog: &GraphCatalog) -> Result<Report> {
    if let Some(g) = catalog.members().iter().find(|g| !g.is_loopless()) {
        let _ = g;
        return Err(Error::LoopsNotAllowed("unimodality_report"));
    }
    let outcomes: Vec<UnimodalOutcome> = catalog
        .members()
        .par_iter()
        .map(unimodal_outcome)
        .collect::<Result<_>>()?;
    let mut report = Report::new(ReportKind::Unimodal, catalog.order, false);
    report.total = catalog.len();
    for (g, o) in catalog.members().iter().zip(outcomes) {
        if o.negative {
            report.failures.push(Failure {
                check: "nonnegative-coefficients".into(),
                witness: g.encode(),
            });
        }
        if !o.violations.is_empty() {
            report.violators.push(g.encode());
            report.violator_details.push(ViolatorDetail {
                graph: g.encode(),
                violations: o.violations,
                rank_unimodal: o.rank_unimodal,
                nullity_unimodal: o.nullity_unimodal,
            });
        }
    }
    report.checks.push(CheckSummary {
        name: "nonnegative-coefficients".into(),
        cases: report.total,
        failures: report.failures.len(),
    });
    Ok(report)
}

/// Distinguishing power of `q_N` and `q_R` over the trees of order `n`.
pub fn tree_report(n: usize) -> Result<Report> {
    let trees = enumerate_trees(n)?;
    let mut report = Report::new(ReportKind::Trees, n, false);
    report.total = trees.len();
    for which in [PolyChoice::Nullity, PolyChoice::Rank] {
        let mut section = distinguish_report(&trees, which)?;
        section.kind = ReportKind::Trees;
        report.sections.push(section);
    }
    Ok(report)
}

/// Hamming cube facts for `d = 1..=max_dim`.
pub fn hamming_report(max_dim: usize) -> Result<Report> {
    let mut checks = Checks::default();
    for d in 1..=max_dim {
        let (nh, nhbar) = hamming_nullities(d)?;
        let cube = Graph::hamming_cube(d)?;
        let a = cube.adjacency();
        let square = a.mul(a)?;
        let expected = if d % 2 == 1 {
            BitMatrix::identity(a.dim())
        } else {
            BitMatrix::zeros(a.dim())
        };
        checks.record("cube-adjacency-square", square == expected, || {
            format!("d={d}")
        });
        let half = 1usize << (d - 1);
        if d > 1 {
            let want = if d % 2 == 1 { (0, half) } else { (half, 0) };
            checks.record("cube-nullities", (nh, nhbar) == want, || {
                format!("d={d} got ({nh}, {nhbar}) want {want:?}")
            });
        } else {
            checks.record("cube-nullities", nh == 0, || format!("d=1 got {nh}"));
        }
        if (2..=4).contains(&d) {
            let ind = cube.complement().independence_number()?;
            checks.record("complement-independence-two", ind == 2, || {
                format!("d={d} got {ind}")
            });
        }
    }
    if max_dim >= 3 {
        let hbar3 = Graph::hamming_cube(3)?.complement();
        let deg = nullity_polynomial(&q_expansion(&hbar3)?).degree()?;
        checks.record("complement-nullity-degree", deg >= 4, || {
            format!("deg q_N = {deg}")
        });
    }
    let mut report = Report::new(ReportKind::Hamming, max_dim, false);
    checks.finish(&mut report);
    Ok(report)
}

#[derive(Default)]
struct Checks {
    summaries: Vec<CheckSummary>,
    failures: Vec<Failure>,
}

impl Checks {
    fn record(&mut self, name: &str, ok: bool, witness: impl FnOnce() -> String) {
        let idx = match self.summaries.iter().position(|c| c.name == name) {
            Some(i) => i,
            None => {
                self.summaries.push(CheckSummary {
                    name: name.to_string(),
                    cases: 0,
                    failures: 0,
                });
                self.summaries.len() - 1
            }
        };
        self.summaries[idx].cases += 1;
        if !ok {
            self.summaries[idx].failures += 1;
            self.failures.push(Failure {
                check: name.to_string(),
                witness: witness(),
            });
        }
    }

    fn finish(self, report: &mut Report) {
        report.total = self.summaries.iter().map(|c| c.cases).sum();
        report.checks = self.summaries;
        report.failures = self.failures;
    }
}

/// Parameters of [`identity_suite_with`].
#[derive(Clone, Copy)]
pub struct IdentityConfig {
    /// Largest catalog order, at most 7.
    pub order_cap: usize,
    pub random_looped_trials: usize,
    pub seed: u64,
    /// Pivot under test; [`Graph::pivot`] for a real run.
    pub pivot: PivotFn,
}

impl IdentityConfig {
    pub fn new(order_cap: usize, random_looped_trials: usize, seed: u64) -> Self {
        IdentityConfig {
            order_cap,
            random_looped_trials,
            seed,
            pivot: Graph::pivot,
        }
    }
}

pub const MAX_IDENTITY_ORDER: usize = 7;

const SIMPLE_COUNTS: [usize; 8] = [1, 1, 2, 4, 11, 34, 156, 1044];
const LOOPED_COUNTS: [usize; 6] = [1, 2, 6, 20, 90, 544];

pub fn identity_suite(order_cap: usize, random_looped_trials: usize, seed: u64) -> Result<Report> {
    identity_suite_with(IdentityConfig::new(order_cap, random_looped_trials, seed))
}

/// Runs every graph and evaluator identity and reports failures with the
/// graph that exhibits them.
pub fn identity_suite_with(config: IdentityConfig) -> Result<Report> {
    let cap = config.order_cap;
    if cap > MAX_IDENTITY_ORDER {
        return Err(Error::OrderTooLarge {
            what: "identity_suite",
            order: cap,
            max: MAX_IDENTITY_ORDER,
        });
    }
    let pivot = config.pivot;
    let simple = enumerate_graphs_upto(cap, false)?;
    let looped = enumerate_graphs_upto(cap.min(5), true)?;
    let simple_upto = |k: usize| simple.iter().take(k.min(cap) + 1).flat_map(|c| c.iter());
    let looped_upto = |k: usize| looped.iter().take(k.min(cap) + 1).flat_map(|c| c.iter());
    let mut checks = Checks::default();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    for cat in &simple {
        checks.record(
            "catalog-size",
            cat.len() == SIMPLE_COUNTS[cat.order],
            || format!("simple order {} has {}", cat.order, cat.len()),
        );
    }
    for cat in &looped {
        checks.record(
            "catalog-size",
            cat.len() == LOOPED_COUNTS[cat.order],
            || format!("looped order {} has {}", cat.order, cat.len()),
        );
    }

    for g in simple_upto(cap) {
        checks.record("loopless-rank-even", g.rank() % 2 == 0, || g.encode());
    }

    // pivot structure and restriction
    for g in simple_upto(5).chain(looped_upto(5)) {
        let n = g.order();
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                let p = pivot(g, a, b)?;
                let back = pivot(&p, a, b)?;
                let loops_kept = (0..n).all(|v| p.has_loop(v) == g.has_loop(v));
                checks.record("pivot-involution", back == *g && loops_kept, || {
                    format!("{} a={a} b={b}", g.encode())
                });
                let others: Vec<usize> = (0..n).filter(|&v| v != a && v != b).collect();
                for mask in 0u32..(1 << others.len()) {
                    let mut s: Vec<usize> = vec![a, b];
                    s.extend(
                        (0..others.len())
                            .filter(|k| mask >> k & 1 == 1)
                            .map(|k| others[k]),
                    );
                    s.sort_unstable();
                    let pa = s.iter().position(|&v| v == a).expect("a in S");
                    let pb = s.iter().position(|&v| v == b).expect("b in S");
                    let lhs = p.induced(&s)?;
                    let rhs = pivot(&g.induced(&s)?, pa, pb)?;
                    checks.record("pivot-restriction-commutes", lhs == rhs, || {
                        format!("{} a={a} b={b} S={s:?}", g.encode())
                    });
                }
            }
            let lc = g.local_complement(a)?;
            checks.record(
                "local-complement-involution",
                lc.local_complement(a)? == *g,
                || format!("{} a={a}", g.encode()),
            );
        }
    }

    // rank identities
    for g in simple_upto(6).chain(looped_upto(5)) {
        for (a, b) in g.edges().collect::<Vec<_>>() {
            if g.has_loop(a) || g.has_loop(b) {
                continue;
            }
            for (a, b) in [(a, b), (b, a)] {
                let p = pivot(g, a, b)?;
                let ok = g.delete_vertex(a)?.rank() == p.delete_vertex(a)?.rank()
                    && g.rank() == p.delete_vertices(&[a, b])?.rank() + 2;
                checks.record("rank-under-pivot", ok, || {
                    format!("{} a={a} b={b}", g.encode())
                });
            }
        }
    }
    for g in looped_upto(5) {
        for a in g.loops().collect::<Vec<_>>() {
            let ok = g.rank() == g.local_complement(a)?.delete_vertex(a)?.rank() + 1;
            checks.record("rank-under-loop-complement", ok, || {
                format!("{} a={a}", g.encode())
            });
        }
    }

    // pivot through three loop-free local complements
    for g in simple_upto(6) {
        for (a, b) in g.edges().collect::<Vec<_>>() {
            let composed = g
                .local_complement_simple(a)?
                .local_complement_simple(b)?
                .local_complement_simple(a)?
                .swap_labels(a, b)?;
            checks.record(
                "pivot-as-local-complements",
                composed == pivot(g, a, b)?,
                || format!("{} a={a} b={b}", g.encode()),
            );
        }
    }

    // expansion against reduction
    let mut reducer = Reducer::new().with_pivot(pivot);
    let mut random_graphs = Vec::with_capacity(config.random_looped_trials);
    for _ in 0..config.random_looped_trials {
        let n = rng.gen_range(0..=8);
        random_graphs.push(Graph::random(n, true, &mut rng));
    }
    for g in simple_upto(cap).chain(random_graphs.iter()) {
        let ok = q_expansion(g)? == reducer.q(g)?;
        checks.record("expansion-equals-reduction", ok, || g.encode());
    }
    for (k, g) in random_graphs
        .iter()
        .filter(|g| g.order() <= 7)
        .take(200)
        .enumerate()
    {
        let randomized = Reducer::randomized(config.seed.wrapping_add(k as u64))
            .with_pivot(pivot)
            .q(g)?;
        checks.record(
            "reduction-choice-independent",
            randomized == reducer.q(g)?,
            || g.encode(),
        );
    }

    // polynomial identities
    let two = BigInt::from(2);
    let zero = BigInt::from(0);
    for g in simple_upto(6).chain(looped_upto(5)) {
        let q = q_expansion(g)?;
        let std = q.to_xy();
        let qn = nullity_polynomial(&q);
        let qr = rank_polynomial(&q);
        let ok = std.deg_x()? == qr.degree()? && std.deg_y()? == qn.degree()?;
        checks.record("degree-identities", ok, || g.encode());
        if g.is_loopless() {
            checks.record(
                "x0-equals-x2-when-loopless",
                q.specialize_x(&zero) == qn,
                || g.encode(),
            );
        }
        let edges: Vec<(usize, usize)> = g
            .edges()
            .filter(|&(a, b)| !g.has_loop(a) && !g.has_loop(b))
            .collect();
        for (a, b) in edges {
            let p = pivot(g, a, b)?;
            let lhs = q_expansion(&g.delete_vertex(a)?)?
                .sub(&q_expansion(&g.delete_vertices(&[a, b])?)?)?;
            let rhs = q_expansion(&p.delete_vertex(a)?)?
                .sub(&q_expansion(&p.delete_vertices(&[a, b])?)?)?;
            checks.record("pivot-difference-identity", lhs == rhs, || {
                format!("{} a={a} b={b}", g.encode())
            });
            if g.is_loopless() {
                let same = nullity_polynomial(&q_expansion(&p)?) == qn;
                checks.record("nullity-pivot-invariant", same, || {
                    format!("{} a={a} b={b}", g.encode())
                });
            }
        }
        let _ = &two;
    }
    for g in simple_upto(cap) {
        let deg = nullity_polynomial(&q_expansion(g)?).degree()?;
        let ind = g.independence_number()?;
        checks.record("nullity-degree-bounds-independence", deg >= ind, || {
            format!("{} deg={deg} ind={ind}", g.encode())
        });
    }

    let p3 = Graph::path(3);
    let c4 = pivot(&p3, 1, 2)?;
    checks.record(
        "pivot-non-invariance-witness",
        q_expansion(&p3)? != q_expansion(&c4)?,
        || "P_3 pivoted on its middle edge".into(),
    );

    for _ in 0..config.random_looped_trials {
        let g1 = Graph::random(rng.gen_range(0..=4), true, &mut rng);
        let g2 = Graph::random(rng.gen_range(0..=4), true, &mut rng);
        let ok =
            q_expansion(&g1.disjoint_union(&g2))? == q_expansion(&g1)?.mul(&q_expansion(&g2)?)?;
        checks.record("product-rule", ok, || {
            format!("{} + {}", g1.encode(), g2.encode())
        });
    }

    let mut report = Report::new(ReportKind::Identities, cap, true);
    checks.finish(&mut report);
    Ok(report)
}
