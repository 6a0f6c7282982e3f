//! Crystal graphs generated from a seed monomial: bounded components,
//! quotients by a grade shift, `I_0`-decompositions and export.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use indexmap::IndexSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cartan::{d_ell, AffineType, CartanData, CartanError, CartanMatrix};
use crate::monomial::{Monomial, MonomialError};

pub const DEFAULT_BOUND: usize = 1_000_000;

#[derive(Debug, Error)]
pub enum CrystalError {
    #[error("node bound {bound} exceeded")]
    BoundExceeded { bound: usize, partial: Box<CrystalGraph> },
    #[error("not periodic under tau_{period}: {detail}")]
    NotPeriodic { period: i32, detail: String },
    #[error("component of node {node} has {count} highest elements")]
    MultipleHighest { node: usize, count: usize },
    #[error("period must be a nonzero even integer, got {0}")]
    BadPeriod(i32),
    #[error("two {label}-arrows leave or enter node {node}")]
    Degree { node: usize, label: usize },
    #[error(transparent)]
    Monomial(#[from] MonomialError),
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error("malformed graph document: {0}")]
    Document(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    FullBounded,
    TauQuotient,
    FiniteSubset,
}

/// Nodes are monomials (or canonical representatives of shift classes);
/// edges `(src, i, dst)` mean `dst = f_i(src)`.
#[derive(Clone, Debug)]
pub struct CrystalGraph {
    pub ty: Option<AffineType>,
    pub seed: Monomial,
    pub mode: Mode,
    pub period: Option<i32>,
    pub ops: Vec<usize>,
    pub nodes: IndexSet<Monomial>,
    pub edges: BTreeSet<(usize, usize, usize)>,
    /// Ledger of `tau_period(seed)` when it was observed.
    pub period_ledger: Option<Vec<i32>>,
    pub partial: bool,
}

impl CrystalGraph {
    fn empty(c: &CartanData, seed: &Monomial, mode: Mode, ops: &[usize], period: Option<i32>) -> Self {
        CrystalGraph {
            ty: Some(c.ty),
            seed: seed.clone(),
            mode,
            period,
            ops: ops.to_vec(),
            nodes: IndexSet::new(),
            edges: BTreeSet::new(),
            period_ledger: None,
            partial: false,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.nodes.get_index_of(m)
    }

    pub fn node(&self, k: usize) -> &Monomial {
        &self.nodes[k]
    }

    /// Target of the `i`-arrow leaving `k`.
    pub fn f_target(&self, k: usize, i: usize) -> Option<usize> {
        self.edges.range((k, i, 0)..=(k, i, usize::MAX)).next().map(|e| e.2)
    }

    /// Source of the `i`-arrow entering `k`.
    pub fn e_target(&self, k: usize, i: usize) -> Option<usize> {
        self.edges.iter().find(|e| e.1 == i && e.2 == k).map(|e| e.0)
    }

    /// Edges with the given label, in order.
    pub fn edges_labelled(&self, i: usize) -> Vec<(usize, usize)> {
        self.edges.iter().filter(|e| e.1 == i).map(|e| (e.0, e.2)).collect()
    }

    /// Monomials with the ledger stripped, sorted.
    pub fn sorted_nodes(&self) -> Vec<Monomial> {
        let mut v: Vec<Monomial> = self.nodes.iter().map(|m| m.clone().forget_ledger()).collect();
        v.sort();
        v
    }

    /// Every label has in- and out-degree at most one at every node.
    pub fn check_degrees(&self) -> Result<(), CrystalError> {
        let mut seen_out = BTreeSet::new();
        let mut seen_in = BTreeSet::new();
        for &(a, i, b) in &self.edges {
            if !seen_out.insert((a, i)) {
                return Err(CrystalError::Degree { node: a, label: i });
            }
            if !seen_in.insert((b, i)) {
                return Err(CrystalError::Degree { node: b, label: i });
            }
        }
        Ok(())
    }
}

fn insert_bounded(
    g: &mut CrystalGraph,
    m: Monomial,
    bound: usize,
) -> Result<(usize, bool), CrystalError> {
    if let Some(k) = g.nodes.get_index_of(&m) {
        return Ok((k, false));
    }
    if g.nodes.len() >= bound {
        let mut partial = g.clone();
        partial.partial = true;
        return Err(CrystalError::BoundExceeded { bound, partial: Box::new(partial) });
    }
    let (k, _) = g.nodes.insert_full(m);
    Ok((k, true))
}

/// Breadth-first closure of `seed` under `e_j`, `f_j` for `j` in `ops`.
pub fn generate_component(
    c: &CartanData,
    seed: &Monomial,
    ops: &[usize],
    bound: usize,
) -> Result<CrystalGraph, CrystalError> {
    let mut g = component_on(c.matrix(), seed, ops, bound).map_err(|e| match e {
        CrystalError::BoundExceeded { bound, mut partial } => {
            partial.ty = Some(c.ty);
            CrystalError::BoundExceeded { bound, partial }
        }
        e => e,
    })?;
    g.ty = Some(c.ty);
    if ops.len() == c.n() + 1 {
        g.mode = Mode::FullBounded;
    }
    Ok(g)
}

/// Same closure over a bare Cartan matrix (finite types included).
pub fn component_on(
    mat: &CartanMatrix,
    seed: &Monomial,
    ops: &[usize],
    bound: usize,
) -> Result<CrystalGraph, CrystalError> {
    let mut g = CrystalGraph {
        ty: None,
        seed: seed.clone(),
        mode: Mode::FiniteSubset,
        period: None,
        ops: ops.to_vec(),
        nodes: IndexSet::new(),
        edges: BTreeSet::new(),
        period_ledger: None,
        partial: false,
    };
    let result = (|| {
        insert_bounded(&mut g, seed.clone(), bound)?;
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            let m = g.nodes[k].clone();
            for &i in ops {
                if let Some(f) = m.lower(mat, i) {
                    let (t, fresh) = insert_bounded(&mut g, f, bound)?;
                    g.edges.insert((k, i, t));
                    if fresh {
                        queue.push_back(t);
                    }
                }
                if let Some(e) = m.raise(mat, i) {
                    let (t, fresh) = insert_bounded(&mut g, e, bound)?;
                    g.edges.insert((t, i, k));
                    if fresh {
                        queue.push_back(t);
                    }
                }
            }
        }
        Ok(())
    })();
    result.map(|_| g)
}

/// Grade shift bringing `m` to its canonical representative: the minimal
/// support grade lands in `[g0, g0 + period)`.
pub fn canonical_shift_amount(m: &Monomial, g0: i32, period: i32) -> i32 {
    match m.min_grade() {
        None => 0,
        Some(g) => -(g - g0).div_euclid(period) * period,
    }
}

/// Ledger written as `base + coef * X` with `X` the ledger of `tau_period(seed)`.
#[derive(Clone, Debug)]
struct SymLedger {
    base: Vec<i32>,
    coef: i32,
}

fn vsub(a: &[i32], b: &[i32], len: usize) -> Vec<i32> {
    (0..len)
        .map(|j| a.get(j).copied().unwrap_or(0) - b.get(j).copied().unwrap_or(0))
        .collect()
}

fn vaxpy(base: &[i32], k: i32, x: &[i32], len: usize) -> Vec<i32> {
    (0..len)
        .map(|j| base.get(j).copied().unwrap_or(0) + k * x.get(j).copied().unwrap_or(0))
        .collect()
}

/// The component of `seed` modulo `tau_period`, with every operator in `I`.
///
/// Stability under the shift is checked while generating: whenever two
/// paths reach the same class, their ledgers must differ by a fixed
/// multiple of the shift's ledger, and that ledger must be a multiple of
/// `delta`.
pub fn generate_quotient(
    c: &CartanData,
    seed: &Monomial,
    period: i32,
    bound: usize,
) -> Result<CrystalGraph, CrystalError> {
    if period == 0 || period % 2 != 0 {
        return Err(CrystalError::BadPeriod(period));
    }
    let period = period.abs();
    let ops = c.all_nodes();
    let size = c.n() + 1;
    let mut g = CrystalGraph::empty(c, seed, Mode::TauQuotient, &ops, Some(period));
    let mat = c.matrix();
    let g0 = seed.min_grade().unwrap_or(0);
    let mut ledgers: Vec<SymLedger> = Vec::new();
    let mut x: Option<Vec<i32>> = None;

    let place = |g: &mut CrystalGraph,
                     ledgers: &mut Vec<SymLedger>,
                     x: &mut Option<Vec<i32>>,
                     m: Monomial,
                     coef: i32|
     -> Result<(usize, bool), CrystalError> {
        let shift = canonical_shift_amount(&m, g0, period);
        let steps = shift / period;
        let base = m.ledger().to_vec();
        let rep = m.tau(shift);
        let coef = coef + steps;
        let (k, fresh) = insert_bounded(g, rep, bound)?;
        if fresh {
            ledgers.push(SymLedger { base, coef });
            return Ok((k, true));
        }
        let old = &ledgers[k];
        let diff = vsub(&base, &old.base, size);
        let dc = old.coef - coef;
        if dc == 0 {
            if diff.iter().any(|&v| v != 0) {
                return Err(CrystalError::NotPeriodic {
                    period,
                    detail: format!("class {} reached with two different weights", g.nodes[k]),
                });
            }
        } else {
            if diff.iter().any(|v| v % dc != 0) {
                return Err(CrystalError::NotPeriodic {
                    period,
                    detail: format!("class {} has a non-integral shift weight", g.nodes[k]),
                });
            }
            let found: Vec<i32> = diff.iter().map(|v| v / dc).collect();
            match x {
                None => *x = Some(found),
                Some(prev) if *prev != found => {
                    return Err(CrystalError::NotPeriodic {
                        period,
                        detail: format!("inconsistent shift weight at class {}", g.nodes[k]),
                    })
                }
                _ => {}
            }
        }
        Ok((k, false))
    };

    place(&mut g, &mut ledgers, &mut x, seed.clone(), 0)?;
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        let m = g.nodes[k].clone().with_ledger(ledgers[k].base.clone());
        let coef = ledgers[k].coef;
        for &i in &ops {
            if let Some(f) = m.lower(mat, i) {
                let (t, fresh) = place(&mut g, &mut ledgers, &mut x, f, coef)?;
                g.edges.insert((k, i, t));
                if fresh {
                    queue.push_back(t);
                }
            }
            if let Some(e) = m.raise(mat, i) {
                let (t, fresh) = place(&mut g, &mut ledgers, &mut x, e, coef)?;
                g.edges.insert((t, i, k));
                if fresh {
                    queue.push_back(t);
                }
            }
        }
    }

    if let Some(xv) = &x {
        let probe = Monomial::one().with_ledger(xv.clone());
        if probe.delta_multiple(c).is_none() {
            return Err(CrystalError::NotPeriodic {
                period,
                detail: format!("shift weight {xv:?} is not a multiple of delta"),
            });
        }
    }
    let resolved: Vec<Monomial> = g
        .nodes
        .iter()
        .zip(&ledgers)
        .map(|(m, l)| {
            let led = match &x {
                Some(xv) => vaxpy(&l.base, l.coef, xv, size),
                None => l.base.clone(),
            };
            m.clone().with_ledger(led)
        })
        .collect();
    g.nodes = resolved.into_iter().collect();
    g.period_ledger = x;
    g.check_degrees()?;
    Ok(g)
}

/// Canonical representative of `m` in a quotient graph.
pub fn canonical_in(g: &CrystalGraph, m: &Monomial) -> Monomial {
    match g.period {
        Some(p) => {
            let g0 = g.seed.min_grade().unwrap_or(0);
            m.tau(canonical_shift_amount(m, g0, p))
        }
        None => m.clone(),
    }
}

/// `e_j(m) = None` for every `j` in `ops`.
pub fn is_highest(c: &CartanData, m: &Monomial, ops: &[usize]) -> bool {
    ops.iter().all(|&j| m.raise(c.matrix(), j).is_none())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    pub highest: usize,
    pub highest_monomial: Monomial,
    pub members: Vec<usize>,
    /// `u_i` of the highest monomial for `i` in `I_0`.
    pub label: Vec<i32>,
}

impl ComponentReport {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Connected components under the `I_0`-arrows, ordered by first member.
pub fn i0_components(g: &CrystalGraph) -> Vec<Vec<usize>> {
    let len = g.nodes.len();
    let mut parent: Vec<usize> = (0..len).collect();
    for &(a, i, b) in &g.edges {
        if i != 0 {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; len];
    for k in 0..len {
        let r = find(&mut parent, k);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(k);
    }
    groups
}

/// Splits a finite graph into `I_0`-components, each with its unique
/// highest element.
pub fn decompose_i0(c: &CartanData, g: &CrystalGraph) -> Result<Vec<ComponentReport>, CrystalError> {
    let i0 = c.i0();
    i0_components(g)
        .into_iter()
        .map(|members| {
            let highs: Vec<usize> =
                members.iter().copied().filter(|&k| is_highest(c, &g.nodes[k], &i0)).collect();
            if highs.len() != 1 {
                return Err(CrystalError::MultipleHighest { node: members[0], count: highs.len() });
            }
            let h = highs[0];
            let hm = g.nodes[h].clone();
            let label = i0.iter().map(|&i| hm.u_total(i)).collect();
            Ok(ComponentReport { highest: h, highest_monomial: hm, members, label })
        })
        .collect()
}

/// Result of [`detect_z_period`]: `tau_shift = z_l^z_power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZPeriod {
    /// Smallest positive grade shift `k` with `tau_k(seed)` in the component.
    pub shift: i32,
    /// `N` with `wt(tau_shift(seed)) = wt(seed) - N delta`.
    pub delta: i32,
    /// `-delta / d_l` when integral.
    pub z_power: Option<i32>,
}

fn shift_between(a: &Monomial, b: &Monomial) -> Option<i32> {
    if a.terms().len() != b.terms().len() || a.is_one() {
        return None;
    }
    let k = b.terms()[0].grade - a.terms()[0].grade;
    a.terms()
        .iter()
        .zip(b.terms())
        .all(|(x, y)| x.node == y.node && x.exp == y.exp && y.grade - x.grade == k)
        .then_some(k)
}

/// Searches the component of a fundamental seed for its own grade shifts.
///
/// A bounded search finds some shift `k`; every even divisor of `k` is then
/// tested exactly in the quotient by `tau_k`.
pub fn detect_z_period(
    c: &CartanData,
    seed: &Monomial,
    ell: usize,
    max_steps: usize,
) -> Option<ZPeriod> {
    let mat = c.matrix();
    let ops = c.all_nodes();
    let mut seen: IndexSet<Monomial> = IndexSet::new();
    seen.insert(seed.clone());
    let mut queue = VecDeque::from([0usize]);
    let mut hit: Option<i32> = None;
    'outer: while let Some(k) = queue.pop_front() {
        let m = seen[k].clone();
        for &i in &ops {
            for next in [m.lower(mat, i), m.raise(mat, i)].into_iter().flatten() {
                if let Some(s) = shift_between(seed, &next).filter(|&s| s != 0) {
                    hit = Some(s.abs());
                    break 'outer;
                }
                if seen.len() >= max_steps {
                    return None;
                }
                let (t, fresh) = seen.insert_full(next);
                if fresh {
                    queue.push_back(t);
                }
            }
        }
    }
    let big = hit?;
    let q = generate_quotient(c, seed, big, max_steps.max(DEFAULT_BOUND)).ok()?;
    let x = q.period_ledger.clone()?;
    let big_delta = Monomial::one().with_ledger(x).delta_multiple(c)?;
    let shift = (2..=big)
        .step_by(2)
        .filter(|d| big % d == 0)
        .find(|&d| d == big || q.index_of(&seed.tau(d)).is_some())?;
    let delta = big_delta * shift / big;
    let d = d_ell(c, ell) as i32;
    let z_power = (delta % d == 0).then_some(-delta / d);
    Some(ZPeriod { shift, delta, z_power })
}

/// Output formats for [`export_graph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Dot,
    Json,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ComponentDoc {
    pub highest: usize,
    pub members: Vec<usize>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct GraphDoc {
    #[serde(rename = "type")]
    pub ty: String,
    pub seed: String,
    pub period: Option<i32>,
    pub nodes: Vec<String>,
    pub edges: Vec<(usize, usize, usize)>,
    pub components: Vec<ComponentDoc>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub partial: bool,
}

fn label_of(m: &Monomial) -> String {
    if m.is_one() {
        "1".to_string()
    } else {
        m.to_string()
    }
}

/// Components for export: `I_0`-components with their highest element, or
/// nothing when the graph does not decompose cleanly.
fn export_components(c: Option<&CartanData>, g: &CrystalGraph) -> Vec<ComponentDoc> {
    let Some(c) = c else { return Vec::new() };
    if g.partial {
        return Vec::new();
    }
    match decompose_i0(c, g) {
        Ok(reports) => reports
            .into_iter()
            .map(|r| ComponentDoc { highest: r.highest, members: r.members })
            .collect(),
        Err(_) => Vec::new(),
    }
}

pub fn to_doc(g: &CrystalGraph) -> GraphDoc {
    let c = g.ty.and_then(|t| CartanData::new(t).ok());
    GraphDoc {
        ty: g.ty.map(|t| t.to_string()).unwrap_or_default(),
        seed: g.seed.to_string(),
        period: g.period,
        nodes: g.nodes.iter().map(|m| m.to_string()).collect(),
        edges: g.edges.iter().copied().collect(),
        components: export_components(c.as_ref(), g),
        partial: g.partial,
    }
}

/// Deterministic DOT or JSON text for a graph.
pub fn export_graph(g: &CrystalGraph, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&to_doc(g)).expect("graph documents serialize");
            s.push('\n');
            s
        }
        Format::Dot => {
            let mut s = String::from("digraph crystal {\n");
            for (k, m) in g.nodes.iter().enumerate() {
                let _ = writeln!(s, "  n{k} [label=\"{}\"];", label_of(m));
            }
            for &(a, i, b) in &g.edges {
                let _ = writeln!(s, "  n{a} -> n{b} [label=\"{i}\"];");
            }
            s.push_str("}\n");
            s
        }
    }
}

/// Reads a JSON document written by [`export_graph`].
pub fn load_graph(json: &str) -> Result<CrystalGraph, CrystalError> {
    let doc: GraphDoc =
        serde_json::from_str(json).map_err(|e| CrystalError::Document(e.to_string()))?;
    let ty = if doc.ty.is_empty() { None } else { Some(doc.ty.parse::<AffineType>()?) };
    let mut nodes = IndexSet::new();
    for text in &doc.nodes {
        let m: Monomial = if text == "1" { Monomial::one() } else { text.parse()? };
        if !nodes.insert(m) {
            return Err(CrystalError::Document(format!("duplicate node {text}")));
        }
    }
    let len = nodes.len();
    if doc.edges.iter().any(|e| e.0 >= len || e.2 >= len) {
        return Err(CrystalError::Document("edge endpoint out of range".into()));
    }
    let ops: BTreeSet<usize> = doc.edges.iter().map(|e| e.1).collect();
    Ok(CrystalGraph {
        ty,
        seed: doc.seed.parse()?,
        mode: if doc.period.is_some() { Mode::TauQuotient } else { Mode::FiniteSubset },
        period: doc.period,
        ops: ops.into_iter().collect(),
        nodes,
        edges: doc.edges.into_iter().collect(),
        period_ledger: None,
        partial: doc.partial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    #[test]
    fn a3_vector_path() {
        let c = CartanData::parse("A1~3").unwrap();
        let g = generate_component(&c, &mono("1_0 0_1^-1"), &c.i0(), 100).unwrap();
        assert_eq!(g.len(), 4);
        let labels: Vec<usize> = g.edges.iter().map(|e| e.1).collect();
        assert_eq!(labels, vec![1, 2, 3]);
    }

    #[test]
    fn d4_vector_has_eight() {
        let c = CartanData::parse("D1~4").unwrap();
        let g = generate_component(&c, &mono("1_0"), &c.i0(), 100).unwrap();
        assert_eq!(g.len(), 8);
    }

    #[test]
    fn no_ops_single_node() {
        let c = CartanData::parse("D1~4").unwrap();
        let g = generate_component(&c, &mono("1_0"), &[], 100).unwrap();
        assert_eq!((g.len(), g.edges.len()), (1, 0));
    }

    #[test]
    fn bound_is_enforced() {
        let c = CartanData::parse("A1~3").unwrap();
        match generate_component(&c, &mono("1_0 0_1^-1"), &c.all_nodes(), 10) {
            Err(CrystalError::BoundExceeded { partial, .. }) => {
                assert_eq!(partial.len(), 10);
                assert!(partial.partial);
            }
            other => panic!("expected bound error, got {other:?}"),
        }
    }

    #[test]
    fn a3_quotients() {
        let c = CartanData::parse("A1~3").unwrap();
        let seed = mono("1_0 0_1^-1");
        let q = generate_quotient(&c, &seed, 4, 100).unwrap();
        assert_eq!(q.len(), 4);
        assert_eq!(q.period_ledger.as_deref(), Some(&[1, 1, 1, 1][..]));
        let q8 = generate_quotient(&c, &seed, 8, 100).unwrap();
        assert_eq!(q8.len(), 8);
    }

    #[test]
    fn g2_w2_quotient() {
        let c = CartanData::parse("G1~2").unwrap();
        let q = generate_quotient(&c, &mono("2_0 0_2^-1"), 4, 100).unwrap();
        assert_eq!(q.len(), 7);
        assert_eq!(q.edges_labelled(0).len(), 2);
        let parts = decompose_i0(&c, &q).unwrap();
        assert_eq!(parts.len(), 1);
    }

    #[test]
    fn wrong_period_is_caught() {
        let c = CartanData::parse("A1~3").unwrap();
        let r = generate_quotient(&c, &mono("1_0 0_1^-1"), 2, 100);
        assert!(matches!(r, Err(CrystalError::NotPeriodic { .. })), "{r:?}");
        assert!(matches!(generate_quotient(&c, &mono("1_0"), 3, 10), Err(CrystalError::BadPeriod(3))));
    }

    #[test]
    fn highest_checks() {
        let c = CartanData::parse("D1~4").unwrap();
        assert!(is_highest(&c, &mono("1_0 2_5"), &c.i0()));
        assert!(!is_highest(&c, &mono("1_2^-1"), &[1]));
    }

    #[test]
    fn z_periods() {
        let c = CartanData::parse("A1~3").unwrap();
        let z = detect_z_period(&c, &mono("1_0 0_1^-1"), 1, 10_000).unwrap();
        assert_eq!(z, ZPeriod { shift: 4, delta: 1, z_power: Some(-1) });
        let c = CartanData::parse("D1~5").unwrap();
        let z = detect_z_period(&c, &mono("1_0 0_2^-1"), 1, 10_000).unwrap();
        assert_eq!((z.shift, z.z_power), (6, Some(-1)));
        let z = detect_z_period(&c, &mono("2_0 0_1^-1 0_3^-1"), 2, 100_000).unwrap();
        assert_eq!((z.shift, z.z_power), (6, Some(-2)));
    }

    #[test]
    fn exports_round_trip() {
        let c = CartanData::parse("G1~2").unwrap();
        let q = generate_quotient(&c, &mono("2_0 0_2^-1"), 4, 100).unwrap();
        let json = export_graph(&q, Format::Json);
        let back = load_graph(&json).unwrap();
        assert_eq!(export_graph(&back, Format::Json), json);
        let dot = export_graph(&q, Format::Dot);
        assert_eq!(dot.matches("->").count(), 8);
        let one = generate_component(&c, &mono("1_0"), &[], 1).unwrap();
        let dot = export_graph(&one, Format::Dot);
        assert_eq!((dot.matches("[label").count(), dot.matches("->").count()), (1, 0));
    }
}
