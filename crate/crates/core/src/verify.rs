//! Fixture corpus checks and independent oracles.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use crate::cartan::{d_ell, two_coloring, AffineType, CartanData, CartanError, CartanMatrix, FiniteType};
use crate::crystal::{
    canonical_in, component_on, decompose_i0, generate_quotient, CrystalError, CrystalGraph,
};
use crate::monomial::{Admissibility, Monomial, MonomialError};
use crate::tableaux::{
    enumerate_tableaux, monomial_of_tableau, tableau_crystal_op, BoxTable, Realization, Rules, Tableau,
};

pub const FIXTURE_ENV: &str = "CRYSTAL_FIXTURE_DIR";
const QUOTIENT_BOUND: usize = 200_000;

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Monomial { line: usize, source: MonomialError },
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error("no fixture named {0}")]
    Missing(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureComponent {
    pub size: usize,
    pub representative: Option<Monomial>,
    pub monomials: Vec<Monomial>,
}

/// One transcribed case: a seed, its quotient period and the expected
/// `I_0`-components.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub ty: AffineType,
    pub seed: Monomial,
    pub period: i32,
    /// `(k, N)` meaning `tau_k = z^N`.
    pub relation: Option<(i32, i32)>,
    pub total: Option<usize>,
    /// Pairs of 1-based component indices whose lists correspond in order
    /// under a crystal isomorphism.
    pub pairs: Vec<(usize, usize)>,
    /// `(a, i, b)`: `f_i` sends listed monomial `a` to listed monomial `b`
    /// (1-based, over all lists in file order).
    pub edges: Vec<(usize, usize, usize)>,
    pub components: Vec<FixtureComponent>,
}

impl Fixture {
    pub fn listed(&self) -> Vec<&Monomial> {
        self.components.iter().flat_map(|c| c.monomials.iter()).collect()
    }

    /// The node `l` of the seed factor `Y_{l,*}`.
    pub fn ell(&self) -> Option<usize> {
        self.seed.terms().iter().find(|t| t.node != 0 && t.exp > 0).map(|t| t.node as usize)
    }
}

fn parse_mono(text: &str, line: usize) -> Result<Monomial, FixtureError> {
    text.parse().map_err(|source| FixtureError::Monomial { line, source })
}

fn parse_ints<const K: usize>(text: &str, line: usize) -> Result<[i64; K], FixtureError> {
    let parts: Vec<i64> = text
        .split_whitespace()
        .map(|p| p.parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|e| FixtureError::Syntax { line, msg: e.to_string() })?;
    parts
        .try_into()
        .map_err(|_| FixtureError::Syntax { line, msg: format!("expected {K} integers") })
}

/// Parses the plain-text fixture format.
pub fn parse_fixture(text: &str) -> Result<Fixture, FixtureError> {
    let mut head: BTreeMap<&str, (usize, String)> = BTreeMap::new();
    let mut pairs = Vec::new();
    let mut edges = Vec::new();
    let mut components: Vec<FixtureComponent> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(rest) = body.strip_prefix("component") {
            let rest = rest.trim();
            let (size, rep) = match rest.split_once(char::is_whitespace) {
                Some((a, b)) => (a, Some(b.trim())),
                None => (rest, None),
            };
            let size = size
                .parse()
                .map_err(|_| FixtureError::Syntax { line, msg: "bad component size".into() })?;
            let representative = rep.map(|r| parse_mono(r, line)).transpose()?;
            components.push(FixtureComponent { size, representative, monomials: Vec::new() });
        } else if let Some((key, value)) = body.split_once('=') {
            let (key, value) = (key.trim(), value.trim());
            match key {
                "pair" => {
                    let [a, b] = parse_ints::<2>(value, line)?;
                    pairs.push((a as usize, b as usize));
                }
                "edge" => {
                    let [a, i, b] = parse_ints::<3>(value, line)?;
                    edges.push((a as usize, i as usize, b as usize));
                }
                "name" | "type" | "seed" | "period" | "relation" | "total" => {
                    head.insert(
                        match key {
                            "name" => "name",
                            "type" => "type",
                            "seed" => "seed",
                            "period" => "period",
                            "relation" => "relation",
                            _ => "total",
                        },
                        (line, value.to_string()),
                    );
                }
                _ => return Err(FixtureError::Syntax { line, msg: format!("unknown key {key}") }),
            }
        } else {
            let m = parse_mono(body, line)?;
            match components.last_mut() {
                Some(c) => c.monomials.push(m),
                None => {
                    return Err(FixtureError::Syntax { line, msg: "monomial before any component".into() })
                }
            }
        }
    }
    let need = |key: &str| {
        head.get(key)
            .cloned()
            .ok_or_else(|| FixtureError::Syntax { line: 0, msg: format!("missing {key}=") })
    };
    let (_, ty) = need("type")?;
    let (seed_line, seed) = need("seed")?;
    let (period_line, period) = need("period")?;
    let period: i32 = period
        .parse()
        .map_err(|_| FixtureError::Syntax { line: period_line, msg: "bad period".into() })?;
    let relation = match head.get("relation") {
        Some((line, v)) => {
            let [k, n] = parse_ints::<2>(v, *line)?;
            Some((k as i32, n as i32))
        }
        None => None,
    };
    let total = match head.get("total") {
        Some((line, v)) => Some(
            v.parse().map_err(|_| FixtureError::Syntax { line: *line, msg: "bad total".into() })?,
        ),
        None => None,
    };
    let fixture = Fixture {
        name: head.get("name").map(|v| v.1.clone()).unwrap_or_default(),
        ty: ty.parse()?,
        seed: parse_mono(&seed, seed_line)?,
        period,
        relation,
        total,
        pairs,
        edges,
        components,
    };
    let listed = fixture.listed().len();
    for &(a, _, b) in &fixture.edges {
        if a == 0 || b == 0 || a > listed || b > listed {
            return Err(FixtureError::Syntax { line: 0, msg: format!("edge index out of range: {a} {b}") });
        }
    }
    for &(a, b) in &fixture.pairs {
        if a == 0 || b == 0 || a > fixture.components.len() || b > fixture.components.len() {
            return Err(FixtureError::Syntax { line: 0, msg: format!("pair index out of range: {a} {b}") });
        }
    }
    Ok(fixture)
}

/// `$CRYSTAL_FIXTURE_DIR`, or the corpus shipped with the crate.
pub fn fixture_dir() -> PathBuf {
    std::env::var_os(FIXTURE_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures"))
}

pub fn load_fixture_file(path: &Path) -> Result<Fixture, FixtureError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| FixtureError::Io { path: path.display().to_string(), source })?;
    let mut f = parse_fixture(&text)?;
    if f.name.is_empty() {
        f.name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    }
    Ok(f)
}

/// Fixture names in `dir`, sorted.
pub fn fixture_names(dir: &Path) -> Result<Vec<String>, FixtureError> {
    let entries = std::fs::read_dir(dir)
        .map_err(|source| FixtureError::Io { path: dir.display().to_string(), source })?;
    let mut names: Vec<String> = entries
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "txt"))
        .filter_map(|p| p.file_stem().map(|s| s.to_string_lossy().into_owned()))
        .collect();
    names.sort();
    Ok(names)
}

pub fn load_fixture(dir: &Path, name: &str) -> Result<Fixture, FixtureError> {
    let path = dir.join(format!("{name}.txt"));
    if !path.exists() {
        return Err(FixtureError::Missing(name.to_string()));
    }
    load_fixture_file(&path)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl Report {
    fn new(subject: &str) -> Self {
        Report { subject: subject.to_string(), checks: Vec::new() }
    }

    fn push(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), pass, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.pass { "ok  " } else { "FAIL" };
            write!(f, "{tag} {}: {}", self.subject, c.name)?;
            if !c.detail.is_empty() {
                write!(f, " ({})", c.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Listed monomials all use one parity coloring of the type.
pub fn check_admissible(c: &CartanData, f: &Fixture) -> Result<(), String> {
    let mut seen = None;
    for m in std::iter::once(&f.seed).chain(f.listed()) {
        match m.admissibility(&c.s) {
            Admissibility::Mixed => return Err(format!("{m} mixes parities")),
            Admissibility::Uniform(p) => match seen {
                None => seen = Some(p),
                Some(q) if q != p => return Err(format!("{m} uses the other coloring")),
                _ => {}
            },
            Admissibility::Empty => {}
        }
    }
    Ok(())
}

/// Raising and lowering with `I_0` operators stays inside each list.
pub fn closure_failures(c: &CartanData, f: &Fixture) -> Vec<String> {
    let mut out = Vec::new();
    for (k, comp) in f.components.iter().enumerate() {
        if comp.monomials.is_empty() {
            continue;
        }
        let set: BTreeSet<&Monomial> = comp.monomials.iter().collect();
        for m in &comp.monomials {
            for i in c.i0() {
                for (dir, next) in [("e", m.raise(c.matrix(), i)), ("f", m.lower(c.matrix(), i))] {
                    if let Some(x) = next {
                        if !set.contains(&x.forget_ledger()) {
                            out.push(format!("list {}: {dir}_{i}({m}) leaves the list", k + 1));
                        }
                    }
                }
            }
        }
    }
    out
}

/// The lowering word from the highest element of `list` to each member,
/// in list order.
fn lowering_words(mat: &CartanMatrix, ops: &[usize], list: &[Monomial]) -> Option<(Monomial, Vec<Vec<usize>>)> {
    let highest = list.iter().find(|m| ops.iter().all(|&i| m.raise(mat, i).is_none()))?.clone();
    let mut word: HashMap<Monomial, Vec<usize>> = HashMap::new();
    word.insert(highest.clone(), Vec::new());
    let mut queue = VecDeque::from([highest.clone()]);
    while let Some(m) = queue.pop_front() {
        for &i in ops {
            if let Some(x) = m.lower(mat, i) {
                let x = x.forget_ledger();
                if !word.contains_key(&x) {
                    let mut w = word[&m].clone();
                    w.push(i);
                    word.insert(x.clone(), w);
                    queue.push_back(x);
                }
            }
        }
    }
    let words = list.iter().map(|m| word.get(m).cloned()).collect::<Option<Vec<_>>>()?;
    Some((highest, words))
}

/// Checks that the `k`-th member of `b` is reached from the highest of `b`
/// by the word that reaches the `k`-th member of `a`.
pub fn paired_in_order(c: &CartanData, a: &[Monomial], b: &[Monomial]) -> Result<(), String> {
    if a.len() != b.len() {
        return Err(format!("lengths {} and {}", a.len(), b.len()));
    }
    let mat = c.matrix();
    let ops = c.i0();
    let (_, words) = lowering_words(mat, &ops, a).ok_or("first list is not one component")?;
    let hb = b
        .iter()
        .find(|m| ops.iter().all(|&i| m.raise(mat, i).is_none()))
        .ok_or("second list has no highest element")?;
    for (k, w) in words.iter().enumerate() {
        let mut m = hb.clone();
        for &i in w {
            m = m.lower(mat, i).ok_or_else(|| format!("entry {} not reachable", k + 1))?;
        }
        let m = m.forget_ledger();
        if m != b[k] {
            return Err(format!("entry {}: expected {}, got {}", k + 1, b[k], m));
        }
    }
    Ok(())
}

fn quotient_component_of(q: &CrystalGraph, comps: &[Vec<usize>], m: &Monomial) -> Option<usize> {
    let k = q.index_of(&canonical_in(q, m))?;
    comps.iter().position(|c| c.contains(&k))
}

/// Runs every assertion a fixture carries.
pub fn check_fixture(f: &Fixture) -> Report {
    let mut r = Report::new(&f.name);
    let c = match CartanData::new(f.ty) {
        Ok(c) => c,
        Err(e) => {
            r.push("cartan data", false, e.to_string());
            return r;
        }
    };
    match check_admissible(&c, f) {
        Ok(()) => r.push("parity admissible", true, ""),
        Err(e) => r.push("parity admissible", false, e),
    }
    let closure = closure_failures(&c, f);
    r.push("lists closed under I0 operators", closure.is_empty(), closure.join("; "));

    let q = match generate_quotient(&c, &f.seed, f.period, QUOTIENT_BOUND) {
        Ok(q) => q,
        Err(e) => {
            r.push(format!("quotient by tau_{}", f.period), false, e.to_string());
            return r;
        }
    };
    r.push(format!("quotient by tau_{}", f.period), true, format!("{} classes", q.len()));

    let expected_total: usize = f.components.iter().map(|c| c.size).sum();
    let total = f.total.unwrap_or(expected_total);
    r.push(
        "class count",
        q.len() == total && expected_total == total,
        format!("engine {}, listed sizes {}, stated {}", q.len(), expected_total, total),
    );

    let reports = match decompose_i0(&c, &q) {
        Ok(v) => v,
        Err(e) => {
            r.push("I0 decomposition", false, e.to_string());
            return r;
        }
    };
    let mut got: Vec<usize> = reports.iter().map(|p| p.size()).collect();
    let mut want: Vec<usize> = f.components.iter().map(|c| c.size).collect();
    got.sort_unstable();
    want.sort_unstable();
    r.push("component sizes", got == want, format!("engine {got:?}, expected {want:?}"));

    let members: Vec<Vec<usize>> = reports.iter().map(|p| p.members.clone()).collect();
    let mut used = BTreeSet::new();
    for (k, comp) in f.components.iter().enumerate() {
        let probe = comp.representative.as_ref().or(comp.monomials.first());
        let Some(probe) = probe else { continue };
        let name = format!("component {} ({})", k + 1, comp.size);
        let Some(at) = quotient_component_of(&q, &members, probe) else {
            r.push(name, false, format!("{probe} is not in the quotient"));
            continue;
        };
        let fresh = used.insert(at);
        let size_ok = members[at].len() == comp.size;
        if comp.monomials.is_empty() {
            r.push(name, size_ok && fresh, format!("engine size {}", members[at].len()));
            continue;
        }
        let engine: BTreeSet<Monomial> =
            members[at].iter().map(|&i| q.node(i).clone().forget_ledger()).collect();
        let listed: BTreeSet<Monomial> = comp.monomials.iter().map(|m| canonical_in(&q, m)).collect();
        let missing: Vec<String> = listed.difference(&engine).map(|m| m.to_string()).collect();
        let extra = engine.difference(&listed).count();
        let ok = size_ok && fresh && missing.is_empty() && extra == 0 && listed.len() == comp.monomials.len();
        let detail = if ok {
            format!("{} monomials match", comp.size)
        } else {
            format!(
                "engine size {}, {} listed not found [{}], {} engine not listed",
                members[at].len(),
                missing.len(),
                missing.join(", "),
                extra
            )
        };
        r.push(name, ok, detail);
    }

    if let Some((k, n)) = f.relation {
        let name = format!("tau_{k} = z^{n}");
        match (f.ell(), q.period_ledger.as_ref()) {
            (Some(ell), Some(x)) if k == f.period => {
                let probe = Monomial::one().with_ledger(x.clone());
                let delta = probe.delta_multiple(&c);
                let d = d_ell(&c, ell) as i32;
                let found = delta.filter(|v| v % d == 0).map(|v| -v / d);
                r.push(name, found == Some(n), format!("shift weight {x:?}, d_l = {d}"));
            }
            _ => r.push(name, false, "shift weight not observed"),
        }
    }

    let listed = f.listed();
    for &(a, i, b) in &f.edges {
        let name = format!("edge {a} -{i}-> {b}");
        let (ma, mb) = (listed[a - 1], listed[b - 1]);
        let ok = ma
            .lower(c.matrix(), i)
            .map(|x| canonical_in(&q, &x) == canonical_in(&q, mb))
            .unwrap_or(false);
        r.push(name, ok, "");
    }
    if !f.edges.is_empty() {
        let want: Option<BTreeSet<(usize, usize, usize)>> = f
            .edges
            .iter()
            .map(|&(a, i, b)| {
                Some((q.index_of(&canonical_in(&q, listed[a - 1]))?, i, q.index_of(&canonical_in(&q, listed[b - 1]))?))
            })
            .collect();
        let ok = want.as_ref() == Some(&q.edges);
        r.push("edge set is complete", ok, format!("engine {} edges, listed {}", q.edges.len(), f.edges.len()));
    }

    for &(a, b) in &f.pairs {
        let res = paired_in_order(&c, &f.components[a - 1].monomials, &f.components[b - 1].monomials);
        let name = format!("lists {a} and {b} correspond in order");
        match res {
            Ok(()) => r.push(name, true, ""),
            Err(e) => r.push(name, false, e),
        }
    }
    r
}

/// Positive roots of the finite system with Cartan matrix `a` on `nodes`,
/// as coefficient vectors over the simple roots.
fn positive_roots(a: &CartanMatrix, nodes: &[usize]) -> Vec<Vec<i64>> {
    let r = nodes.len();
    let pair = |beta: &[i64], j: usize| -> i64 {
        (0..r).map(|i| beta[i] * a.entry(nodes[j], nodes[i]) as i64).sum()
    };
    let mut roots: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut layer: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut v = vec![0; r];
            v[i] = 1;
            v
        })
        .collect();
    while !layer.is_empty() {
        roots.extend(layer.iter().cloned());
        let mut next = BTreeSet::new();
        for beta in &layer {
            for j in 0..r {
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[j] -= 1;
                    if roots.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pair(beta, j) > 0 {
                    let mut up = beta.clone();
                    up[j] += 1;
                    next.insert(up);
                }
            }
        }
        layer = next.into_iter().collect();
    }
    roots.into_iter().collect()
}

/// Weyl dimension formula, exact. `hw[k]` is the coefficient of the
/// fundamental weight of node `k + 1`.
pub fn weyl_dim(ft: FiniteType, hw: &[u32]) -> BigUint {
    let n = ft.rank();
    assert_eq!(hw.len(), n, "one coefficient per node");
    let c = ft.cartan_matrix();
    let dual = CartanMatrix::new(
        (0..=n).map(|i| (0..=n).map(|j| c.entry(j, i)).collect()).collect(),
    );
    let nodes: Vec<usize> = (1..=n).collect();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for cor in positive_roots(&dual, &nodes) {
        let top: i64 = cor.iter().zip(hw).map(|(k, l)| k * (*l as i64 + 1)).sum();
        let bottom: i64 = cor.iter().sum();
        num *= BigUint::from(top as u64);
        den *= BigUint::from(bottom as u64);
    }
    num / den
}

/// `prod_i Y_{i,s_i}^{hw_i}` for the finite type.
pub fn dominant_monomial(ft: FiniteType, hw: &[u32]) -> Monomial {
    let c = ft.cartan_matrix();
    let s = two_coloring(&c).expect("finite Dynkin diagrams are trees");
    Monomial::from_terms(
        hw.iter()
            .enumerate()
            .filter(|(_, &l)| l > 0)
            .map(|(k, &l)| (k + 1, s[k + 1] as i32, l as i32)),
    )
}

/// Size of the `I_0` crystal generated by the dominant monomial, by BFS.
pub fn bfs_dim(ft: FiniteType, hw: &[u32], bound: usize) -> Result<usize, CrystalError> {
    let c = ft.cartan_matrix();
    let ops: Vec<usize> = (1..=ft.rank()).collect();
    Ok(component_on(&c, &dominant_monomial(ft, hw), &ops, bound)?.len())
}

/// Compares the tableaux of shape `(l, h, r)` with the `I_0` closure of
/// `m` of the highest tableau: same monomials, one per tableau, and the
/// tableau operators draw the same labelled graph. Returns the size.
pub fn oracle_bijection(table: &BoxTable, rules: Rules, ell: usize, h: usize, r: usize) -> Result<usize, String> {
    let n = table.ty.n;
    let tabs = enumerate_tableaux(rules, n, ell, h, r);
    let err = |e: &dyn fmt::Display| e.to_string();
    let seed = monomial_of_tableau(table, &Tableau::highest(ell, h, r)).map_err(|e| err(&e))?;
    let ops: Vec<usize> = (1..=n).collect();
    let g = component_on(table.matrix(), &seed, &ops, QUOTIENT_BOUND).map_err(|e| err(&e))?;
    let mut index = HashMap::new();
    let mut seen = BTreeSet::new();
    for t in &tabs {
        let m = monomial_of_tableau(table, t).map_err(|e| err(&e))?;
        let k = g.index_of(&m).ok_or_else(|| format!("{t} gives {m}, outside the component"))?;
        if !seen.insert(k) {
            return Err(format!("{t} repeats the monomial {m}"));
        }
        index.insert(t.clone(), k);
    }
    if tabs.len() != g.len() {
        return Err(format!("{} tableaux against {} monomials", tabs.len(), g.len()));
    }
    for t in &tabs {
        for &i in &ops {
            let img = tableau_crystal_op(table, t, i, false).map_err(|e| err(&e))?;
            let got = match &img {
                Some(u) => Some(*index.get(u).ok_or_else(|| format!("f_{i}{t} = {u} is not admissible"))?),
                None => None,
            };
            if got != g.f_target(index[t], i) {
                return Err(format!("f_{i} disagrees on {t}"));
            }
        }
    }
    Ok(tabs.len())
}

/// Checks a realization against the quotient generated from its seed:
/// its fundamental domain hits every class exactly once, and the closed
/// `e_0`, `f_0` reproduce the monomial operators exactly. Returns the size.
pub fn oracle_realization(rz: &Realization) -> Result<usize, String> {
    let c = CartanData::new(rz.ty).map_err(|e| e.to_string())?;
    let seed = rz.seed().map_err(|e| e.to_string())?;
    let g = generate_quotient(&c, &seed, rz.period(), QUOTIENT_BOUND).map_err(|e| e.to_string())?;
    let els = rz.elements();
    let mut seen = BTreeSet::new();
    for x in &els {
        let m = rz.monomial(x).map_err(|e| e.to_string())?;
        let k = g.index_of(&canonical_in(&g, &m)).ok_or_else(|| format!("{x} lies outside the quotient"))?;
        if !seen.insert(k) {
            return Err(format!("{x} repeats a class"));
        }
        for raise in [false, true] {
            let want = if raise { m.raise(c.matrix(), 0) } else { m.lower(c.matrix(), 0) };
            let y = rz.affine_op(x, raise);
            if let Some(y) = &y {
                if !rz.is_element(y) {
                    return Err(format!("{x} goes to {y}, which is not admissible"));
                }
            }
            let got = y.map(|y| rz.monomial(&y)).transpose().map_err(|e| e.to_string())?;
            if got != want {
                let op = if raise { "e_0" } else { "f_0" };
                return Err(format!("{op} disagrees on {x}"));
            }
        }
    }
    if seen.len() != g.len() {
        return Err(format!("{} elements against {} classes", seen.len(), g.len()));
    }
    Ok(els.len())
}

/// The finite type of `I_0`, for untwisted types.
pub fn finite_part(ty: AffineType) -> Option<FiniteType> {
    use crate::cartan::Family::*;
    Some(match ty.family {
        A1 => FiniteType::A(ty.n),
        B1 => FiniteType::B(ty.n),
        C1 => FiniteType::C(ty.n),
        D1 => FiniteType::D(ty.n),
        E6 => FiniteType::E6,
        E7 => FiniteType::E7,
        E8 => FiniteType::E8,
        F4 => FiniteType::F4,
        G2 => FiniteType::G2,
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fundamental(ft: FiniteType, k: usize) -> Vec<u32> {
        let mut v = vec![0; ft.rank()];
        v[k - 1] = 1;
        v
    }

    #[test]
    fn weyl_dims_known() {
        let table: &[(&str, usize, u64)] = &[
            ("A3", 1, 4),
            ("A5", 3, 20),
            ("B3", 1, 7),
            ("B3", 3, 8),
            ("C3", 2, 14),
            ("D4", 2, 28),
            ("D5", 5, 16),
            ("G2", 1, 14),
            ("G2", 2, 7),
            ("F4", 1, 52),
            ("F4", 4, 26),
            ("F4", 3, 273),
            ("F4", 2, 1274),
            ("E6", 5, 27),
            ("E6", 6, 78),
            ("E6", 3, 2925),
            ("E7", 1, 133),
            ("E7", 6, 56),
            ("E8", 1, 248),
        ];
        for &(t, k, d) in table {
            let ft: FiniteType = t.parse().unwrap();
            assert_eq!(weyl_dim(ft, &fundamental(ft, k)), BigUint::from(d), "{t} {k}");
        }
        assert_eq!(weyl_dim(FiniteType::F4, &[0, 0, 0, 2]), BigUint::from(324u32));
        assert_eq!(weyl_dim(FiniteType::E6, &[1, 0, 0, 0, 1, 0]), BigUint::from(650u32));
    }

    #[test]
    fn weyl_matches_bfs_small() {
        for t in ["A2", "B2", "C3", "G2", "D4"] {
            let ft: FiniteType = t.parse().unwrap();
            for k in 1..=ft.rank() {
                let hw = fundamental(ft, k);
                let bfs = bfs_dim(ft, &hw, 10_000).unwrap();
                assert_eq!(BigUint::from(bfs), weyl_dim(ft, &hw), "{t} {k}");
            }
        }
        let hw = [1, 1];
        assert_eq!(BigUint::from(bfs_dim(FiniteType::G2, &hw, 10_000).unwrap()), weyl_dim(FiniteType::G2, &hw));
    }

    #[test]
    fn root_counts() {
        for (t, count) in [("A4", 10), ("B4", 16), ("C4", 16), ("D5", 20), ("E6", 36), ("E8", 120), ("F4", 24), ("G2", 6)] {
            let ft: FiniteType = t.parse().unwrap();
            let nodes: Vec<usize> = (1..=ft.rank()).collect();
            assert_eq!(positive_roots(&ft.cartan_matrix(), &nodes).len(), count, "{t}");
        }
    }

    #[test]
    fn parse_format() {
        let text = "name=x\ntype=G1~2\nseed=2_0 0_2^-1  # seed\nperiod=4\nrelation=4 -1\nedge=1 2 2\n\ncomponent 7\n2_0 0_2^-1\n1_1 2_2^-1 0_2^-1\ncomponent 1 0_-1 0_3^-1\n";
        let f = parse_fixture(text).unwrap();
        assert_eq!(f.components.len(), 2);
        assert_eq!(f.components[1].representative.as_ref().unwrap().to_string(), "0_-1 0_3^-1");
        assert_eq!(f.relation, Some((4, -1)));
        assert_eq!(f.ell(), Some(2));
        assert!(parse_fixture("type=G1~2\nperiod=4\n").is_err());
        assert!(parse_fixture("type=G1~2\nseed=2_0\nperiod=4\n2_0\n").is_err());
        assert!(parse_fixture("type=G1~2\nseed=2_0\nperiod=4\nedge=1 2 3\n").is_err());
    }

    #[test]
    fn closure_detects_a_broken_list() {
        let c = CartanData::parse("G1~2").unwrap();
        let mut f = parse_fixture("type=G1~2\nseed=2_0 0_2^-1\nperiod=4\ncomponent 2\n2_0 0_2^-1\n1_1 2_2^-1 0_2^-1\n").unwrap();
        assert!(!closure_failures(&c, &f).is_empty());
        f.components[0].monomials.truncate(1);
        assert!(!closure_failures(&c, &f).is_empty());
    }

    #[test]
    fn g2_w2_fixture_passes() {
        let f = load_fixture(&fixture_dir(), "G2-w2").unwrap();
        let r = check_fixture(&f);
        assert!(r.passed(), "{r}");
    }
}
