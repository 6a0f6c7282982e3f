//! Tableau models for the classical families.
//!
//! A tableau is a list of symbols split into two columns: entries
//! `1..=h` sit at grades `l - 2a + 1`, the rest drop by a further `2r`.
//! Boxes carry their `Y_0` factors, so the whole model runs on the affine
//! Cartan matrix.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use thiserror::Error;

use crate::cartan::{AffineType, CartanData, CartanError, CartanMatrix, Family};
use crate::monomial::Monomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableauError {
    #[error("symbol {symbol} is not in the alphabet of {ty}")]
    UnknownSymbol { symbol: String, ty: String },
    #[error("inadmissible tableau: {0}")]
    Inadmissible(Violation),
    #[error("no tableau model for {ty} at l = {ell}")]
    Unsupported { ty: String, ell: usize },
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("no single-entry replacement realizes f/e_{node} on {tableau}")]
    NoReplacement { node: usize, tableau: String },
    #[error(transparent)]
    Cartan(#[from] CartanError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Num(u16),
    Zero,
    Bar(u16),
}

use Symbol::{Bar, Num, Zero};

impl Symbol {
    pub fn bar(self) -> Symbol {
        match self {
            Num(k) => Bar(k),
            Bar(k) => Num(k),
            Zero => Zero,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Num(k) => write!(f, "{k}"),
            Zero => write!(f, "0"),
            Bar(k) => write!(f, "-{k}"),
        }
    }
}

impl FromStr for Symbol {
    type Err = TableauError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v: i32 = s.trim().parse().map_err(|_| TableauError::Syntax(format!("bad symbol {s:?}")))?;
        Ok(match v {
            0 => Zero,
            v if v > 0 => Num(v as u16),
            v => Bar((-v) as u16),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    /// `1 < 2 < ... < n+1`.
    Line,
    /// `1 < ... < n < -n < ... < -1`.
    Plain,
    /// `1 < ... < n < 0 < -n < ... < -1`.
    WithZero,
    /// `1 < ... < n-1 < {n, -n} < -(n-1) < ... < -1`.
    Fork,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    pub shape: Shape,
    pub n: usize,
}

impl Alphabet {
    pub fn new(shape: Shape, n: usize) -> Self {
        Alphabet { shape, n }
    }

    pub fn level(&self, s: Symbol) -> Option<usize> {
        let n = self.n;
        match (self.shape, s) {
            (Shape::Line, Num(k)) if (1..=n + 1).contains(&(k as usize)) => Some(k as usize),
            (Shape::Plain, Num(k)) if (1..=n).contains(&(k as usize)) => Some(k as usize),
            (Shape::Plain, Bar(k)) if (1..=n).contains(&(k as usize)) => Some(2 * n + 1 - k as usize),
            (Shape::WithZero, Num(k)) if (1..=n).contains(&(k as usize)) => Some(k as usize),
            (Shape::WithZero, Zero) => Some(n + 1),
            (Shape::WithZero, Bar(k)) if (1..=n).contains(&(k as usize)) => Some(2 * n + 2 - k as usize),
            (Shape::Fork, Num(k)) if (1..=n).contains(&(k as usize)) => Some(k as usize),
            (Shape::Fork, Bar(k)) if k as usize == n => Some(n),
            (Shape::Fork, Bar(k)) if (1..n).contains(&(k as usize)) => Some(2 * n - k as usize),
            _ => None,
        }
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.level(s).is_some()
    }

    /// All symbols in increasing order; `n` comes before `-n` in a fork.
    pub fn symbols(&self) -> Vec<Symbol> {
        let n = self.n as u16;
        let mut out: Vec<Symbol> = match self.shape {
            Shape::Line => (1..=n + 1).map(Num).collect(),
            Shape::Plain | Shape::Fork => (1..=n).map(Num).chain((1..=n).rev().map(Bar)).collect(),
            Shape::WithZero => (1..=n).map(Num).chain([Zero]).chain((1..=n).rev().map(Bar)).collect(),
        };
        out.sort_by_key(|&s| (self.level(s), matches!(s, Bar(_))));
        out
    }

    /// `a < b`.
    pub fn precedes(&self, a: Symbol, b: Symbol) -> bool {
        matches!((self.level(a), self.level(b)), (Some(x), Some(y)) if x < y)
    }

    /// `a >= b`: equal, or strictly above.
    pub fn succeq(&self, a: Symbol, b: Symbol) -> bool {
        a == b || self.precedes(b, a)
    }

    pub fn preceq(&self, a: Symbol, b: Symbol) -> bool {
        a == b || self.precedes(a, b)
    }
}

/// Admissibility rule sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rules {
    A,
    B,
    C,
    D,
    /// Spin tableaux of length `n`; `plus` picks the parity class.
    SpinD { plus: bool },
    /// Spin tableaux of length `n + 1` with a `0`.
    SpinB,
}

impl Rules {
    pub fn alphabet(self, n: usize) -> Alphabet {
        match self {
            Rules::A => Alphabet::new(Shape::Line, n),
            Rules::B | Rules::SpinB => Alphabet::new(Shape::WithZero, n),
            Rules::C => Alphabet::new(Shape::Plain, n),
            Rules::D | Rules::SpinD { .. } => Alphabet::new(Shape::Fork, n),
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Rules::A => "A",
            Rules::B => "B",
            Rules::C => "C",
            Rules::D => "D",
            Rules::SpinD { .. } | Rules::SpinB => "S",
        }
    }

    /// `1` for B and C, whose windows sit one step further out than D's.
    fn c(self) -> i64 {
        match self {
            Rules::D => 0,
            _ => 1,
        }
    }

    /// Largest index `k` for which `k` and `-k` interact in the windows.
    fn kmax(self, n: usize) -> u16 {
        match self {
            Rules::D => n as u16 - 1,
            _ => n as u16,
        }
    }
}

/// First violated clause and the 1-based positions involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub clause: String,
    pub positions: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pos: Vec<String> = self.positions.iter().map(|p| p.to_string()).collect();
        write!(f, "({}) at positions {}", self.clause, pos.join(", "))
    }
}

fn violation(rules: Rules, clause: u8, positions: Vec<usize>) -> Violation {
    Violation { clause: format!("{}.{}", rules.tag(), clause), positions }
}

/// A two-column tableau `((i_1..i_h), (i_{h+1}..i_l))` with jump `r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    pub entries: Vec<Symbol>,
    pub h: usize,
    pub r: usize,
}

impl Tableau {
    pub fn new(entries: Vec<Symbol>, h: usize, r: usize) -> Self {
        assert!(h <= entries.len(), "split beyond the tableau");
        Tableau { entries, h, r }
    }

    /// A single column without jump.
    pub fn column(entries: Vec<Symbol>) -> Self {
        Tableau { entries, h: 0, r: 0 }
    }

    /// `((1..h), (h+1..l))`, the highest tableau of its shape.
    pub fn highest(ell: usize, h: usize, r: usize) -> Self {
        Tableau::new((1..=ell as u16).map(Num).collect(), h, r)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// 1-based access.
    pub fn at(&self, a: usize) -> Option<Symbol> {
        if a == 0 {
            None
        } else {
            self.entries.get(a - 1).copied()
        }
    }

    pub fn grades(&self) -> Vec<i32> {
        jump_grades(self.len(), self.h, self.r)
    }
}

fn join(s: &[Symbol]) -> String {
    s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(({}),({})) r={}",
            join(&self.entries[..self.h]),
            join(&self.entries[self.h..]),
            self.r
        )
    }
}

fn parse_list(s: &str) -> Result<Vec<Symbol>, TableauError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(str::parse).collect()
}

impl FromStr for Tableau {
    type Err = TableauError;

    /// `((1,2),(3,-1)) r=1`; a bare `(1,2,3)` is a column.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || TableauError::Syntax(format!("bad tableau {s:?}"));
        let s = s.trim();
        let (body, r) = match s.rsplit_once("r=") {
            Some((b, r)) => (b.trim(), r.trim().parse::<usize>().map_err(|_| bad())?),
            None => (s, 0),
        };
        let inner = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')).ok_or_else(bad)?;
        if inner.trim_start().starts_with('(') {
            let (left, right) = inner.split_once("),").ok_or_else(bad)?;
            let left = left.trim().strip_prefix('(').ok_or_else(bad)?;
            let right = right.trim().strip_prefix('(').and_then(|x| x.strip_suffix(')')).ok_or_else(bad)?;
            let mut entries = parse_list(left)?;
            let h = entries.len();
            entries.extend(parse_list(right)?);
            Ok(Tableau::new(entries, h, r))
        } else {
            let entries = parse_list(inner)?;
            Ok(Tableau { entries, h: 0, r })
        }
    }
}

/// Grades of the boxes: `l - 2a + 1` up to `h`, then `l + 1 - 2a - 2r`.
pub fn jump_grades(ell: usize, h: usize, r: usize) -> Vec<i32> {
    let (l, h, r) = (ell as i32, h as i32, r as i32);
    (1..=l).map(|a| if a <= h { l - 2 * a + 1 } else { l + 1 - 2 * a - 2 * r }).collect()
}

fn mono(parts: &[(usize, i32, i32)]) -> Monomial {
    Monomial::from_terms(parts.iter().copied())
}

/// Box monomials of one family, plus the arrows of its one-box crystal.
#[derive(Clone, Debug)]
pub struct BoxTable {
    pub ty: AffineType,
    pub spin: bool,
    pub alphabet: Alphabet,
    cartan: CartanData,
    /// `(node, s, t)` with `f_node(box s) = box t`.
    arrows: Vec<(usize, Symbol, Symbol)>,
}

impl BoxTable {
    pub fn new(ty: AffineType, spin: bool) -> Result<Self, TableauError> {
        let n = ty.n;
        let unsupported = || TableauError::Unsupported { ty: ty.to_string(), ell: 1 };
        let shape = match (ty.family, spin) {
            (Family::A1, false) => Shape::Line,
            (Family::C1 | Family::A2Even | Family::A2Odd, false) => Shape::Plain,
            (Family::B1 | Family::A2EvenDagger | Family::D2, _) => Shape::WithZero,
            (Family::D1, _) => Shape::Fork,
            _ => return Err(unsupported()),
        };
        if spin && matches!(ty.family, Family::A2EvenDagger) {
            return Err(unsupported());
        }
        let cartan = CartanData::new(ty)?;
        let mut table = BoxTable { ty, spin, alphabet: Alphabet::new(shape, n), cartan, arrows: Vec::new() };
        if !spin {
            let syms = table.alphabet.symbols();
            let boxes: Vec<Monomial> = syms.iter().map(|&s| table.raw(s, 0)).collect();
            for (a, b) in boxes.iter().enumerate() {
                for i in 1..=n {
                    if let Some(f) = b.lower(table.matrix(), i) {
                        if let Some(t) = boxes.iter().position(|x| *x == f) {
                            table.arrows.push((i, syms[a], syms[t]));
                        }
                    }
                }
            }
        }
        Ok(table)
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    pub fn matrix(&self) -> &CartanMatrix {
        self.cartan.matrix()
    }

    pub fn entry(&self, s: Symbol, p: i32) -> Result<Monomial, TableauError> {
        if !self.alphabet.contains(s) {
            return Err(TableauError::UnknownSymbol { symbol: s.to_string(), ty: self.ty.to_string() });
        }
        Ok(self.raw(s, p))
    }

    /// Product of `box(entries[a])` at `grades[a]`.
    pub fn product(&self, entries: &[Symbol], grades: &[i32]) -> Result<Monomial, TableauError> {
        let mut m = Monomial::one();
        for (&s, &p) in entries.iter().zip(grades) {
            m = m.mul(&self.entry(s, p)?);
        }
        Ok(m)
    }

    pub fn f_arrow(&self, node: usize, s: Symbol) -> Option<Symbol> {
        self.arrows.iter().find(|a| a.0 == node && a.1 == s).map(|a| a.2)
    }

    pub fn e_arrow(&self, node: usize, s: Symbol) -> Option<Symbol> {
        self.arrows.iter().find(|a| a.0 == node && a.2 == s).map(|a| a.1)
    }

    fn raw(&self, s: Symbol, p: i32) -> Monomial {
        let n = self.ty.n as i32;
        let nu = self.ty.n;
        let generic = |i: u16| {
            let i = i as usize;
            mono(&[(i - 1, p + i as i32, -1), (i, p + i as i32 - 1, 1)])
        };
        let generic_bar = |i: u16| {
            let (iu, i) = (i as usize, i as i32);
            mono(&[(iu - 1, p + 2 * n - i, 1), (iu, p + 2 * n + 1 - i, -1)])
        };
        match (self.ty.family, self.spin, s) {
            (Family::A1, _, Num(k)) => {
                let k = k as usize;
                let (a, b) = ((k - 1) % (nu + 1), k % (nu + 1));
                mono(&[(a, p + k as i32, -1), (b, p + k as i32 - 1, 1)])
            }
            (Family::D1, false, s) => match s {
                Num(1) => mono(&[(0, p + 2, -1), (1, p, 1)]),
                Num(2) => mono(&[(0, p + 2, -1), (1, p + 2, -1), (2, p + 1, 1)]),
                Num(k) if (k as i32) == n - 1 => mono(&[
                    (nu - 2, p + n - 1, -1),
                    (nu - 1, p + n - 2, 1),
                    (nu, p + n - 2, 1),
                ]),
                Num(k) if (k as i32) == n => mono(&[(nu - 1, p + n, -1), (nu, p + n - 2, 1)]),
                Num(k) => generic(k),
                Bar(k) if (k as i32) == n => mono(&[(nu - 1, p + n - 2, 1), (nu, p + n, -1)]),
                Bar(k) if (k as i32) == n - 1 => mono(&[
                    (nu - 2, p + n - 1, 1),
                    (nu - 1, p + n, -1),
                    (nu, p + n, -1),
                ]),
                Bar(2) => mono(&[(0, p + 2 * n - 4, 1), (1, p + 2 * n - 4, 1), (2, p + 2 * n - 3, -1)]),
                Bar(1) => mono(&[(0, p + 2 * n - 4, 1), (1, p + 2 * n - 2, -1)]),
                Bar(k) => {
                    let (ku, k) = (k as usize, k as i32);
                    mono(&[(ku - 1, p + 2 * n - 2 - k, 1), (ku, p + 2 * n - 1 - k, -1)])
                }
                Zero => Monomial::one(),
            },
            (Family::D1, true, s) => match s {
                Num(1) => mono(&[(1, p - 1, 1)]),
                Num(k) if (k as i32) == n => mono(&[(nu, p + n - 1, 1)]),
                Num(k) if (k as i32) == n - 1 => mono(&[(nu - 2, p + n - 2, -1)]),
                Num(2) => mono(&[(1, p + 1, -1), (2, p, 1), (0, p + 1, -1)]),
                Num(k) => {
                    let (ku, k) = (k as usize, k as i32);
                    mono(&[(ku - 1, p + k - 1, -1), (ku, p + k - 2, 1)])
                }
                Bar(1) => mono(&[(0, p + 2 * n - 1, 1)]),
                Bar(k) if (k as i32) == n => mono(&[(nu - 1, p + n - 1, 1)]),
                Bar(k) if (k as i32) == n - 1 => mono(&[(nu - 1, p + n + 1, -1), (nu, p + n + 1, -1)]),
                _ => Monomial::one(),
            },
            (Family::B1, false, s) => match s {
                Num(1) => mono(&[(0, p + 2, -1), (1, p, 1)]),
                Num(k) if (k as i32) == n => mono(&[(nu - 1, p + n, -1), (nu, p + n - 1, 2)]),
                Num(2) => mono(&[(0, p + 2, -1), (1, p + 2, -1), (2, p + 1, 1)]),
                Num(k) => generic(k),
                Zero => mono(&[(nu, p + n + 1, -1), (nu, p + n - 1, 1)]),
                Bar(k) if (k as i32) == n => mono(&[(nu - 1, p + n, 1), (nu, p + n + 1, -2)]),
                Bar(2) => mono(&[(0, p + 2 * n - 2, 1), (1, p + 2 * n - 2, 1), (2, p + 2 * n - 1, -1)]),
                Bar(1) => mono(&[(0, p + 2 * n - 2, 1), (1, p + 2 * n, -1)]),
                Bar(k) => generic_bar(k),
            },
            (Family::B1, true, s) => match s {
                Num(1) => mono(&[(1, p - 1, 1)]),
                Num(k) if (k as i32) == n => mono(&[(nu - 1, p + n - 1, -1)]),
                Num(2) => mono(&[(1, p + 1, -1), (2, p, 1), (0, p + 1, -1)]),
                Num(k) => {
                    let (ku, k) = (k as usize, k as i32);
                    mono(&[(ku - 1, p + k - 1, -1), (ku, p + k - 2, 1)])
                }
                Zero => mono(&[(nu, p + n, 1)]),
                Bar(1) => mono(&[(0, p + 2 * n + 1, 1)]),
                Bar(k) if (k as i32) == n => mono(&[(nu, p + n + 2, -2)]),
                Bar(_) => Monomial::one(),
            },
            (Family::C1, _, Num(k)) => generic(k),
            (Family::C1, _, Bar(k)) => generic_bar(k),
            (Family::A2Even, _, s) => match s {
                Num(1) => mono(&[(1, p, 1), (0, p + 1, -2)]),
                Bar(1) => mono(&[(0, p + 2 * n - 1, 2), (1, p + 2 * n, -1)]),
                Num(k) => generic(k),
                Bar(k) => generic_bar(k),
                Zero => Monomial::one(),
            },
            (Family::A2EvenDagger, _, s) => match s {
                Num(k) if (k as i32) == n => mono(&[(nu - 1, p + n, -1), (nu, p + n - 1, 2)]),
                Num(k) => generic(k),
                Zero => mono(&[(nu, p + n + 1, -1), (nu, p + n - 1, 1)]),
                Bar(k) if (k as i32) == n => mono(&[(nu - 1, p + n, 1), (nu, p + n + 1, -2)]),
                Bar(k) => generic_bar(k),
            },
            (Family::A2Odd, _, s) => match s {
                Num(1) => mono(&[(0, p + 2, -1), (1, p, 1)]),
                Num(2) => mono(&[(0, p + 2, -1), (1, p + 2, -1), (2, p + 1, 1)]),
                Num(k) => generic(k),
                Bar(2) => mono(&[(0, p + 2 * n - 2, 1), (1, p + 2 * n - 2, 1), (2, p + 2 * n - 1, -1)]),
                Bar(1) => mono(&[(0, p + 2 * n - 2, 1), (1, p + 2 * n, -1)]),
                Bar(k) => generic_bar(k),
                Zero => Monomial::one(),
            },
            (Family::D2, false, s) => match s {
                Num(1) => mono(&[(1, p, 1), (0, p + 1, -2)]),
                Num(k) if (k as i32) == n => mono(&[(nu - 1, p + n, -1), (nu, p + n - 1, 2)]),
                Num(k) => generic(k),
                Zero => mono(&[(nu, p + n - 1, 1), (nu, p + n + 1, -1)]),
                Bar(k) if (k as i32) == n => mono(&[(nu - 1, p + n, 1), (nu, p + n + 1, -2)]),
                Bar(1) => mono(&[(0, p + 2 * n - 1, 2), (1, p + 2 * n, -1)]),
                Bar(k) => generic_bar(k),
            },
            (Family::D2, true, s) => match s {
                Num(k) if (k as i32) == n => mono(&[(nu - 1, p + n - 1, -1)]),
                Num(k) => {
                    let (ku, k) = (k as usize, k as i32);
                    mono(&[(ku - 1, p + k - 1, -1), (ku, p + k - 2, 1)])
                }
                Zero => mono(&[(nu, p + n, 1)]),
                Bar(1) => mono(&[(0, p + 2 * n, 1)]),
                Bar(k) if (k as i32) == n => mono(&[(nu, p + n + 2, -2)]),
                Bar(_) => Monomial::one(),
            },
            _ => Monomial::one(),
        }
    }
}

/// Box monomial `box(s)_p` of the vector table of `ty`.
pub fn box_monomial(ty: AffineType, s: Symbol, p: i32) -> Result<Monomial, TableauError> {
    BoxTable::new(ty, false)?.entry(s, p)
}

/// The rule set whose tableaux live on the vector boxes of `ty`.
pub fn rules_for(ty: AffineType) -> Option<Rules> {
    Some(match ty.family {
        Family::A1 => Rules::A,
        Family::B1 | Family::A2EvenDagger | Family::D2 => Rules::B,
        Family::C1 | Family::A2Even | Family::A2Odd => Rules::C,
        Family::D1 => Rules::D,
        _ => return None,
    })
}

/// Checks every clause of `rules`; the first failure is reported.
pub fn check_admissible(rules: Rules, n: usize, t: &Tableau) -> Result<(), Violation> {
    let al = rules.alphabet(n);
    for (a, &s) in t.entries.iter().enumerate() {
        if !al.contains(s) {
            return Err(Violation { clause: "alphabet".into(), positions: vec![a + 1] });
        }
    }
    match rules {
        Rules::A => {
            for a in 1..t.len() {
                if !al.precedes(t.entries[a - 1], t.entries[a]) {
                    return Err(violation(rules, 1, vec![a, a + 1]));
                }
            }
            Ok(())
        }
        Rules::SpinD { plus } => check_spin(rules, &al, t, n, Some(plus)),
        Rules::SpinB => check_spin(rules, &al, t, n + 1, None),
        Rules::B | Rules::C | Rules::D => check_columns(rules, &al, n, t),
    }
}

fn check_spin(rules: Rules, al: &Alphabet, t: &Tableau, len: usize, parity: Option<bool>) -> Result<(), Violation> {
    if t.len() != len {
        return Err(violation(rules, 0, vec![]));
    }
    for a in 1..t.len() {
        if !al.precedes(t.entries[a - 1], t.entries[a]) {
            return Err(violation(rules, 1, vec![a, a + 1]));
        }
    }
    for a in 0..t.len() {
        for b in a + 1..t.len() {
            if t.entries[a] != Zero && t.entries[b] == t.entries[a].bar() {
                return Err(violation(rules, 2, vec![a + 1, b + 1]));
            }
        }
    }
    if let Some(plus) = parity {
        let n = al.n;
        for (a, &s) in t.entries.iter().enumerate() {
            let even = (n - (a + 1)) % 2 == 0;
            let bad = match s {
                Num(k) if k as usize == n => even != plus,
                Bar(k) if k as usize == n => even == plus,
                _ => false,
            };
            if bad {
                return Err(violation(rules, 3, vec![a + 1]));
            }
        }
    }
    Ok(())
}

/// Column order: consecutive entries `x, y` of one column satisfy `x !>= y`,
/// except that `0` may repeat in B.
fn column_step_ok(rules: Rules, al: &Alphabet, x: Symbol, y: Symbol) -> bool {
    match rules {
        Rules::B | Rules::SpinB if x == Zero && y == Zero => true,
        Rules::C | Rules::B => al.precedes(x, y),
        _ => !al.succeq(x, y),
    }
}

fn check_columns(rules: Rules, al: &Alphabet, n: usize, t: &Tableau) -> Result<(), Violation> {
    let e = &t.entries;
    let (len, h, r) = (e.len(), t.h, t.r as i64);
    let n_i = n as i64;
    let c = rules.c();
    let same_col = |a: usize, b: usize| (a < h) == (b < h);
    // 1: column order
    for a in 1..len {
        if a != h && !column_step_ok(rules, al, e[a - 1], e[a]) {
            return Err(violation(rules, 1, vec![a, a + 1]));
        }
    }
    // 2, 3: no k above -k at distance n - 1 - k (D) or n - k (B, C) in a column
    for a in 0..len {
        for b in a + 1..len {
            if let (Num(k), Bar(kb)) = (e[a], e[b]) {
                if k == kb && k <= rules.kmax(n) && same_col(a, b) && (b - a) as i64 == n_i - 1 - k as i64 + c {
                    return Err(violation(rules, if b < h { 2 } else { 3 }, vec![a + 1, b + 1]));
                }
            }
        }
    }
    // 4: no crossing pair at n - max(r, 1) - k (+1 for B, C)
    for a in 0..h {
        for b in h..len {
            if let (Num(k), Bar(kb)) = (e[a], e[b]) {
                if k == kb && k <= rules.kmax(n) && (b - a) as i64 == n_i - r.max(1) - k as i64 + c {
                    return Err(violation(rules, 4, vec![a + 1, b + 1]));
                }
            }
        }
    }
    if h == 0 || h == len {
        return Ok(());
    }
    let (x, y) = (e[h - 1], e[h]);
    let hi = h as i64;
    match y {
        // 5
        Num(k) if k <= rules.kmax(n) && al.succeq(x, y) => {
            let kp = match x {
                Num(kp) if kp <= rules.kmax(n) => kp,
                _ => return Err(violation(rules, 5, vec![h, h + 1])),
            };
            let span = (kp - k) as usize;
            let k_i = k as i64;
            let ok = (h + 1..=len).any(|b| {
                let d = b as i64 - hi;
                d > n_i - r - k_i + c
                    && d <= n_i - k_i - 1 + c
                    && b >= span + 1
                    && b - span > h
                    && (0..=span).all(|t| e[b - 1 - t] == Bar(k + t as u16))
            });
            if !ok {
                return Err(violation(rules, 5, vec![h, h + 1]));
            }
        }
        // 6
        Bar(k) if k <= rules.kmax(n) && al.succeq(x, y) => {
            let kp = match x {
                Bar(kp) if kp <= rules.kmax(n) => kp,
                _ => return Err(violation(rules, 6, vec![h, h + 1])),
            };
            let span = (k - kp) as usize;
            let k_i = k as i64;
            let ok = (1..=h).any(|a| {
                let d = hi - a as i64;
                d >= n_i - r - k_i + c
                    && d < n_i - k_i - 1 + c
                    && a > span
                    && (0..=span).all(|t| e[a - 1 - t] == Num(k - t as u16))
            });
            if !ok {
                return Err(violation(rules, 6, vec![h, h + 1]));
            }
        }
        _ => {}
    }
    // 7
    match rules {
        Rules::D if matches!(y, Num(k) | Bar(k) if k as usize == n) && al.succeq(x, y) => {
            Err(violation(rules, 7, vec![h, h + 1]))
        }
        Rules::B if y == Zero && !al.preceq(x, Zero) => Err(violation(rules, 7, vec![h, h + 1])),
        _ => Ok(()),
    }
}

/// All admissible tableaux of shape `(l, h, r)`, in lexicographic order.
pub fn enumerate_tableaux(rules: Rules, n: usize, ell: usize, h: usize, r: usize) -> Vec<Tableau> {
    let al = rules.alphabet(n);
    let syms = al.symbols();
    let mut out = Vec::new();
    let mut cur: Vec<Symbol> = Vec::with_capacity(ell);
    fn go(
        rules: Rules,
        n: usize,
        al: &Alphabet,
        syms: &[Symbol],
        ell: usize,
        h: usize,
        r: usize,
        cur: &mut Vec<Symbol>,
        out: &mut Vec<Tableau>,
    ) {
        let a = cur.len();
        if a == ell {
            let t = Tableau::new(cur.clone(), h, r);
            if check_admissible(rules, n, &t).is_ok() {
                out.push(t);
            }
            return;
        }
        for &s in syms {
            let ok = match rules {
                Rules::A | Rules::SpinD { .. } | Rules::SpinB => a == 0 || al.precedes(cur[a - 1], s),
                _ => a == 0 || a == h || column_step_ok(rules, al, cur[a - 1], s),
            };
            if ok {
                cur.push(s);
                go(rules, n, al, syms, ell, h, r, cur, out);
                cur.pop();
            }
        }
    }
    go(rules, n, &al, &syms, ell, h, r, &mut cur, &mut out);
    out
}

/// `m_T`: boxes at the jump grades of `T`.
pub fn monomial_of_tableau(table: &BoxTable, t: &Tableau) -> Result<Monomial, TableauError> {
    table.product(&t.entries, &t.grades())
}

/// `f_k` (or `e_k` when `raise`) on a jump tableau, for `k` in `I_0`.
///
/// The image is the single-entry replacement whose monomial is the image
/// of `m_T`. When two replacements qualify, a `(k, -(k+1))` pair sits at
/// equal grades; `k` moves inside a column or without jump, `-(k+1)`
/// moves across a jump.
pub fn tableau_crystal_op(
    table: &BoxTable,
    t: &Tableau,
    k: usize,
    raise: bool,
) -> Result<Option<Tableau>, TableauError> {
    let m = monomial_of_tableau(table, t)?;
    let mat = table.matrix();
    let target = if raise { m.raise(mat, k) } else { m.lower(mat, k) };
    let Some(target) = target else { return Ok(None) };
    let mut cands = Vec::new();
    for a in 0..t.len() {
        let s = t.entries[a];
        let next = if raise { table.e_arrow(k, s) } else { table.f_arrow(k, s) };
        if let Some(s2) = next {
            let mut u = t.clone();
            u.entries[a] = s2;
            if monomial_of_tableau(table, &u)? == target {
                cands.push((a, u));
            }
        }
    }
    let none = || TableauError::NoReplacement { node: k, tableau: t.to_string() };
    if raise {
        let mut hits = Vec::new();
        for (_, u) in cands {
            if tableau_crystal_op(table, &u, k, false)?.as_ref() == Some(t) {
                hits.push(u);
            }
        }
        if hits.len() > 1 && !table.spin {
            if let Some(rules) = rules_for(table.ty) {
                hits.retain(|u| check_admissible(rules, table.ty.n, u).is_ok());
            }
        }
        return if hits.len() == 1 { Ok(hits.pop()) } else { Err(none()) };
    }
    match cands.len() {
        0 => Err(none()),
        1 => Ok(cands.pop().map(|c| c.1)),
        _ => {
            let plain = cands.iter().position(|(a, _)| matches!(t.entries[*a], Num(_)));
            let barred = cands.iter().position(|(a, _)| matches!(t.entries[*a], Bar(_)));
            let (Some(p), Some(q)) = (plain, barred) else { return Err(none()) };
            let (a, b) = (cands[p].0, cands[q].0);
            let across = (a < t.h) != (b < t.h);
            let pick = if across && t.r != 0 { q } else { p };
            Ok(Some(cands.swap_remove(pick).1))
        }
    }
}

/// Crossing pairs `(k, -k)` at distance `dist`; they never share a position.
fn crossing_pairs(t: &Tableau, k: u16, dist: i64) -> Vec<(usize, usize)> {
    let h = t.h;
    (0..h)
        .filter(|&a| t.entries[a] == Num(k))
        .filter_map(|a| {
            let b = a + dist as usize;
            (dist > 0 && b >= h && t.at(b + 1) == Some(Bar(k))).then_some((a, b))
        })
        .collect()
}

fn shift_pairs(u: &mut Tableau, pairs: &[(usize, usize)], to: u16) {
    for &(a, b) in pairs {
        u.entries[a] = Num(to);
        u.entries[b] = Bar(to);
    }
}

/// `sigma_{l,h,r}`: shape `(l, h, r)` to `(l, h, r + 1)`. For each `k` in
/// turn, every crossing pair `(k, -k)` at the critical distance moves at once.
pub fn sigma(rules: Rules, n: usize, t: &Tableau) -> Tableau {
    let c = rules.c();
    let (n_i, r) = (n as i64, t.r as i64);
    let mut u = t.clone();
    let top = n_i - r - 1 + c;
    for k in 1..=top.max(0) {
        let k16 = k as u16;
        let pairs = crossing_pairs(&u, k16, n_i - r - k - 1 + c);
        shift_pairs(&mut u, &pairs, k16 + 1);
    }
    u.r += 1;
    u
}

/// `sigma'_{l,h,r}`: shape `(l, h, r)` to `(l, h, r - 1)`.
pub fn sigma_prime(rules: Rules, n: usize, t: &Tableau) -> Tableau {
    assert!(t.r >= 1, "sigma' needs a positive jump");
    let c = rules.c();
    let (n_i, r) = (n as i64, t.r as i64);
    let mut u = t.clone();
    if t.r >= 2 {
        let mut k = n_i - r + c;
        while k >= 2 {
            let k16 = k as u16;
            let pairs = crossing_pairs(&u, k16, n_i - r - k + 1 + c);
            shift_pairs(&mut u, &pairs, k16 - 1);
            k -= 1;
        }
    }
    u.r -= 1;
    u
}

/// `tau_{l,h,r}`: shape `(l, h, r)` to `(l, h + 1, r)`, for `h < l`.
pub fn tau_lhr(rules: Rules, n: usize, t: &Tableau) -> Tableau {
    assert!(t.h < t.len(), "tau needs an entry right of the split");
    let c = rules.c();
    let (n_i, r, h) = (n as i64, t.r as i64, t.h);
    let e = &t.entries;
    let kmax = rules.kmax(n);
    match e[h] {
        Num(k) if k <= kmax => {
            let k_i = k as i64;
            let hit = (h + 1..e.len()).find(|&b| {
                let d = (b + 1 - h) as i64;
                e[b] == Bar(k) && d > n_i - r - k_i + c && d <= n_i - 1 - k_i + c
            });
            if let Some(b) = hit {
                let mut bs = b;
                let mut top = k;
                while bs > h + 1 && e[bs - 1] == Bar(top + 1) {
                    bs -= 1;
                    top += 1;
                }
                let mut out: Vec<Symbol> = e[..h].to_vec();
                out.push(Num(top + 1));
                out.extend_from_slice(&e[h + 1..bs]);
                out.extend((k + 1..=top + 1).rev().map(Bar));
                out.extend_from_slice(&e[b + 1..]);
                return Tableau::new(out, h + 1, t.r);
            }
        }
        Bar(k) if k <= kmax => {
            let k_i = k as i64;
            let hit = (0..h).find(|&a| {
                let d = (h - (a + 1)) as i64;
                e[a] == Num(k) && d >= n_i - r - k_i + c && d < n_i - 1 - k_i + c
            });
            if let Some(a) = hit {
                let mut as_ = a;
                let mut low = k;
                while as_ > 0 && low > 1 && e[as_ - 1] == Num(low - 1) {
                    as_ -= 1;
                    low -= 1;
                }
                let mut out: Vec<Symbol> = e[..as_].to_vec();
                out.extend((low - 1..=k - 1).map(Num));
                out.extend_from_slice(&e[a + 1..h]);
                out.push(Bar(low - 1));
                out.extend_from_slice(&e[h + 1..]);
                return Tableau::new(out, h + 1, t.r);
            }
        }
        _ => {}
    }
    Tableau::new(e.clone(), h + 1, t.r)
}

/// Index patterns of the closed-form realizations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// `(T; j)` over a row, type A.
    Row,
    /// One box, `l = 1`.
    Vector,
    /// `(T; j, k)`: `k` pairs `(1, -1)` are split off.
    Paired,
    /// `(T; j)` over jump tableaux of full length.
    Single,
    /// `(T; j, k)`: `k` boxes are traded for `Y_0` factors.
    Ladder,
    /// Spin tableaux; `j` counts shifts.
    Spin,
    /// Column of the dagger twisted type at `l = n`; `j` counts `tau_2`.
    DaggerTop,
    /// `(T; k)` of the odd twisted type at `l = n`; `j` counts `tau_2`.
    OddTop,
}

/// An element `(T; j, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Indexed {
    pub entries: Vec<Symbol>,
    pub j: i32,
    pub k: usize,
}

impl Indexed {
    pub fn new(entries: Vec<Symbol>, j: i32, k: usize) -> Self {
        Indexed { entries, j, k }
    }

    fn at(&self, a: usize) -> Option<Symbol> {
        if a == 0 {
            None
        } else {
            self.entries.get(a - 1).copied()
        }
    }
}

impl fmt::Display for Indexed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({});j={},k={}", join(&self.entries), self.j, self.k)
    }
}

impl FromStr for Indexed {
    type Err = TableauError;

    /// `(1,2,-1);j=0,k=1`; both indices default to `0`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || TableauError::Syntax(format!("bad indexed tableau {s:?}"));
        let (body, idx) = s.split_once(';').unwrap_or((s, ""));
        let inner = body.trim().strip_prefix('(').and_then(|b| b.strip_suffix(')')).ok_or_else(bad)?;
        let mut x = Indexed::new(parse_list(inner)?, 0, 0);
        for part in idx.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part.split_once('=') {
                Some(("j", v)) => x.j = v.trim().parse().map_err(|_| bad())?,
                Some(("k", v)) => x.k = v.trim().parse().map_err(|_| bad())?,
                _ => return Err(bad()),
            }
        }
        Ok(x)
    }
}

/// Closed-form model of a `tau`-quotient of the fundamental crystal.
#[derive(Clone, Debug)]
pub struct Realization {
    pub ty: AffineType,
    pub ell: usize,
    pub scheme: Scheme,
    pub rules: Rules,
    table: BoxTable,
    index: OnceLock<HashMap<Monomial, Indexed>>,
}

impl Realization {
    pub fn new(ty: AffineType, ell: usize) -> Result<Self, TableauError> {
        let n = ty.n;
        let unsupported = || TableauError::Unsupported { ty: ty.to_string(), ell };
        if ell == 0 || ell > n {
            return Err(unsupported());
        }
        let (scheme, rules) = match ty.family {
            Family::A1 if n % 2 == 1 && ell <= (n + 1) / 2 => (Scheme::Row, Rules::A),
            Family::D1 if ell == 1 => (Scheme::Vector, Rules::D),
            Family::D1 if ell <= n - 2 => (Scheme::Paired, Rules::D),
            Family::D1 => (Scheme::Spin, Rules::SpinD { plus: ell == n }),
            Family::B1 if ell == 1 => (Scheme::Vector, Rules::B),
            Family::B1 if ell < n => (Scheme::Paired, Rules::B),
            Family::B1 => (Scheme::Spin, Rules::SpinB),
            Family::A2Odd if ell == 1 => (Scheme::Vector, Rules::C),
            Family::A2Odd if ell < n => (Scheme::Paired, Rules::C),
            Family::A2Odd => (Scheme::OddTop, Rules::C),
            Family::C1 => (Scheme::Single, Rules::C),
            Family::A2EvenDagger if ell < n => (Scheme::Single, Rules::B),
            Family::A2EvenDagger => (Scheme::DaggerTop, Rules::B),
            Family::A2Even => (Scheme::Ladder, Rules::C),
            Family::D2 if ell < n => (Scheme::Ladder, Rules::B),
            Family::D2 => (Scheme::Spin, Rules::SpinB),
            _ => return Err(unsupported()),
        };
        let table = BoxTable::new(ty, scheme == Scheme::Spin)?;
        Ok(Realization { ty, ell, scheme, rules, table, index: OnceLock::new() })
    }

    pub fn table(&self) -> &BoxTable {
        &self.table
    }

    /// Grade shift of one turn of `j` through the fundamental domain;
    /// also the period of the quotient.
    pub fn shift(&self) -> i32 {
        let n = self.ty.n as i32;
        match (self.scheme, self.ty.family) {
            (Scheme::Row, _) => n + 1,
            (Scheme::Vector | Scheme::Paired, Family::D1) => 2 * n - 4,
            (Scheme::Vector | Scheme::Paired, _) => 2 * n - 2,
            (Scheme::Single | Scheme::Ladder, _) => -2 * n,
            (Scheme::Spin, Family::D2) => 2,
            (Scheme::Spin, _) => 4,
            (Scheme::DaggerTop | Scheme::OddTop, _) => 2,
        }
    }

    pub fn period(&self) -> i32 {
        self.shift().abs()
    }

    /// Number of `j` values in the fundamental domain.
    pub fn turn(&self) -> i32 {
        match self.scheme {
            Scheme::Row | Scheme::Paired | Scheme::Single | Scheme::Ladder => self.ell as i32,
            _ => 1,
        }
    }

    pub fn k_max(&self) -> usize {
        let n = self.ty.n;
        match self.scheme {
            Scheme::Paired => self.ell / 2,
            Scheme::Ladder => self.ell,
            Scheme::OddTop => n / 2,
            _ => 0,
        }
    }

    fn r0(&self) -> usize {
        let (n, l) = (self.ty.n, self.ell);
        match (self.scheme, self.ty.family) {
            (Scheme::Row, _) => (n + 1) / 2 - l,
            (Scheme::Paired, Family::D1) => n - l - 2,
            (Scheme::Paired, _) => n - l - 1,
            (Scheme::Single | Scheme::Ladder, _) => n - l,
            _ => 0,
        }
    }

    /// `(j mod turn, number of turns)`.
    fn reduce(&self, j: i32) -> (i32, i32) {
        (j.rem_euclid(self.turn()), j.div_euclid(self.turn()))
    }

    /// Tableau shape `(length, h, r)` attached to a reduced index.
    pub fn shape(&self, j0: i32, k: usize) -> (usize, usize, usize) {
        let (n, l) = (self.ty.n, self.ell);
        let j0 = j0 as usize;
        match self.scheme {
            Scheme::Row => (l, j0, self.r0()),
            Scheme::Vector => (1, 0, 0),
            Scheme::Paired if j0 > 2 * k => (l - 2 * k, j0 - 2 * k, self.r0()),
            Scheme::Paired => (l - 2 * k, 0, 0),
            Scheme::Single => (l, l - j0, self.r0()),
            Scheme::Ladder if k + j0 < l => (l - k, l - j0 - k, self.r0()),
            Scheme::Ladder => (l - k, 0, 0),
            Scheme::Spin if self.rules == Rules::SpinB => (n + 1, 0, 0),
            Scheme::Spin => (n, 0, 0),
            Scheme::DaggerTop => (n, 0, 0),
            Scheme::OddTop => (n - 2 * k, 0, 0),
        }
    }

    fn tableau(&self, x: &Indexed) -> Tableau {
        let (j0, _) = self.reduce(x.j);
        let (_, h, r) = self.shape(j0, x.k);
        Tableau { entries: x.entries.clone(), h: h.min(x.entries.len()), r }
    }

    pub fn is_element(&self, x: &Indexed) -> bool {
        let (j0, _) = self.reduce(x.j);
        if x.k > self.k_max() {
            return false;
        }
        let (len, _, _) = self.shape(j0, x.k);
        let n = self.ty.n;
        len == x.entries.len() && check_admissible(self.rules, n, &self.tableau(x)).is_ok()
    }

    /// The fundamental domain: `0 <= j < turn`, all `k`.
    pub fn elements(&self) -> Vec<Indexed> {
        let n = self.ty.n;
        let mut out = Vec::new();
        for j in 0..self.turn() {
            for k in 0..=self.k_max() {
                let (len, h, r) = self.shape(j, k);
                for t in enumerate_tableaux(self.rules, n, len, h, r) {
                    out.push(Indexed::new(t.entries, j, k));
                }
            }
        }
        out
    }

    pub fn seed(&self) -> Result<Monomial, TableauError> {
        let (len, _, _) = self.shape(0, 0);
        let x = Indexed::new((1..=len as u16).map(Num).collect(), 0, 0);
        let x = match self.scheme {
            Scheme::Spin => {
                let last = match self.rules {
                    Rules::SpinD { plus: false } => Bar(self.ty.n as u16),
                    Rules::SpinB => Zero,
                    _ => Num(self.ty.n as u16),
                };
                let mut e = x.entries;
                *e.last_mut().expect("spin column") = last;
                Indexed::new(e, 0, 0)
            }
            _ => x,
        };
        self.monomial(&x)
    }

    fn normal(&self, m: &Monomial) -> (Monomial, i32) {
        let p = self.period();
        let lo = m.min_grade().unwrap_or(0);
        let turns = lo.div_euclid(p);
        (m.tau(-turns * p), turns)
    }

    /// The element whose monomial is `m`, if any.
    pub fn locate(&self, m: &Monomial) -> Option<Indexed> {
        let index = self.index.get_or_init(|| {
            self.elements()
                .into_iter()
                .filter_map(|x| self.monomial(&x).ok().map(|m| (self.normal(&m).0, x)))
                .collect()
        });
        let (rep, turns) = self.normal(m);
        let x = index.get(&rep)?;
        let (rep_x, turns_x) = self.normal(&self.monomial(x).ok()?);
        debug_assert_eq!(rep_x, rep);
        let dj = (turns - turns_x) * self.period() / self.shift() * self.turn();
        Some(Indexed::new(x.entries.clone(), x.j + dj, x.k))
    }

    fn one(&self, s: Symbol, p: i32) -> Result<Monomial, TableauError> {
        self.table.entry(s, p)
    }

    pub fn monomial(&self, x: &Indexed) -> Result<Monomial, TableauError> {
        let n = self.ty.n as i32;
        let l = self.ell as i32;
        let (j0, turns) = self.reduce(x.j);
        let (j, k) = (j0, x.k as i32);
        let len = x.entries.len() as i32;
        let grades: Vec<i32> = match self.scheme {
            Scheme::Row => (1..=len).map(|p| if p <= j { n - l - 2 * p + 2 * j + 2 } else { l + 1 - 2 * p + 2 * j }).collect(),
            Scheme::Vector => vec![0],
            Scheme::Paired => {
                let g = self.paired_grades(j);
                (1..=len).map(|a| g[(a + 2 * k - 1) as usize]).collect()
            }
            Scheme::Single => (1..=len)
                .map(|a| if a <= l - j { l + 1 - 2 * j - 2 * a } else { 3 * l + 1 - 2 * n - 2 * j - 2 * a })
                .collect(),
            Scheme::Ladder => (1..=len)
                .map(|a| {
                    if k <= l - j - 1 && a <= l - j - k {
                        l + 1 - 2 * j - 2 * a - 2 * k
                    } else {
                        3 * l + 1 - 2 * n - 2 * j - 2 * a - 2 * k
                    }
                })
                .collect(),
            Scheme::Spin if self.rules == Rules::SpinB => (1..=len).map(|a| n + 2 - 2 * a).collect(),
            Scheme::Spin | Scheme::DaggerTop => (1..=len).map(|a| n + 1 - 2 * a).collect(),
            Scheme::OddTop => (1..=len).map(|a| n + 1 - 4 * k - 2 * a).collect(),
        };
        let mut m = self.table.product(&x.entries, &grades)?;
        m = m.mul(&self.prefactor(j, x.k)?);
        Ok(m.tau(turns * self.shift()))
    }

    /// Grades of `M_{j,0}` box by box, for the paired scheme.
    fn paired_grades(&self, j: i32) -> Vec<i32> {
        let n = self.ty.n as i32;
        let l = self.ell as i32;
        let top = if self.ty.family == Family::D1 { 2 * n - l - 3 } else { 2 * n - l - 1 };
        (1..=l).map(|c| if c <= j { top - 2 * c + 2 * j } else { l - 2 * c + 2 * j + 1 }).collect()
    }

    /// The factor outside the boxes of `T`.
    fn prefactor(&self, j: i32, k: usize) -> Result<Monomial, TableauError> {
        let n = self.ty.n as i32;
        let l = self.ell as i32;
        let ki = k as i32;
        match self.scheme {
            // k pairs (1, -1) peeled off the front of M_{j,0}; the bar box
            // sits where the 1 would cancel its Y_1.
            Scheme::Paired => {
                let g = self.paired_grades(j);
                let s = if self.ty.family == Family::D1 { 4 - 2 * n } else { 2 - 2 * n };
                let mut m = Monomial::one();
                for t in 0..k {
                    m = m.mul(&self.one(Num(1), g[2 * t])?).mul(&self.one(Bar(1), g[2 * t + 1] + s)?);
                }
                Ok(m)
            }
            Scheme::OddTop => Ok(mono(&[(0, n - 1, -1), (0, n + 1 - 4 * ki, 1)])),
            Scheme::Ladder if ki <= l - j - 1 => Ok(mono(&[(0, l - 2 * j, -1), (0, l - 2 * j - 2 * ki, 1)])),
            Scheme::Ladder => Ok(mono(&[
                (0, l - 2 * j, -1),
                (0, -l, 1),
                (0, l - 2 * n, -1),
                (0, 3 * l - 2 * n - 2 * j - 2 * ki, 1),
            ])),
            _ => Ok(Monomial::one()),
        }
    }

    /// `f_0` or `e_0` through the monomial: the image is looked up among
    /// the elements.
    pub fn by_monomial(&self, x: &Indexed, raise: bool) -> Option<Indexed> {
        let m = self.monomial(x).ok()?;
        let mat = self.table.matrix();
        let image = if raise { m.raise(mat, 0) } else { m.lower(mat, 0) }?;
        self.locate(&image)
    }

    /// `f_0` (or `e_0` when `raise`) by the closed formulas. For the odd
    /// twisted top, steps between `k = 0` and `k = 1` may collapse pairs;
    /// those go through [`Realization::by_monomial`].
    pub fn affine_op(&self, x: &Indexed, raise: bool) -> Option<Indexed> {
        let y = self.formula_op(x, raise);
        match y {
            Some(y) if self.scheme == Scheme::OddTop && !self.is_element(&y) => self.by_monomial(x, raise),
            y => y,
        }
    }

    fn formula_op(&self, x: &Indexed, raise: bool) -> Option<Indexed> {
        let n = self.ty.n;
        let al = self.rules.alphabet(n);
        let e = &x.entries;
        let (j, k) = (x.j, x.k);
        let len = e.len();
        let is = |a: usize, s: Symbol| x.at(a) == Some(s);
        let not_le = |a: usize, s: Symbol| x.at(a).is_none_or(|v| !al.preceq(v, s));
        let not_ge = |a: usize, s: Symbol| x.at(a).is_none_or(|v| !al.succeq(v, s));
        let le = |a: usize, s: Symbol| x.at(a).is_some_and(|v| al.preceq(v, s));
        let ge = |a: usize, s: Symbol| x.at(a).is_some_and(|v| al.succeq(v, s));
        let cat = |pre: &[Symbol], mid: &[Symbol], post: &[Symbol]| -> Vec<Symbol> {
            pre.iter().chain(mid).chain(post).copied().collect()
        };
        let (one, two, bar1, bar2) = (Num(1), Num(2), Bar(1), Bar(2));
        let out = |v: Vec<Symbol>, j: i32, k: usize| Some(Indexed::new(v, j, k));
        match (self.scheme, raise) {
            (Scheme::Row, true) if is(1, one) && !is(len, Num(n as u16 + 1)) => {
                out(cat(&e[1..], &[Num(n as u16 + 1)], &[]), j - 1, k)
            }
            (Scheme::Row, false) if !is(1, one) && is(len, Num(n as u16 + 1)) => {
                out(cat(&[one], &e[..len - 1], &[]), j + 1, k)
            }
            (Scheme::Vector, true) => match e[0] {
                Num(1) => out(vec![bar2], j - 1, k),
                Num(2) => out(vec![bar1], j - 1, k),
                _ => None,
            },
            (Scheme::Vector, false) => match e[0] {
                Bar(2) => out(vec![one], j + 1, k),
                Bar(1) => out(vec![two], j + 1, k),
                _ => None,
            },
            (Scheme::Paired | Scheme::OddTop, _) => {
                // the odd twisted top counts tau_2 in j: the paired moves
                // j -> j-2, j -> j-1 become tau_{-4}, tau_{-2}
                let l = len;
                if raise {
                    if is(2, two) && not_ge(l.wrapping_sub(1), bar2) {
                        out(e[2..].to_vec(), j, k + 1)
                    } else if not_le(2, two) && not_ge(l, bar2) && k > 0 {
                        out(cat(e, &[bar2, bar1], &[]), j - 2, k - 1)
                    } else if k == 0 && le(1, two) && not_le(2, two) && not_ge(l, bar2) {
                        if self.scheme == Scheme::OddTop {
                            return self.by_monomial(x, raise);
                        }
                        let s = match e[0] {
                            Num(1) => bar2,
                            _ => bar1,
                        };
                        out(cat(&e[1..], &[s], &[]), j - 1, 0)
                    } else {
                        None
                    }
                } else if not_le(1, two) && not_ge(l.wrapping_sub(1), bar2) && k > 0 {
                    out(cat(&[one, two], e, &[]), j, k - 1)
                } else if l >= 2 && is(l - 1, bar2) && not_le(2, two) {
                    out(e[..l - 2].to_vec(), j + 2, k + 1)
                } else if k == 0 && not_le(1, two) && not_ge(l.wrapping_sub(1), bar2) && ge(l, bar2) {
                    if self.scheme == Scheme::OddTop {
                        return self.by_monomial(x, raise);
                    }
                    let s = match e[l - 1] {
                        Bar(2) => one,
                        _ => two,
                    };
                    out(cat(&[s], &e[..l - 1], &[]), j + 1, 0)
                } else {
                    None
                }
            }
            (Scheme::Single, true) if is(1, one) && !is(len, bar1) => out(cat(&e[1..], &[bar1], &[]), j + 1, k),
            (Scheme::Single, false) if !is(1, one) && is(len, bar1) => out(cat(&[one], &e[..len - 1], &[]), j - 1, k),
            (Scheme::Ladder, true) => {
                if is(1, one) && !is(len, bar1) {
                    out(e[1..].to_vec(), j, k + 1)
                } else if !is(1, one) && !is(len, bar1) && k > 0 {
                    out(cat(e, &[bar1], &[]), j + 1, k - 1)
                } else {
                    None
                }
            }
            (Scheme::Ladder, false) => {
                if !is(1, one) && is(len, bar1) {
                    out(e[..len - 1].to_vec(), j - 1, k + 1)
                } else if !is(1, one) && !is(len, bar1) && k > 0 {
                    out(cat(&[one], e, &[]), j, k - 1)
                } else {
                    None
                }
            }
            (Scheme::Spin, _) if self.ty.family == Family::D2 => {
                if raise && is(1, one) {
                    out(cat(&e[1..], &[bar1], &[]), j - 1, k)
                } else if !raise && is(len, bar1) {
                    out(cat(&[one], &e[..len - 1], &[]), j + 1, k)
                } else {
                    None
                }
            }
            (Scheme::Spin, true) if is(2, two) => out(cat(&e[2..], &[bar2, bar1], &[]), j - 1, k),
            (Scheme::Spin, false) if len >= 2 && is(len - 1, bar2) => {
                out(cat(&[one, two], &e[..len - 2], &[]), j + 1, k)
            }
            (Scheme::DaggerTop, true) if is(1, one) && !is(len, bar1) => {
                out(cat(&e[1..], &[bar1], &[]), j - 1, k)
            }
            (Scheme::DaggerTop, false) if !is(1, one) && is(len, bar1) => {
                out(cat(&[one], &e[..len - 1], &[]), j + 1, k)
            }
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{oracle_bijection, oracle_realization};

    fn ty(s: &str) -> AffineType {
        s.parse().unwrap()
    }

    fn m(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    fn syms(s: &str) -> Vec<Symbol> {
        parse_list(s).unwrap()
    }

    #[test]
    fn text_round_trip() {
        for s in ["((1,2),(3,-1)) r=1", "((),(2,-3)) r=0", "((1,0,0),()) r=2"] {
            let t: Tableau = s.parse().unwrap();
            assert_eq!(t.to_string(), s);
        }
        let x: Indexed = "(1,-2);j=-3,k=1".parse().unwrap();
        assert_eq!(x, Indexed::new(vec![Num(1), Bar(2)], -3, 1));
        assert_eq!(x.to_string().parse::<Indexed>().unwrap(), x);
        assert!("((1,2)".parse::<Tableau>().is_err());
    }

    #[test]
    fn fork_order() {
        let al = Alphabet::new(Shape::Fork, 5);
        assert!(!al.precedes(Num(5), Bar(5)) && !al.precedes(Bar(5), Num(5)));
        assert!(al.precedes(Num(4), Bar(5)) && al.precedes(Bar(5), Bar(4)));
        assert_eq!(al.symbols().len(), 10);
    }

    #[test]
    fn unknown_symbol() {
        let t = BoxTable::new(ty("C1~3"), false).unwrap();
        assert!(matches!(t.entry(Zero, 0), Err(TableauError::UnknownSymbol { .. })));
        assert!(t.entry(Bar(4), 0).is_err());
    }

    #[test]
    fn jump_monomial_forgetting_y0() {
        // n = 6, l = 4, h = 1, r = 1
        let table = BoxTable::new(ty("D1~6"), false).unwrap();
        let t: Tableau = "((1),(2,3,-1)) r=1".parse().unwrap();
        let got = monomial_of_tableau(&table, &t).unwrap().project_i0();
        assert_eq!(got, m("1_3 1_5^-1 1_1^-1 3_-1"));
    }

    #[test]
    fn nested_pair_relation() {
        let table = BoxTable::new(ty("D1~7"), false).unwrap();
        let g = [4, 2, 0, -2, -4];
        let a = table.product(&syms("2,3,4,-3,-2"), &g).unwrap();
        let b = table.product(&syms("4,5,6,-6,-5"), &g).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn highest_jump_monomials() {
        for n in 4..=7 {
            let table = BoxTable::new(AffineType::new(Family::D1, n).unwrap(), false).unwrap();
            for ell in 1..=n - 2 {
                for r in 0..=n - ell - 1 {
                    for h in 1..=ell {
                        let got = monomial_of_tableau(&table, &Tableau::highest(ell, h, r)).unwrap().project_i0();
                        let (l, hi, ri) = (ell as i32, h as i32, r as i32);
                        let want = Monomial::from_terms([(h, l - hi, 1), (h, l - hi - 2 * ri, -1), (ell, -2 * ri, 1)]);
                        assert_eq!(got, want.project_i0(), "n={n} l={ell} h={h} r={r}");
                    }
                }
            }
        }
    }

    #[test]
    fn violations_name_the_clause() {
        // (3, -3) three apart inside the left column of D_6
        let t: Tableau = "((3,4,-3),(-1)) r=0".parse().unwrap();
        let v = check_admissible(Rules::D, 6, &t).unwrap_err();
        assert_eq!(v.clause, "D.2");
        assert_eq!(v.positions, vec![1, 3]);
        let t: Tableau = "((2,1),()) r=0".parse().unwrap();
        assert_eq!(check_admissible(Rules::C, 3, &t).unwrap_err().clause, "C.1");
        let t: Tableau = "((0,0),()) r=0".parse().unwrap();
        assert!(check_admissible(Rules::B, 3, &t).is_ok());
        assert!(check_admissible(Rules::C, 3, &t).is_err());
    }

    #[test]
    fn column_counts_match_dimensions() {
        // dimensions of fundamental representations: exterior powers
        // minus lower ones for C, plain exterior powers for B and D
        let binom = |n: usize, k: usize| (0..k).fold(1usize, |a, i| a * (n - i) / (i + 1));
        for n in 4..=6 {
            for ell in 1..=n - 2 {
                assert_eq!(enumerate_tableaux(Rules::D, n, ell, 0, 0).len(), binom(2 * n, ell));
            }
        }
        for n in 3..=5 {
            for ell in 1..n {
                assert_eq!(enumerate_tableaux(Rules::B, n, ell, 0, 0).len(), binom(2 * n + 1, ell));
            }
            for ell in 1..=n {
                let lower = if ell >= 2 { binom(2 * n, ell - 2) } else { 0 };
                assert_eq!(enumerate_tableaux(Rules::C, n, ell, 0, 0).len(), binom(2 * n, ell) - lower);
            }
        }
        assert_eq!(enumerate_tableaux(Rules::SpinD { plus: true }, 6, 6, 0, 0).len(), 32);
        assert_eq!(enumerate_tableaux(Rules::SpinB, 4, 5, 0, 0).len(), 16);
    }

    #[test]
    fn small_grid_matches_bfs() {
        for (name, rules, lmax, rmax) in [("D1~4", Rules::D, 2, 2), ("B1~3", Rules::B, 2, 2), ("C1~3", Rules::C, 3, 2)] {
            let table = BoxTable::new(ty(name), false).unwrap();
            for ell in 1..=lmax {
                for r in 0..=(rmax + 1 - ell).min(rmax) {
                    for h in 0..=ell {
                        oracle_bijection(&table, rules, ell, h, r).unwrap_or_else(|e| panic!("{name} {ell} {h} {r}: {e}"));
                    }
                }
            }
        }
    }

    #[test]
    fn sigma_pairs_move_together() {
        let t: Tableau = "((2,3),(-3,-2)) r=1".parse().unwrap();
        let s = sigma(Rules::D, 7, &t);
        assert_eq!(s.to_string(), "((4,5),(-5,-4)) r=2");
        assert_eq!(sigma_prime(Rules::D, 7, &s), t);
    }

    #[test]
    fn sigma_and_tau_intertwine() {
        for (name, rules) in [("D1~6", Rules::D), ("B1~5", Rules::B), ("C1~5", Rules::C)] {
            let table = BoxTable::new(ty(name), false).unwrap();
            let n = table.ty.n;
            let (ell, h, r) = (3, 1, 1);
            for t in enumerate_tableaux(rules, n, ell, h, r) {
                let s = sigma(rules, n, &t);
                assert!(check_admissible(rules, n, &s).is_ok(), "{s}");
                assert_eq!(sigma_prime(rules, n, &s), t);
                let u = tau_lhr(rules, n, &t);
                assert!(check_admissible(rules, n, &u).is_ok(), "{u}");
                for k in 1..=n {
                    let f = |x: &Tableau| tableau_crystal_op(&table, x, k, false).unwrap();
                    assert_eq!(f(&t).map(|x| sigma(rules, n, &x)), f(&s));
                    assert_eq!(f(&t).map(|x| tau_lhr(rules, n, &x)), f(&u));
                }
            }
            assert_eq!(tau_lhr(rules, n, &Tableau::highest(ell, h, r)), Tableau::highest(ell, h + 1, r));
        }
    }

    #[test]
    fn raise_inverts_lower() {
        let table = BoxTable::new(ty("B1~4"), false).unwrap();
        for t in enumerate_tableaux(Rules::B, 4, 2, 1, 1) {
            for k in 1..=4 {
                if let Some(u) = tableau_crystal_op(&table, &t, k, false).unwrap() {
                    assert_eq!(tableau_crystal_op(&table, &u, k, true).unwrap(), Some(t.clone()));
                }
            }
        }
    }

    #[test]
    fn seeds_are_the_fundamental_monomials() {
        for (name, ell, want) in [
            ("A1~5", 2, "2_0 0_2^-1"),
            ("C1~3", 2, "2_0 0_2^-1"),
            ("D1~5", 1, "1_0 0_2^-1"),
            ("D1~5", 5, "5_0 0_3^-1"),
            ("D1~5", 4, "4_0 0_3^-1"),
            ("B1~4", 4, "4_0 0_3^-1"),
            ("D2~4", 3, "3_0 0_3^-1"),
            ("A2~5", 3, "3_0 0_2^-2"),
            ("A2~6", 2, "2_0 0_2^-2"),
            ("A2dag~4", 2, "2_0^2 0_2^-1"),
            ("A2dag~6", 1, "1_0 0_1^-1"),
                    ] {
            let rz = Realization::new(ty(name), ell).unwrap();
            assert_eq!(rz.seed().unwrap(), m(want), "{name} l={ell}");
        }
    }

    #[test]
    fn vector_zero_arrows() {
        // f_0 sends -2 to 1 and -1 to 2, shifted by 2n - 4
        let rz = Realization::new(ty("D1~5"), 1).unwrap();
        let table = BoxTable::new(ty("D1~5"), false).unwrap();
        let x = Indexed::new(vec![Bar(2)], 0, 0);
        let y = rz.affine_op(&x, false).unwrap();
        assert_eq!(rz.monomial(&y).unwrap(), table.entry(Num(1), 6).unwrap());
        let x = Indexed::new(vec![Bar(1)], 0, 0);
        let y = rz.affine_op(&x, false).unwrap();
        assert_eq!(rz.monomial(&y).unwrap(), table.entry(Num(2), 6).unwrap());
    }

    #[test]
    fn realizations_match_the_engine() {
        for (name, ell) in [
            ("A1~5", 2),
            ("D1~5", 2),
            ("D1~6", 3),
            ("D1~5", 4),
            ("B1~4", 3),
            ("B1~4", 4),
            ("C1~3", 2),
            ("C1~3", 3),
            ("A2~4", 2),
            ("A2~5", 3),
            ("A2~7", 2),
            ("A2dag~4", 2),
            ("A2dag~6", 3),
            ("D2~4", 2),
            ("D2~4", 3),
        ] {
            let rz = Realization::new(ty(name), ell).unwrap();
            oracle_realization(&rz).unwrap_or_else(|e| panic!("{name} l={ell}: {e}"));
        }
    }

    #[test]
    fn locate_recovers_shifted_elements() {
        let rz = Realization::new(ty("C1~3"), 2).unwrap();
        for x in rz.elements().into_iter().take(10) {
            for dj in [-5, -2, 0, 3] {
                let y = Indexed::new(x.entries.clone(), x.j + dj, x.k);
                assert_eq!(rz.locate(&rz.monomial(&y).unwrap()), Some(y));
            }
        }
    }

    #[test]
    fn unsupported_levels() {
        assert!(Realization::new(ty("A1~3"), 4).is_err());
        assert!(Realization::new(ty("A1~5"), 4).is_err());
        assert!(Realization::new(ty("E1~6"), 1).is_err());
    }
}
