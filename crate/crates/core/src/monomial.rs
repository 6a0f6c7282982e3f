//! Monomials in the variables `Y_{i,l}` and the Kashiwara operators on them.
//!
//! A monomial keeps a ledger `v` next to its exponents: `v_j` counts the
//! net number of `A_{j,*}^{-1}` factors applied since the seed, so that
//! `wt(m) = wt(seed) - sum_j v_j alpha_j`. Equality and hashing look at the
//! exponents only.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use thiserror::Error;

use crate::cartan::{CartanData, CartanMatrix, Parity};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonomialError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("grade {grade} has the wrong parity for node {node}")]
    Parity { node: usize, grade: i32 },
}

/// One factor `Y_{node,grade}^{exp}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub node: u16,
    pub grade: i32,
    pub exp: i32,
}

#[derive(Clone, Debug, Default)]
pub struct Monomial {
    terms: Vec<Term>,
    ledger: Vec<i32>,
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms.cmp(&other.terms)
    }
}

/// How a monomial's support sits against the parity coloring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Admissibility {
    Empty,
    Uniform(Parity),
    Mixed,
}

/// Seed-relative weight: `wt(m) = wt(seed) - sum_i c_i alpha_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDelta {
    pub c: Vec<i32>,
}

impl WeightDelta {
    /// `N` with `c = N a`, if there is one.
    pub fn delta_multiple(&self, marks: &[u32]) -> Option<i32> {
        let get = |i: usize| self.c.get(i).copied().unwrap_or(0);
        let a0 = marks[0] as i32;
        if get(0) % a0 != 0 {
            return None;
        }
        let n = get(0) / a0;
        (0..marks.len()).all(|i| get(i) == n * marks[i] as i32).then_some(n)
    }
}

impl Monomial {
    /// The empty monomial.
    pub fn one() -> Self {
        Monomial::default()
    }

    /// Builds a monomial from `(node, grade, exponent)` triples, merging repeats.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, i32, i32)>,
    {
        let mut m = Monomial::one();
        for (i, l, e) in terms {
            m.add_exp(i, l, e);
        }
        m
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_one(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn ledger(&self) -> &[i32] {
        &self.ledger
    }

    pub fn ledger_at(&self, j: usize) -> i32 {
        self.ledger.get(j).copied().unwrap_or(0)
    }

    /// Same exponents, ledger replaced.
    pub fn with_ledger(mut self, ledger: Vec<i32>) -> Self {
        self.ledger = ledger;
        self.trim_ledger();
        self
    }

    /// Same exponents, zero ledger.
    pub fn forget_ledger(mut self) -> Self {
        self.ledger.clear();
        self
    }

    fn trim_ledger(&mut self) {
        while self.ledger.last() == Some(&0) {
            self.ledger.pop();
        }
    }

    fn bump_ledger(&mut self, j: usize, by: i32) {
        if self.ledger.len() <= j {
            self.ledger.resize(j + 1, 0);
        }
        self.ledger[j] = self.ledger[j].checked_add(by).expect("ledger overflow");
        self.trim_ledger();
    }

    pub fn exponent(&self, i: usize, l: i32) -> i32 {
        let key = (i as u16, l);
        match self.terms.binary_search_by(|t| (t.node, t.grade).cmp(&key)) {
            Ok(k) => self.terms[k].exp,
            Err(_) => 0,
        }
    }

    fn add_exp(&mut self, i: usize, l: i32, e: i32) {
        if e == 0 {
            return;
        }
        let node = u16::try_from(i).expect("node index too large");
        let key = (node, l);
        match self.terms.binary_search_by(|t| (t.node, t.grade).cmp(&key)) {
            Ok(k) => {
                let v = self.terms[k].exp.checked_add(e).expect("exponent overflow");
                if v == 0 {
                    self.terms.remove(k);
                } else {
                    self.terms[k].exp = v;
                }
            }
            Err(k) => self.terms.insert(k, Term { node, grade: l, exp: e }),
        }
    }

    /// Product of exponent maps; ledgers add.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for t in &other.terms {
            out.add_exp(t.node as usize, t.grade, t.exp);
        }
        for (j, &v) in other.ledger.iter().enumerate() {
            if v != 0 {
                out.bump_ledger(j, v);
            }
        }
        out
    }

    /// Inverse exponent map; ledger negated.
    pub fn inverse(&self) -> Monomial {
        Monomial {
            terms: self.terms.iter().map(|t| Term { exp: -t.exp, ..*t }).collect(),
            ledger: self.ledger.iter().map(|v| -v).collect(),
        }
    }

    /// Multiplies by `A_{i,l}^k` and records `-k` in the ledger at `i`.
    pub fn mul_a(&self, c: &CartanMatrix, i: usize, l: i32, k: i32) -> Monomial {
        let mut out = self.clone();
        out.mul_a_in_place(c, i, l, k);
        out
    }

    fn mul_a_in_place(&mut self, c: &CartanMatrix, i: usize, l: i32, k: i32) {
        self.add_exp(i, l - 1, k);
        self.add_exp(i, l + 1, k);
        for &(j, cji) in c.column_neighbours(i) {
            self.add_exp(j, l, k * cji);
        }
        self.bump_ledger(i, -k);
    }

    /// Terms of node `i` in increasing grade.
    fn node_terms(&self, i: usize) -> &[Term] {
        let node = i as u16;
        let lo = self.terms.partition_point(|t| t.node < node);
        let hi = self.terms.partition_point(|t| t.node <= node);
        &self.terms[lo..hi]
    }

    /// `u_i(m) = sum_l u_{i,l}(m)`.
    pub fn u_total(&self, i: usize) -> i32 {
        self.node_terms(i).iter().map(|t| t.exp).sum()
    }

    /// `phi_i` together with `q_i` when `phi_i > 0`.
    fn phi_scan(&self, i: usize) -> (i32, Option<i32>) {
        let mut best = 0;
        let mut at = None;
        let mut sum = 0;
        for t in self.node_terms(i) {
            sum += t.exp;
            if sum > best {
                best = sum;
                at = Some(t.grade);
            }
        }
        (best, at)
    }

    /// `eps_i` together with `p_i` when `eps_i > 0`.
    fn eps_scan(&self, i: usize) -> (i32, Option<i32>) {
        let mut best = 0;
        let mut at = None;
        let mut sum = 0;
        for t in self.node_terms(i).iter().rev() {
            sum -= t.exp;
            if sum > best {
                best = sum;
                at = Some(t.grade);
            }
        }
        (best, at)
    }

    pub fn phi(&self, i: usize) -> i32 {
        self.phi_scan(i).0
    }

    pub fn eps(&self, i: usize) -> i32 {
        self.eps_scan(i).0
    }

    /// `p_i = max{L : eps_{i,L} = eps_i}`, defined when `eps_i > 0`.
    pub fn p(&self, i: usize) -> Option<i32> {
        self.eps_scan(i).1
    }

    /// `q_i = min{L : phi_{i,L} = phi_i}`, defined when `phi_i > 0`.
    pub fn q(&self, i: usize) -> Option<i32> {
        self.phi_scan(i).1
    }

    /// `f_i`: multiply by `A_{i,q_i+1}^{-1}`, or `None` when `phi_i = 0`.
    pub fn lower(&self, c: &CartanMatrix, i: usize) -> Option<Monomial> {
        let q = self.q(i)?;
        Some(self.mul_a(c, i, q + 1, -1))
    }

    /// `e_i`: multiply by `A_{i,p_i-1}`, or `None` when `eps_i = 0`.
    pub fn raise(&self, c: &CartanMatrix, i: usize) -> Option<Monomial> {
        let p = self.p(i)?;
        Some(self.mul_a(c, i, p - 1, 1))
    }

    /// Applies `e_i` (`raise = true`) or `f_i` up to `k` times.
    pub fn apply_n(&self, c: &CartanMatrix, i: usize, raise: bool, k: usize) -> Option<Monomial> {
        let mut m = self.clone();
        for _ in 0..k {
            m = if raise { m.raise(c, i)? } else { m.lower(c, i)? };
        }
        Some(m)
    }

    /// Runs a word of operators given as `(node, raise)` from right to left,
    /// as in the usual composition notation.
    pub fn apply_word(&self, c: &CartanMatrix, word: &[(usize, bool)]) -> Option<Monomial> {
        let mut m = self.clone();
        for &(i, raise) in word.iter().rev() {
            m = if raise { m.raise(c, i)? } else { m.lower(c, i)? };
        }
        Some(m)
    }

    pub fn weight_delta(&self) -> WeightDelta {
        WeightDelta { c: self.ledger.clone() }
    }

    /// `N` with ledger `= N a`, if any.
    pub fn delta_multiple(&self, c: &CartanData) -> Option<i32> {
        self.weight_delta().delta_multiple(&c.marks)
    }

    /// `tau_{k}`: every grade moves by `k`; the ledger is kept.
    pub fn tau(&self, k: i32) -> Monomial {
        Monomial {
            terms: self.terms.iter().map(|t| Term { grade: t.grade + k, ..*t }).collect(),
            ledger: self.ledger.clone(),
        }
    }

    /// Drops all `Y_{0,*}` factors.
    pub fn project_i0(&self) -> Monomial {
        Monomial {
            terms: self.terms.iter().filter(|t| t.node != 0).copied().collect(),
            ledger: self.ledger.clone(),
        }
    }

    /// Drops every factor whose node is not in `keep`.
    pub fn restrict(&self, keep: &[usize]) -> Monomial {
        Monomial {
            terms: self
                .terms
                .iter()
                .filter(|t| keep.contains(&(t.node as usize)))
                .copied()
                .collect(),
            ledger: self.ledger.clone(),
        }
    }

    pub fn min_grade(&self) -> Option<i32> {
        self.terms.iter().map(|t| t.grade).min()
    }

    pub fn max_grade(&self) -> Option<i32> {
        self.terms.iter().map(|t| t.grade).max()
    }

    pub fn is_dominant(&self) -> bool {
        self.terms.iter().all(|t| t.exp > 0)
    }

    pub fn admissibility(&self, s: &[u8]) -> Admissibility {
        let mut found: Option<Parity> = None;
        for t in &self.terms {
            let here = if (t.grade - s[t.node as usize] as i32).rem_euclid(2) == 0 {
                Parity::Canonical
            } else {
                Parity::Flipped
            };
            match found {
                None => found = Some(here),
                Some(p) if p != here => return Admissibility::Mixed,
                _ => {}
            }
        }
        match found {
            None => Admissibility::Empty,
            Some(p) => Admissibility::Uniform(p),
        }
    }

    pub fn is_admissible(&self, s: &[u8]) -> bool {
        self.admissibility(s) != Admissibility::Mixed
    }

    /// Largest node index present, if any.
    pub fn max_node(&self) -> Option<usize> {
        self.terms.last().map(|t| t.node as usize)
    }
}

/// `A_{i,l}` as a monomial, for the coloring `parity`.
pub fn a_multiplier(c: &CartanData, i: usize, l: i32, parity: Parity) -> Result<Monomial, MonomialError> {
    if (l - parity.of_node(&c.s, i)).rem_euclid(2) != 1 {
        return Err(MonomialError::Parity { node: i, grade: l });
    }
    Ok(Monomial::one().mul_a(c.matrix(), i, l, 1).forget_ledger())
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}_{}", t.node, t.grade)?;
            if t.exp != 1 {
                write!(f, "^{}", t.exp)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Monomial {
    type Err = MonomialError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut m = Monomial::one();
        let bytes = s.as_bytes();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let int = |pos: &mut usize, what: &str| -> Result<i64, MonomialError> {
            let start = *pos;
            if *pos < bytes.len() && (bytes[*pos] == b'-' || bytes[*pos] == b'+') {
                *pos += 1;
            }
            let digits = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            if *pos == digits {
                return Err(MonomialError::Syntax { pos: start, msg: format!("expected {what}") });
            }
            s[start..*pos].parse::<i64>().map_err(|e| MonomialError::Syntax {
                pos: start,
                msg: format!("{what}: {e}"),
            })
        };
        skip_ws(&mut pos);
        while pos < bytes.len() {
            let start = pos;
            let node = int(&mut pos, "node index")?;
            if node < 0 || node > u16::MAX as i64 {
                return Err(MonomialError::Syntax { pos: start, msg: "node index out of range".into() });
            }
            if pos >= bytes.len() || bytes[pos] != b'_' {
                return Err(MonomialError::Syntax { pos, msg: "expected '_'".into() });
            }
            pos += 1;
            let grade = int(&mut pos, "grade")?;
            let mut exp = 1;
            if pos < bytes.len() && bytes[pos] == b'^' {
                pos += 1;
                exp = int(&mut pos, "exponent")?;
            }
            let narrow = |x: i64, at: usize| {
                i32::try_from(x).map_err(|_| MonomialError::Syntax { pos: at, msg: "integer out of range".into() })
            };
            m.add_exp(node as usize, narrow(grade, start)?, narrow(exp, start)?);
            if pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
                return Err(MonomialError::Syntax { pos, msg: "expected whitespace".into() });
            }
            skip_ws(&mut pos);
        }
        Ok(m)
    }
}
