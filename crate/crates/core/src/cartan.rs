//! Affine Cartan data, parity colorings, shifts and fundamental seeds.
//!
//! Nodes are numbered `0..=n` with `0` the affine node. The generalized
//! Cartan matrix is stored as `C[i][j] = <h_i, alpha_j>`, so the multiplier
//! `A_{i,l}` picks up `Y_{j,l}^{C[j][i]}` from every neighbour `j` of `i`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::monomial::Monomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CartanError {
    #[error("unsupported type: {0}")]
    UnsupportedType(String),
    #[error("Dynkin graph has an odd cycle")]
    OddCycle,
    #[error("invalid shift: {0}")]
    InvalidPhi(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
}

/// Affine families, with the rank `n` carried separately in [`AffineType`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A1,
    B1,
    C1,
    D1,
    /// `A^(2)_{2n}`
    A2Even,
    /// `A^(2)_{2n}` with the reversed numbering `i -> n - i`.
    A2EvenDagger,
    /// `A^(2)_{2n-1}`
    A2Odd,
    /// `D^(2)_{n+1}`
    D2,
    E6,
    E7,
    E8,
    F4,
    G2,
    /// `E^(2)_6`
    E6Twisted,
    /// `D^(3)_4`
    D4Twisted,
}

/// An affine type. `n` is always the number of non-affine nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineType {
    pub family: Family,
    pub n: usize,
}

impl AffineType {
    pub fn new(family: Family, n: usize) -> Result<Self, CartanError> {
        let ok = match family {
            Family::A1 => n >= 1,
            Family::B1 => n >= 3,
            Family::C1 => n >= 2,
            Family::D1 => n >= 4,
            Family::A2Even | Family::A2EvenDagger => n >= 1,
            Family::A2Odd => n >= 3,
            Family::D2 => n >= 2,
            Family::E6 => n == 6,
            Family::E7 => n == 7,
            Family::E8 => n == 8,
            Family::F4 => n == 4,
            Family::G2 => n == 2,
            Family::E6Twisted => n == 4,
            Family::D4Twisted => n == 2,
        };
        if !ok {
            return Err(CartanError::UnsupportedType(format!("{family:?} with n = {n}")));
        }
        if family == Family::A1 && n % 2 == 0 {
            return Err(CartanError::UnsupportedType(format!(
                "A1~{n}: the Dynkin diagram is an odd cycle"
            )));
        }
        Ok(AffineType { family, n })
    }

    pub fn is_untwisted(&self) -> bool {
        matches!(
            self.family,
            Family::A1
                | Family::B1
                | Family::C1
                | Family::D1
                | Family::E6
                | Family::E7
                | Family::E8
                | Family::F4
                | Family::G2
        )
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        match self.family {
            Family::A1 => write!(f, "A1~{n}"),
            Family::B1 => write!(f, "B1~{n}"),
            Family::C1 => write!(f, "C1~{n}"),
            Family::D1 => write!(f, "D1~{n}"),
            Family::A2Even => write!(f, "A2~{}", 2 * n),
            Family::A2EvenDagger => write!(f, "A2dag~{}", 2 * n),
            Family::A2Odd => write!(f, "A2~{}", 2 * n - 1),
            Family::D2 => write!(f, "D2~{}", n + 1),
            Family::E6 => f.write_str("E1~6"),
            Family::E7 => f.write_str("E1~7"),
            Family::E8 => f.write_str("E1~8"),
            Family::F4 => f.write_str("F1~4"),
            Family::G2 => f.write_str("G1~2"),
            Family::E6Twisted => f.write_str("E2~6"),
            Family::D4Twisted => f.write_str("D3~4"),
        }
    }
}

impl FromStr for AffineType {
    type Err = CartanError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CartanError::UnsupportedType(s.to_string());
        let (head, num) = s.trim().split_once('~').ok_or_else(bad)?;
        let k: usize = num.parse().map_err(|_| bad())?;
        let (family, n) = match head {
            "A1" => (Family::A1, k),
            "B1" => (Family::B1, k),
            "C1" => (Family::C1, k),
            "D1" => (Family::D1, k),
            "A2" if k % 2 == 0 => (Family::A2Even, k / 2),
            "A2" => (Family::A2Odd, (k + 1) / 2),
            "A2dag" if k % 2 == 0 => (Family::A2EvenDagger, k / 2),
            "D2" if k >= 3 => (Family::D2, k - 1),
            "E1" => match k {
                6 => (Family::E6, 6),
                7 => (Family::E7, 7),
                8 => (Family::E8, 8),
                _ => return Err(bad()),
            },
            "F1" if k == 4 => (Family::F4, 4),
            "G1" if k == 2 => (Family::G2, 2),
            "E2" if k == 6 => (Family::E6Twisted, 4),
            "D3" if k == 4 => (Family::D4Twisted, 2),
            _ => return Err(bad()),
        };
        AffineType::new(family, n)
    }
}

/// Finite types, numbered as the `I_0` part of the matching untwisted
/// affine type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FiniteType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl FiniteType {
    pub fn rank(&self) -> usize {
        match *self {
            FiniteType::A(n) | FiniteType::B(n) | FiniteType::C(n) | FiniteType::D(n) => n,
            FiniteType::E6 => 6,
            FiniteType::E7 => 7,
            FiniteType::E8 => 8,
            FiniteType::F4 => 4,
            FiniteType::G2 => 2,
        }
    }

    /// Cartan matrix on nodes `0..=rank`, with node `0` isolated so that
    /// the finite nodes keep their usual labels `1..=rank`.
    pub fn cartan_matrix(&self) -> CartanMatrix {
        let n = self.rank();
        let mut b = Builder::new(n);
        match *self {
            FiniteType::A(_) => b.chain(1, n),
            FiniteType::B(_) => {
                b.chain(1, n - 1);
                b.edge(n - 1, n, -1, -2);
            }
            FiniteType::C(_) => {
                b.chain(1, n - 1);
                b.edge(n - 1, n, -2, -1);
            }
            FiniteType::D(_) => {
                b.chain(1, n - 1);
                b.edge(n - 2, n, -1, -1);
            }
            FiniteType::E6 => {
                b.chain(1, 5);
                b.edge(3, 6, -1, -1);
            }
            FiniteType::E7 => {
                b.chain(1, 6);
                b.edge(3, 7, -1, -1);
            }
            FiniteType::E8 => {
                b.chain(1, 7);
                b.edge(5, 8, -1, -1);
            }
            FiniteType::F4 => {
                b.edge(1, 2, -1, -1);
                b.edge(2, 3, -1, -2);
                b.edge(3, 4, -1, -1);
            }
            FiniteType::G2 => b.edge(1, 2, -1, -3),
        }
        CartanMatrix::new(b.c)
    }
}

impl FromStr for FiniteType {
    type Err = CartanError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CartanError::UnsupportedType(s.to_string());
        let s = s.trim();
        let (head, tail) = s.split_at(1);
        let n: usize = tail.parse().map_err(|_| bad())?;
        let ft = match (head, n) {
            ("A", n) if n >= 1 => FiniteType::A(n),
            ("B", n) if n >= 2 => FiniteType::B(n),
            ("C", n) if n >= 2 => FiniteType::C(n),
            ("D", n) if n >= 4 => FiniteType::D(n),
            ("E", 6) => FiniteType::E6,
            ("E", 7) => FiniteType::E7,
            ("E", 8) => FiniteType::E8,
            ("F", 4) => FiniteType::F4,
            ("G", 2) => FiniteType::G2,
            _ => return Err(bad()),
        };
        Ok(ft)
    }
}

/// A generalized Cartan matrix with cached neighbour lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanMatrix {
    c: Vec<Vec<i32>>,
    /// For each `i`: the pairs `(j, C[j][i])` with `j != i` and a nonzero entry.
    column_neighbours: Vec<Vec<(usize, i32)>>,
}

impl CartanMatrix {
    pub fn new(c: Vec<Vec<i32>>) -> Self {
        let size = c.len();
        let column_neighbours = (0..size)
            .map(|i| {
                (0..size)
                    .filter(|&j| j != i && c[j][i] != 0)
                    .map(|j| (j, c[j][i]))
                    .collect()
            })
            .collect();
        CartanMatrix { c, column_neighbours }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.c.len()
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> i32 {
        self.c[i][j]
    }

    pub fn rows(&self) -> &[Vec<i32>] {
        &self.c
    }

    #[inline]
    pub fn column_neighbours(&self, i: usize) -> &[(usize, i32)] {
        &self.column_neighbours[i]
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.c[i][j] != 0
    }

    pub fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.column_neighbours[i].iter().map(|&(j, _)| j)
    }
}

struct Builder {
    c: Vec<Vec<i32>>,
}

impl Builder {
    fn new(n: usize) -> Self {
        let mut c = vec![vec![0; n + 1]; n + 1];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        Builder { c }
    }

    /// Sets `C[i][j] = cij` and `C[j][i] = cji`.
    fn edge(&mut self, i: usize, j: usize, cij: i32, cji: i32) {
        self.c[i][j] = cij;
        self.c[j][i] = cji;
    }

    fn chain(&mut self, from: usize, to: usize) {
        for i in from..to {
            self.edge(i, i + 1, -1, -1);
        }
    }
}

fn affine_matrix(ty: AffineType) -> Vec<Vec<i32>> {
    let n = ty.n;
    let mut b = Builder::new(n);
    match ty.family {
        Family::A1 => {
            if n == 1 {
                b.edge(0, 1, -2, -2);
            } else {
                b.chain(0, n);
                b.edge(n, 0, -1, -1);
            }
        }
        Family::B1 => {
            b.edge(0, 2, -1, -1);
            b.chain(1, n - 1);
            b.edge(n - 1, n, -1, -2);
        }
        Family::C1 => {
            b.edge(0, 1, -1, -2);
            b.chain(1, n - 1);
            b.edge(n - 1, n, -2, -1);
        }
        Family::D1 => {
            b.edge(0, 2, -1, -1);
            b.chain(1, n - 1);
            b.edge(n - 2, n, -1, -1);
        }
        Family::A2Even => {
            if n == 1 {
                b.edge(0, 1, -4, -1);
            } else {
                b.edge(0, 1, -2, -1);
                b.chain(1, n - 1);
                b.edge(n - 1, n, -2, -1);
            }
        }
        Family::A2EvenDagger => {
            let base = affine_matrix(AffineType { family: Family::A2Even, n });
            for i in 0..=n {
                for j in 0..=n {
                    b.c[i][j] = base[n - i][n - j];
                }
            }
        }
        Family::A2Odd => {
            b.edge(0, 2, -1, -1);
            b.chain(1, n - 1);
            b.edge(n - 1, n, -2, -1);
        }
        Family::D2 => {
            b.edge(0, 1, -2, -1);
            b.chain(1, n - 1);
            b.edge(n - 1, n, -1, -2);
        }
        Family::E6 => {
            b.chain(1, 5);
            b.edge(3, 6, -1, -1);
            b.edge(6, 0, -1, -1);
        }
        Family::E7 => {
            b.chain(0, 6);
            b.edge(3, 7, -1, -1);
        }
        Family::E8 => {
            b.chain(0, 7);
            b.edge(5, 8, -1, -1);
        }
        Family::F4 => {
            b.chain(0, 2);
            b.edge(2, 3, -1, -2);
            b.edge(3, 4, -1, -1);
        }
        Family::G2 => {
            b.edge(0, 1, -1, -1);
            b.edge(1, 2, -1, -3);
        }
        Family::E6Twisted => {
            b.chain(0, 2);
            b.edge(2, 3, -2, -1);
            b.edge(3, 4, -1, -1);
        }
        Family::D4Twisted => {
            b.edge(0, 1, -1, -1);
            b.edge(1, 2, -3, -1);
        }
    }
    b.c
}

/// Primitive positive integer vector `v` with `sum_j m[i][j] v[j] = 0`.
fn primitive_null_vector(m: &[Vec<i32>]) -> Option<Vec<u32>> {
    let size = m.len();
    let mut a: Vec<Vec<Ratio<i64>>> = m
        .iter()
        .map(|row| row.iter().map(|&x| Ratio::from_integer(x as i64)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..size {
        let Some(p) = (row..size).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = Ratio::one() / a[row][col];
        for x in a[row].iter_mut() {
            *x *= inv;
        }
        for r in 0..size {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col];
                for k in 0..size {
                    let t = a[row][k] * f;
                    a[r][k] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..size).filter(|c| !pivots.contains(c)).collect();
    if free.len() != 1 {
        return None;
    }
    let f = free[0];
    let mut v = vec![Ratio::<i64>::zero(); size];
    v[f] = Ratio::one();
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = -a[r][f];
    }
    let lcm = v.iter().fold(1i64, |acc, x| num_integer_lcm(acc, *x.denom()));
    let ints: Vec<i64> = v.iter().map(|x| (x * lcm).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, &x| gcd(acc, x.abs()));
    let sign = if ints.iter().any(|&x| x < 0) { -1 } else { 1 };
    let out: Vec<i64> = ints.iter().map(|&x| sign * x / g).collect();
    if out.iter().any(|&x| x <= 0) {
        return None;
    }
    Some(out.into_iter().map(|x| x as u32).collect())
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn num_integer_lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

/// BFS 2-coloring with `s[root] = 0` for every connected component.
pub fn two_coloring(m: &CartanMatrix) -> Result<Vec<u8>, CartanError> {
    let size = m.size();
    let mut s: Vec<Option<u8>> = vec![None; size];
    for root in 0..size {
        if s[root].is_some() {
            continue;
        }
        s[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let si = s[i].unwrap_or(0);
            for j in m.neighbours(i) {
                match s[j] {
                    None => {
                        s[j] = Some(1 - si);
                        queue.push_back(j);
                    }
                    Some(sj) if sj == si => return Err(CartanError::OddCycle),
                    Some(_) => {}
                }
            }
        }
    }
    Ok(s.into_iter().map(|x| x.unwrap_or(0)).collect())
}

fn distances(m: &CartanMatrix, from: usize) -> Vec<u32> {
    let mut d = vec![u32::MAX; m.size()];
    d[from] = 0;
    let mut queue = VecDeque::from([from]);
    while let Some(i) = queue.pop_front() {
        for j in m.neighbours(i) {
            if d[j] == u32::MAX {
                d[j] = d[i] + 1;
                queue.push_back(j);
            }
        }
    }
    d
}

/// Cartan data of an affine type.
#[derive(Clone, Debug)]
pub struct CartanData {
    pub ty: AffineType,
    matrix: CartanMatrix,
    /// Marks: `delta = sum a_i alpha_i`.
    pub marks: Vec<u32>,
    /// Comarks: `c = sum a_i^vee h_i`.
    pub comarks: Vec<u32>,
    /// Canonical parity coloring with `s_0 = 0`.
    pub s: Vec<u8>,
    /// Graph distance to node `0`.
    pub theta: Vec<u32>,
    /// Symmetrizer: `r_i C[i][j] = r_j C[j][i]`.
    pub symmetrizer: Vec<u32>,
}

impl CartanData {
    pub fn new(ty: AffineType) -> Result<Self, CartanError> {
        let ty = AffineType::new(ty.family, ty.n)?;
        let matrix = CartanMatrix::new(affine_matrix(ty));
        let s = two_coloring(&matrix).map_err(|_| CartanError::UnsupportedType(ty.to_string()))?;
        let marks = primitive_null_vector(matrix.rows())
            .ok_or_else(|| CartanError::UnsupportedType(ty.to_string()))?;
        let transposed: Vec<Vec<i32>> = (0..matrix.size())
            .map(|i| (0..matrix.size()).map(|j| matrix.entry(j, i)).collect())
            .collect();
        let comarks = primitive_null_vector(&transposed)
            .ok_or_else(|| CartanError::UnsupportedType(ty.to_string()))?;
        let theta = distances(&matrix, 0);
        let symmetrizer = symmetrizer(&matrix);
        Ok(CartanData { ty, matrix, marks, comarks, s, theta, symmetrizer })
    }

    pub fn parse(ty: &str) -> Result<Self, CartanError> {
        CartanData::new(ty.parse()?)
    }

    #[inline]
    pub fn matrix(&self) -> &CartanMatrix {
        &self.matrix
    }

    /// Rank parameter: nodes are `0..=n`.
    #[inline]
    pub fn n(&self) -> usize {
        self.ty.n
    }

    pub fn nodes(&self) -> std::ops::RangeInclusive<usize> {
        0..=self.ty.n
    }

    pub fn i0(&self) -> Vec<usize> {
        (1..=self.ty.n).collect()
    }

    pub fn all_nodes(&self) -> Vec<usize> {
        (0..=self.ty.n).collect()
    }
}

fn symmetrizer(m: &CartanMatrix) -> Vec<u32> {
    let size = m.size();
    let mut r: Vec<Option<Ratio<i64>>> = vec![None; size];
    r[0] = Some(Ratio::one());
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let ri = r[i].unwrap_or_else(Ratio::one);
        for j in m.neighbours(i) {
            if r[j].is_none() {
                r[j] = Some(ri * Ratio::from_integer(m.entry(i, j) as i64)
                    / Ratio::from_integer(m.entry(j, i) as i64));
                queue.push_back(j);
            }
        }
    }
    let r: Vec<Ratio<i64>> = r.into_iter().map(|x| x.unwrap_or_else(Ratio::one)).collect();
    let lcm = r.iter().fold(1i64, |acc, x| num_integer_lcm(acc, *x.denom()));
    r.iter().map(|x| (x * lcm).to_integer() as u32).collect()
}

/// The canonical parity coloring (`s_0 = 0`).
pub fn parity_coloring(c: &CartanData) -> Vec<u8> {
    c.s.clone()
}

/// Either the canonical coloring `s` or its global flip `1 - s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Canonical,
    Flipped,
}

impl Parity {
    /// Parity class that grades `l` of node `i` must have.
    #[inline]
    pub fn of_node(self, s: &[u8], i: usize) -> i32 {
        let base = s[i] as i32;
        match self {
            Parity::Canonical => base,
            Parity::Flipped => 1 - base,
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Canonical => Parity::Flipped,
            Parity::Flipped => Parity::Canonical,
        }
    }
}

/// A shift: a total order on `I` and a grading `phi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shift {
    pub order: Vec<usize>,
    pub phi: Vec<i32>,
}

impl Shift {
    /// Which global coloring the grading follows.
    pub fn parity(&self, c: &CartanData) -> Parity {
        if (self.phi[0] - c.s[0] as i32).rem_euclid(2) == 0 {
            Parity::Canonical
        } else {
            Parity::Flipped
        }
    }

    /// Position of a node in the order.
    pub fn rank_of(&self, i: usize) -> usize {
        self.order.iter().position(|&x| x == i).unwrap_or(usize::MAX)
    }
}

/// Builds the shift with the given grading: nodes sorted by `phi`
/// descending, ties broken by node index.
///
/// `phi` must follow one of the two global colorings; on a connected
/// diagram that already follows from the edge condition.
pub fn make_shift(c: &CartanData, phi: &[i32]) -> Result<Shift, CartanError> {
    let size = c.matrix().size();
    if phi.len() != size {
        return Err(CartanError::InvalidPhi(format!(
            "expected {size} values, got {}",
            phi.len()
        )));
    }
    for i in 0..size {
        for j in c.matrix().neighbours(i) {
            if (phi[i] - phi[j]).abs() != 1 {
                return Err(CartanError::InvalidPhi(format!(
                    "nodes {i} and {j} are adjacent but phi differs by {}",
                    phi[i] - phi[j]
                )));
            }
        }
    }
    let parity_ok = |flip: i32| {
        (0..size).all(|i| (phi[i] - c.s[i] as i32 - flip).rem_euclid(2) == 0)
    };
    if !parity_ok(0) && !parity_ok(1) {
        return Err(CartanError::InvalidPhi("phi does not follow a parity coloring".into()));
    }
    let mut order: Vec<usize> = (0..size).collect();
    order.sort_by(|&a, &b| phi[b].cmp(&phi[a]).then(a.cmp(&b)));
    Ok(Shift { order, phi: phi.to_vec() })
}

/// The shift `phi = s`.
pub fn canonical_shift(c: &CartanData) -> Shift {
    let phi: Vec<i32> = c.s.iter().map(|&x| x as i32).collect();
    make_shift(c, &phi).expect("the parity coloring is always a shift")
}

/// A shift with `phi(i) = l` and `phi(0) = l'`.
pub fn shift_for_pair(c: &CartanData, i: usize, l: i32, lp: i32) -> Result<Shift, CartanError> {
    if i == 0 || i > c.n() {
        return Err(CartanError::OutOfRange(format!("node {i}")));
    }
    let th = c.theta[i] as i32;
    let d = l - lp;
    if d.abs() > th || (d - th).rem_euclid(2) != 0 {
        return Err(CartanError::OutOfRange(format!(
            "l - l' = {d} is not in {{-{th}, -{th}+2, ..., {th}}}"
        )));
    }
    let phi: Vec<i32> = if d <= 0 {
        let a = (th + d) / 2;
        c.theta
            .iter()
            .map(|&t| {
                let t = t as i32;
                if t <= a {
                    lp + t
                } else {
                    lp + 2 * a - t
                }
            })
            .collect()
    } else {
        let a = (th - d) / 2;
        c.theta
            .iter()
            .map(|&t| {
                let t = t as i32;
                if t <= a {
                    lp - t
                } else {
                    lp - 2 * a + t
                }
            })
            .collect()
    };
    make_shift(c, &phi)
}

/// The seed `Y_{l,phi(l)} Y_{0,phi(0)}^{-a_l^vee}` (with the dagger
/// variant for `A^(2)dag_{2n}`).
pub fn fundamental_seed(c: &CartanData, ell: usize, shift: &Shift) -> Result<Monomial, CartanError> {
    if ell == 0 || ell > c.n() {
        return Err(CartanError::OutOfRange(format!("node {ell}")));
    }
    let (pl, p0) = (shift.phi[ell], shift.phi[0]);
    let terms = if c.ty.family == Family::A2EvenDagger {
        let e = if ell == c.n() { 2 } else { 1 };
        vec![(ell, pl, e), (0, p0, -1)]
    } else {
        vec![(ell, pl, 1), (0, p0, -(c.comarks[ell] as i32))]
    };
    Ok(Monomial::from_terms(terms))
}

/// `d_l = max(1, a_l^vee / a_l)`, except `1` for `(A^(2)_{2n}, n)`.
pub fn d_ell(c: &CartanData, ell: usize) -> u32 {
    if c.ty.family == Family::A2Even && ell == c.n() {
        return 1;
    }
    (c.comarks[ell] / c.marks[ell]).max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(s: &str) -> CartanData {
        CartanData::parse(s).unwrap()
    }

    fn all_types() -> Vec<&'static str> {
        vec![
            "A1~1", "A1~3", "A1~5", "B1~3", "B1~5", "C1~2", "C1~4", "D1~4", "D1~6", "A2~2",
            "A2~4", "A2~6", "A2dag~2", "A2dag~6", "A2~5", "A2~7", "D2~3", "D2~5", "E1~6",
            "E1~7", "E1~8", "F1~4", "G1~2", "E2~6", "D3~4",
        ]
    }

    #[test]
    fn null_vectors_hold() {
        for t in all_types() {
            let c = data(t);
            let size = c.matrix().size();
            for i in 0..size {
                let row: i64 = (0..size)
                    .map(|j| c.matrix().entry(i, j) as i64 * c.marks[j] as i64)
                    .sum();
                let col: i64 = (0..size)
                    .map(|j| c.comarks[j] as i64 * c.matrix().entry(j, i) as i64)
                    .sum();
                assert_eq!((row, col), (0, 0), "{t} node {i}");
            }
        }
    }

    #[test]
    fn marks_follow_kac_tables() {
        let expect: &[(&str, &[u32], &[u32])] = &[
            ("A1~3", &[1, 1, 1, 1], &[1, 1, 1, 1]),
            ("B1~4", &[1, 1, 2, 2, 2], &[1, 1, 2, 2, 1]),
            ("C1~3", &[1, 2, 2, 1], &[1, 1, 1, 1]),
            ("D1~5", &[1, 1, 2, 2, 1, 1], &[1, 1, 2, 2, 1, 1]),
            ("A2~2", &[2, 1], &[1, 2]),
            ("A2~6", &[2, 2, 2, 1], &[1, 2, 2, 2]),
            ("A2dag~6", &[1, 2, 2, 2], &[2, 2, 2, 1]),
            ("A2~5", &[1, 1, 2, 1], &[1, 1, 2, 2]),
            ("D2~4", &[1, 1, 1, 1], &[1, 2, 2, 1]),
            ("E1~6", &[1, 1, 2, 3, 2, 1, 2], &[1, 1, 2, 3, 2, 1, 2]),
            ("E1~7", &[1, 2, 3, 4, 3, 2, 1, 2], &[1, 2, 3, 4, 3, 2, 1, 2]),
            ("E1~8", &[1, 2, 3, 4, 5, 6, 4, 2, 3], &[1, 2, 3, 4, 5, 6, 4, 2, 3]),
            ("F1~4", &[1, 2, 3, 4, 2], &[1, 2, 3, 2, 1]),
            ("G1~2", &[1, 2, 3], &[1, 2, 1]),
            ("E2~6", &[1, 2, 3, 2, 1], &[1, 2, 3, 4, 2]),
            ("D3~4", &[1, 2, 1], &[1, 2, 3]),
        ];
        for (t, a, av) in expect {
            let c = data(t);
            assert_eq!(&c.marks[..], *a, "{t} marks");
            assert_eq!(&c.comarks[..], *av, "{t} comarks");
        }
    }

    #[test]
    fn cartan_axioms() {
        for t in all_types() {
            let c = data(t);
            let m = c.matrix();
            for i in 0..m.size() {
                assert_eq!(m.entry(i, i), 2);
                for j in 0..m.size() {
                    if i != j {
                        assert!(m.entry(i, j) <= 0);
                        assert_eq!(m.entry(i, j) == 0, m.entry(j, i) == 0);
                        if m.entry(i, j) != 0 {
                            assert_eq!(c.s[i] + c.s[j], 1);
                        }
                    }
                }
                let (ri, rows) = (c.symmetrizer[i] as i32, m.rows());
                for j in 0..m.size() {
                    assert_eq!(ri * rows[i][j], c.symmetrizer[j] as i32 * rows[j][i]);
                }
            }
        }
    }

    #[test]
    fn a1_cycle_matrix() {
        let c = data("A1~3");
        for i in 0..4 {
            assert_eq!(c.matrix().entry(i, (i + 1) % 4), -1);
            assert_eq!(c.matrix().entry(i, (i + 2) % 4), 0);
        }
    }

    #[test]
    fn even_a1_is_rejected() {
        assert!(matches!("A1~2".parse::<AffineType>(), Err(CartanError::UnsupportedType(_))));
        assert!(matches!("A1~4".parse::<AffineType>(), Err(CartanError::UnsupportedType(_))));
    }

    #[test]
    fn triangle_is_an_odd_cycle() {
        let m = CartanMatrix::new(vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]);
        assert_eq!(two_coloring(&m), Err(CartanError::OddCycle));
    }

    #[test]
    fn colorings() {
        assert_eq!(data("A1~1").s, vec![0, 1]);
        assert_eq!(data("D1~4").s, vec![0, 0, 1, 0, 0]);
        assert_eq!(data("D1~4").theta, vec![0, 2, 1, 2, 2]);
    }

    #[test]
    fn type_strings_round_trip() {
        for t in all_types() {
            assert_eq!(t.parse::<AffineType>().unwrap().to_string(), t);
        }
        assert!("X1~3".parse::<AffineType>().is_err());
        assert!("E1~9".parse::<AffineType>().is_err());
    }

    #[test]
    fn shifts() {
        let c = data("D1~4");
        let sh = canonical_shift(&c);
        assert_eq!(sh.order[0], 2);
        assert!(make_shift(&c, &[0, 0, 2, 0, 0]).is_err());
        let p = shift_for_pair(&c, 1, 0, 2).unwrap();
        assert_eq!(p.phi, vec![2, 0, 1, 0, 0]);
        assert!(matches!(shift_for_pair(&c, 1, 4, 0), Err(CartanError::OutOfRange(_))));
        for t in all_types() {
            let c = data(t);
            let sh = canonical_shift(&c);
            for i in 1..=c.n() {
                let again = shift_for_pair(&c, i, sh.phi[i], sh.phi[0]).unwrap();
                assert_eq!((again.phi[i], again.phi[0]), (sh.phi[i], sh.phi[0]));
            }
        }
    }

    #[test]
    fn shift_order_respects_edges() {
        for t in all_types() {
            let c = data(t);
            for i in 1..=c.n() {
                let th = c.theta[i] as i32;
                for d in (-th..=th).step_by(2) {
                    let sh = shift_for_pair(&c, i, d, 0).unwrap();
                    for (pos, &a) in sh.order.iter().enumerate() {
                        for &b in &sh.order[pos + 1..] {
                            assert!(sh.phi[a] >= sh.phi[b]);
                            if c.matrix().adjacent(a, b) {
                                assert_eq!(sh.phi[a], sh.phi[b] + 1);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn seeds() {
        let c = data("A1~5");
        let sh = shift_for_pair(&c, 1, 4, 5).unwrap();
        assert_eq!(fundamental_seed(&c, 1, &sh).unwrap().to_string(), "0_5^-1 1_4");
        let c = data("D1~6");
        let sh = shift_for_pair(&c, 6, 0, 4).unwrap();
        assert_eq!(fundamental_seed(&c, 6, &sh).unwrap().to_string(), "0_4^-1 6_0");
        let c = data("A2dag~6");
        let sh = canonical_shift(&c);
        let m = fundamental_seed(&c, 3, &sh).unwrap();
        assert_eq!(m.exponent(3, sh.phi[3]), 2);
        assert_eq!(m.exponent(0, sh.phi[0]), -1);
    }

    #[test]
    fn d_ell_values() {
        assert_eq!(d_ell(&data("A1~5"), 2), 1);
        assert_eq!(d_ell(&data("A2~6"), 3), 1);
        assert_eq!(d_ell(&data("D3~4"), 2), 3);
        assert_eq!(d_ell(&data("E2~6"), 3), 2);
        assert_eq!(d_ell(&data("G1~2"), 2), 1);
    }
}
