//! The tensor crystals `K_m` built from `B_i`, `T_lambda` and `C`, and the
//! map `Phi` sending a monomial to a word in `K_m`.
//!
//! Words are finite: the grade window is chosen large enough that every
//! `z_i(k)` outside it vanishes, and one `C` factor sits at each end.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::cartan::{CartanData, CartanMatrix, Shift};
use crate::monomial::Monomial;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EmbedError {
    #[error("grade window [{lo}, {hi}] does not cover the monomial")]
    WindowTooSmall { lo: i32, hi: i32 },
    #[error("Y_{{{node},{grade}}} does not follow the parity of the shift")]
    Parity { node: usize, grade: i32 },
}

/// One tensor factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ElemFactor {
    /// `b_i(l)`, weight `l alpha_i`.
    Bi { i: usize, l: i32 },
    /// `t_lambda`, stored through its pairings `<lambda, h_j>`.
    Tlambda(Vec<i32>),
    /// The unit `c`.
    Cunit,
}

impl ElemFactor {
    /// `<wt, h_j>`.
    pub fn pairing(&self, c: &CartanMatrix, j: usize) -> i32 {
        match self {
            ElemFactor::Bi { i, l } => l * c.entry(j, *i),
            ElemFactor::Tlambda(p) => p[j],
            ElemFactor::Cunit => 0,
        }
    }

    /// `(eps_j, phi_j)`, `None` standing for minus infinity.
    pub fn eps_phi(&self, j: usize) -> Option<(i32, i32)> {
        match self {
            ElemFactor::Bi { i, l } if *i == j => Some((-l, *l)),
            ElemFactor::Cunit => Some((0, 0)),
            _ => None,
        }
    }
}

impl fmt::Display for ElemFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElemFactor::Bi { i, l } => write!(f, "b{i}({l})"),
            ElemFactor::Tlambda(p) => {
                let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                write!(f, "t[{}]", parts.join(","))
            }
            ElemFactor::Cunit => f.write_str("c"),
        }
    }
}

/// A finite word `c ⊗ b_hi ⊗ ... ⊗ b_0 ⊗ t_alpha ⊗ b_-1 ⊗ ... ⊗ b_lo ⊗ c`,
/// leftmost factor first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorWord {
    pub factors: Vec<ElemFactor>,
}

impl fmt::Display for TensorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join(" ⊗ "))
    }
}

impl TensorWord {
    pub fn pairing(&self, c: &CartanMatrix, j: usize) -> i32 {
        self.factors.iter().map(|x| x.pairing(c, j)).sum()
    }
}

/// Per-position values of the `eps` scan: `eps_i(x) - <wt(left of x), h_i>`.
fn eps_terms(c: &CartanMatrix, w: &TensorWord, i: usize) -> Vec<(usize, i32)> {
    let mut left = 0;
    let mut out = Vec::new();
    for (a, x) in w.factors.iter().enumerate() {
        if let Some((e, _)) = x.eps_phi(i) {
            out.push((a, e - left));
        }
        left += x.pairing(c, i);
    }
    out
}

/// Per-position values of the `phi` scan: `phi_i(x) + <wt(right of x), h_i>`.
fn phi_terms(c: &CartanMatrix, w: &TensorWord, i: usize) -> Vec<(usize, i32)> {
    let mut right = 0;
    let mut out = Vec::new();
    for (a, x) in w.factors.iter().enumerate().rev() {
        if let Some((_, p)) = x.eps_phi(i) {
            out.push((a, p + right));
        }
        right += x.pairing(c, i);
    }
    out.reverse();
    out
}

/// `(eps_i, phi_i)` of a word by the tensor rule; `None` is minus infinity.
pub fn tensor_eps_phi(c: &CartanMatrix, w: &TensorWord, i: usize) -> (Option<i32>, Option<i32>) {
    let e = eps_terms(c, w, i).into_iter().map(|x| x.1).max();
    let p = phi_terms(c, w, i).into_iter().map(|x| x.1).max();
    (e, p)
}

/// `e_i` acts on the leftmost factor attaining `eps_i`, `f_i` on the
/// rightmost one attaining `phi_i`.
pub fn tensor_op(c: &CartanMatrix, w: &TensorWord, i: usize, raise: bool) -> Option<TensorWord> {
    let pos = if raise {
        let terms = eps_terms(c, w, i);
        let best = terms.iter().map(|x| x.1).max()?;
        terms.iter().find(|x| x.1 == best)?.0
    } else {
        let terms = phi_terms(c, w, i);
        let best = terms.iter().map(|x| x.1).max()?;
        terms.iter().rev().find(|x| x.1 == best)?.0
    };
    match w.factors[pos] {
        ElemFactor::Bi { i: j, l } => {
            let mut out = w.clone();
            out.factors[pos] = ElemFactor::Bi { i: j, l: if raise { l + 1 } else { l - 1 } };
            Some(out)
        }
        _ => None,
    }
}

/// `z_i(k)` with `m' = m prod A_{i, 2k + phi(i) + 1}^{z_i(k)}`, read off by
/// peeling the top grade of the quotient.
pub fn z_values(
    c: &CartanMatrix,
    seed: &Monomial,
    m: &Monomial,
    shift: &Shift,
    window: (i32, i32),
) -> Result<HashMap<(usize, i32), i32>, EmbedError> {
    let (lo, hi) = window;
    let mut rest = m.mul(&seed.inverse()).forget_ledger();
    let mut z = HashMap::new();
    while let Some(top) = rest.terms().iter().max_by_key(|t| (t.grade, t.node)).copied() {
        let (i, g) = (top.node as usize, top.grade);
        if g > hi || g - 2 < lo {
            return Err(EmbedError::WindowTooSmall { lo, hi });
        }
        let l = g - 1;
        let twice = l - 1 - shift.phi[i];
        if twice.rem_euclid(2) != 0 {
            return Err(EmbedError::Parity { node: i, grade: g });
        }
        *z.entry((i, twice / 2)).or_insert(0) += top.exp;
        rest = rest.mul_a(c, i, l, -top.exp).forget_ledger();
    }
    z.retain(|_, v| *v != 0);
    Ok(z)
}

/// Range of `l` whose block `b_l` is written for the grade window.
fn block_range(shift: &Shift, window: (i32, i32)) -> (i32, i32) {
    let pmin = *shift.phi.iter().min().unwrap();
    let pmax = *shift.phi.iter().max().unwrap();
    let lo = (window.0 - pmax - 1).div_euclid(2) - 1;
    let hi = (window.1 - pmin).div_euclid(2) + 1;
    (lo.min(-1), hi.max(0))
}

/// `Phi(m')` written over the grade window.
pub fn phi_embed(
    cd: &CartanData,
    m: &Monomial,
    seed: &Monomial,
    shift: &Shift,
    window: (i32, i32),
) -> Result<TensorWord, EmbedError> {
    let c = cd.matrix();
    let size = c.size();
    for t in seed.terms() {
        let i = t.node as usize;
        if (t.grade - shift.phi[i]).rem_euclid(2) != 0 {
            return Err(EmbedError::Parity { node: i, grade: t.grade });
        }
        if t.grade < window.0 || t.grade > window.1 {
            return Err(EmbedError::WindowTooSmall { lo: window.0, hi: window.1 });
        }
    }
    let z = z_values(c, seed, m, shift, window)?;
    let (lo, hi) = block_range(shift, window);
    let mut factors = vec![ElemFactor::Cunit];
    for l in (lo..=hi).rev() {
        for &i in &shift.order {
            factors.push(ElemFactor::Bi { i, l: z.get(&(i, l)).copied().unwrap_or(0) });
        }
        let lambda: Vec<i32> = (0..size).map(|i| seed.exponent(i, 2 * l + shift.phi[i])).collect();
        factors.push(ElemFactor::Tlambda(lambda));
        if l == 0 {
            // `alpha = wt(m) - sum u_{i,l} Lambda_i` pairs to zero with every `h_i`
            factors.push(ElemFactor::Tlambda(vec![0; size]));
        }
    }
    factors.push(ElemFactor::Cunit);
    Ok(TensorWord { factors })
}

/// Checks both cut identities at every `L` of the window for node `i`.
pub fn cut_identities_hold(
    c: &CartanMatrix,
    w: &TensorWord,
    m: &Monomial,
    shift: &Shift,
    window: (i32, i32),
    i: usize,
) -> bool {
    let (lo, hi) = block_range(shift, window);
    let per = c.size() + 1;
    // block `b_l` starts after the leading `c`; `t_alpha` follows `b_0`
    let start = |l: i32| -> usize {
        let k = (hi - l) as usize;
        1 + k * per + usize::from(l < 0)
    };
    let block = |l: i32| TensorWord { factors: w.factors[start(l)..start(l) + per].to_vec() };
    let weight_from = |from: usize, to: usize| -> i32 { w.factors[from..to].iter().map(|x| x.pairing(c, i)).sum() };
    let u_sum = |keep: &dyn Fn(i32) -> bool| -> i32 {
        m.terms().iter().filter(|t| t.node as usize == i && keep(t.grade)).map(|t| t.exp).sum()
    };
    for cut in lo + 1..=hi {
        let below = block(cut - 1);
        let (Some(e), _) = tensor_eps_phi(c, &below, i) else { return false };
        let left = weight_from(1, start(cut - 1));
        let want = -u_sum(&|g| g >= 2 * cut + shift.phi[i]);
        if e - left != want {
            return false;
        }
    }
    for cut in lo..hi {
        let here = block(cut);
        let (_, Some(p)) = tensor_eps_phi(c, &here, i) else { return false };
        let right = weight_from(start(cut) + per, w.factors.len() - 1);
        let want = u_sum(&|g| g <= 2 * cut + shift.phi[i]);
        if p + right != want {
            return false;
        }
    }
    true
}

#[derive(Clone, Debug, Default)]
pub struct StrictReport {
    pub nodes: usize,
    pub checks: usize,
    pub violations: Vec<String>,
}

impl StrictReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for StrictReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} nodes, {} checks, {} violations", self.nodes, self.checks, self.violations.len())?;
        for v in self.violations.iter().take(10) {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

/// Ball of radius `depth` around `seed` under every `e_i`, `f_i`.
pub fn ball(c: &CartanMatrix, seed: &Monomial, depth: usize) -> Vec<Monomial> {
    let mut seen: HashSet<Monomial> = HashSet::from([seed.clone()]);
    let mut out = vec![seed.clone()];
    let mut queue = VecDeque::from([(seed.clone(), 0usize)]);
    while let Some((m, d)) = queue.pop_front() {
        if d == depth {
            continue;
        }
        for i in 0..c.size() {
            for next in [m.lower(c, i), m.raise(c, i)].into_iter().flatten() {
                if seen.insert(next.clone()) {
                    out.push(next.clone());
                    queue.push_back((next, d + 1));
                }
            }
        }
    }
    out
}

/// Strictness of `Phi` on the ball: `eps`, `phi`, weights, cut identities,
/// injectivity and commutation with every `e_i`, `f_i` (null with null).
pub fn verify_strict(cd: &CartanData, seed: &Monomial, shift: &Shift, depth: usize) -> StrictReport {
    verify_strict_with(cd, seed, shift, depth, |m, w| phi_embed(cd, m, seed, shift, w))
}

/// As `verify_strict`, with `phi` standing in for the embedding.
pub fn verify_strict_with<F>(cd: &CartanData, seed: &Monomial, shift: &Shift, depth: usize, phi: F) -> StrictReport
where
    F: Fn(&Monomial, (i32, i32)) -> Result<TensorWord, EmbedError>,
{
    let c = cd.matrix();
    let nodes = ball(c, seed, depth);
    let mut lo = i32::MAX;
    let mut hi = i32::MIN;
    for m in &nodes {
        for t in m.terms() {
            lo = lo.min(t.grade);
            hi = hi.max(t.grade);
        }
    }
    let window = (lo - 4, hi + 4);
    let mut report = StrictReport { nodes: nodes.len(), ..Default::default() };
    let mut images: HashMap<TensorWord, Monomial> = HashMap::new();
    let seed_pairings: Vec<i32> = (0..c.size()).map(|i| seed.u_total(i)).collect();
    for m in &nodes {
        let w = match phi(m, window) {
            Ok(w) => w,
            Err(e) => {
                report.violations.push(format!("{m}: {e}"));
                continue;
            }
        };
        if let Some(other) = images.insert(w.clone(), m.clone()) {
            report.violations.push(format!("{m} and {other} share an image"));
        }
        for i in 0..c.size() {
            report.checks += 1;
            let (e, p) = tensor_eps_phi(c, &w, i);
            if e != Some(m.eps(i)) || p != Some(m.phi(i)) {
                report.violations.push(format!("{m}: node {i} eps/phi {e:?}/{p:?} vs {}/{}", m.eps(i), m.phi(i)));
            }
            let shifted = w.pairing(c, i) - phi(seed, window).map(|s| s.pairing(c, i)).unwrap_or(0);
            if shifted != m.u_total(i) - seed_pairings[i] {
                report.violations.push(format!("{m}: node {i} weight"));
            }
            if !cut_identities_hold(c, &w, m, shift, window, i) {
                report.violations.push(format!("{m}: node {i} cut identity"));
            }
            for raise in [true, false] {
                let mono = if raise { m.raise(c, i) } else { m.lower(c, i) };
                let via_word = tensor_op(c, &w, i, raise);
                let via_mono = mono.map(|x| phi(&x, window));
                let ok = match (&via_word, via_mono) {
                    (None, None) => true,
                    (Some(a), Some(Ok(b))) => *a == b,
                    _ => false,
                };
                if !ok {
                    let name = if raise { "e" } else { "f" };
                    report.violations.push(format!("{m}: {name}_{i} does not commute"));
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{canonical_shift, fundamental_seed};

    fn setup(ty: &str, ell: usize) -> (CartanData, Monomial, Shift) {
        let cd = CartanData::parse(ty).unwrap();
        let shift = canonical_shift(&cd);
        let seed = fundamental_seed(&cd, ell, &shift).unwrap();
        (cd, seed, shift)
    }

    #[test]
    fn single_factor() {
        let cd = CartanData::parse("A1~3").unwrap();
        let c = cd.matrix();
        let w = TensorWord { factors: vec![ElemFactor::Bi { i: 1, l: 0 }] };
        assert_eq!(tensor_eps_phi(c, &w, 1), (Some(0), Some(0)));
        assert_eq!(tensor_eps_phi(c, &w, 2), (None, None));
        let f = tensor_op(c, &w, 1, false).unwrap();
        assert_eq!(f.factors, vec![ElemFactor::Bi { i: 1, l: -1 }]);
        let units = TensorWord { factors: vec![ElemFactor::Cunit; 3] };
        assert_eq!(tensor_eps_phi(c, &units, 0), (Some(0), Some(0)));
        assert_eq!(tensor_op(c, &units, 0, true), None);
        assert_eq!(tensor_op(c, &units, 0, false), None);
    }

    #[test]
    fn seed_maps_to_zero_word() {
        let (cd, seed, shift) = setup("D1~4", 2);
        let w = phi_embed(&cd, &seed, &seed, &shift, (-6, 6)).unwrap();
        assert!(w.factors.iter().all(|x| !matches!(x, ElemFactor::Bi { l, .. } if *l != 0)));
        let c = cd.matrix();
        let f = seed.lower(c, 2).unwrap();
        let v = phi_embed(&cd, &f, &seed, &shift, (-6, 6)).unwrap();
        let diff: Vec<_> = w.factors.iter().zip(&v.factors).filter(|(a, b)| a != b).collect();
        assert_eq!(diff.len(), 1);
        assert!(matches!(diff[0].1, ElemFactor::Bi { i: 2, l: -1 }));
    }

    #[test]
    fn window_must_cover() {
        let (cd, seed, shift) = setup("A1~3", 1);
        let c = cd.matrix();
        let m = seed.lower(c, 1).unwrap();
        assert!(matches!(phi_embed(&cd, &m, &seed, &shift, (0, 1)), Err(EmbedError::WindowTooSmall { .. })));
    }

    #[test]
    fn strict_on_small_balls() {
        for (ty, ell) in [("A1~3", 1), ("C1~2", 1), ("D1~4", 2), ("G1~2", 2), ("A2~4", 1)] {
            let (cd, seed, shift) = setup(ty, ell);
            let report = verify_strict(&cd, &seed, &shift, 3);
            assert!(report.passed(), "{ty}: {report}");
            assert!(report.nodes > 1);
        }
    }

    #[test]
    fn depth_zero_is_trivial() {
        let (cd, seed, shift) = setup("B1~3", 1);
        let report = verify_strict(&cd, &seed, &shift, 0);
        assert!(report.passed());
        assert_eq!(report.nodes, 1);
    }

    #[test]
    fn corrupted_map_is_caught() {
        let (cd, seed, shift) = setup("A1~3", 1);
        let report = verify_strict_with(&cd, &seed, &shift, 2, |m, w| {
            let mut word = phi_embed(&cd, m, &seed, &shift, w)?;
            if let Some(ElemFactor::Bi { l, .. }) = word.factors.iter_mut().find(|x| matches!(x, ElemFactor::Bi { l, .. } if *l != 0)) {
                *l -= 1;
            }
            Ok(word)
        });
        assert!(!report.passed());
    }
}
