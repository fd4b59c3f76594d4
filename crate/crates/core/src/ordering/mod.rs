//! Normal orderings of positive roots.
//!
//! A [`NormalOrdering`] is a sequence of the roots of some positive system in
//! which every sum `alpha + beta` of two members sits strictly between them.
//! Orderings of the standard positive system correspond to reduced words of
//! the longest element; orderings of an adapted positive system are images of
//! standard ones under the transporting Weyl element.

mod adapted;
mod appendix;
mod search;

pub use adapted::{
    build_adapted_ordering, no_combination_violations, SegmentCounts, SegmentData, StandardView,
};
pub use appendix::{
    appendix_fixture, appendix_labels, generate_appendix_fixture, validate_appendix_fixture,
    AppendixFixture,
};

use crate::error::{Error, Result};
use crate::rootsys::{Root, RootSystem};
use crate::weyl::WeylElement;
use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

#[derive(Clone)]
pub struct NormalOrdering {
    sys: Arc<RootSystem>,
    seq: Vec<Root>,
}

impl PartialEq for NormalOrdering {
    fn eq(&self, o: &Self) -> bool {
        self.seq == o.seq
    }
}
impl Eq for NormalOrdering {}

impl std::hash::Hash for NormalOrdering {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.seq.hash(h)
    }
}

impl std::fmt::Debug for NormalOrdering {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{:?}", self.sys.type_label, self.seq)
    }
}

impl NormalOrdering {
    /// Checks normality and wraps the sequence.
    pub fn new(sys: &Arc<RootSystem>, seq: Vec<Root>) -> Result<Self> {
        if !is_normal(sys, &seq)? {
            return Err(Error::InvariantViolation("sequence is not normal".into()));
        }
        Ok(NormalOrdering {
            sys: sys.clone(),
            seq,
        })
    }

    pub(crate) fn unchecked(sys: &Arc<RootSystem>, seq: Vec<Root>) -> Self {
        NormalOrdering {
            sys: sys.clone(),
            seq,
        }
    }

    /// `beta_k = s_{i_1} ... s_{i_{k-1}} alpha_{i_k}` for a reduced word of the
    /// longest element (1-based indices).
    pub fn from_reduced_word(sys: &Arc<RootSystem>, word: &[usize]) -> Result<Self> {
        let d = sys.num_positive();
        if word.len() != d {
            return Err(Error::WrongLength {
                expected: d,
                got: word.len(),
            });
        }
        let w = WeylElement::from_word(sys, word)?;
        if w.length() != d {
            return Err(Error::NotReduced);
        }
        let mut prefix = WeylElement::identity(sys);
        let mut seq = Vec::with_capacity(d);
        for &i in word {
            seq.push(prefix.apply(&sys.simple_root(i - 1)));
            prefix = prefix.compose(&WeylElement::from_word(sys, &[i])?);
        }
        Ok(NormalOrdering::unchecked(sys, seq))
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.sys
    }

    pub fn sequence(&self) -> &[Root] {
        &self.seq
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn position(&self, r: &[i64]) -> Option<usize> {
        self.seq.iter().position(|x| x == r)
    }

    /// `alpha < beta` in the ordering.
    pub fn lt(&self, a: &[i64], b: &[i64]) -> Option<bool> {
        Some(self.position(a)? < self.position(b)?)
    }

    pub fn reversed(&self) -> NormalOrdering {
        let mut seq = self.seq.clone();
        seq.reverse();
        NormalOrdering::unchecked(&self.sys, seq)
    }

    /// Image under a Weyl group element.
    pub fn map(&self, w: &WeylElement) -> NormalOrdering {
        NormalOrdering::unchecked(&self.sys, self.seq.iter().map(|r| w.apply(r)).collect())
    }

    /// The reduced word of the longest element this ordering comes from.
    /// Only defined for orderings of the standard positive system.
    pub fn reduced_word(&self) -> Result<Vec<usize>> {
        let sys = &self.sys;
        let mut w = WeylElement::identity(sys);
        let mut word = Vec::with_capacity(self.seq.len());
        for b in &self.seq {
            let pre = w.inverse().apply(b);
            let i = (0..sys.rank)
                .find(|&i| sys.simple_root(i) == pre)
                .ok_or(Error::NotReduced)?;
            word.push(i + 1);
            w = w.compose(&WeylElement::from_word(sys, &[i + 1])?);
        }
        Ok(word)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self.seq)
    }
}

/// True iff `seq` is normal. `seq` must list one root from each pair
/// `{alpha, -alpha}`, i.e. be an ordering of some positive system.
pub fn is_normal(sys: &RootSystem, seq: &[Root]) -> Result<bool> {
    let d = sys.num_positive();
    if seq.len() != d {
        return Err(Error::NotAPermutation);
    }
    let mut pos: HashMap<&[i64], usize> = HashMap::with_capacity(d);
    let mut seen = HashSet::with_capacity(d);
    for (k, r) in seq.iter().enumerate() {
        let (_, idx) = sys.signed_index(r).map_err(|_| Error::NotAPermutation)?;
        if !seen.insert(idx) {
            return Err(Error::NotAPermutation);
        }
        pos.insert(r, k);
    }
    for i in 0..d {
        for j in i + 1..d {
            let sum: Root = seq[i].iter().zip(&seq[j]).map(|(a, b)| a + b).collect();
            if !sys.is_root(&sum) {
                continue;
            }
            match pos.get(sum.as_slice()) {
                Some(&k) if i < k && k < j => {}
                _ => return Ok(false),
            }
        }
    }
    Ok(true)
}

fn nonneg_combination(a: &[i64], b: &[i64], g: &[i64]) -> bool {
    // Rank-2 positive roots have coefficients at most 3.
    (0..=3).any(|x| {
        (0..=3).any(|y| {
            g.iter()
                .zip(a.iter().zip(b))
                .all(|(g, (a, b))| *g == x * a + y * b)
        })
    })
}

/// Every ordering obtained by reversing one contiguous rank-2 segment
/// `alpha, ..., beta` whose members are exactly the positive roots in
/// `N alpha + N beta`, with `alpha - beta` not a root.
pub fn elementary_transpositions(o: &NormalOrdering) -> Vec<NormalOrdering> {
    let sys = &o.sys;
    let seq = &o.seq;
    let members: HashSet<&Root> = seq.iter().collect();
    let mut out = Vec::new();
    for i in 0..seq.len() {
        for len in [2usize, 3, 4, 6] {
            let j = i + len - 1;
            if j >= seq.len() {
                break;
            }
            let (a, b) = (&seq[i], &seq[j]);
            let diff: Root = a.iter().zip(b).map(|(x, y)| x - y).collect();
            if sys.is_root(&diff) {
                continue;
            }
            if !seq[i..=j].iter().all(|g| nonneg_combination(a, b, g)) {
                continue;
            }
            let span = members
                .iter()
                .filter(|g| nonneg_combination(a, b, g))
                .count();
            if span != len {
                continue;
            }
            let mut s = seq.clone();
            s[i..=j].reverse();
            out.push(NormalOrdering::unchecked(sys, s));
        }
    }
    out
}

/// Every normal ordering of the standard positive system.
pub fn all_normal_orderings(sys: &Arc<RootSystem>) -> Result<Vec<NormalOrdering>> {
    guard_enumeration(sys)?;
    fn go(
        sys: &Arc<RootSystem>,
        w: &WeylElement,
        seq: &mut Vec<Root>,
        out: &mut Vec<NormalOrdering>,
    ) {
        if seq.len() == sys.num_positive() {
            out.push(NormalOrdering::unchecked(sys, seq.clone()));
            return;
        }
        for i in 0..sys.rank {
            let b = w.apply(&sys.simple_root(i));
            if RootSystem::is_positive(&b) {
                seq.push(b);
                let next = w.compose(&WeylElement::from_word(sys, &[i + 1]).unwrap());
                go(sys, &next, seq, out);
                seq.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(sys, &WeylElement::identity(sys), &mut Vec::new(), &mut out);
    Ok(out)
}

fn guard_enumeration(sys: &RootSystem) -> Result<()> {
    if sys.rank > 2 && sys.num_positive() > 8 {
        return Err(Error::TooLarge(format!(
            "{} has {} positive roots; enumeration is limited to rank 2 or at most 8 roots",
            sys.type_label,
            sys.num_positive()
        )));
    }
    Ok(())
}

/// True iff the elementary-transposition graph on all normal orderings is
/// connected.
pub fn connectivity_check(sys: &Arc<RootSystem>) -> Result<bool> {
    let all = all_normal_orderings(sys)?;
    let index: HashMap<&NormalOrdering, usize> =
        all.iter().enumerate().map(|(k, o)| (o, k)).collect();
    let mut seen = vec![false; all.len()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(k) = queue.pop_front() {
        for nb in elementary_transpositions(&all[k]) {
            let j = *index
                .get(&nb)
                .expect("elementary transposition left the set of normal orderings");
            if !seen[j] {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    Ok(seen.iter().all(|&s| s))
}

/// The circle `beta_1 .. beta_D, -beta_1 .. -beta_D`, read clockwise.
#[derive(Debug, Clone)]
pub struct CircularOrdering {
    pub base: NormalOrdering,
}

impl CircularOrdering {
    pub fn new(base: NormalOrdering) -> Self {
        CircularOrdering { base }
    }

    fn circle_position(&self, r: &[i64]) -> Result<usize> {
        if let Some(p) = self.base.position(r) {
            return Ok(p);
        }
        let neg: Root = r.iter().map(|x| -x).collect();
        self.base
            .position(&neg)
            .map(|p| p + self.base.len())
            .ok_or_else(|| Error::NotARoot(r.to_vec()))
    }

    /// True iff the clockwise segment `[alpha, beta]` is minimal, i.e. holds
    /// neither `-alpha` nor `-beta`.
    pub fn lt(&self, a: &[i64], b: &[i64]) -> Result<bool> {
        let neg: Root = b.iter().map(|x| -x).collect();
        if a == b || a == neg.as_slice() {
            return Err(Error::AntipodalPair);
        }
        let d = self.base.len();
        let (pa, pb) = (self.circle_position(a)?, self.circle_position(b)?);
        let len = (pb + 2 * d - pa) % (2 * d);
        Ok(len > 0 && len < d)
    }
}

pub fn circular_lt(c: &CircularOrdering, a: &[i64], b: &[i64]) -> Result<bool> {
    c.lt(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(l: &str) -> Arc<RootSystem> {
        RootSystem::build(l).unwrap()
    }

    #[test]
    fn from_reduced_word_examples() {
        let a2 = sys("A2");
        let o = NormalOrdering::from_reduced_word(&a2, &[1, 2, 1]).unwrap();
        assert_eq!(o.sequence(), &[vec![1, 0], vec![1, 1], vec![0, 1]]);
        let b2 = sys("B2");
        let o = NormalOrdering::from_reduced_word(&b2, &[2, 1, 2, 1]).unwrap();
        // beta, alpha + 2 beta, alpha + beta, alpha with alpha = alpha_1 long
        assert_eq!(
            o.sequence(),
            &[vec![0, 1], vec![1, 2], vec![1, 1], vec![1, 0]]
        );
        assert!(is_normal(&b2, o.sequence()).unwrap());
        assert_eq!(o.reduced_word().unwrap(), vec![2, 1, 2, 1]);
        assert!(matches!(
            NormalOrdering::from_reduced_word(&a2, &[1, 1, 2]),
            Err(Error::NotReduced)
        ));
        assert!(matches!(
            NormalOrdering::from_reduced_word(&a2, &[1, 2]),
            Err(Error::WrongLength { .. })
        ));
    }

    #[test]
    fn normality_examples() {
        let a2 = sys("A2");
        assert!(is_normal(&a2, &[vec![1, 0], vec![1, 1], vec![0, 1]]).unwrap());
        assert!(!is_normal(&a2, &[vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap());
        assert!(matches!(
            is_normal(&a2, &[vec![1, 0], vec![1, 0], vec![0, 1]]),
            Err(Error::NotAPermutation)
        ));
        let g2 = sys("G2");
        let appendix = vec![
            vec![0, 1],
            vec![1, 1],
            vec![3, 2],
            vec![2, 1],
            vec![3, 1],
            vec![1, 0],
        ];
        assert!(is_normal(&g2, &appendix).unwrap());
    }

    #[test]
    fn transpositions() {
        let a2 = sys("A2");
        let o = NormalOrdering::from_reduced_word(&a2, &[1, 2, 1]).unwrap();
        let nb = elementary_transpositions(&o);
        assert_eq!(nb.len(), 1);
        assert_eq!(nb[0].sequence(), &[vec![0, 1], vec![1, 1], vec![1, 0]]);
        let g2 = sys("G2");
        let o = NormalOrdering::from_reduced_word(&g2, &[1, 2, 1, 2, 1, 2]).unwrap();
        let nb = elementary_transpositions(&o);
        assert_eq!(nb.len(), 1);
        assert_eq!(nb[0], o.reversed());
    }

    #[test]
    fn orthogonal_pair_swaps() {
        // alpha_1 and alpha_3 span an A1 + A1 subsystem of A3.
        let a3 = sys("A3");
        let o = NormalOrdering::from_reduced_word(&a3, &[1, 3, 2, 1, 3, 2]).unwrap();
        let nb = elementary_transpositions(&o);
        assert!(nb
            .iter()
            .any(|x| x.sequence()[0] == vec![0, 0, 1] && x.sequence()[1] == vec![1, 0, 0]));
        for x in &nb {
            assert!(is_normal(&a3, x.sequence()).unwrap());
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(all_normal_orderings(&sys("A2")).unwrap().len(), 2);
        assert_eq!(all_normal_orderings(&sys("B2")).unwrap().len(), 2);
        assert_eq!(all_normal_orderings(&sys("A3")).unwrap().len(), 16);
        assert!(matches!(
            all_normal_orderings(&sys("B3")),
            Err(Error::TooLarge(_))
        ));
        for l in ["A1", "A2", "B2", "G2", "A3"] {
            assert!(connectivity_check(&sys(l)).unwrap(), "{l}");
        }
    }

    #[test]
    fn circular() {
        let a2 = sys("A2");
        let c = CircularOrdering::new(NormalOrdering::from_reduced_word(&a2, &[1, 2, 1]).unwrap());
        assert!(c.lt(&[1, 0], &[0, 1]).unwrap());
        assert!(!c.lt(&[0, 1], &[1, 0]).unwrap());
        assert!(c.lt(&[0, 1], &[-1, 0]).unwrap());
        assert!(matches!(c.lt(&[1, 0], &[-1, 0]), Err(Error::AntipodalPair)));
    }
}
