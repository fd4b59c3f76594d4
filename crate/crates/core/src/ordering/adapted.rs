//! The ordering of an adapted positive system built around `s = s1 s2`.
//!
//! Layout, left to right:
//!
//! ```text
//! [ Delta_{s1}: t1 | anti-invariant roots of s1, compatible | t1 ]
//! [ middle ]
//! [ Delta_{s2}: t2 | anti-invariant roots of s2, inverse compatible | t2 ]
//! [ Delta_0 ]
//! ```
//!
//! with `t_k = (l(s_k) - p_k) / 2`. The segment `Delta_{m+}` runs from the
//! first gamma of `s1` to the last gamma of `s2`. The search runs in standard
//! coordinates after pulling everything back through the transporting element
//! of the adapted system.

use super::search::{mask, NoComb, Outcome, Problem};
use super::{is_normal, NormalOrdering};
use crate::error::{Error, Result};
use crate::field::{qi, solve, Matrix, Solution, Q};
use crate::rootsys::{Root, RootSystem};
use crate::weyl::{AdaptedPositiveSystem, InvolutionDecomposition, WeylElement};
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::ops::Range;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SegmentCounts {
    pub l_s: usize,
    pub l_prime: usize,
    pub d0: usize,
    pub d: usize,
    pub n: usize,
    /// Lengths are taken in the adapted positive system.
    /// `l(s1)`, `l(s2)` and the numbers of anti-invariant roots.
    pub l1: usize,
    pub l2: usize,
    pub p1: usize,
    pub p2: usize,
    /// Length of the unconstrained middle block.
    pub middle: usize,
}

#[derive(Debug, Clone)]
pub struct SegmentData {
    /// Ordering of the adapted positive system.
    pub ordering: NormalOrdering,
    pub m_plus: Range<usize>,
    /// Positions of `gamma_1 .. gamma_{l'}`.
    pub gammas: Vec<usize>,
    /// The decomposition with signs fixed so every gamma is positive in the
    /// adapted system, relabeled by order of appearance within each factor.
    pub decomposition: InvolutionDecomposition,
    pub counts: SegmentCounts,
    /// `w` with `w(standard positive roots)` = the adapted positive roots.
    pub transport: WeylElement,
}

/// A segment pulled back to standard coordinates, where the quantum group's
/// simple roots are the standard ones.
#[derive(Debug, Clone)]
pub struct StandardView {
    pub element: WeylElement,
    pub decomposition: InvolutionDecomposition,
    pub ordering: NormalOrdering,
    pub m_plus: Range<usize>,
}

impl StandardView {
    pub fn m_plus_roots(&self) -> &[Root] {
        &self.ordering.sequence()[self.m_plus.clone()]
    }
}

impl SegmentData {
    pub fn m_plus_roots(&self) -> &[Root] {
        &self.ordering.sequence()[self.m_plus.clone()]
    }

    pub fn gamma_roots(&self) -> Vec<Root> {
        self.decomposition.gammas()
    }

    /// `D - ((l(s) - l') / 2 + D_0)`.
    pub fn expected_m_plus_len(&self) -> usize {
        let c = &self.counts;
        c.d - ((c.l_s - c.l_prime) / 2 + c.d0)
    }

    /// Rechecks normality, the segment length, the gamma placement and the
    /// no-combination property.
    pub fn validate(&self) -> Result<()> {
        let sys = self.ordering.system();
        let fail = |m: String| Err(Error::InvariantViolation(m));
        if !is_normal(sys, self.ordering.sequence())? {
            return fail("ordering is not normal".into());
        }
        if self.m_plus.len() != self.expected_m_plus_len() {
            return fail(format!(
                "segment has {} roots, expected {}",
                self.m_plus.len(),
                self.expected_m_plus_len()
            ));
        }
        if self.gammas.iter().any(|p| !self.m_plus.contains(p)) {
            return fail("a gamma lies outside the segment".into());
        }
        if self.gammas.windows(2).any(|w| w[0] >= w[1]) {
            return fail("gammas are not in order".into());
        }
        let v = no_combination_violations(
            sys,
            self.ordering.sequence(),
            self.m_plus.clone(),
            &self.gamma_roots(),
        );
        if let Some((a, b)) = v.first() {
            return fail(format!(
                "{a:?} + {b:?} is a combination of gammas between them"
            ));
        }
        Ok(())
    }

    pub fn standard(&self) -> StandardView {
        let w_inv = self.transport.inverse();
        let s1 = self.decomposition.s1(self.ordering.system());
        let s2 = self.decomposition.s2(self.ordering.system());
        StandardView {
            element: s1.compose(&s2).conjugate_by(&self.transport),
            decomposition: self.decomposition.transport(&w_inv),
            ordering: self.ordering.map(&w_inv),
            m_plus: self.m_plus.clone(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ordering": self.ordering.sequence(),
            "m_plus": {"start": self.m_plus.start, "end": self.m_plus.end},
            "m_plus_roots": self.m_plus_roots(),
            "gamma_positions": self.gammas,
            "gamma1": self.decomposition.gamma1,
            "gamma2": self.decomposition.gamma2,
            "counts": self.counts,
        })
    }
}

/// Pairs `alpha < beta` in `range` whose sum is a nonnegative integer
/// combination of gammas lying strictly between them.
pub fn no_combination_violations(
    sys: &RootSystem,
    seq: &[Root],
    range: Range<usize>,
    gammas: &[Root],
) -> Vec<(Root, Root)> {
    if gammas.is_empty() {
        return Vec::new();
    }
    let a: Matrix<Q> = (0..sys.rank)
        .map(|i| gammas.iter().map(|g| qi(g[i])).collect())
        .collect();
    let gpos: Vec<Option<usize>> = gammas
        .iter()
        .map(|g| seq.iter().position(|x| x == g))
        .collect();
    let mut out = Vec::new();
    for i in range.clone() {
        for j in i + 1..range.end {
            let v: Vec<Q> = seq[i].iter().zip(&seq[j]).map(|(x, y)| qi(x + y)).collect();
            let Solution::Unique(c) = solve(&a, &v) else {
                continue;
            };
            if !c.iter().all(|x| x.is_integer() && !x.is_negative()) {
                continue;
            }
            let between = c
                .iter()
                .zip(&gpos)
                .all(|(x, p)| x.is_zero() || p.is_some_and(|p| i < p && p < j));
            if between {
                out.push((seq[i].clone(), seq[j].clone()));
            }
        }
    }
    out
}

/// Anti-invariant positive roots of an involution: `s(alpha) = -alpha`.
fn anti_invariant(w: &WeylElement) -> Vec<Root> {
    let sys = w.system();
    sys.positive_roots
        .iter()
        .filter(|r| w.apply(r).iter().zip(r.iter()).all(|(a, b)| *a == -b))
        .cloned()
        .collect()
}

/// Builds a normal ordering of the adapted positive system with the block
/// structure described in the module docs.
pub fn build_adapted_ordering(
    s: &WeylElement,
    dec: &InvolutionDecomposition,
    aps: &AdaptedPositiveSystem,
) -> Result<SegmentData> {
    build_adapted_ordering_with_budget(s, dec, aps, 2_000_000)
}

pub fn build_adapted_ordering_with_budget(
    s: &WeylElement,
    dec: &InvolutionDecomposition,
    aps: &AdaptedPositiveSystem,
    budget: usize,
) -> Result<SegmentData> {
    let sys = s.system().clone();
    dec.validate(s)?;
    let w = &aps.transport;
    let w_inv = w.inverse();
    // Everything below lives in standard coordinates.
    let st = s.conjugate_by(w);
    let dst = dec.transport(&w_inv);
    let s1 = dst.s1(&sys);
    let s2 = dst.s2(&sys);
    let fail = |m: &str| Error::ConstructionFailed(m.to_string());

    let inv1 = s1.inversion_set();
    let inv2 = s2.inversion_set();
    let fixed = st.fixed_positive_roots();
    let anti1 = anti_invariant(&s1);
    let anti2 = anti_invariant(&s2);
    let d = sys.num_positive();
    let (l1, l2, p1, p2, d0) = (
        inv1.len(),
        inv2.len(),
        anti1.len(),
        anti2.len(),
        fixed.len(),
    );
    let (n, k2) = (dst.gamma1.len(), dst.gamma2.len());
    if l1 + l2 != st.length() {
        return Err(fail("l(s1) + l(s2) != l(s) in the adapted system"));
    }
    if inv1.iter().any(|r| inv2.contains(r)) {
        return Err(fail("Delta_{s1} and Delta_{s2} intersect"));
    }
    if (l1 - p1) % 2 != 0 || (l2 - p2) % 2 != 0 || (p1 - n) % 2 != 0 || (p2 - k2) % 2 != 0 {
        return Err(fail("block sizes have the wrong parity"));
    }
    if l1 + l2 + d0 > d {
        return Err(fail("blocks overlap"));
    }
    let middle = d - l1 - l2 - d0;
    let t1 = (l1 - p1) / 2;
    let t2 = (l2 - p2) / 2;
    let start2 = l1 + middle;

    let m_inv1 = mask(&sys, &inv1);
    let m_inv2 = mask(&sys, &inv2);
    let m_fixed = mask(&sys, &fixed);
    let m_anti1 = mask(&sys, &anti1);
    let m_anti2 = mask(&sys, &anti2);
    let m_g1 = mask(&sys, &dst.gamma1);
    let m_g2 = mask(&sys, &dst.gamma2);
    let not = |m: &[bool]| -> Vec<bool> { m.iter().map(|x| !x).collect() };
    let and =
        |a: &[bool], b: &[bool]| -> Vec<bool> { a.iter().zip(b).map(|(x, y)| *x && *y).collect() };
    let none =
        |ms: &[&Vec<bool>]| -> Vec<bool> { (0..d).map(|r| ms.iter().all(|m| !m[r])).collect() };

    let mut pb = Problem::new(&sys);
    pb.budget = budget;
    let s1_outer = and(&m_inv1, &not(&m_anti1));
    let s2_outer = and(&m_inv2, &not(&m_anti2));
    let mid = none(&[&m_inv1, &m_inv2, &m_fixed]);
    for p in 0..d {
        let set = if p < l1 {
            if (t1..t1 + p1).contains(&p) {
                m_anti1.clone()
            } else {
                s1_outer.clone()
            }
        } else if p < start2 {
            mid.clone()
        } else if p < start2 + l2 {
            if (start2 + t2..start2 + t2 + p2).contains(&p) {
                m_anti2.clone()
            } else {
                s2_outer.clone()
            }
        } else {
            m_fixed.clone()
        };
        pb.restrict(p, &set);
    }
    let g1_first = t1 + (p1 - n) / 2;
    if n > 0 {
        pb.confine(&m_g1, g1_first..t1 + p1);
        pb.restrict(g1_first, &m_g1);
        pb.restrict(t1 + p1 - 1, &m_g1);
    }
    let b2 = start2 + t2;
    if k2 > 0 {
        let g2_last = b2 + p2 - (p2 - k2) / 2 - 1;
        pb.confine(&m_g2, b2..g2_last + 1);
        pb.restrict(b2, &m_g2);
        pb.restrict(g2_last, &m_g2);
    }
    let lo = (l1 - n) / 2;
    let hi = d - d0 - (l2 - k2) / 2;
    let gammas_std = dst.gammas();
    pb.nocomb = Some(NoComb {
        lo,
        hi,
        gammas: gammas_std
            .iter()
            .map(|g| sys.positive_index(g).expect("positive gamma"))
            .collect(),
    });

    let seq_std: Vec<Root> = match pb.solve() {
        Outcome::Found(seq) => seq.iter().map(|&k| sys.positive_roots[k].clone()).collect(),
        Outcome::Infeasible => {
            return Err(fail(
                "no normal ordering realizes the block structure for this decomposition",
            ))
        }
        Outcome::BudgetExhausted => {
            return Err(Error::ConstructionFailed(format!(
                "search budget of {budget} nodes exhausted"
            )))
        }
    };

    let ordering = NormalOrdering::unchecked(&sys, seq_std.iter().map(|r| w.apply(r)).collect());
    let order_of = |set: &[Root]| -> Vec<Root> {
        let mut v: Vec<(usize, Root)> = set
            .iter()
            .map(|g| {
                let img = w.apply(g);
                (ordering.position(&img).expect("gamma in ordering"), img)
            })
            .collect();
        v.sort();
        v.into_iter().map(|(_, r)| r).collect()
    };
    let decomposition = InvolutionDecomposition::new(order_of(&dst.gamma1), order_of(&dst.gamma2));
    let gammas = decomposition
        .gammas()
        .iter()
        .map(|g| ordering.position(g).unwrap())
        .collect();
    let seg = SegmentData {
        ordering,
        m_plus: lo..hi.max(lo),
        gammas,
        decomposition,
        counts: SegmentCounts {
            l_s: st.length(),
            l_prime: dec.l_prime,
            d0,
            d,
            n,
            l1,
            l2,
            p1,
            p2,
            middle,
        },
        transport: w.clone(),
    };
    seg.validate()?;
    Ok(seg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{adapted_positive_system, involution_decompose, PlaneOrder};

    fn seg(label: &str, word: &[usize]) -> SegmentData {
        let sys = RootSystem::build(label).unwrap();
        let s = WeylElement::from_word(&sys, word).unwrap();
        let dec = involution_decompose(&s).unwrap();
        let aps = adapted_positive_system(&s, PlaneOrder::default(), Some(&dec)).unwrap();
        build_adapted_ordering(&s, &dec, &aps).unwrap()
    }

    #[test]
    fn a2_coxeter_segment_is_everything() {
        let sd = seg("A2", &[1, 2]);
        assert_eq!(sd.m_plus.len(), 3);
        assert_eq!(sd.expected_m_plus_len(), 3);
        assert_eq!(sd.gammas.len(), 2);
    }

    #[test]
    fn identity_has_empty_segment() {
        let sd = seg("B2", &[]);
        assert!(sd.m_plus.is_empty());
        assert_eq!(sd.counts.d0, 4);
    }

    #[test]
    fn a1_reflection() {
        let sd = seg("A1", &[1]);
        assert_eq!(sd.m_plus_roots(), &[vec![1]]);
    }

    #[test]
    fn reflection_lengths_are_adapted() {
        // s_{alpha_1} is the reflection in the highest root of its adapted
        // system, which has length 3.
        let sd = seg("A2", &[1]);
        assert_eq!(sd.counts.l_s, 3);
        assert_eq!(sd.m_plus.len(), 2);
    }

    #[test]
    fn lengths_add_for_every_small_class() {
        for label in ["A3", "B3", "G2"] {
            let sys = RootSystem::build(label).unwrap();
            for c in crate::weyl::conjugacy_classes(&sys).unwrap() {
                let s = &c.representative;
                let dec = involution_decompose(s).unwrap();
                let aps = adapted_positive_system(s, PlaneOrder::default(), Some(&dec)).unwrap();
                let sd = build_adapted_ordering(s, &dec, &aps).unwrap();
                assert_eq!(
                    sd.counts.l1 + sd.counts.l2,
                    sd.counts.l_s,
                    "{label} {:?}",
                    s.word()
                );
            }
        }
    }

    #[test]
    fn violations_detected() {
        let sys = RootSystem::build("A2").unwrap();
        // alpha_1 + alpha_2 sits between them and is their sum.
        let seq = vec![vec![1, 0], vec![1, 1], vec![0, 1]];
        let v = no_combination_violations(&sys, &seq, 0..3, &[vec![1, 1]]);
        assert_eq!(v, vec![(vec![1, 0], vec![0, 1])]);
        assert!(no_combination_violations(&sys, &seq, 0..3, &[vec![1, 0], vec![0, 1]]).is_empty());
    }
}
