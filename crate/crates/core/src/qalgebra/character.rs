//! Twisted relations for the generators `e_beta` and the characters of the
//! subalgebra generated by the segment.
//!
//! With `e_beta <-> X_beta exp(h K beta^vee)`, moving the Cartan factors
//! through root vectors multiplies each term by a power of `q` read off from
//! the bilinear form `k(x, y) = (K x^vee, y^vee) = sum_ij x_i n_ij d_j y_j`.

use super::pbw::{ls_relation, root_vectors, LsRelation, PbwTerm};
use crate::cayley::{cayley_matrix, CayleyData};
use crate::error::{Error, Result};
use crate::field::{q_to_string, qi, Matrix, Q};
use crate::ordering::{build_adapted_ordering, SegmentData, StandardView};
use crate::poly::Poly;
use crate::rootsys::{Root, RootSystem};
use crate::scalar::QScalar;
use crate::weyl::{
    adapted_positive_system, involution_decompose, InvolutionDecomposition, PlaneOrder, WeylElement,
};
use num_traits::Zero;
use serde::Serialize;
use std::collections::BTreeMap;

/// `sum_ij x_i n_ij d_j y_j`.
fn kform(sys: &RootSystem, n: &Matrix<Q>, x: &[i64], y: &[i64]) -> Q {
    let mut s = Q::zero();
    for (i, a) in x.iter().enumerate() {
        if *a == 0 {
            continue;
        }
        for (j, b) in y.iter().enumerate() {
            if *b != 0 {
                s += &n[i][j] * qi(a * b * sys.d[j]);
            }
        }
    }
    s
}

/// Relation among the `e_beta`:
/// `e_alpha e_beta - q^qpower e_beta e_alpha = sum rhs`.
pub type TwistedRelation = LsRelation;

/// Twists a straightening relation by the Cartan factors of `cd`.
///
/// The new exponent is `(alpha, beta) + ((1+s)/(1-s) P alpha, beta)`; a term
/// with factors `delta_1 .. delta_m` (expanded, in order) is multiplied by
/// `q^{k(alpha, beta) - sum_{a<b} k(delta_a, delta_b)}`.
pub fn twist_relation(sys: &RootSystem, rel: &LsRelation, cd: &CayleyData) -> TwistedRelation {
    let k = |x: &[i64], y: &[i64]| kform(sys, &cd.n, x, y);
    let (a, b) = (&rel.alpha, &rel.beta);
    let qpower = &rel.qpower + k(a, b) - k(b, a);
    let base = k(a, b);
    let rhs = rel
        .rhs
        .iter()
        .map(|t| {
            let ex = t.expanded();
            let mut e = base.clone();
            for x in 0..ex.len() {
                for y in x + 1..ex.len() {
                    e -= k(&ex[x], &ex[y]);
                }
            }
            PbwTerm {
                factors: t.factors.clone(),
                coeff: t.coeff.mul(&QScalar::q_pow(&e)),
            }
        })
        .collect();
    LsRelation {
        alpha: a.clone(),
        beta: b.clone(),
        qpower,
        rhs,
    }
}

/// Polynomial in the character values `c_1 .. c_{l'}`.
type CPoly = BTreeMap<Vec<u32>, QScalar>;

fn cpoly_add(p: &mut CPoly, m: Vec<u32>, c: QScalar) {
    if c.is_zero() {
        return;
    }
    let v = p.remove(&m).map_or(c.clone(), |x| x.add(&c));
    if !v.is_zero() {
        p.insert(m, v);
    }
}

fn cpoly_string(p: &CPoly) -> String {
    if p.is_empty() {
        return "0".into();
    }
    p.iter()
        .map(|(m, c)| {
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("c{}", i + 1)
                    } else {
                        format!("c{}^{e}", i + 1)
                    }
                })
                .collect();
            format!("({c}) {}", vars.join(" "))
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[derive(Debug, Clone, Serialize)]
pub struct PairResidual {
    pub alpha: Root,
    pub beta: Root,
    #[serde(serialize_with = "ser_q")]
    pub qpower: Q,
    /// The residual as text; `"0"` when the relation holds.
    pub residual: String,
    pub vanishes: bool,
}

fn ser_q<S: serde::Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q_to_string(x))
}

#[derive(Debug, Clone, Serialize)]
pub struct CharacterReport {
    pub gammas: Vec<Root>,
    pub pairs: Vec<PairResidual>,
    /// Gamma pairs whose twisted exponent is not zero.
    pub nonzero_gamma_exponents: Vec<(Root, Root)>,
}

impl CharacterReport {
    pub fn ok(&self) -> bool {
        self.pairs.iter().all(|p| p.vanishes) && self.nonzero_gamma_exponents.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ok": self.ok(),
            "gammas": self.gammas,
            "pairs": self.pairs,
            "nonzero_gamma_exponents": self.nonzero_gamma_exponents,
        })
    }
}

/// Substitutes `chi(e_gamma_i) = c_i` (symbolic) and `chi(e_beta) = 0`
/// otherwise into every relation between roots of `m_plus`, in the order
/// given. Every pair `alpha < beta` of `m_plus` needs a relation.
pub fn verify_character(
    sys: &RootSystem,
    rels: &[TwistedRelation],
    m_plus: &[Root],
    gammas: &[Root],
) -> Result<CharacterReport> {
    let l = gammas.len();
    let value = |r: &Root| -> Option<usize> { gammas.iter().position(|g| g == r) };
    let mut pairs = vec![];
    let mut bad_gamma = vec![];
    for a in 0..m_plus.len() {
        for b in a + 1..m_plus.len() {
            let (alpha, beta) = (&m_plus[a], &m_plus[b]);
            let rel = rels
                .iter()
                .find(|r| &r.alpha == alpha && &r.beta == beta)
                .ok_or_else(|| Error::IncompleteRelations(format!("{alpha:?}, {beta:?}")))?;
            let mut res = CPoly::new();
            if let (Some(i), Some(j)) = (value(alpha), value(beta)) {
                if !rel.qpower.is_zero() {
                    bad_gamma.push((alpha.clone(), beta.clone()));
                }
                let mut m = vec![0u32; l];
                m[i] += 1;
                m[j] += 1;
                cpoly_add(
                    &mut res,
                    m,
                    QScalar::one().sub(&QScalar::q_pow(&rel.qpower)),
                );
            }
            for t in &rel.rhs {
                let mut m = vec![0u32; l];
                let mut c = t.coeff.clone();
                let mut vanishes = false;
                for (r, k) in &t.factors {
                    match value(r) {
                        Some(i) => {
                            m[i] += k;
                            let d = sys.form_int(r, r) / 2;
                            c = c.mul(&QScalar::qfactorial(*k, d).inv());
                        }
                        None => vanishes = true,
                    }
                }
                if !vanishes {
                    cpoly_add(&mut res, m, c.neg());
                }
            }
            pairs.push(PairResidual {
                alpha: alpha.clone(),
                beta: beta.clone(),
                qpower: rel.qpower.clone(),
                residual: cpoly_string(&res),
                vanishes: res.is_empty(),
            });
        }
    }
    Ok(CharacterReport {
        gammas: gammas.to_vec(),
        pairs,
        nonzero_gamma_exponents: bad_gamma,
    })
}

/// Relations whose right-hand side has a monomial built from gammas alone.
pub fn check_no_combination_support(rels: &[LsRelation], gammas: &[Root]) -> Vec<(Root, Root)> {
    rels.iter()
        .filter(|r| {
            r.rhs
                .iter()
                .any(|t| t.factors.iter().all(|(x, _)| gammas.contains(x)))
        })
        .map(|r| (r.alpha.clone(), r.beta.clone()))
        .collect()
}

/// True when `x` lies in `C[q^{+-1/2d}, 1/[k]_{q_i} (k <= max_k),
/// (1-q^{1/2d})/(1-q_i^{-2})]`: exponents in `(1/2d) Z` and a denominator
/// dividing a power of `q` times products of `q_i^{2k} - 1`.
pub fn in_localization(x: &QScalar, sys: &RootSystem, d: u64, max_k: u32) -> bool {
    let (den, root) = x.denominator();
    let (_, nroot) = x.numerator();
    let two_d = 2 * d as usize;
    if !two_d.is_multiple_of(root) || !two_d.is_multiple_of(nroot) {
        return false;
    }
    let Some(deg) = den.degree() else {
        return false;
    };
    let mut allowed = Poly::monomial(Q::from_integer(1.into()), deg);
    let mut ds: Vec<i64> = sys.d.clone();
    ds.sort();
    ds.dedup();
    for di in ds {
        for k in 1..=max_k as usize {
            let e = 2 * k * di as usize * root;
            let mut c = vec![Q::zero(); e + 1];
            c[0] = qi(-1);
            c[e] = qi(1);
            allowed = allowed.mul(&Poly::new(c));
        }
    }
    allowed.divrem(den).1.is_zero()
}

/// Everything computed for one Weyl group element: its segment, the Cayley
/// data in standard coordinates, the twisted relations on the segment and
/// the character check.
pub struct QnilCheck {
    pub segment: SegmentData,
    pub standard: StandardView,
    pub cayley: CayleyData,
    pub relations: Vec<TwistedRelation>,
    pub report: CharacterReport,
    /// Pairs whose twisted coefficients fall outside the localization.
    pub outside_localization: Vec<(Root, Root)>,
}

impl QnilCheck {
    pub fn ok(&self) -> bool {
        self.report.ok() && self.outside_localization.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ok": self.ok(),
            "segment": self.segment.to_json(),
            "standard_ordering": self.standard.ordering.sequence(),
            "cayley": self.cayley.to_json(),
            "relations": self.relations.iter().map(LsRelation::to_json).collect::<Vec<_>>(),
            "character": self.report.to_json(),
            "outside_localization": self.outside_localization,
        })
    }
}

/// Runs the whole chain for `s`, using `dec` or the first decomposition.
pub fn check_element(s: &WeylElement, dec: Option<&InvolutionDecomposition>) -> Result<QnilCheck> {
    let sys = s.system().clone();
    let dec = match dec {
        Some(d) => d.clone(),
        None => involution_decompose(s)?,
    };
    let aps = adapted_positive_system(s, PlaneOrder::default(), Some(&dec))?;
    let segment = build_adapted_ordering(s, &dec, &aps)?;
    let standard = segment.standard();
    let cayley = cayley_matrix(&standard.element, &standard.decomposition)?;
    let word = standard.ordering.reduced_word()?;
    let table = root_vectors(&sys, &word)?;
    let m_plus = standard.m_plus_roots().to_vec();
    let mut relations = vec![];
    let mut outside_localization = vec![];
    for a in 0..m_plus.len() {
        for b in a + 1..m_plus.len() {
            let rel = ls_relation(&table, &m_plus[a], &m_plus[b])?;
            let tw = twist_relation(&sys, &rel, &cayley);
            if tw
                .rhs
                .iter()
                .any(|t| !in_localization(&t.coeff, &sys, cayley.d, 4))
            {
                outside_localization.push((tw.alpha.clone(), tw.beta.clone()));
            }
            relations.push(tw);
        }
    }
    let report = verify_character(&sys, &relations, &m_plus, &standard.decomposition.gammas())?;
    Ok(QnilCheck {
        segment,
        standard,
        cayley,
        relations,
        report,
        outside_localization,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;
    use crate::weyl::conjugacy_classes;

    #[test]
    fn a2_coxeter_twisted_exponent_vanishes() {
        let sys = RootSystem::build("A2").unwrap();
        let s = WeylElement::from_word(&sys, &[1, 2]).unwrap();
        let chk = check_element(&s, None).unwrap();
        assert_eq!(chk.relations.len(), 3);
        let g = chk.standard.decomposition.gammas();
        let rel = chk
            .relations
            .iter()
            .find(|r| r.alpha == g[0] && r.beta == g[1])
            .unwrap();
        assert_eq!(rel.qpower, Q::zero());
        assert!(chk.ok(), "{}", chk.to_json());
    }

    #[test]
    fn twist_matches_cayley_pairing() {
        // New exponent minus old is ((1+s)/(1-s) P alpha, beta).
        let sys = RootSystem::build("B2").unwrap();
        let s = WeylElement::coxeter(&sys);
        let chk = check_element(&s, None).unwrap();
        let op = crate::cayley::CayleyOperator::from_element(&chk.standard.element).unwrap();
        for r in &chk.relations {
            let old = sys.form(&r.alpha, &r.beta);
            let (a, b): (Vec<Q>, Vec<Q>) = (
                r.alpha.iter().map(|&x| qi(x)).collect(),
                r.beta.iter().map(|&x| qi(x)).collect(),
            );
            assert_eq!(
                &r.qpower - old,
                op.pair(&a, &b),
                "{:?} {:?}",
                r.alpha,
                r.beta
            );
        }
    }

    #[test]
    fn every_rank_two_class_admits_the_character() {
        for label in ["A2", "B2", "G2"] {
            let sys = RootSystem::build(label).unwrap();
            for c in conjugacy_classes(&sys).unwrap() {
                let chk = check_element(&c.representative, None).unwrap();
                assert!(
                    chk.ok(),
                    "{label} {:?}: {}",
                    c.representative.word(),
                    chk.report.to_json()
                );
            }
        }
    }

    #[test]
    fn untwisted_relations_do_not_admit_the_character() {
        let sys = RootSystem::build("A2").unwrap();
        let s = WeylElement::from_word(&sys, &[1, 2]).unwrap();
        let chk = check_element(&s, None).unwrap();
        let word = chk.standard.ordering.reduced_word().unwrap();
        let table = root_vectors(&sys, &word).unwrap();
        let m = chk.standard.m_plus_roots().to_vec();
        let mut rels = vec![];
        for a in 0..m.len() {
            for b in a + 1..m.len() {
                rels.push(ls_relation(&table, &m[a], &m[b]).unwrap());
            }
        }
        let g = chk.standard.decomposition.gammas();
        let rep = verify_character(&sys, &rels, &m, &g).unwrap();
        assert!(!rep.ok());
        assert!(check_no_combination_support(&rels, &g).is_empty());
    }

    #[test]
    fn missing_relation_is_reported() {
        let sys = RootSystem::build("A2").unwrap();
        let m = vec![vec![1, 0], vec![1, 1]];
        assert!(matches!(
            verify_character(&sys, &[], &m, &m[..1]),
            Err(Error::IncompleteRelations(_))
        ));
    }

    #[test]
    fn localization_membership() {
        let sys = RootSystem::build("B2").unwrap();
        assert!(in_localization(&QScalar::qint(3, 2).inv(), &sys, 2, 4));
        assert!(in_localization(&QScalar::q_pow(&q(1, 4)), &sys, 2, 4));
        assert!(!in_localization(&QScalar::q_pow(&q(1, 8)), &sys, 2, 4));
        let bad = QScalar::var().sub(&QScalar::from_int(3)).inv();
        assert!(!in_localization(&bad, &sys, 2, 4));
    }
}
