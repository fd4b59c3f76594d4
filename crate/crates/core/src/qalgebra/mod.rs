//! The quantum group `U_h(g)` on generators `E_i`, `F_i` and Cartan
//! exponentials, with elements kept in `F . K . E` normal form.
//!
//! A Cartan factor `K^c` stands for `exp(h sum_j c_j H_j)` with rational `c`,
//! so `K_i = K^{d_i e_i}` and the twisting factors `exp(h K beta^vee)` fit in
//! the same representation. Commutation uses
//!
//! ```text
//! K^c E_k = q^{sum_j c_j a_jk} E_k K^c        K^c F_k = q^{-sum_j c_j a_jk} F_k K^c
//! E_i F_j - F_j E_i = delta_ij (K_i - K_i^{-1}) / (q_i - q_i^{-1})
//! ```

mod character;
mod modp;
mod pbw;

pub use character::{
    check_element, check_no_combination_support, in_localization, twist_relation, verify_character,
    CharacterReport, PairResidual, QnilCheck, TwistedRelation,
};
pub use pbw::{
    ls_relation, pbw_monomials, quantum_serre, reduce_mod_serre, root_vectors,
    serre_ideal_component, word_basis, LsRelation, PbwTerm, RootVectorTable, SerreComponent,
};

use crate::field::{qi, Q};
use crate::rootsys::RootSystem;
use crate::scalar::QScalar;
use num_traits::Zero;
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

/// `F_{f[0]} ... F_{f[m]} K^k E_{e[0]} ... E_{e[n]}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub f: Vec<u8>,
    pub k: Vec<Q>,
    pub e: Vec<u8>,
}

impl Monomial {
    fn unit(rank: usize) -> Self {
        Monomial {
            f: vec![],
            k: vec![Q::zero(); rank],
            e: vec![],
        }
    }

    pub fn is_pure_e(&self) -> bool {
        self.f.is_empty() && self.k.iter().all(|x| x.is_zero())
    }
}

/// A letter of a raw (unordered) word.
#[derive(Debug, Clone, PartialEq)]
pub enum Letter {
    E(usize),
    F(usize),
    K(Vec<Q>),
}

/// Element of `U_h(g)` in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NCPoly {
    pub rank: usize,
    pub terms: BTreeMap<Monomial, QScalar>,
}

impl NCPoly {
    pub fn zero(rank: usize) -> Self {
        NCPoly {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        NCPoly::monomial(Monomial::unit(rank), QScalar::one())
    }

    pub fn monomial(m: Monomial, c: QScalar) -> Self {
        let mut p = NCPoly::zero(m.k.len());
        p.add_term(m, c);
        p
    }

    pub fn scalar(rank: usize, c: QScalar) -> Self {
        NCPoly::monomial(Monomial::unit(rank), c)
    }

    /// `E_w` for a word of indices.
    pub fn e_word(rank: usize, w: &[u8]) -> Self {
        let mut m = Monomial::unit(rank);
        m.e = w.to_vec();
        NCPoly::monomial(m, QScalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: QScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, o: &NCPoly) -> NCPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &NCPoly) -> NCPoly {
        self.add(&o.scale(&QScalar::from_int(-1)))
    }

    pub fn scale(&self, c: &QScalar) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero(self.rank);
        }
        NCPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x.mul(c)))
                .collect(),
        }
    }

    /// True when every term is a word in the `E_i` alone.
    pub fn is_pure_e(&self) -> bool {
        self.terms.keys().all(Monomial::is_pure_e)
    }

    /// Coefficient of the pure `E` word `w`.
    pub fn e_coeff(&self, w: &[u8]) -> QScalar {
        let mut m = Monomial::unit(self.rank);
        m.e = w.to_vec();
        self.terms.get(&m).cloned().unwrap_or_else(QScalar::zero)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|(m, c)| {
                serde_json::json!({
                    "f": m.f.iter().map(|i| i + 1).collect::<Vec<_>>(),
                    "k": m.k.iter().map(crate::field::q_to_string).collect::<Vec<_>>(),
                    "e": m.e.iter().map(|i| i + 1).collect::<Vec<_>>(),
                    "coeff": c.to_json(),
                })
            })
            .collect();
        serde_json::json!({ "terms": terms })
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut parts = vec![];
            for i in &m.f {
                parts.push(format!("F{}", i + 1));
            }
            if m.k.iter().any(|x| !x.is_zero()) {
                let k: Vec<_> = m.k.iter().map(crate::field::q_to_string).collect();
                parts.push(format!("K[{}]", k.join(",")));
            }
            for i in &m.e {
                parts.push(format!("E{}", i + 1));
            }
            if parts.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c}) {}", parts.join(" "))?;
            }
        }
        Ok(())
    }
}

/// The algebra itself: structure constants plus a cache of `E . F`
/// straightening results.
pub struct QAlgebra {
    sys: Arc<RootSystem>,
    ef_cache: RefCell<HashMap<(Vec<u8>, Vec<u8>), NCPoly>>,
    braid_cache: RefCell<HashMap<(usize, Letter2), NCPoly>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Letter2 {
    E(u8),
    F(u8),
}

impl QAlgebra {
    pub fn new(sys: &Arc<RootSystem>) -> Self {
        QAlgebra {
            sys: sys.clone(),
            ef_cache: RefCell::new(HashMap::new()),
            braid_cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.sys
    }

    pub fn rank(&self) -> usize {
        self.sys.rank
    }

    pub fn e(&self, i: usize) -> NCPoly {
        NCPoly::e_word(self.rank(), &[i as u8])
    }

    pub fn f(&self, i: usize) -> NCPoly {
        let mut m = Monomial::unit(self.rank());
        m.f = vec![i as u8];
        NCPoly::monomial(m, QScalar::one())
    }

    /// `K^c = exp(h sum_j c_j H_j)`.
    pub fn k(&self, c: &[Q]) -> NCPoly {
        let mut m = Monomial::unit(self.rank());
        m.k = c.to_vec();
        NCPoly::monomial(m, QScalar::one())
    }

    /// `K_i^{p} = K^{p d_i e_i}`.
    pub fn k_i(&self, i: usize, p: i64) -> NCPoly {
        self.k(&self.k_vec(i, p))
    }

    fn k_vec(&self, i: usize, p: i64) -> Vec<Q> {
        let mut c = vec![Q::zero(); self.rank()];
        c[i] = qi(p * self.sys.d[i]);
        c
    }

    /// `sum_j c_j a_{j t}`: the exponent picked up by `E_t` passing `K^c`.
    fn weight_of(&self, c: &[Q], t: u8) -> Q {
        let t = t as usize;
        c.iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| x * qi(self.sys.cartan[j][t]))
            .sum()
    }

    fn word_weight(&self, c: &[Q], w: &[u8]) -> Q {
        w.iter().map(|&t| self.weight_of(c, t)).sum()
    }

    /// Normal form of a raw word of letters.
    pub fn normal_form(&self, word: &[Letter]) -> NCPoly {
        let mut acc = NCPoly::one(self.rank());
        for l in word {
            let x = match l {
                Letter::E(i) => self.e(*i),
                Letter::F(i) => self.f(*i),
                Letter::K(c) => self.k(c),
            };
            acc = self.mul(&acc, &x);
        }
        acc
    }

    pub fn mul(&self, a: &NCPoly, b: &NCPoly) -> NCPoly {
        let mut r = NCPoly::zero(self.rank());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let c = ca.mul(cb);
                self.mul_monomials_into(ma, mb, &c, &mut r);
            }
        }
        r
    }

    pub fn pow(&self, a: &NCPoly, n: u32) -> NCPoly {
        (0..n).fold(NCPoly::one(self.rank()), |acc, _| self.mul(&acc, a))
    }

    /// `a^(n) = a^n / [n]_{q^d}!`.
    pub fn divided_power(&self, a: &NCPoly, n: u32, d: i64) -> NCPoly {
        self.pow(a, n).scale(&QScalar::qfactorial(n, d).inv())
    }

    /// `(F_a K^{ka} E_a)(F_b K^{kb} E_b)`, accumulated into `out` times `c`.
    fn mul_monomials_into(&self, a: &Monomial, b: &Monomial, c: &QScalar, out: &mut NCPoly) {
        let mid = self.ef(&a.e, &b.f);
        for (m, cm) in &mid.terms {
            // F_a K^{ka} [F' K^{k'} E'] K^{kb} E_b
            let exp = -self.word_weight(&a.k, &m.f) - self.word_weight(&b.k, &m.e);
            let mut f = a.f.clone();
            f.extend_from_slice(&m.f);
            let mut e = m.e.clone();
            e.extend_from_slice(&b.e);
            let k =
                a.k.iter()
                    .zip(&m.k)
                    .zip(&b.k)
                    .map(|((x, y), z)| x + y + z)
                    .collect();
            let coeff = if exp.is_zero() {
                c.mul(cm)
            } else {
                c.mul(cm).mul(&QScalar::q_pow(&exp))
            };
            out.add_term(Monomial { f, k, e }, coeff);
        }
    }

    /// Normal form of `E_e F_f`.
    fn ef(&self, e: &[u8], f: &[u8]) -> NCPoly {
        let rank = self.rank();
        if e.is_empty() || f.is_empty() {
            return NCPoly::monomial(
                Monomial {
                    f: f.to_vec(),
                    k: vec![Q::zero(); rank],
                    e: e.to_vec(),
                },
                QScalar::one(),
            );
        }
        let key = (e.to_vec(), f.to_vec());
        if let Some(p) = self.ef_cache.borrow().get(&key) {
            return p.clone();
        }
        let (&last, rest) = e.split_last().unwrap();
        let x = self.e1f(last, f);
        let mut r = NCPoly::zero(rank);
        for (m, cm) in &x.terms {
            // E_rest (F' K^{k'} E')
            let y = self.ef(rest, &m.f);
            for (m2, c2) in &y.terms {
                let exp = -self.word_weight(&m.k, &m2.e);
                let mut e2 = m2.e.clone();
                e2.extend_from_slice(&m.e);
                let k = m2.k.iter().zip(&m.k).map(|(a, b)| a + b).collect();
                let mut c = cm.mul(c2);
                if !exp.is_zero() {
                    c = c.mul(&QScalar::q_pow(&exp));
                }
                r.add_term(
                    Monomial {
                        f: m2.f.clone(),
                        k,
                        e: e2,
                    },
                    c,
                );
            }
        }
        self.ef_cache.borrow_mut().insert(key, r.clone());
        r
    }

    /// Normal form of `E_i F_f`.
    fn e1f(&self, i: u8, f: &[u8]) -> NCPoly {
        let rank = self.rank();
        let Some((&first, rest)) = f.split_first() else {
            return NCPoly::e_word(rank, &[i]);
        };
        let mut r = NCPoly::zero(rank);
        for (m, c) in &self.e1f(i, rest).terms {
            let mut m = m.clone();
            m.f.insert(0, first);
            r.add_term(m, c.clone());
        }
        if first == i {
            let d = self.sys.d[i as usize];
            let denom = QScalar::q_pow_int(d).sub(&QScalar::q_pow_int(-d)).inv();
            for sign in [1i64, -1] {
                let kv = self.k_vec(i as usize, sign);
                let exp = -self.word_weight(&kv, rest);
                let c = denom.scale(&qi(sign)).mul(&QScalar::q_pow(&exp));
                r.add_term(
                    Monomial {
                        f: rest.to_vec(),
                        k: kv,
                        e: vec![],
                    },
                    c,
                );
            }
        }
        r
    }

    /// `q_i^n`.
    fn qi_pow(&self, i: usize, n: i64) -> QScalar {
        QScalar::q_pow_int(self.sys.d[i] * n)
    }

    fn braid_letter(&self, i: usize, l: &Letter2) -> NCPoly {
        let key = (i, l.clone());
        if let Some(p) = self.braid_cache.borrow().get(&key) {
            return p.clone();
        }
        let rank = self.rank();
        let di = self.sys.d[i];
        let r = match *l {
            Letter2::E(j) if j as usize == i => {
                // -F_i K_i
                let m = Monomial {
                    f: vec![i as u8],
                    k: self.k_vec(i, 1),
                    e: vec![],
                };
                NCPoly::monomial(m, QScalar::from_int(-1))
            }
            Letter2::F(j) if j as usize == i => {
                // -K_i^{-1} E_i
                let m = Monomial {
                    f: vec![],
                    k: self.k_vec(i, -1),
                    e: vec![i as u8],
                };
                NCPoly::monomial(m, QScalar::from_int(-1))
            }
            Letter2::E(j) => {
                let a = -self.sys.cartan[i][j as usize];
                let mut s = NCPoly::zero(rank);
                for r in 0..=a {
                    let sign = if (r + a) % 2 == 0 { 1 } else { -1 };
                    let c = self
                        .qi_pow(i, -r)
                        .scale(&qi(sign))
                        .mul(&QScalar::qfactorial((a - r) as u32, di).inv())
                        .mul(&QScalar::qfactorial(r as u32, di).inv());
                    let mut w = vec![i as u8; (a - r) as usize];
                    w.push(j);
                    w.extend(std::iter::repeat_n(i as u8, r as usize));
                    s.add_term(
                        Monomial {
                            f: vec![],
                            k: vec![Q::zero(); rank],
                            e: w,
                        },
                        c,
                    );
                }
                s
            }
            Letter2::F(j) => {
                let a = -self.sys.cartan[i][j as usize];
                let mut s = NCPoly::zero(rank);
                for r in 0..=a {
                    let sign = if (r + a) % 2 == 0 { 1 } else { -1 };
                    let c = self
                        .qi_pow(i, r)
                        .scale(&qi(sign))
                        .mul(&QScalar::qfactorial(r as u32, di).inv())
                        .mul(&QScalar::qfactorial((a - r) as u32, di).inv());
                    let mut w = vec![i as u8; r as usize];
                    w.push(j);
                    w.extend(std::iter::repeat_n(i as u8, (a - r) as usize));
                    s.add_term(
                        Monomial {
                            f: w,
                            k: vec![Q::zero(); rank],
                            e: vec![],
                        },
                        c,
                    );
                }
                s
            }
        };
        self.braid_cache.borrow_mut().insert(key, r.clone());
        r
    }

    /// `T_i(K^c)`: `H_j -> H_j - a_ji H_i`.
    fn braid_k(&self, i: usize, c: &[Q]) -> Vec<Q> {
        let mut out = c.to_vec();
        let shift: Q = c
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| x * qi(self.sys.cartan[j][i]))
            .sum();
        out[i] -= shift;
        out
    }

    /// Lusztig's automorphism `T_i` (0-based index).
    pub fn braid_t(&self, i: usize, x: &NCPoly) -> NCPoly {
        let rank = self.rank();
        let mut r = NCPoly::zero(rank);
        for (m, c) in &x.terms {
            let mut acc = NCPoly::scalar(rank, c.clone());
            for &j in &m.f {
                acc = self.mul(&acc, &self.braid_letter(i, &Letter2::F(j)));
            }
            if m.k.iter().any(|v| !v.is_zero()) {
                acc = self.mul(&acc, &self.k(&self.braid_k(i, &m.k)));
            }
            for &j in &m.e {
                acc = self.mul(&acc, &self.braid_letter(i, &Letter2::E(j)));
            }
            r = r.add(&acc);
        }
        r
    }

    /// `T_{w_1} ... T_{w_n}(x)`, innermost first.
    pub fn braid_word(&self, word: &[usize], x: &NCPoly) -> NCPoly {
        word.iter()
            .rev()
            .fold(x.clone(), |acc, &i| self.braid_t(i, &acc))
    }
}

/// Free-function form of `T_i`.
pub fn braid_t(alg: &QAlgebra, i: usize, x: &NCPoly) -> NCPoly {
    alg.braid_t(i, x)
}

/// Free-function form of normal ordering a raw word.
pub fn normal_form(alg: &QAlgebra, word: &[Letter]) -> NCPoly {
    alg.normal_form(word)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(label: &str) -> QAlgebra {
        QAlgebra::new(&RootSystem::build(label).unwrap())
    }

    fn q(e: i64) -> QScalar {
        QScalar::q_pow_int(e)
    }

    #[test]
    fn e1_f1_straightens() {
        let a = alg("A1");
        let x = a.normal_form(&[Letter::E(0), Letter::F(0)]);
        let denom = q(1).sub(&q(-1)).inv();
        let expected = a
            .normal_form(&[Letter::F(0), Letter::E(0)])
            .add(&a.k_i(0, 1).scale(&denom))
            .sub(&a.k_i(0, -1).scale(&denom));
        assert_eq!(x, expected);
    }

    #[test]
    fn cartan_commutation() {
        let a = alg("A2");
        let k1 = a.k_i(0, 1);
        let lhs = a.mul(&k1, &a.e(1));
        let rhs = a.mul(&a.e(1), &k1).scale(&q(-1));
        assert_eq!(lhs, rhs);
        let lhs = a.mul(&k1, &a.f(0));
        let rhs = a.mul(&a.f(0), &k1).scale(&q(-2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn braid_on_a2_generators() {
        let a = alg("A2");
        let t = a.braid_t(0, &a.e(1));
        let expected = NCPoly::e_word(2, &[0, 1])
            .scale(&QScalar::from_int(-1))
            .add(&NCPoly::e_word(2, &[1, 0]).scale(&q(-1)));
        assert_eq!(t, expected);
        let t = a.braid_t(0, &a.e(0));
        assert_eq!(
            t,
            a.mul(&a.f(0), &a.k_i(0, 1)).scale(&QScalar::from_int(-1))
        );
    }

    #[test]
    fn braid_preserves_defining_relations() {
        let a = alg("B2");
        // T_i respects [E_j, F_j] = (K_j - K_j^-1)/(q_j - q_j^-1).
        for i in 0..2 {
            for j in 0..2 {
                let ej = a.braid_t(i, &a.e(j));
                let fj = a.braid_t(i, &a.f(j));
                let comm = a.mul(&ej, &fj).sub(&a.mul(&fj, &ej));
                let d = a.sys.d[j];
                let rhs = a
                    .k_i(j, 1)
                    .sub(&a.k_i(j, -1))
                    .scale(&q(d).sub(&q(-d)).inv());
                assert_eq!(comm, a.braid_t(i, &rhs), "i={i} j={j}");
            }
        }
    }

    #[test]
    fn braid_relation_a2() {
        let a = alg("A2");
        let gens = [a.e(0), a.e(1), a.f(0), a.f(1), a.k_i(0, 1)];
        for g in &gens {
            let l = a.braid_word(&[0, 1, 0], g);
            let r = a.braid_word(&[1, 0, 1], g);
            assert_eq!(l, r);
        }
    }
}
