//! Root vectors from a reduced word, the Serre ideal in a fixed weight and
//! the straightening relations between root vectors.

use super::{modp, Monomial, NCPoly, QAlgebra};
use crate::error::{Error, Result};
use crate::field::{solve, Echelon, Field, Matrix, Solution, Q};
use crate::ordering::NormalOrdering;
use crate::rootsys::{Root, RootSystem};
use crate::scalar::QScalar;
use serde::Serialize;
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

/// Default bound on the height of weights handled by the linear algebra.
pub const DEFAULT_HEIGHT_BOUND: i64 = 12;

/// Root vectors `X_{beta_k} = T_{i_1} ... T_{i_{k-1}} E_{i_k}` of a reduced
/// word of the longest element, in the order of the associated normal
/// ordering.
pub struct RootVectorTable {
    pub alg: QAlgebra,
    /// 0-based, matching the generator indices of `alg`.
    pub word: Vec<usize>,
    pub ordering: NormalOrdering,
    pub vectors: Vec<NCPoly>,
    pub shuffle: ShuffleModel,
    powers: RefCell<HashMap<(usize, u32), NCPoly>>,
}

impl RootVectorTable {
    pub fn system(&self) -> &Arc<RootSystem> {
        self.alg.system()
    }

    pub fn roots(&self) -> &[Root] {
        self.ordering.sequence()
    }

    pub fn vector(&self, beta: &[i64]) -> Option<&NCPoly> {
        self.ordering.position(beta).map(|p| &self.vectors[p])
    }

    /// Serre ideal component of weight `mu`, shared by every table of the
    /// same root system.
    pub fn serre(&self, mu: &[i64]) -> Result<Arc<SerreComponent>> {
        static CACHE: OnceLock<Mutex<HashMap<(String, Root), Arc<SerreComponent>>>> =
            OnceLock::new();
        let key = (self.system().label().to_string(), mu.to_vec());
        let cache = CACHE.get_or_init(Default::default);
        if let Some(c) = cache.lock().unwrap().get(&key) {
            return Ok(c.clone());
        }
        let c = Arc::new(serre_ideal_component(&self.alg, mu, DEFAULT_HEIGHT_BOUND)?);
        cache.lock().unwrap().insert(key, c.clone());
        Ok(c)
    }

    /// `X_beta^(k)` with the divided power taken in `q_beta`.
    pub fn divided_power(&self, pos: usize, k: u32) -> NCPoly {
        if let Some(p) = self.powers.borrow().get(&(pos, k)) {
            return p.clone();
        }
        let beta = &self.roots()[pos];
        let d = self.system().form_int(beta, beta) / 2;
        let p = self.alg.divided_power(&self.vectors[pos], k, d);
        self.powers.borrow_mut().insert((pos, k), p.clone());
        p
    }

    /// The PBW monomial with exponent vector `exps` (indexed by position).
    pub fn pbw_element(&self, exps: &[u32]) -> NCPoly {
        let mut acc = NCPoly::one(self.alg.rank());
        for (pos, &k) in exps.iter().enumerate() {
            if k > 0 {
                acc = self.alg.mul(&acc, &self.divided_power(pos, k));
            }
        }
        acc
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<_> = self
            .roots()
            .iter()
            .zip(&self.vectors)
            .map(|(r, v)| serde_json::json!({"root": r, "vector": v.to_json()}))
            .collect();
        serde_json::json!({
            "word": self.word.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "root_vectors": rows,
        })
    }
}

/// Builds the table for a reduced word of `w_0` (1-based indices, like
/// every other word in the crate).
pub fn root_vectors(sys: &Arc<RootSystem>, word: &[usize]) -> Result<RootVectorTable> {
    let ordering = NormalOrdering::from_reduced_word(sys, word)?;
    let alg = QAlgebra::new(sys);
    let word: Vec<usize> = word.iter().map(|i| i - 1).collect();
    let mut vectors = Vec::with_capacity(word.len());
    for (k, &i) in word.iter().enumerate() {
        let x = alg.braid_word(&word[..k], &alg.e(i));
        let beta = &ordering.sequence()[k];
        let homogeneous = x.terms.keys().all(|m| {
            let mut wt = vec![0i64; sys.rank];
            m.e.iter().for_each(|&t| wt[t as usize] += 1);
            wt == *beta
        });
        if !x.is_pure_e() || !homogeneous || x.is_zero() {
            return Err(Error::ImpureRootVector(beta.clone()));
        }
        vectors.push(x);
    }
    Ok(RootVectorTable {
        alg,
        word,
        ordering,
        vectors,
        shuffle: ShuffleModel::new(sys),
        powers: RefCell::new(HashMap::new()),
    })
}

/// All words with letter multiplicities `mu`, in lexicographic order.
pub fn word_basis(mu: &[i64]) -> Vec<Vec<u8>> {
    fn go(left: &mut Vec<i64>, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if left.iter().all(|&x| x == 0) {
            out.push(cur.clone());
            return;
        }
        for i in 0..left.len() {
            if left[i] > 0 {
                left[i] -= 1;
                cur.push(i as u8);
                go(left, cur, out);
                cur.pop();
                left[i] += 1;
            }
        }
    }
    let mut out = vec![];
    go(&mut mu.to_vec(), &mut vec![], &mut out);
    out
}

/// `sum_r (-1)^r [1-a_ij choose r]_{q_i} E_i^{1-a_ij-r} E_j E_i^r`.
pub fn quantum_serre(sys: &RootSystem, i: usize, j: usize) -> NCPoly {
    let n = 1 - sys.cartan[i][j];
    let mut p = NCPoly::zero(sys.rank);
    for r in 0..=n {
        let mut w = vec![i as u8; (n - r) as usize];
        w.push(j as u8);
        w.extend(std::iter::repeat_n(i as u8, r as usize));
        let c = QScalar::qbinomial(n as u32, r as u32, sys.d[i]);
        let c = if r % 2 == 0 { c } else { c.neg() };
        p.add_term(
            NCPoly::e_word(sys.rank, &w)
                .terms
                .into_keys()
                .next()
                .unwrap(),
            c,
        );
    }
    p
}

/// The weight-`mu` component of the two-sided ideal generated by the quantum
/// Serre relators in the free algebra on the `E_i`, in word coordinates.
pub struct SerreComponent {
    pub weight: Root,
    pub words: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
    pub echelon: Echelon<QScalar>,
}

impl SerreComponent {
    pub fn dim(&self) -> usize {
        self.words.len()
    }

    /// Dimension of the quotient `U^+_mu`.
    pub fn quotient_dim(&self) -> usize {
        self.words.len() - self.echelon.rank()
    }

    /// Coordinates of a pure-`E` element of this weight.
    pub fn coords(&self, p: &NCPoly) -> Result<Vec<QScalar>> {
        let mut v = vec![QScalar::zero(); self.words.len()];
        for (m, c) in &p.terms {
            let idx = (m.is_pure_e())
                .then(|| self.index.get(&m.e))
                .flatten()
                .ok_or_else(|| {
                    Error::InvariantViolation(format!(
                        "term outside weight {:?} in straightening",
                        self.weight
                    ))
                })?;
            v[*idx] = c.clone();
        }
        Ok(v)
    }

    pub fn reduce(&self, v: &[QScalar]) -> Vec<QScalar> {
        self.echelon.reduce(v)
    }

    /// Word positions that are not pivots. Reduced vectors live there, so
    /// these coordinates identify `U^+_mu`.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut used = vec![false; self.words.len()];
        self.echelon.pivots.iter().for_each(|&p| used[p] = true);
        (0..self.words.len()).filter(|&i| !used[i]).collect()
    }

    pub fn contains(&self, p: &NCPoly) -> Result<bool> {
        Ok(self.reduce(&self.coords(p)?).iter().all(|x| x.is_zero()))
    }
}

/// Canonical representative of `x` modulo the Serre relations in both the
/// `E` and the `F` letters: for each fixed `F`-word and `K` part the `E`-part
/// is reduced against the Serre component of its weight, then symmetrically
/// for the `F`-part. Two elements are equal in the quantum group iff their
/// reductions coincide.
pub fn reduce_mod_serre(alg: &QAlgebra, x: &NCPoly) -> Result<NCPoly> {
    let mut comps: HashMap<Root, SerreComponent> = HashMap::new();
    let pass = |x: &NCPoly, comps: &mut HashMap<Root, SerreComponent>, on_e: bool| {
        // (fixed part, weight) -> word -> coefficient
        let mut groups: BTreeMap<(Vec<u8>, Vec<Q>, Root), Vec<(Vec<u8>, QScalar)>> =
            BTreeMap::new();
        for (m, c) in &x.terms {
            let (word, fixed) = if on_e { (&m.e, &m.f) } else { (&m.f, &m.e) };
            let mut mu = vec![0i64; alg.rank()];
            word.iter().for_each(|&i| mu[i as usize] += 1);
            groups
                .entry((fixed.clone(), m.k.clone(), mu))
                .or_default()
                .push((word.clone(), c.clone()));
        }
        let mut out = NCPoly::zero(alg.rank());
        for ((fixed, k, mu), terms) in groups {
            if !comps.contains_key(&mu) {
                comps.insert(
                    mu.clone(),
                    serre_ideal_component(alg, &mu, DEFAULT_HEIGHT_BOUND)?,
                );
            }
            let comp = &comps[&mu];
            let mut v = vec![QScalar::zero(); comp.words.len()];
            for (w, c) in terms {
                v[comp.index[&w]] = c;
            }
            for (w, c) in comp.words.iter().zip(comp.reduce(&v)) {
                let (e, f) = if on_e {
                    (w.clone(), fixed.clone())
                } else {
                    (fixed.clone(), w.clone())
                };
                out.add_term(Monomial { f, k: k.clone(), e }, c);
            }
        }
        Ok::<NCPoly, Error>(out)
    };
    let y = pass(x, &mut comps, true)?;
    pass(&y, &mut comps, false)
}

pub fn serre_ideal_component(alg: &QAlgebra, mu: &[i64], deg_bound: i64) -> Result<SerreComponent> {
    let sys = alg.system();
    let height = RootSystem::height(mu);
    if height > deg_bound {
        return Err(Error::HeightBound {
            height,
            bound: deg_bound,
        });
    }
    let words = word_basis(mu);
    let index: HashMap<_, _> = words
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, w)| (w, i))
        .collect();
    let mut echelon = Echelon::new(words.len());
    for i in 0..sys.rank {
        for j in 0..sys.rank {
            if i == j {
                continue;
            }
            let rel = quantum_serre(sys, i, j);
            let n = 1 - sys.cartan[i][j];
            let mut rest = mu.to_vec();
            rest[i] -= n;
            rest[j] -= 1;
            if rest.iter().any(|&x| x < 0) {
                continue;
            }
            for w in word_basis(&rest) {
                for cut in 0..=w.len() {
                    let mut v = vec![QScalar::zero(); words.len()];
                    for (m, c) in &rel.terms {
                        let mut full = w[..cut].to_vec();
                        full.extend_from_slice(&m.e);
                        full.extend_from_slice(&w[cut..]);
                        v[index[&full]] = c.clone();
                    }
                    echelon.insert(&v);
                }
            }
        }
    }
    Ok(SerreComponent {
        weight: mu.to_vec(),
        words,
        index,
        echelon,
    })
}

/// Exponent vectors (indexed by ordering position) of PBW monomials of
/// weight `mu`, restricted to positions in `allowed`.
pub fn pbw_monomials(roots: &[Root], mu: &[i64], allowed: std::ops::Range<usize>) -> Vec<Vec<u32>> {
    fn go(
        roots: &[Root],
        pos: usize,
        end: usize,
        left: &mut Vec<i64>,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if left.iter().all(|&x| x == 0) {
            out.push(cur.clone());
            return;
        }
        if pos >= end {
            return;
        }
        let r = &roots[pos];
        let mut k = 0u32;
        loop {
            go(roots, pos + 1, end, left, cur, out);
            if left.iter().zip(r).any(|(l, x)| l < x) {
                break;
            }
            left.iter_mut().zip(r).for_each(|(l, x)| *l -= x);
            k += 1;
            cur[pos] = k;
        }
        left.iter_mut()
            .zip(r)
            .for_each(|(l, x)| *l += *x * k as i64);
        cur[pos] = 0;
    }
    let mut out = vec![];
    let mut cur = vec![0; roots.len()];
    go(
        roots,
        allowed.start,
        allowed.end,
        &mut mu.to_vec(),
        &mut cur,
        &mut out,
    );
    out
}

/// Coordinates of the image of `U^+` in the quantum shuffle algebra.
pub type ShuffleVector = BTreeMap<Vec<u8>, QScalar>;

/// The embedding of `U^+` into the quantum shuffle algebra on words in the
/// simple roots, `E_i -> [i]`, whose kernel on the free algebra is the Serre
/// ideal. Coefficients stay Laurent, which keeps straightening cheap.
///
/// `w * [b] = sum_k q^{-(wt(w[k..]), alpha_b)} w[..k] b w[k..]`.
pub struct ShuffleModel {
    sys: Arc<RootSystem>,
    cache: RefCell<HashMap<Vec<u8>, Arc<ShuffleVector>>>,
}

impl ShuffleModel {
    pub fn new(sys: &Arc<RootSystem>) -> Self {
        ShuffleModel {
            sys: sys.clone(),
            cache: RefCell::new(HashMap::new()),
        }
    }

    /// Image of the word `E_{w_1} ... E_{w_n}`.
    pub fn word_image(&self, w: &[u8]) -> Arc<ShuffleVector> {
        if let Some(v) = self.cache.borrow().get(w) {
            return v.clone();
        }
        let v = match w.split_last() {
            None => {
                let mut m = ShuffleVector::new();
                m.insert(vec![], QScalar::one());
                m
            }
            Some((&b, prefix)) => {
                let base = self.word_image(prefix);
                let mut out = ShuffleVector::new();
                for (x, c) in base.iter() {
                    // Suffix weights paired with alpha_b, accumulated from the right.
                    let mut e = 0i64;
                    for k in (0..=x.len()).rev() {
                        if k < x.len() {
                            e += self.sys.bilinear[x[k] as usize][b as usize];
                        }
                        let mut y = x[..k].to_vec();
                        y.push(b);
                        y.extend_from_slice(&x[k..]);
                        let t = c.mul(&QScalar::q_pow_int(-e));
                        add_coord(&mut out, y, t);
                    }
                }
                out
            }
        };
        let v = Arc::new(v);
        self.cache.borrow_mut().insert(w.to_vec(), v.clone());
        v
    }

    /// Image of a pure-`E` element.
    pub fn image(&self, p: &NCPoly) -> Result<ShuffleVector> {
        let mut out = ShuffleVector::new();
        for (m, c) in &p.terms {
            if !m.is_pure_e() {
                return Err(Error::InvariantViolation(
                    "shuffle image of a non-E element".into(),
                ));
            }
            for (y, t) in self.word_image(&m.e).iter() {
                add_coord(&mut out, y.clone(), c.mul(t));
            }
        }
        Ok(out)
    }
}

fn add_coord(v: &mut ShuffleVector, k: Vec<u8>, c: QScalar) {
    if c.is_zero() {
        return;
    }
    let s = v.remove(&k).map_or(c.clone(), |x| x.add(&c));
    if !s.is_zero() {
        v.insert(k, s);
    }
}

/// One term `coeff * X_{delta_1}^(k_1) ... X_{delta_m}^(k_m)` of a relation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PbwTerm {
    pub factors: Vec<(Root, u32)>,
    #[serde(serialize_with = "ser_scalar")]
    pub coeff: QScalar,
}

pub(crate) fn ser_scalar<S: serde::Serializer>(
    x: &QScalar,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    x.to_json().serialize(s)
}

impl PbwTerm {
    /// The factors expanded with multiplicity, in order.
    pub fn expanded(&self) -> Vec<Root> {
        self.factors
            .iter()
            .flat_map(|(r, k)| std::iter::repeat_n(r.clone(), *k as usize))
            .collect()
    }
}

/// `X_alpha X_beta - q^qpower X_beta X_alpha = sum rhs`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LsRelation {
    pub alpha: Root,
    pub beta: Root,
    pub qpower: Q,
    pub rhs: Vec<PbwTerm>,
}

impl LsRelation {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "alpha": self.alpha,
            "beta": self.beta,
            "qpower": crate::field::q_to_string(&self.qpower),
            "rhs": self.rhs,
        })
    }
}

/// Solves `target = sum_m c_m elems_m` in `U^+_mu` by elimination over
/// `Q(q)` after reducing modulo the Serre ideal.
fn exact_solve(
    serre: &SerreComponent,
    target: &NCPoly,
    elems: &[NCPoly],
    name: &str,
) -> Result<Vec<QScalar>> {
    let free = serre.free_columns();
    let b = serre.reduce(&serre.coords(target)?);
    let b: Vec<QScalar> = free.iter().map(|&r| b[r].clone()).collect();
    if elems.is_empty() {
        if b.iter().any(|x| !x.is_fzero()) {
            return Err(Error::InconsistentSystem(name.into()));
        }
        return Ok(vec![]);
    }
    let cols: Vec<Vec<QScalar>> = elems
        .iter()
        .map(|e| Ok(serre.reduce(&serre.coords(e)?)))
        .collect::<Result<_>>()?;
    let a: Matrix<QScalar> = free
        .iter()
        .map(|&r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    match solve(&a, &b) {
        Solution::Unique(x) => Ok(x),
        Solution::Inconsistent => Err(Error::InconsistentSystem(name.into())),
        Solution::Underdetermined => Err(Error::NonUniqueSolution(name.into())),
    }
}

/// Index tables for computing shuffle images of all words of weight `mu`
/// numerically: `Phi(w b) = Phi(w) * [b]`, one insertion at a time.
struct ShuffleTables {
    /// Weights in order of height, each with its words.
    levels: Vec<(Root, Vec<Vec<u8>>)>,
    /// For each level and word: (level of the prefix, prefix id, letter).
    prefix: Vec<Vec<(usize, usize, u8)>>,
    /// For each level and letter `b`, per word of the level: the id (in the
    /// level of weight + alpha_b) and exponent of each insertion of `b`.
    insert: Vec<HashMap<u8, Vec<Vec<(usize, i64)>>>>,
    max_exponent: i64,
}

impl ShuffleTables {
    fn new(sys: &RootSystem, mu: &[i64]) -> Self {
        let mut weights = vec![];
        let mut cur = vec![0i64; mu.len()];
        fn all(mu: &[i64], k: usize, cur: &mut Vec<i64>, out: &mut Vec<Root>) {
            if k == mu.len() {
                out.push(cur.clone());
                return;
            }
            for x in 0..=mu[k] {
                cur[k] = x;
                all(mu, k + 1, cur, out);
            }
        }
        all(mu, 0, &mut cur, &mut weights);
        weights.sort_by_key(|w| RootSystem::height(w));
        let level_of: HashMap<Root, usize> = weights
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        let levels: Vec<(Root, Vec<Vec<u8>>)> =
            weights.iter().map(|w| (w.clone(), word_basis(w))).collect();
        let ids: Vec<HashMap<&Vec<u8>, usize>> = levels
            .iter()
            .map(|(_, ws)| ws.iter().enumerate().map(|(i, w)| (w, i)).collect())
            .collect();
        let mut prefix = vec![];
        let mut insert = vec![];
        for (wt, ws) in &levels {
            prefix.push(
                ws.iter()
                    .map(|w| {
                        let (&b, pre) = w.split_last().unwrap_or((&0, &[]));
                        let mut pw = wt.clone();
                        if !w.is_empty() {
                            pw[b as usize] -= 1;
                        }
                        let l = level_of[&pw];
                        (l, ids[l].get(&pre.to_vec()).copied().unwrap_or(0), b)
                    })
                    .collect(),
            );
            let mut per_letter = HashMap::new();
            for b in 0..mu.len() {
                let mut up = wt.clone();
                up[b] += 1;
                let Some(&l) = level_of.get(&up) else {
                    continue;
                };
                let table: Vec<Vec<(usize, i64)>> = ws
                    .iter()
                    .map(|x| {
                        let mut e = 0i64;
                        let mut out = vec![];
                        for k in (0..=x.len()).rev() {
                            if k < x.len() {
                                e += sys.bilinear[x[k] as usize][b];
                            }
                            let mut y = x[..k].to_vec();
                            y.push(b as u8);
                            y.extend_from_slice(&x[k..]);
                            out.push((ids[l][&y], -e));
                        }
                        out
                    })
                    .collect();
                per_letter.insert(b as u8, table);
            }
            insert.push(per_letter);
        }
        let max_exponent = insert
            .iter()
            .flat_map(|m| m.values())
            .flatten()
            .flatten()
            .map(|&(_, e)| e.abs())
            .max()
            .unwrap_or(0);
        ShuffleTables {
            levels,
            prefix,
            insert,
            max_exponent,
        }
    }

    /// Images mod p at `q = t^root` of all words of the top weight, as dense
    /// vectors over the same words.
    fn images_at(&self, t: u64, root: usize) -> Vec<Vec<u64>> {
        let qt = modp::pow(t, root as u64);
        let span = self.max_exponent;
        let qinv = modp::inv(qt);
        let mut powers = vec![1u64; 2 * span as usize + 1];
        for k in 1..=span as usize {
            powers[span as usize + k] = modp::mul(powers[span as usize + k - 1], qt);
            powers[span as usize - k] = modp::mul(powers[span as usize - k + 1], qinv);
        }
        let mut imgs: Vec<Vec<Vec<u64>>> = Vec::with_capacity(self.levels.len());
        for (lvl, (wt, ws)) in self.levels.iter().enumerate() {
            if wt.iter().all(|&x| x == 0) {
                imgs.push(vec![vec![1]]);
                continue;
            }
            let mut level = Vec::with_capacity(ws.len());
            for &(pl, pid, b) in &self.prefix[lvl] {
                let mut v = vec![0u64; ws.len()];
                let table = &self.insert[pl][&b];
                for (x, &c) in imgs[pl][pid].iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for &(y, e) in &table[x] {
                        v[y] = modp::add(v[y], modp::mul(c, powers[(e + span) as usize]));
                    }
                }
                level.push(v);
            }
            imgs.push(level);
        }
        imgs.pop().unwrap()
    }

    fn top_words(&self) -> &[Vec<u8>] {
        &self.levels.last().unwrap().1
    }
}

/// Finds `c` with `target = sum c_m elems_m` in `U^+_mu` by solving mod p
/// at integer points, interpolating Laurent polynomials and lifting the
/// coefficients to `Q`. The result still has to be checked exactly; a
/// `Some` also certifies that the elements are independent.
fn modular_candidate(
    table: &RootVectorTable,
    mu: &[i64],
    target: &NCPoly,
    elems: &[NCPoly],
) -> Option<Vec<QScalar>> {
    if elems.is_empty() {
        return None;
    }
    let st = ShuffleTables::new(table.system(), mu);
    let words = st.top_words();
    let index: HashMap<&Vec<u8>, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let root = std::iter::once(target)
        .chain(elems)
        .flat_map(|p| p.terms.values())
        .map(|c| c.root())
        .fold(1usize, num_integer::lcm);
    let reduce = |p: &NCPoly| -> Option<Vec<(usize, modp::ModScalar)>> {
        p.terms
            .iter()
            .map(|(m, c)| Some((*index.get(&m.e)?, modp::ModScalar::new(c, root)?)))
            .collect()
    };
    let target = reduce(target)?;
    let elems: Vec<_> = elems.iter().map(reduce).collect::<Option<_>>()?;
    let image = |p: &[(usize, modp::ModScalar)], imgs: &[Vec<u64>], t: u64| -> Option<Vec<u64>> {
        let mut v = vec![0u64; words.len()];
        for (w, c) in p {
            let c = c.at(t)?;
            let img = &imgs[*w];
            for (x, y) in v.iter_mut().zip(img) {
                *x = modp::add(*x, modp::mul(c, *y));
            }
        }
        Some(v)
    };
    let mut ts: Vec<u64> = vec![];
    let mut sols: Vec<Vec<u64>> = vec![];
    let mut t = 1u64;
    for budget in [8usize, 16, 32, 64, 128] {
        while sols.len() < budget + 2 {
            t += 1;
            if t > 1000 {
                return None;
            }
            let imgs = st.images_at(t, root);
            let cols: Option<Vec<Vec<u64>>> = elems.iter().map(|e| image(e, &imgs, t)).collect();
            let (Some(cols), Some(b)) = (cols, image(&target, &imgs, t)) else {
                continue;
            };
            let a: Vec<Vec<u64>> = (0..words.len())
                .map(|r| cols.iter().map(|c| c[r]).collect())
                .collect();
            if let modp::ModSolution::Unique(x) = modp::solve(&a, &b) {
                ts.push(t);
                sols.push(x);
            }
        }
        // t^shift x_m(t) is a polynomial of degree < budget.
        let shift = budget / 2;
        let mut out = vec![];
        for m in 0..elems.len() {
            let ys: Vec<u64> = ts
                .iter()
                .zip(&sols)
                .map(|(&t, x)| modp::mul(x[m], modp::pow(t, shift as u64)))
                .collect();
            let poly = modp::interpolate(&ts[..budget], &ys[..budget]);
            let agrees = (budget..budget + 2).all(|k| {
                let v = poly
                    .iter()
                    .rev()
                    .fold(0, |acc, &c| modp::add(modp::mul(acc, ts[k]), c));
                v == ys[k]
            });
            if !agrees {
                break;
            }
            let mut c = QScalar::zero();
            for (j, &v) in poly.iter().enumerate() {
                if v == 0 {
                    continue;
                }
                let coef = modp::reconstruct(v)?;
                let e = Q::new((j as i64 - shift as i64).into(), (root as i64).into());
                c = c.add(&QScalar::term(coef, &e));
            }
            out.push(c);
        }
        if out.len() == elems.len() {
            return Some(out);
        }
    }
    None
}

/// Solves for the straightening relation of `alpha < beta` and checks that
/// only roots strictly between them occur.
pub fn ls_relation(table: &RootVectorTable, alpha: &[i64], beta: &[i64]) -> Result<LsRelation> {
    let sys = table.system();
    let name = format!("{alpha:?}, {beta:?}");
    let (pa, pb) = match (
        table.ordering.position(alpha),
        table.ordering.position(beta),
    ) {
        (Some(a), Some(b)) if a < b => (a, b),
        _ => {
            return Err(Error::InvariantViolation(format!(
                "{name} is not an ordered pair of positive roots"
            )))
        }
    };
    let alg = &table.alg;
    let xa = &table.vectors[pa];
    let xb = &table.vectors[pb];
    let qpower = sys.form(alpha, beta);
    let target = alg
        .mul(xa, xb)
        .sub(&alg.mul(xb, xa).scale(&QScalar::q_pow(&qpower)));
    let mu: Root = alpha.iter().zip(beta).map(|(a, b)| a + b).collect();
    let height = RootSystem::height(&mu);
    if height > DEFAULT_HEIGHT_BOUND {
        return Err(Error::HeightBound {
            height,
            bound: DEFAULT_HEIGHT_BOUND,
        });
    }
    let monos = pbw_monomials(table.roots(), &mu, 0..table.roots().len());
    let elems: Vec<NCPoly> = monos.iter().map(|e| table.pbw_element(e)).collect();
    let serre = table.serre(&mu)?;
    let candidate = modular_candidate(table, &mu, &target, &elems);
    let candidate = candidate.filter(|c| {
        let mut diff = target.clone();
        for (x, e) in c.iter().zip(&elems) {
            diff = diff.sub(&e.scale(x));
        }
        serre.contains(&diff).unwrap_or(false)
    });
    let coeffs = match candidate {
        Some(c) => c,
        None => exact_solve(&serre, &target, &elems, &name)?,
    };
    let mut rhs = vec![];
    for (e, c) in monos.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        if e.iter()
            .enumerate()
            .any(|(p, &k)| k > 0 && (p <= pa || p >= pb))
        {
            return Err(Error::SupportViolation(format!(
                "{name}: monomial {e:?} uses a root outside the interval"
            )));
        }
        let factors = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(p, &k)| (table.roots()[p].clone(), k))
            .collect();
        rhs.push(PbwTerm { factors, coeff: c });
    }
    Ok(LsRelation {
        alpha: alpha.to_vec(),
        beta: beta.to_vec(),
        qpower,
        rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(label: &str) -> RootVectorTable {
        let sys = RootSystem::build(label).unwrap();
        let word = crate::weyl::WeylElement::longest(&sys).word().to_vec();
        root_vectors(&sys, &word).unwrap()
    }

    /// Kostant's partition function, computed directly from the roots.
    fn kostant(roots: &[Root], mu: &[i64]) -> usize {
        pbw_monomials(roots, mu, 0..roots.len()).len()
    }

    #[test]
    fn word_basis_counts() {
        assert_eq!(word_basis(&[2, 1]).len(), 3);
        assert_eq!(word_basis(&[3, 3]).len(), 20);
    }

    #[test]
    fn a2_root_vectors() {
        let t = table("A2");
        let w = &t.word;
        // Middle root vector is T_{w1}(E_{w2}).
        let (i, j) = (w[0] as u8, w[1] as u8);
        let q = |e| QScalar::q_pow_int(e);
        let expected = NCPoly::e_word(2, &[i, j])
            .scale(&QScalar::from_int(-1))
            .add(&NCPoly::e_word(2, &[j, i]).scale(&q(-1)));
        assert_eq!(t.vectors[1], expected);
        // T_i T_j (E_i) = E_j.
        assert_eq!(t.vectors[2], NCPoly::e_word(2, &[j]));
    }

    #[test]
    fn serre_quotient_matches_partition_function() {
        for label in ["A2", "B2", "G2"] {
            let t = table(label);
            let sys = t.system().clone();
            for a in 0..=4 {
                for b in 0..=(6 - a).min(4) {
                    let mu = vec![a, b];
                    let c = serre_ideal_component(&t.alg, &mu, 6).unwrap();
                    assert_eq!(
                        c.quotient_dim(),
                        kostant(&sys.positive_roots, &mu),
                        "{label} {mu:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn pbw_monomials_independent_mod_serre() {
        for label in ["A2", "B2", "G2"] {
            let t = table(label);
            for mu in [
                vec![1, 1],
                vec![2, 1],
                vec![1, 2],
                vec![2, 2],
                vec![3, 2],
                vec![3, 3],
            ] {
                let c = t.serre(&mu).unwrap();
                let mut e = c.echelon.clone();
                for m in pbw_monomials(t.roots(), &mu, 0..t.roots().len()) {
                    assert!(
                        e.insert(&c.coords(&t.pbw_element(&m)).unwrap()),
                        "{label} {mu:?}"
                    );
                }
                assert_eq!(e.rank(), c.dim());
            }
        }
    }

    #[test]
    fn shuffle_kernel_is_serre_ideal() {
        for label in ["A2", "B2", "G2"] {
            let t = table(label);
            let sys = t.system().clone();
            for i in 0..2 {
                for j in 0..2 {
                    if i != j {
                        assert!(t
                            .shuffle
                            .image(&quantum_serre(&sys, i, j))
                            .unwrap()
                            .is_empty());
                    }
                }
            }
            // The image of each weight space has the dimension of U^+_mu.
            for mu in [vec![2, 1], vec![2, 2], vec![3, 2], vec![4, 2]] {
                let words = word_basis(&mu);
                let m: Matrix<QScalar> = words
                    .iter()
                    .map(|w| {
                        let img = t.shuffle.word_image(w);
                        words
                            .iter()
                            .map(|y| img.get(y).cloned().unwrap_or_else(QScalar::zero))
                            .collect()
                    })
                    .collect();
                let c = t.serre(&mu).unwrap();
                assert_eq!(crate::field::rank(&m), c.quotient_dim(), "{label} {mu:?}");
            }
        }
    }

    #[test]
    fn relation_holds_modulo_serre_ideal() {
        // Independent check of one solved relation in the free algebra.
        let t = table("B2");
        let r = t.roots().to_vec();
        let rel = ls_relation(&t, &r[0], &r[3]).unwrap();
        let alg = &t.alg;
        let (xa, xb) = (t.vector(&r[0]).unwrap(), t.vector(&r[3]).unwrap());
        let mut diff = alg
            .mul(xa, xb)
            .sub(&alg.mul(xb, xa).scale(&QScalar::q_pow(&rel.qpower)));
        for term in &rel.rhs {
            let mut e = vec![0u32; r.len()];
            for (root, k) in &term.factors {
                e[t.ordering.position(root).unwrap()] = *k;
            }
            diff = diff.sub(&t.pbw_element(&e).scale(&term.coeff));
        }
        let mu: Vec<i64> = r[0].iter().zip(&r[3]).map(|(a, b)| a + b).collect();
        assert!(t.serre(&mu).unwrap().contains(&diff).unwrap());
    }

    #[test]
    fn height_bound_enforced() {
        let t = table("A2");
        assert!(matches!(
            serre_ideal_component(&t.alg, &[4, 4], 6),
            Err(Error::HeightBound { .. })
        ));
    }

    #[test]
    fn a2_relation() {
        let t = table("A2");
        let r = t.roots().to_vec();
        // Adjacent roots q-commute up to a scalar multiple of the middle one.
        let rel = ls_relation(&t, &r[0], &r[2]).unwrap();
        assert_eq!(rel.qpower, crate::field::qi(-1));
        assert_eq!(rel.rhs.len(), 1);
        assert_eq!(rel.rhs[0].factors, vec![(r[1].clone(), 1)]);
        assert!(rel.rhs[0].coeff.is_laurent());
        let rel = ls_relation(&t, &r[0], &r[1]).unwrap();
        assert!(rel.rhs.is_empty());
        assert_eq!(rel.qpower, crate::field::qi(1));
    }

    #[test]
    fn relations_for_every_pair() {
        for label in ["B2", "G2"] {
            let t = table(label);
            let r = t.roots().to_vec();
            for a in 0..r.len() {
                for b in a + 1..r.len() {
                    ls_relation(&t, &r[a], &r[b]).unwrap();
                }
            }
        }
    }

    #[test]
    fn serre_reduction_kills_relators_in_both_halves() {
        let t = table("B2");
        let alg = &t.alg;
        let sys = t.system();
        let rel = quantum_serre(sys, 0, 1);
        assert!(reduce_mod_serre(alg, &rel).unwrap().is_zero());
        // The mirrored relator in the F letters, sandwiched with a K and an E.
        let mut mirrored = NCPoly::zero(2);
        for (m, c) in &rel.terms {
            let mut f = m.clone();
            f.f = std::mem::take(&mut f.e);
            mirrored.add_term(f, c.clone());
        }
        let x = alg.mul(&alg.mul(&mirrored, &alg.k_i(1, 1)), &alg.e(0));
        assert!(reduce_mod_serre(alg, &x).unwrap().is_zero());
        let e = alg.mul(&alg.e(0), &alg.e(1));
        assert_eq!(reduce_mod_serre(alg, &e).unwrap(), e);
    }

    #[test]
    fn non_reduced_word_rejected() {
        let sys = RootSystem::build("A2").unwrap();
        assert!(root_vectors(&sys, &[1, 1, 2]).is_err());
        assert!(root_vectors(&sys, &[1, 2, 1]).is_ok());
    }
}
