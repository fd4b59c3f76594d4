//! Weyl group elements, conjugacy classes, involution decompositions and the
//! positive system adapted to an element.

use crate::error::{Error, Result};
use crate::field::{identity, inverse, mat_mul, nullspace, qi, rank, rref, Field, Matrix, Q};
use crate::poly::Poly;
use crate::quad::{squarefree_split, Quad};
use crate::rootsys::{CoweightVector, Root, RootSystem};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// Rank limit for the exhaustive searches.
pub const SEARCH_RANK_LIMIT: usize = 4;

/// An element of the Weyl group, stored by its action on simple-root
/// coordinates together with a canonical reduced word.
#[derive(Clone)]
pub struct WeylElement {
    sys: Arc<RootSystem>,
    word: Vec<usize>,
    matrix: Vec<Vec<i64>>,
    root_perm: Vec<(i8, usize)>,
}

impl PartialEq for WeylElement {
    fn eq(&self, o: &Self) -> bool {
        self.matrix == o.matrix
    }
}
impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.matrix.hash(h)
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.sys.type_label, self.word)
    }
}

fn imat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn imat_vec(a: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|r| r.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

fn iidentity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Matrix of the simple reflection `s_i` on root coordinates.
fn simple_matrix(sys: &RootSystem, i: usize) -> Vec<Vec<i64>> {
    let mut m = iidentity(sys.rank);
    for j in 0..sys.rank {
        m[i][j] -= sys.cartan[i][j];
    }
    m
}

/// Matrix of the reflection in a root on root coordinates.
pub fn reflection_matrix(sys: &RootSystem, alpha: &[i64]) -> Vec<Vec<i64>> {
    let cols: Vec<Root> = (0..sys.rank)
        .map(|j| sys.reflect(alpha, &sys.simple_root(j)))
        .collect();
    (0..sys.rank)
        .map(|i| (0..sys.rank).map(|j| cols[j][i]).collect())
        .collect()
}

fn is_neg(v: &[i64]) -> bool {
    v.iter().any(|&x| x < 0)
}

impl WeylElement {
    /// Builds an element from a word of 1-based simple reflection indices.
    /// The stored word is a canonical reduced word for the same element.
    pub fn from_word(sys: &Arc<RootSystem>, word: &[usize]) -> Result<Self> {
        let mut m = iidentity(sys.rank);
        for &i in word {
            if i == 0 || i > sys.rank {
                return Err(Error::BadIndex(i));
            }
            m = imat_mul(&m, &simple_matrix(sys, i - 1));
        }
        Ok(WeylElement::from_matrix(sys, m))
    }

    /// Builds an element from its root-coordinate matrix (columns are the
    /// images of the simple roots). The matrix must come from `W`.
    pub fn from_matrix(sys: &Arc<RootSystem>, matrix: Vec<Vec<i64>>) -> Self {
        let mut w = matrix.clone();
        let mut rev = Vec::new();
        'outer: loop {
            for i in 0..sys.rank {
                let col: Vec<i64> = (0..sys.rank).map(|r| w[r][i]).collect();
                if is_neg(&col) {
                    w = imat_mul(&w, &simple_matrix(sys, i));
                    rev.push(i + 1);
                    continue 'outer;
                }
            }
            break;
        }
        assert_eq!(w, iidentity(sys.rank), "matrix is not a Weyl group element");
        rev.reverse();
        let root_perm = sys
            .positive_roots
            .iter()
            .map(|r| {
                sys.signed_index(&imat_vec(&matrix, r))
                    .expect("W permutes roots")
            })
            .collect();
        WeylElement {
            sys: sys.clone(),
            word: rev,
            matrix,
            root_perm,
        }
    }

    pub fn identity(sys: &Arc<RootSystem>) -> Self {
        WeylElement::from_matrix(sys, iidentity(sys.rank))
    }

    /// `s_1 s_2 ... s_l`.
    pub fn coxeter(sys: &Arc<RootSystem>) -> Self {
        let w: Vec<usize> = (1..=sys.rank).collect();
        WeylElement::from_word(sys, &w).unwrap()
    }

    pub fn longest(sys: &Arc<RootSystem>) -> Self {
        let mut m = iidentity(sys.rank);
        'outer: loop {
            for i in 0..sys.rank {
                let col: Vec<i64> = (0..sys.rank).map(|r| m[r][i]).collect();
                if !is_neg(&col) {
                    m = imat_mul(&m, &simple_matrix(sys, i));
                    continue 'outer;
                }
            }
            break;
        }
        WeylElement::from_matrix(sys, m)
    }

    pub fn reflection(sys: &Arc<RootSystem>, alpha: &[i64]) -> Self {
        WeylElement::from_matrix(sys, reflection_matrix(sys, alpha))
    }

    /// Product of reflections in the given roots, left to right.
    pub fn reflection_product(sys: &Arc<RootSystem>, roots: &[Root]) -> Self {
        let m = roots.iter().fold(iidentity(sys.rank), |m, r| {
            imat_mul(&m, &reflection_matrix(sys, r))
        });
        WeylElement::from_matrix(sys, m)
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.sys
    }

    /// Canonical reduced word, 1-based.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// Columns are the images of the simple roots.
    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn matrix_q(&self) -> Matrix<Q> {
        self.matrix
            .iter()
            .map(|r| r.iter().map(|&x| qi(x)).collect())
            .collect()
    }

    /// Action on coweights in the basis `H_1..H_l`: `s_i(H_j) = H_j - a_ji H_i`.
    pub fn coweight_matrix(&self) -> Matrix<Q> {
        let l = self.sys.rank;
        let mut m: Matrix<Q> = identity(l);
        for &i in &self.word {
            let i = i - 1;
            let mut s: Matrix<Q> = identity(l);
            for j in 0..l {
                s[i][j] = &s[i][j] - qi(self.sys.cartan[j][i]);
            }
            m = mat_mul(&m, &s);
        }
        m
    }

    /// Signed permutation of the positive roots: `w(beta_k) = sign * beta_{index}`.
    pub fn root_perm(&self) -> &[(i8, usize)] {
        &self.root_perm
    }

    pub fn apply(&self, v: &[i64]) -> Root {
        imat_vec(&self.matrix, v)
    }

    pub fn apply_q<F: Field>(&self, v: &[F]) -> Vec<F> {
        self.matrix
            .iter()
            .map(|r| {
                r.iter().zip(v).fold(F::fzero(), |acc, (x, y)| {
                    if *x == 0 {
                        acc
                    } else {
                        acc.add(&y.mul(&F::from_q(&qi(*x))))
                    }
                })
            })
            .collect()
    }

    /// `self * o`.
    pub fn compose(&self, o: &WeylElement) -> WeylElement {
        WeylElement::from_matrix(&self.sys, imat_mul(&self.matrix, &o.matrix))
    }

    pub fn inverse(&self) -> WeylElement {
        let w: Vec<usize> = self.word.iter().rev().copied().collect();
        WeylElement::from_word(&self.sys, &w).unwrap()
    }

    /// `o^{-1} self o`.
    pub fn conjugate_by(&self, o: &WeylElement) -> WeylElement {
        o.inverse().compose(self).compose(o)
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn order(&self) -> usize {
        let id = iidentity(self.sys.rank);
        let mut m = self.matrix.clone();
        let mut k = 1;
        while m != id {
            m = imat_mul(&m, &self.matrix);
            k += 1;
        }
        k
    }

    /// `Delta_w = {alpha > 0 : w(alpha) < 0}`.
    pub fn inversion_set(&self) -> Vec<Root> {
        self.root_perm
            .iter()
            .enumerate()
            .filter(|(_, (s, _))| *s < 0)
            .map(|(k, _)| self.sys.positive_roots[k].clone())
            .collect()
    }

    /// Positive roots fixed by the element.
    pub fn fixed_positive_roots(&self) -> Vec<Root> {
        self.root_perm
            .iter()
            .enumerate()
            .filter(|(k, (s, j))| *s > 0 && j == k)
            .map(|(k, _)| self.sys.positive_roots[k].clone())
            .collect()
    }

    /// Dimension of the orthogonal complement of the fixed space.
    pub fn l_prime(&self) -> usize {
        let m = self.matrix_q();
        let id: Matrix<Q> = identity(self.sys.rank);
        rank(&crate::field::mat_sub(&id, &m))
    }
}

/// Alias for [`WeylElement::from_word`].
pub fn element_from_word(sys: &Arc<RootSystem>, word: &[usize]) -> Result<WeylElement> {
    WeylElement::from_word(sys, word)
}

pub fn inversion_set(w: &WeylElement) -> Vec<Root> {
    w.inversion_set()
}

/// Every element of `W` with its length, in breadth-first order.
pub fn enumerate_group(sys: &Arc<RootSystem>) -> Result<Vec<Vec<Vec<i64>>>> {
    if sys.rank > SEARCH_RANK_LIMIT {
        return Err(Error::RankTooLarge {
            rank: sys.rank,
            limit: SEARCH_RANK_LIMIT,
        });
    }
    let gens: Vec<_> = (0..sys.rank).map(|i| simple_matrix(sys, i)).collect();
    let id = iidentity(sys.rank);
    let mut seen: HashMap<Vec<Vec<i64>>, ()> = HashMap::from([(id.clone(), ())]);
    let mut order = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        for g in &gens {
            let n = imat_mul(&m, g);
            if !seen.contains_key(&n) {
                seen.insert(n.clone(), ());
                order.push(n.clone());
                queue.push_back(n);
            }
        }
    }
    Ok(order)
}

#[derive(Debug, Clone)]
pub struct ConjugacyClass {
    pub representative: WeylElement,
    pub size: usize,
}

/// All conjugacy classes with minimal-length representatives, sorted by
/// representative length and then by reduced word.
pub fn conjugacy_classes(sys: &Arc<RootSystem>) -> Result<Vec<ConjugacyClass>> {
    let elems = enumerate_group(sys)?;
    let index: HashMap<&Vec<Vec<i64>>, usize> =
        elems.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let gens: Vec<_> = (0..sys.rank).map(|i| simple_matrix(sys, i)).collect();
    let mut class_of = vec![usize::MAX; elems.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for start in 0..elems.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let c = classes.len();
        let mut members = vec![start];
        class_of[start] = c;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = imat_mul(&imat_mul(g, &elems[x]), g);
                let j = index[&y];
                if class_of[j] == usize::MAX {
                    class_of[j] = c;
                    members.push(j);
                    queue.push_back(j);
                }
            }
        }
        classes.push(members);
    }
    let mut out: Vec<ConjugacyClass> = classes
        .into_iter()
        .map(|members| {
            let rep = members
                .iter()
                .map(|&i| WeylElement::from_matrix(sys, elems[i].clone()))
                .min_by(|a, b| (a.length(), a.word()).cmp(&(b.length(), b.word())))
                .unwrap();
            ConjugacyClass {
                representative: rep,
                size: members.len(),
            }
        })
        .collect();
    out.sort_by(|a, b| {
        (a.representative.length(), a.representative.word())
            .cmp(&(b.representative.length(), b.representative.word()))
    });
    Ok(out)
}

/// `s = s1 s2` with `s1`, `s2` products of reflections in mutually orthogonal
/// positive roots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionDecomposition {
    pub gamma1: Vec<Root>,
    pub gamma2: Vec<Root>,
    pub n: usize,
    pub l_prime: usize,
}

impl InvolutionDecomposition {
    pub fn new(gamma1: Vec<Root>, gamma2: Vec<Root>) -> Self {
        let n = gamma1.len();
        let l_prime = n + gamma2.len();
        InvolutionDecomposition {
            gamma1,
            gamma2,
            n,
            l_prime,
        }
    }

    /// `gamma_1 .. gamma_{l'}`.
    pub fn gammas(&self) -> Vec<Root> {
        self.gamma1.iter().chain(&self.gamma2).cloned().collect()
    }

    pub fn s1(&self, sys: &Arc<RootSystem>) -> WeylElement {
        WeylElement::reflection_product(sys, &self.gamma1)
    }

    pub fn s2(&self, sys: &Arc<RootSystem>) -> WeylElement {
        WeylElement::reflection_product(sys, &self.gamma2)
    }

    /// Checks the structural invariants against `s`.
    pub fn validate(&self, s: &WeylElement) -> Result<()> {
        let sys = s.system();
        let fail = |m: &str| Err(Error::InvariantViolation(m.to_string()));
        for set in [&self.gamma1, &self.gamma2] {
            for (i, a) in set.iter().enumerate() {
                if sys.positive_index(a).is_none() {
                    return fail("gamma is not a positive root");
                }
                for b in &set[i + 1..] {
                    if sys.form_int(a, b) != 0 {
                        return fail("gammas within a factor are not orthogonal");
                    }
                }
            }
        }
        if self.s1(sys).compose(&self.s2(sys)) != *s {
            return fail("s1 s2 != s");
        }
        let g: Matrix<Q> = self
            .gammas()
            .iter()
            .map(|r| r.iter().map(|&x| qi(x)).collect())
            .collect();
        if self.l_prime != s.l_prime() || (self.l_prime > 0 && rank(&g) != self.l_prime) {
            return fail("gammas do not form a basis of h'");
        }
        Ok(())
    }

    /// Reflects the decomposition through `w^{-1}`, flipping signs so every
    /// root stays positive.
    pub fn transport(&self, w_inv: &WeylElement) -> InvolutionDecomposition {
        let f = |v: &Vec<Root>| -> Vec<Root> {
            v.iter()
                .map(|r| {
                    let t = w_inv.apply(r);
                    if is_neg(&t) {
                        t.iter().map(|x| -x).collect()
                    } else {
                        t
                    }
                })
                .collect()
        };
        InvolutionDecomposition::new(f(&self.gamma1), f(&self.gamma2))
    }
}

fn orthogonal_sets(sys: &RootSystem, max: usize) -> Vec<Vec<usize>> {
    fn go(
        sys: &RootSystem,
        max: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        out.push(cur.clone());
        if cur.len() == max {
            return;
        }
        for j in start..sys.num_positive() {
            let r = &sys.positive_roots[j];
            if cur
                .iter()
                .all(|&k| sys.form_int(&sys.positive_roots[k], r) == 0)
            {
                cur.push(j);
                go(sys, max, j + 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(sys, max, 0, &mut Vec::new(), &mut out);
    out
}

/// Every decomposition of `s`, sorted lexicographically by the positive-root
/// indices of `gamma1` and then `gamma2`.
pub fn involution_decompositions(s: &WeylElement) -> Result<Vec<InvolutionDecomposition>> {
    let sys = s.system();
    if sys.rank > SEARCH_RANK_LIMIT {
        return Err(Error::RankTooLarge {
            rank: sys.rank,
            limit: SEARCH_RANK_LIMIT,
        });
    }
    let lp = s.l_prime();
    let sets = orthogonal_sets(sys, lp);
    let mut by_matrix: HashMap<Vec<Vec<i64>>, Vec<&Vec<usize>>> = HashMap::new();
    let mats: Vec<Vec<Vec<i64>>> = sets
        .iter()
        .map(|set| {
            set.iter().fold(iidentity(sys.rank), |m, &k| {
                imat_mul(&m, &reflection_matrix(sys, &sys.positive_roots[k]))
            })
        })
        .collect();
    for (set, m) in sets.iter().zip(&mats) {
        by_matrix.entry(m.clone()).or_default().push(set);
    }
    let mut found: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for (set1, m1) in sets.iter().zip(&mats) {
        let target = imat_mul(m1, s.matrix());
        if let Some(cands) = by_matrix.get(&target) {
            for set2 in cands {
                if set1.len() + set2.len() == lp {
                    found.push((set1.clone(), (*set2).clone()));
                }
            }
        }
    }
    found.sort();
    found.dedup();
    let root = |k: &usize| sys.positive_roots[*k].clone();
    Ok(found
        .into_iter()
        .map(|(a, b)| {
            InvolutionDecomposition::new(a.iter().map(root).collect(), b.iter().map(root).collect())
        })
        .collect())
}

/// The lexicographically least decomposition of `s`.
pub fn involution_decompose(s: &WeylElement) -> Result<InvolutionDecomposition> {
    involution_decompositions(s)?
        .into_iter()
        .next()
        .ok_or(Error::NotFound)
}

/// Order in which the non-fixed invariant subspaces enter `h-bar`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum PlaneOrder {
    /// Largest rotation angle first (the default).
    #[default]
    DecreasingAngle,
    IncreasingAngle,
}

/// One `s`-invariant summand of the decomposition of `h*`.
#[derive(Debug, Clone)]
pub struct InvariantSubspace {
    /// `s` acts with order `m` (1 for the fixed space).
    pub m: usize,
    /// `2 cos(theta)` for the rotation angle `theta`.
    pub lambda: Quad,
    pub basis: Vec<Vec<Quad>>,
    /// The chosen regular element, before rescaling.
    pub h: Vec<Quad>,
    pub scale: u64,
}

#[derive(Debug, Clone)]
pub struct AdaptedPositiveSystem {
    pub subspaces: Vec<InvariantSubspace>,
    /// Exact `h-bar` in simple-root coordinates of `h*`.
    pub hbar_exact: Vec<Quad>,
    /// A rational element of the same Weyl chamber, as a coweight.
    pub hbar: CoweightVector,
    /// For each subspace, the indices (into `RootSystem::all_roots`) of the
    /// roots it carries.
    pub subsets: Vec<Vec<usize>>,
    /// `+1`/`-1` per entry of `RootSystem::all_roots`.
    pub signs: Vec<i8>,
    pub positive_roots: Vec<Root>,
    /// `w` with `w(standard positive roots) = positive_roots`.
    pub transport: WeylElement,
    pub d0: usize,
}

impl AdaptedPositiveSystem {
    pub fn is_positive(&self, sys: &RootSystem, r: &[i64]) -> bool {
        let all = sys.all_roots();
        let k = all.iter().position(|x| x == r).expect("root");
        self.signs[k] > 0
    }
}

fn to_quad(m: &Matrix<Q>) -> Matrix<Quad> {
    m.iter()
        .map(|r| r.iter().map(|x| Quad::rational(x.clone())).collect())
        .collect()
}

fn form_quad(sys: &RootSystem, a: &[Quad], b: &[Quad]) -> Quad {
    let mut s = Quad::fzero();
    for (i, x) in a.iter().enumerate() {
        if x.is_fzero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if sys.bilinear[i][j] != 0 && !y.is_fzero() {
                s = s.add(&x.mul(y).mul(&Quad::rational(qi(sys.bilinear[i][j]))));
            }
        }
    }
    s
}

fn root_quad(r: &[i64]) -> Vec<Quad> {
    r.iter().map(|&x| Quad::rational(qi(x))).collect()
}

fn combine(basis: &[Vec<Quad>], coef: &[Quad]) -> Vec<Quad> {
    let n = basis[0].len();
    (0..n)
        .map(|i| {
            basis
                .iter()
                .zip(coef)
                .fold(Quad::fzero(), |acc, (b, c)| acc.add(&b[i].mul(c)))
        })
        .collect()
}

/// `{v in span(basis) : (v, p) = 0 for p in perp}`.
fn restrict_orth(sys: &RootSystem, basis: &[Vec<Quad>], perp: &[Vec<Quad>]) -> Vec<Vec<Quad>> {
    if basis.is_empty() {
        return Vec::new();
    }
    if perp.is_empty() {
        return basis.to_vec();
    }
    let m: Matrix<Quad> = perp
        .iter()
        .map(|p| basis.iter().map(|b| form_quad(sys, b, p)).collect())
        .collect();
    nullspace(&m, basis.len())
        .iter()
        .map(|c| combine(basis, c))
        .collect()
}

/// `span(basis) ∩ ker(a)`.
fn restrict_kernel(basis: &[Vec<Quad>], a: &Matrix<Quad>) -> Vec<Vec<Quad>> {
    if basis.is_empty() {
        return Vec::new();
    }
    let images: Vec<Vec<Quad>> = basis.iter().map(|b| crate::field::mat_vec(a, b)).collect();
    let rows = a.len();
    let m: Matrix<Quad> = (0..rows)
        .map(|i| images.iter().map(|v| v[i].clone()).collect())
        .collect();
    nullspace(&m, basis.len())
        .iter()
        .map(|c| combine(basis, c))
        .collect()
}

fn gram_schmidt(sys: &RootSystem, vs: &[Vec<Quad>]) -> Vec<Vec<Quad>> {
    let mut out: Vec<Vec<Quad>> = Vec::new();
    for v in vs {
        let mut w = v.clone();
        for u in &out {
            let c = form_quad(sys, &w, u).div(&form_quad(sys, u, u));
            w = w.iter().zip(u).map(|(x, y)| x.sub(&c.mul(y))).collect();
        }
        if w.iter().any(|x| !x.is_fzero()) {
            out.push(w);
        }
    }
    out
}

fn rref_basis(vs: &[Vec<Quad>]) -> Vec<Vec<Quad>> {
    let mut m = vs.to_vec();
    let p = rref(&mut m);
    m.truncate(p.len());
    m
}

/// Splits an invariant space on which `s` has order `m > 2` into planes
/// `span(x, s x)`, seeding `x` from eigenvectors of `s1` when available so
/// that each plane is also `s1`-invariant.
fn split_planes(
    sys: &RootSystem,
    space: Vec<Vec<Quad>>,
    mq: &Matrix<Quad>,
    s1: Option<&Matrix<Quad>>,
) -> Vec<Vec<Vec<Quad>>> {
    let l = sys.rank;
    let mut planes = Vec::new();
    let mut w = space;
    while !w.is_empty() {
        let seed = match s1 {
            Some(s1) => {
                let id: Matrix<Quad> = identity(l);
                let plus = crate::field::mat_sub(s1, &id);
                let minus = crate::field::mat_add(s1, &id);
                let ep = restrict_kernel(&w, &plus);
                if !ep.is_empty() {
                    ep[0].clone()
                } else {
                    restrict_kernel(&w, &minus)[0].clone()
                }
            }
            None => w[0].clone(),
        };
        let image = crate::field::mat_vec(mq, &seed);
        let plane = vec![seed, image];
        w = restrict_orth(sys, &w, &plane);
        planes.push(rref_basis(&plane));
    }
    planes
}

/// Integer vectors of max-norm exactly `r` in dimension `n`, in a fixed order.
fn norm_shell(n: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![-r; n];
    loop {
        if cur.iter().any(|x| x.abs() == r) {
            out.push(cur.clone());
        }
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if cur[k] < r {
                cur[k] += 1;
                for x in cur.iter_mut().skip(k + 1) {
                    *x = -r;
                }
                break;
            }
        }
    }
}

/// Orthogonal projection of the vector `rho` with `(alpha_i, rho) = 1`.
fn project_rho(sys: &RootSystem, basis: &[Vec<Quad>]) -> Vec<Quad> {
    let gram: Matrix<Quad> = basis
        .iter()
        .map(|b| basis.iter().map(|c| form_quad(sys, b, c)).collect())
        .collect();
    // (b, rho) = sum_i b_i (alpha_i, rho) = sum_i b_i
    let rhs: Vec<Quad> = basis
        .iter()
        .map(|b| b.iter().fold(Quad::fzero(), |acc, x| acc.add(x)))
        .collect();
    match crate::field::solve(&gram, &rhs) {
        crate::field::Solution::Unique(c) => combine(basis, &c),
        _ => unreachable!("the form is definite"),
    }
}

/// A vector of the subspace on which no root that meets the subspace
/// vanishes. The projection of `rho` is tried first so that the identity
/// element reproduces the standard positive system.
fn choose_regular(sys: &RootSystem, basis: &[Vec<Quad>], roots: &[Vec<Quad>]) -> Vec<Quad> {
    let relevant: Vec<&Vec<Quad>> = roots
        .iter()
        .filter(|a| basis.iter().any(|b| !form_quad(sys, a, b).is_fzero()))
        .collect();
    let rho = project_rho(sys, basis);
    if relevant.iter().all(|a| !form_quad(sys, a, &rho).is_fzero()) {
        return rho;
    }
    for r in 1.. {
        for c in norm_shell(basis.len(), r) {
            let cq: Vec<Quad> = c.iter().map(|&x| Quad::rational(qi(x))).collect();
            let h = combine(basis, &cq);
            if relevant.iter().all(|a| !form_quad(sys, a, &h).is_fzero()) {
                return h;
            }
        }
    }
    unreachable!()
}

/// A regular `h` in an invariant plane inside the obtuse angle between the
/// normals `v1`, `v2` of the two involutions and at an acute angle to both,
/// so that the roots each involution makes negative fill disjoint sectors
/// and the lengths add.
fn choose_between_mirrors(
    sys: &RootSystem,
    basis: &[Vec<Quad>],
    s1: &Matrix<Quad>,
    s2: &Matrix<Quad>,
    roots: &[Vec<Quad>],
) -> Vec<Quad> {
    let normal = |s: &Matrix<Quad>| -> Vec<Quad> {
        basis
            .iter()
            .map(|b| {
                let sb = crate::field::mat_vec(s, b);
                b.iter()
                    .zip(&sb)
                    .map(|(x, y)| x.sub(y))
                    .collect::<Vec<Quad>>()
            })
            .find(|v| v.iter().any(|x| !x.is_fzero()))
            .expect("involution acts as a reflection on the plane")
    };
    let v1 = normal(s1);
    let mut v2 = normal(s2);
    if form_quad(sys, &v1, &v2).signum() > 0 {
        v2 = v2.iter().map(|x| x.neg()).collect();
    }
    let relevant: Vec<&Vec<Quad>> = roots
        .iter()
        .filter(|a| basis.iter().any(|b| !form_quad(sys, a, b).is_fzero()))
        .collect();
    for r in 2i64.. {
        for c1 in 1..r {
            let c = [Quad::rational(qi(c1)), Quad::rational(qi(r - c1))];
            let h = combine(&[v1.clone(), v2.clone()], &c);
            let inside =
                form_quad(sys, &h, &v1).signum() > 0 && form_quad(sys, &h, &v2).signum() > 0;
            if inside && relevant.iter().all(|a| !form_quad(sys, a, &h).is_fzero()) {
                return h;
            }
        }
    }
    unreachable!()
}

/// The eigenvalues `2 cos(theta)` of `s + s^{-1}` on `ker Phi_m(s)`.
fn rotation_values(m: usize) -> Result<Vec<Quad>> {
    let v = match m {
        1 => vec![Quad::rational(qi(2))],
        2 => vec![Quad::rational(qi(-2))],
        3 => vec![Quad::rational(qi(-1))],
        4 => vec![Quad::rational(qi(0))],
        6 => vec![Quad::rational(qi(1))],
        _ => {
            let phi = Poly::cyclotomic(m);
            if phi.degree() != Some(4) {
                return Err(Error::ConstructionFailed(format!(
                    "rotation planes of order {m} need a number field of degree > 2"
                )));
            }
            let c3 = phi.coeff(3);
            let c2 = phi.coeff(2);
            let disc = &c3 * &c3 - qi(4) * (c2 - qi(2));
            let disc: i64 = disc.to_integer().try_into().unwrap();
            let (f, r) = squarefree_split(disc);
            let half = Q::new(1.into(), 2.into());
            let a = -&c3 * &half;
            let b = qi(f) * &half;
            vec![Quad::new(a.clone(), -b.clone(), r), Quad::new(a, b, r)]
        }
    };
    Ok(v)
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn phi_of_matrix(m: usize, mat: &Matrix<Q>) -> Matrix<Q> {
    let p = Poly::cyclotomic(m);
    let l = mat.len();
    let mut acc: Matrix<Q> = crate::field::zeros(l, l);
    for c in p.coeffs().iter().rev() {
        acc = mat_mul(&acc, mat);
        for (i, row) in acc.iter_mut().enumerate() {
            row[i] = &row[i] + c;
        }
    }
    acc
}

/// Builds `h-bar` from the orthogonal decomposition of `h*` into
/// `s`-invariant lines and planes and returns the positive system it cuts out.
///
/// When `guide` is given, lines and planes are chosen invariant under its
/// first involution as well.
pub fn adapted_positive_system(
    s: &WeylElement,
    policy: PlaneOrder,
    guide: Option<&InvolutionDecomposition>,
) -> Result<AdaptedPositiveSystem> {
    let sys = s.system().clone();
    let l = sys.rank;
    let mq = s.matrix_q();
    let mquad = to_quad(&mq);
    let minv = to_quad(&inverse(&mq).unwrap());
    let s1 = guide.map(|g| to_quad(&g.s1(&sys).matrix_q()));
    let s2 = guide.map(|g| to_quad(&g.s2(&sys).matrix_q()));

    let mut subspaces: Vec<(usize, Quad, Vec<Vec<Quad>>)> = Vec::new();
    for m in divisors(s.order()) {
        let ker = nullspace(&phi_of_matrix(m, &mq), l);
        if ker.is_empty() {
            continue;
        }
        let ker: Vec<Vec<Quad>> = ker
            .iter()
            .map(|v| v.iter().map(|x| Quad::rational(x.clone())).collect())
            .collect();
        let lambdas = rotation_values(m)?;
        match m {
            1 => subspaces.push((1, lambdas[0].clone(), rref_basis(&ker))),
            2 => {
                let lines = match &s1 {
                    Some(s1) => {
                        let id: Matrix<Quad> = identity(l);
                        let mut v = gram_schmidt(
                            &sys,
                            &restrict_kernel(&ker, &crate::field::mat_sub(s1, &id)),
                        );
                        v.extend(gram_schmidt(
                            &sys,
                            &restrict_kernel(&ker, &crate::field::mat_add(s1, &id)),
                        ));
                        v
                    }
                    None => gram_schmidt(&sys, &ker),
                };
                for v in lines {
                    subspaces.push((2, lambdas[0].clone(), rref_basis(&[v])));
                }
            }
            3 | 4 | 6 => {
                for p in split_planes(&sys, ker, &mquad, s1.as_ref()) {
                    subspaces.push((m, lambdas[0].clone(), p));
                }
            }
            _ => {
                let t = crate::field::mat_add(&mquad, &minv);
                for lam in lambdas {
                    let shifted: Matrix<Quad> = t
                        .iter()
                        .enumerate()
                        .map(|(i, r)| {
                            r.iter()
                                .enumerate()
                                .map(|(j, x)| if i == j { x.sub(&lam) } else { x.clone() })
                                .collect()
                        })
                        .collect();
                    let eig = restrict_kernel(&ker, &shifted);
                    for p in split_planes(&sys, eig, &mquad, s1.as_ref()) {
                        subspaces.push((m, lam.clone(), p));
                    }
                }
            }
        }
    }

    let (fixed, mut rest): (Vec<_>, Vec<_>) = subspaces.into_iter().partition(|x| x.0 == 1);
    rest.sort_by(|a, b| {
        let by_angle = match policy {
            PlaneOrder::DecreasingAngle => a.1.cmp(&b.1),
            PlaneOrder::IncreasingAngle => b.1.cmp(&a.1),
        };
        by_angle.then_with(|| a.2.cmp(&b.2))
    });
    let ordered: Vec<_> = fixed.into_iter().chain(rest).collect();

    let all = sys.all_roots();
    let all_q: Vec<Vec<Quad>> = all.iter().map(|r| root_quad(r)).collect();
    let mut subs: Vec<InvariantSubspace> = ordered
        .into_iter()
        .map(|(m, lambda, basis)| {
            let h = match (&s1, &s2) {
                (Some(s1), Some(s2)) if m > 2 => {
                    choose_between_mirrors(&sys, &basis, s1, s2, &all_q)
                }
                _ => choose_regular(&sys, &basis, &all_q),
            };
            InvariantSubspace {
                m,
                lambda,
                basis,
                h,
                scale: 1,
            }
        })
        .collect();

    // values[k][a] = h_k(alpha_a)
    let values: Vec<Vec<Quad>> = subs
        .iter()
        .map(|sub| all_q.iter().map(|a| form_quad(&sys, a, &sub.h)).collect())
        .collect();
    let nsub = subs.len();
    let mut subsets: Vec<Vec<usize>> = vec![Vec::new(); nsub];
    for a in 0..all.len() {
        let k = (0..nsub).rev().find(|&k| !values[k][a].is_fzero());
        subsets[k.expect("h-bar components span h*")].push(a);
    }

    let mut scales: Vec<u64> = vec![1; nsub];
    for k in 1..nsub {
        let bound = |a: usize, scales: &[u64]| -> Quad {
            (0..k)
                .map(|lo| {
                    (lo..k)
                        .fold(Quad::fzero(), |acc, j| {
                            acc.add(&values[j][a].mul(&Quad::rational(qi(scales[j] as i64))))
                        })
                        .abs()
                })
                .max()
                .unwrap_or_else(Quad::fzero)
        };
        let ok = |lam: u64, scales: &[u64]| {
            subsets[k].iter().all(|&a| {
                values[k][a].abs().mul(&Quad::rational(qi(lam as i64))) > bound(a, scales)
            })
        };
        let mut hi = 1u64;
        while !ok(hi, &scales) {
            hi *= 2;
        }
        let mut lo = hi / 2;
        while lo + 1 < hi {
            let mid = (lo + hi) / 2;
            if ok(mid, &scales) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        scales[k] = hi;
    }
    for (sub, sc) in subs.iter_mut().zip(&scales) {
        sub.scale = *sc;
    }

    let mut hbar = vec![Quad::fzero(); l];
    for sub in &subs {
        let c = Quad::rational(qi(sub.scale as i64));
        for (x, y) in hbar.iter_mut().zip(&sub.h) {
            *x = x.add(&y.mul(&c));
        }
    }
    let mut signs = Vec::with_capacity(all.len());
    for (a, aq) in all_q.iter().enumerate() {
        let v = form_quad(&sys, aq, &hbar);
        let k = subsets.iter().position(|s| s.contains(&a)).unwrap();
        let sk = values[k][a].signum();
        if v.signum() == 0 || v.signum() != sk {
            return Err(Error::InvariantViolation(format!(
                "h-bar sign disagrees with its component on {:?}",
                all[a]
            )));
        }
        signs.push(v.signum() as i8);
    }
    let positive_roots: Vec<Root> = all
        .iter()
        .zip(&signs)
        .filter(|(_, s)| **s > 0)
        .map(|(r, _)| r.clone())
        .collect();

    // Walk h-bar into the dominant chamber; the reflections used give `w`.
    let mut y = hbar.clone();
    let mut word = Vec::new();
    'walk: loop {
        for i in 0..l {
            let ai = root_quad(&sys.simple_root(i));
            let p = form_quad(&sys, &ai, &y);
            if p.signum() < 0 {
                let c = p.mul(&Quad::rational(qi(2))).div(&Quad::rational(qi(
                    sys.form_int(&sys.simple_root(i), &sys.simple_root(i))
                )));
                y[i] = y[i].sub(&c);
                word.push(i + 1);
                continue 'walk;
            }
        }
        break;
    }
    let transport = WeylElement::from_word(&sys, &word)?;
    for r in &sys.positive_roots {
        let t = transport.apply(r);
        if !positive_roots.contains(&t) {
            return Err(Error::InvariantViolation(
                "transport element mismatch".into(),
            ));
        }
    }

    let hbar_rational = if hbar.iter().all(Quad::is_rational) {
        hbar.iter().map(|x| x.a.clone()).collect::<Vec<Q>>()
    } else {
        let ones = vec![qi(1); l];
        let rho = match crate::field::solve(&sys.bilinear_q(), &ones) {
            crate::field::Solution::Unique(v) => v,
            _ => unreachable!("form is nondegenerate"),
        };
        transport.apply_q(&rho)
    };

    let d0 = s.fixed_positive_roots().len();
    Ok(AdaptedPositiveSystem {
        subspaces: subs,
        hbar_exact: hbar,
        hbar: sys.root_coords_to_coweight(&hbar_rational),
        subsets,
        signs,
        positive_roots,
        transport,
        d0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(l: &str) -> Arc<RootSystem> {
        RootSystem::build(l).unwrap()
    }

    #[test]
    fn words_and_lengths() {
        let a2 = sys("A2");
        assert_eq!(WeylElement::from_word(&a2, &[1, 2, 1]).unwrap().length(), 3);
        assert!(WeylElement::from_word(&a2, &[1, 1]).unwrap().is_identity());
        let b2 = sys("B2");
        assert_eq!(
            WeylElement::from_word(&b2, &[1, 2, 1, 2]).unwrap().length(),
            4
        );
        assert!(WeylElement::from_word(&a2, &[3]).is_err());
    }

    #[test]
    fn inversion_sets() {
        let a2 = sys("A2");
        let s1 = WeylElement::from_word(&a2, &[1]).unwrap();
        assert_eq!(s1.inversion_set(), vec![vec![1, 0]]);
        let w = WeylElement::from_word(&a2, &[1, 2]).unwrap();
        let mut inv = w.inversion_set();
        inv.sort();
        assert_eq!(inv, vec![vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn class_counts() {
        let sizes = |l: &str| {
            conjugacy_classes(&sys(l))
                .unwrap()
                .iter()
                .map(|c| c.size)
                .collect::<Vec<_>>()
        };
        assert_eq!(sizes("A1"), vec![1, 1]);
        let mut a2 = sizes("A2");
        a2.sort();
        assert_eq!(a2, vec![1, 2, 3]);
        assert_eq!(sizes("B2").len(), 5);
        assert_eq!(sizes("G2").len(), 6);
        assert_eq!(sizes("F4").len(), 25);
        assert_eq!(sizes("D4").len(), 13);
    }

    #[test]
    fn a2_coxeter_decomposition() {
        let a2 = sys("A2");
        let s = WeylElement::coxeter(&a2);
        let d = involution_decompose(&s).unwrap();
        assert_eq!(d.gamma1, vec![vec![1, 0]]);
        assert_eq!(d.gamma2, vec![vec![0, 1]]);
        d.validate(&s).unwrap();
    }

    #[test]
    fn longest_element() {
        for l in ["A3", "B3", "G2", "F4"] {
            let s = sys(l);
            let w0 = WeylElement::longest(&s);
            assert_eq!(w0.length(), s.num_positive());
        }
    }

    #[test]
    fn norm_shell_counts() {
        assert_eq!(norm_shell(2, 1).len(), 8);
        assert_eq!(norm_shell(1, 3).len(), 2);
    }

    #[test]
    fn adapted_identity_is_standard() {
        let a2 = sys("A2");
        let e = WeylElement::identity(&a2);
        let aps = adapted_positive_system(&e, PlaneOrder::default(), None).unwrap();
        assert_eq!(aps.d0, 3);
        let mut p = aps.positive_roots.clone();
        p.sort();
        let mut want = a2.positive_roots.clone();
        want.sort();
        assert_eq!(p, want);
    }
}
