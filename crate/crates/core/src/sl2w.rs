//! The algebra `C_eps[SL_2^*]` generated by `e, f, t^{±1}` with
//!
//! ```text
//! t e t^-1 = eps e,   t f t^-1 = eps^-1 f,   ef - fe = (t^2 - t^-2)/(eps - eps^-1)
//! ```
//!
//! its Whittaker module `Q` (a vector `v` with `e v = v`, basis
//! `v_mk = t^m Omega^k v`) and the Hecke-type ranks of `e - 1` on it.
//!
//! Coefficients live in any [`Field`]: `QScalar` for a formal `eps`, `Q` for a
//! rational specialization, or [`Cyclo`] for a root of unity.

use crate::error::{Error, Result};
use crate::field::{nullspace, Field, Q};
use crate::poly::Poly;
use crate::scalar::QScalar;
use num_traits::One;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::{self, Display};

/// Coefficient types usable here.
pub trait Coeff: Field + Display {}
impl<F: Field + Display> Coeff for F {}

/// Normal word `f^a t^m e^b`.
pub type Word = (u32, i64, u32);

#[derive(Debug, Clone, PartialEq)]
pub struct Element<F> {
    pub terms: BTreeMap<Word, F>,
}

impl<F: Coeff> Element<F> {
    pub fn zero() -> Self {
        Element {
            terms: BTreeMap::new(),
        }
    }

    pub fn word(w: Word, c: F) -> Self {
        let mut x = Element::zero();
        x.add_term(w, c);
        x
    }

    pub fn add_term(&mut self, w: Word, c: F) {
        if c.is_fzero() {
            return;
        }
        let slot = self.terms.entry(w).or_insert_with(F::fzero);
        *slot = slot.add(&c);
        if slot.is_fzero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(*w, c.clone());
        }
        r
    }

    pub fn scale(&self, k: &F) -> Self {
        let mut r = Element::zero();
        for (w, c) in &self.terms {
            r.add_term(*w, c.mul(k));
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&F::fone().neg()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<F: Coeff> Display for Element<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(a, m, b), c)| format!("({c}) f^{a} t^{m} e^{b}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Vector of the module `Q` in the basis `v_mk`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleVector<F> {
    pub terms: BTreeMap<(i64, u32), F>,
}

impl<F: Coeff> ModuleVector<F> {
    pub fn zero() -> Self {
        ModuleVector {
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(m: i64, k: u32) -> Self {
        let mut v = ModuleVector::zero();
        v.add_term((m, k), F::fone());
        v
    }

    pub fn add_term(&mut self, key: (i64, u32), c: F) {
        if c.is_fzero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(F::fzero);
        *slot = slot.add(&c);
        if slot.is_fzero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, k: &F) -> Self {
        let mut r = ModuleVector::zero();
        for (key, c) in &self.terms {
            r.add_term(*key, c.mul(k));
        }
        r
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (key, c) in &o.terms {
            r.add_term(*key, c.clone());
        }
        r
    }
}

pub struct Sl2Star<F> {
    eps: F,
    eps_inv: F,
    /// `1 / (eps - eps^-1)`.
    kappa: F,
}

impl<F: Coeff> Sl2Star<F> {
    /// Fails with `SpecializationSingular` when `eps = 0` or `eps^2 = 1`.
    pub fn new(eps: F) -> Result<Self> {
        if eps.is_fzero() {
            return Err(Error::SpecializationSingular("eps = 0".into()));
        }
        let eps_inv = eps.inv();
        let diff = eps.sub(&eps_inv);
        if diff.is_fzero() {
            return Err(Error::SpecializationSingular(format!(
                "eps^2 = 1 at eps = {eps}"
            )));
        }
        Ok(Sl2Star {
            kappa: diff.inv(),
            eps,
            eps_inv,
        })
    }

    pub fn eps(&self) -> &F {
        &self.eps
    }

    /// `eps^k` for any integer `k`.
    pub fn eps_pow(&self, k: i64) -> F {
        let base = if k < 0 { &self.eps_inv } else { &self.eps };
        (0..k.unsigned_abs()).fold(F::fone(), |acc, _| acc.mul(base))
    }

    pub fn one(&self) -> Element<F> {
        Element::word((0, 0, 0), F::fone())
    }

    pub fn e(&self) -> Element<F> {
        Element::word((0, 0, 1), F::fone())
    }

    pub fn f(&self) -> Element<F> {
        Element::word((1, 0, 0), F::fone())
    }

    pub fn t(&self, m: i64) -> Element<F> {
        Element::word((0, m, 0), F::fone())
    }

    /// `x * e`.
    fn times_e(&self, x: &Element<F>) -> Element<F> {
        let mut r = Element::zero();
        for (&(a, m, b), c) in &x.terms {
            r.add_term((a, m, b + 1), c.clone());
        }
        r
    }

    /// `x * t^k`, using `e^b t^k = eps^{-bk} t^k e^b`.
    fn times_t(&self, x: &Element<F>, k: i64) -> Element<F> {
        let mut r = Element::zero();
        for (&(a, m, b), c) in &x.terms {
            r.add_term((a, m + k, b), c.mul(&self.eps_pow(-(b as i64) * k)));
        }
        r
    }

    /// `x * f`: `e^b f = f e^b + sum_j (eps^{-2j} t^2 - eps^{2j} t^-2) e^{b-1} / (eps - eps^-1)`
    /// and `t^m f = eps^{-m} f t^m`.
    fn times_f(&self, x: &Element<F>) -> Element<F> {
        let mut r = Element::zero();
        for (&(a, m, b), c) in &x.terms {
            r.add_term((a + 1, m, b), c.mul(&self.eps_pow(-m)));
            if b == 0 {
                continue;
            }
            let mut up = F::fzero();
            let mut down = F::fzero();
            for j in 0..b as i64 {
                up = up.add(&self.eps_pow(-2 * j));
                down = down.add(&self.eps_pow(2 * j));
            }
            let ck = c.mul(&self.kappa);
            r.add_term((a, m + 2, b - 1), ck.mul(&up));
            r.add_term((a, m - 2, b - 1), ck.mul(&down).neg());
        }
        r
    }

    /// Product in the normal basis `f^a t^m e^b`.
    pub fn multiply(&self, x: &Element<F>, y: &Element<F>) -> Element<F> {
        let mut out = Element::zero();
        for (&(a, m, b), c) in &y.terms {
            let mut p = x.scale(c);
            for _ in 0..a {
                p = self.times_f(&p);
            }
            p = self.times_t(&p, m);
            for _ in 0..b {
                p = self.times_e(&p);
            }
            out = out.add(&p);
        }
        out
    }

    pub fn commutator(&self, x: &Element<F>, y: &Element<F>) -> Element<F> {
        self.multiply(x, y).sub(&self.multiply(y, x))
    }

    /// `(eps t^2 + eps^-1 t^-2)` scaled by `1/(eps - eps^-1)^2`.
    pub fn cartan_part(&self) -> Element<F> {
        let k2 = self.kappa.mul(&self.kappa);
        let mut x = Element::word((0, 2, 0), self.eps.mul(&k2));
        x.add_term((0, -2, 0), self.eps_inv.mul(&k2));
        x
    }

    /// The Casimir `Omega = cartan_part + f e`.
    pub fn omega(&self) -> Element<F> {
        self.cartan_part().add(&Element::word((1, 0, 1), F::fone()))
    }

    /// `Omega` commutes with `e`, `f` and `t`.
    pub fn omega_is_central(&self) -> bool {
        let w = self.omega();
        [self.e(), self.f(), self.t(1)]
            .iter()
            .all(|g| self.commutator(&w, g).is_zero())
    }

    fn act_e(&self, w: &ModuleVector<F>) -> ModuleVector<F> {
        let mut r = ModuleVector::zero();
        for (&(m, k), c) in &w.terms {
            r.add_term((m, k), c.mul(&self.eps_pow(-m)));
        }
        r
    }

    fn act_t(&self, w: &ModuleVector<F>, j: i64) -> ModuleVector<F> {
        let mut r = ModuleVector::zero();
        for (&(m, k), c) in &w.terms {
            r.add_term((m + j, k), c.clone());
        }
        r
    }

    /// `f v_mk = eps^m t^m f Omega^k v` with `f v = f e v = (Omega - cartan_part) v`.
    fn act_f(&self, w: &ModuleVector<F>) -> ModuleVector<F> {
        let k2 = self.kappa.mul(&self.kappa);
        let mut r = ModuleVector::zero();
        for (&(m, k), c) in &w.terms {
            let c = c.mul(&self.eps_pow(m));
            r.add_term((m, k + 1), c.clone());
            r.add_term((m + 2, k), c.mul(&self.eps).mul(&k2).neg());
            r.add_term((m - 2, k), c.mul(&self.eps_inv).mul(&k2).neg());
        }
        r
    }

    /// Action on `Q`: each word `f^a t^m e^b` applied right to left.
    pub fn act(&self, x: &Element<F>, w: &ModuleVector<F>) -> ModuleVector<F> {
        let mut out = ModuleVector::zero();
        for (&(a, m, b), c) in &x.terms {
            let mut v = w.scale(c);
            for _ in 0..b {
                v = self.act_e(&v);
            }
            v = self.act_t(&v, m);
            for _ in 0..a {
                v = self.act_f(&v);
            }
            out = out.add(&v);
        }
        out
    }
}

/// `Q(zeta_n)`: polynomials in `eps` reduced modulo the `n`-th cyclotomic
/// polynomial. `n = 0` marks a rational constant that fits any `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cyclo {
    n: usize,
    p: Poly,
}

impl Cyclo {
    pub fn zeta(n: usize) -> Self {
        assert!(n >= 1);
        Cyclo::reduce(n, Poly::monomial(Q::one(), 1))
    }

    fn reduce(n: usize, p: Poly) -> Self {
        let p = if n == 0 {
            p
        } else {
            p.divrem(&Poly::cyclotomic(n)).1
        };
        let n = if p.degree().unwrap_or(0) == 0 { 0 } else { n };
        Cyclo { n, p }
    }

    fn join(&self, o: &Cyclo) -> usize {
        match (self.n, o.n) {
            (0, n) | (n, 0) => n,
            (a, b) => {
                assert_eq!(a, b, "mixing different cyclotomic fields");
                a
            }
        }
    }
}

impl Field for Cyclo {
    fn fzero() -> Self {
        Cyclo {
            n: 0,
            p: Poly::zero(),
        }
    }
    fn fone() -> Self {
        Cyclo {
            n: 0,
            p: Poly::one(),
        }
    }
    fn is_fzero(&self) -> bool {
        self.p.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        Cyclo::reduce(self.join(o), self.p.add(&o.p))
    }
    fn sub(&self, o: &Self) -> Self {
        Cyclo::reduce(self.join(o), self.p.sub(&o.p))
    }
    fn mul(&self, o: &Self) -> Self {
        Cyclo::reduce(self.join(o), self.p.mul(&o.p))
    }
    fn neg(&self) -> Self {
        Cyclo {
            n: self.n,
            p: self.p.neg(),
        }
    }
    fn inv(&self) -> Self {
        assert!(!self.p.is_zero(), "inverse of zero");
        if self.n == 0 {
            return Cyclo {
                n: 0,
                p: Poly::constant(self.p.coeff(0).recip()),
            };
        }
        let (g, s, _) = self.p.xgcd(&Poly::cyclotomic(self.n));
        debug_assert!(g == Poly::one());
        Cyclo::reduce(self.n, s)
    }
    fn from_q(x: &Q) -> Self {
        Cyclo {
            n: 0,
            p: Poly::constant(x.clone()),
        }
    }
}

impl Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.p.fmt_var("eps"))
    }
}

/// How `eps` is chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum Epsilon {
    Symbolic,
    Rational(Q),
    /// A primitive `n`-th root of unity.
    RootOfUnity(usize),
}

impl std::str::FromStr for Epsilon {
    type Err = Error;

    /// `symbolic`, `p/q` (or `rational:p/q`), or `root:n`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "symbolic" {
            return Ok(Epsilon::Symbolic);
        }
        if let Some(n) = s.strip_prefix("root:") {
            let n: usize = n
                .parse()
                .map_err(|_| Error::Parse(format!("bad root order `{n}`")))?;
            if n == 0 {
                return Err(Error::Parse("root order must be positive".into()));
            }
            return Ok(Epsilon::RootOfUnity(n));
        }
        let r = s.strip_prefix("rational:").unwrap_or(s);
        r.parse::<Q>()
            .map(Epsilon::Rational)
            .map_err(|_| Error::Parse(format!("bad epsilon `{s}`")))
    }
}

impl Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Epsilon::Symbolic => write!(f, "symbolic"),
            Epsilon::Rational(x) => write!(f, "{x}"),
            Epsilon::RootOfUnity(n) => write!(f, "root:{n}"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HeckeReport {
    pub epsilon: String,
    pub max_m: i64,
    pub max_k: u32,
    pub omega_central: bool,
    /// `e v_mk = eps^{-m} v_mk` on the whole truncation.
    pub e_semisimple: bool,
    /// Basis of `{w : e w = w}` on the truncation, as `(m, k)` labels.
    pub whittaker_basis: Vec<(i64, u32)>,
    /// The Whittaker space is exactly the span of the `v_0k`.
    pub whittaker_is_m_zero: bool,
    /// Ranks of the kernel and cokernel of `e - 1` on each `C_mk`, indexed
    /// `[m + max_m][k]`.
    pub hk0: Vec<Vec<usize>>,
    pub hk1: Vec<Vec<usize>>,
    /// Sums over `m` for each degree `k`.
    pub hk0_by_degree: Vec<usize>,
    pub hk1_by_degree: Vec<usize>,
}

impl HeckeReport {
    /// Ranks are 1 exactly at `m = 0`.
    pub fn matches_generic(&self) -> bool {
        let m0 = self.max_m as usize;
        let grid_ok = |g: &Vec<Vec<usize>>| {
            g.iter()
                .enumerate()
                .all(|(i, row)| row.iter().all(|&r| r == usize::from(i == m0)))
        };
        self.omega_central
            && self.e_semisimple
            && self.whittaker_is_m_zero
            && grid_ok(&self.hk0)
            && grid_ok(&self.hk1)
    }

    /// Some degree has nonzero first Hecke rank.
    pub fn hk1_nonzero(&self) -> bool {
        self.hk1_by_degree.iter().any(|&r| r > 0)
    }
}

/// Whittaker vectors and the ranks of `e - 1` on the truncation
/// `|m| <= max_m`, `k <= max_k`.
pub fn whittaker_and_hecke(eps: &Epsilon, max_m: i64, max_k: u32) -> Result<HeckeReport> {
    match eps {
        Epsilon::Symbolic => hecke_over(Sl2Star::new(QScalar::var())?, eps, max_m, max_k),
        Epsilon::Rational(x) => hecke_over(Sl2Star::new(x.clone())?, eps, max_m, max_k),
        Epsilon::RootOfUnity(n) => hecke_over(Sl2Star::new(Cyclo::zeta(*n))?, eps, max_m, max_k),
    }
}

fn hecke_over<F: Coeff>(
    alg: Sl2Star<F>,
    eps: &Epsilon,
    max_m: i64,
    max_k: u32,
) -> Result<HeckeReport> {
    if max_m < 0 {
        return Err(Error::Parse("max_m must be nonnegative".into()));
    }
    let labels: Vec<(i64, u32)> = (-max_m..=max_m)
        .flat_map(|m| (0..=max_k).map(move |k| (m, k)))
        .collect();
    let e = alg.e();
    let minus_one = alg.one().scale(&F::fone().neg());
    let e_minus_1 = e.add(&minus_one);

    let mut e_semisimple = true;
    // Columns are images of basis vectors; e - 1 preserves the truncation.
    let mut mat = vec![vec![F::fzero(); labels.len()]; labels.len()];
    for (j, &(m, k)) in labels.iter().enumerate() {
        let v = ModuleVector::basis(m, k);
        if alg.act(&e, &v) != v.scale(&alg.eps_pow(-m)) {
            e_semisimple = false;
        }
        for (key, c) in alg.act(&e_minus_1, &v).terms {
            let i = labels
                .iter()
                .position(|l| *l == key)
                .expect("e - 1 leaves the truncation");
            mat[i][j] = c;
        }
    }
    let kernel = nullspace(&mat, labels.len());
    let whittaker_basis: Vec<(i64, u32)> = kernel
        .iter()
        .filter_map(|v| {
            let support: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_fzero()).collect();
            (support.len() == 1).then(|| labels[support[0]])
        })
        .collect();
    let m_zero: Vec<(i64, u32)> = labels.iter().copied().filter(|l| l.0 == 0).collect();
    let whittaker_is_m_zero = whittaker_basis.len() == kernel.len() && {
        let mut w = whittaker_basis.clone();
        w.sort();
        w == m_zero
    };

    let width = (2 * max_m + 1) as usize;
    let mut hk0 = vec![vec![0; max_k as usize + 1]; width];
    let mut hk1 = hk0.clone();
    for (j, &(m, k)) in labels.iter().enumerate() {
        // e - 1 is diagonal, so C_mk is invariant and the restriction is 1x1.
        let rank = usize::from(!mat[j][j].is_fzero());
        hk0[(m + max_m) as usize][k as usize] = 1 - rank;
        hk1[(m + max_m) as usize][k as usize] = 1 - rank;
    }
    let by_degree = |g: &Vec<Vec<usize>>| -> Vec<usize> {
        (0..=max_k as usize)
            .map(|k| g.iter().map(|row| row[k]).sum())
            .collect()
    };
    Ok(HeckeReport {
        epsilon: eps.to_string(),
        max_m,
        max_k,
        omega_central: alg.omega_is_central(),
        e_semisimple,
        whittaker_basis,
        whittaker_is_m_zero,
        hk0_by_degree: by_degree(&hk0),
        hk1_by_degree: by_degree(&hk1),
        hk0,
        hk1,
    })
}

/// `eps` as a `QScalar` coefficient, for callers building elements by hand.
pub fn symbolic() -> Result<Sl2Star<QScalar>> {
    Sl2Star::new(QScalar::var())
}

/// `eps = p/q`.
pub fn rational(p: i64, q: i64) -> Result<Sl2Star<Q>> {
    Sl2Star::new(Q::new(p.into(), q.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::qi;
    use proptest::prelude::*;

    fn eps() -> QScalar {
        QScalar::var()
    }

    #[test]
    fn t_passes_e() {
        // te = eps et, and te is already normal
        let a = symbolic().unwrap();
        let te = a.multiply(&a.t(1), &a.e());
        let et = a.multiply(&a.e(), &a.t(1));
        assert_eq!(te, Element::word((0, 1, 1), QScalar::one()));
        assert_eq!(te, et.scale(&eps()));
    }

    #[test]
    fn e_passes_f() {
        let a = symbolic().unwrap();
        let ef = a.multiply(&a.e(), &a.f());
        let kappa = eps().sub(&eps().inv()).inv();
        let mut expect = Element::word((1, 0, 1), QScalar::one());
        expect.add_term((0, 2, 0), kappa.clone());
        expect.add_term((0, -2, 0), kappa.neg());
        assert_eq!(ef, expect);
    }

    #[test]
    fn unit_is_neutral() {
        let a = symbolic().unwrap();
        let x = a.omega();
        assert_eq!(a.multiply(&x, &a.one()), x);
        assert_eq!(a.multiply(&a.one(), &x), x);
    }

    #[test]
    fn omega_central_symbolic_and_rational() {
        assert!(symbolic().unwrap().omega_is_central());
        assert!(rational(3, 2).unwrap().omega_is_central());
        assert!(Sl2Star::new(Cyclo::zeta(5)).unwrap().omega_is_central());
    }

    #[test]
    fn singular_specializations() {
        for (p, q) in [(1, 1), (-1, 1), (0, 1)] {
            assert!(matches!(
                rational(p, q),
                Err(Error::SpecializationSingular(_))
            ));
        }
        assert!(Sl2Star::new(Cyclo::zeta(2)).is_err());
    }

    #[test]
    fn e_on_basis() {
        let a = symbolic().unwrap();
        for m in -3..=3 {
            let v = ModuleVector::basis(m, 2);
            assert_eq!(a.act(&a.e(), &v), v.scale(&a.eps_pow(-m)));
        }
    }

    #[test]
    fn f_on_cyclic_vector() {
        // f v = (Omega - cartan_part) v
        let a = symbolic().unwrap();
        let v = ModuleVector::basis(0, 0);
        let fv = a.act(&a.f(), &v);
        let via_omega = a.act(&a.omega().sub(&a.cartan_part()), &v);
        assert_eq!(fv, via_omega);
        assert_eq!(fv.terms.get(&(0, 1)), Some(&QScalar::one()));
    }

    #[test]
    fn action_is_a_module() {
        // (xy).w = x.(y.w) on a few products
        let a = symbolic().unwrap();
        let gens = [a.e(), a.f(), a.t(1), a.t(-1), a.omega()];
        let w = ModuleVector::basis(1, 1).add(&ModuleVector::basis(-2, 0));
        for x in &gens {
            for y in &gens {
                let lhs = a.act(&a.multiply(x, y), &w);
                let rhs = a.act(x, &a.act(y, &w));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn generic_hecke_ranks() {
        let r = whittaker_and_hecke(&Epsilon::Symbolic, 3, 5).unwrap();
        assert!(r.matches_generic());
        assert_eq!(
            r.whittaker_basis,
            (0..=5).map(|k| (0, k)).collect::<Vec<_>>()
        );
        assert_eq!(r.hk0_by_degree, vec![1; 6]);
        assert!(r.hk1_nonzero());
    }

    #[test]
    fn cube_root_of_unity_has_extra_kernel() {
        let r = whittaker_and_hecke(&Epsilon::RootOfUnity(3), 3, 1).unwrap();
        assert!(!r.matches_generic());
        let ms: Vec<i64> = r.whittaker_basis.iter().map(|l| l.0).collect();
        assert!(ms.iter().all(|m| m % 3 == 0));
        assert!(ms.contains(&3) && ms.contains(&-3));
    }

    #[test]
    fn epsilon_parsing() {
        assert_eq!("symbolic".parse::<Epsilon>().unwrap(), Epsilon::Symbolic);
        assert_eq!(
            "2/3".parse::<Epsilon>().unwrap(),
            Epsilon::Rational(Q::new(2.into(), 3.into()))
        );
        assert_eq!(
            "rational:5".parse::<Epsilon>().unwrap(),
            Epsilon::Rational(qi(5))
        );
        assert_eq!(
            "root:3".parse::<Epsilon>().unwrap(),
            Epsilon::RootOfUnity(3)
        );
        assert!("x".parse::<Epsilon>().is_err());
    }

    fn word() -> impl Strategy<Value = Word> {
        (0u32..3, -2i64..3, 0u32..3)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn multiplication_is_associative(x in word(), y in word(), z in word()) {
            let a = rational(2, 3).unwrap();
            let (x, y, z) = (
                Element::word(x, Q::one()),
                Element::word(y, Q::one()),
                Element::word(z, Q::one()),
            );
            let l = a.multiply(&a.multiply(&x, &y), &z);
            let r = a.multiply(&x, &a.multiply(&y, &z));
            prop_assert_eq!(l, r);
        }
    }
}
