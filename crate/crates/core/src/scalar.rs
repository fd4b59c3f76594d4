//! Rational functions in a fractional power of `q`.
//!
//! A [`QScalar`] is `num(x)/den(x)` with `x = q^(1/root)`. The pair is kept
//! reduced with a monic denominator and the smallest possible `root`, so
//! structural equality is value equality.

use crate::field::{q_to_string, qi, Field, Q};
use crate::poly::Poly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QScalar {
    root: usize,
    num: Poly,
    den: Poly,
}

fn is_x_power(p: &Poly) -> bool {
    p.is_monomial() && p.lead().is_one()
}

impl QScalar {
    fn raw(root: usize, num: Poly, den: Poly) -> Self {
        let mut s = QScalar { root, num, den };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.root = 1;
            self.den = Poly::one();
            return;
        }
        if is_x_power(&self.den) {
            let v = self.num.valuation().unwrap();
            let k = v.min(self.den.degree().unwrap());
            if k > 0 {
                self.num = self.num.shift_down(k);
                self.den = self.den.shift_down(k);
            }
        } else {
            let g = self.num.gcd(&self.den);
            if g.degree() != Some(0) {
                self.num = self.num.divrem(&g).0;
                self.den = self.den.divrem(&g).0;
            }
            let lead = self.den.lead();
            if !lead.is_one() {
                let inv = lead.recip();
                self.num = self.num.scale(&inv);
                self.den = self.den.scale(&inv);
            }
        }
        let g = self
            .root
            .gcd(&self.num.exponent_gcd())
            .gcd(&self.den.exponent_gcd());
        if g > 1 {
            self.num = self.num.deflate(g);
            self.den = self.den.deflate(g);
            self.root /= g;
        }
    }

    fn lift(&self, root: usize) -> (Poly, Poly) {
        let k = root / self.root;
        (self.num.inflate(k), self.den.inflate(k))
    }

    fn common_root(&self, o: &QScalar) -> usize {
        self.root.lcm(&o.root)
    }

    pub fn from_q(c: Q) -> Self {
        QScalar::raw(1, Poly::constant(c), Poly::one())
    }

    pub fn from_int(n: i64) -> Self {
        QScalar::from_q(qi(n))
    }

    /// `q^e` for a rational exponent.
    pub fn q_pow(e: &Q) -> Self {
        let root = e
            .denom()
            .to_string()
            .parse::<usize>()
            .expect("exponent denominator");
        let k: BigInt = e.numer().clone();
        let k: i64 = k.to_string().parse().expect("exponent numerator");
        if k >= 0 {
            QScalar::raw(root, Poly::monomial(Q::one(), k as usize), Poly::one())
        } else {
            QScalar::raw(root, Poly::one(), Poly::monomial(Q::one(), (-k) as usize))
        }
    }

    pub fn q_pow_int(k: i64) -> Self {
        QScalar::q_pow(&qi(k))
    }

    /// The formal variable itself (`q`).
    pub fn var() -> Self {
        QScalar::q_pow_int(1)
    }

    /// `c * q^e`.
    pub fn term(c: Q, e: &Q) -> Self {
        QScalar::q_pow(e).scale(&c)
    }

    /// Symmetric quantum integer `[n]_{q^d}`.
    pub fn qint(n: i64, d: i64) -> Self {
        if n == 0 {
            return QScalar::zero();
        }
        let sign = if n < 0 { -1 } else { 1 };
        let n = n.abs();
        // (v^n - v^-n)/(v - v^-1) = sum_{k=0}^{n-1} v^{n-1-2k}, v = q^d
        let mut s = QScalar::zero();
        for k in 0..n {
            s = s.add(&QScalar::q_pow_int(d * (n - 1 - 2 * k)));
        }
        s.scale(&qi(sign))
    }

    /// `[n]_{q^d}!`.
    pub fn qfactorial(n: u32, d: i64) -> Self {
        (1..=n as i64).fold(QScalar::one(), |acc, k| acc.mul(&QScalar::qint(k, d)))
    }

    /// Gaussian binomial `[n choose k]_{q^d}` as a Laurent polynomial.
    pub fn qbinomial(n: u32, k: u32, d: i64) -> Self {
        if k > n {
            return QScalar::zero();
        }
        QScalar::qfactorial(n, d)
            .div(&QScalar::qfactorial(k, d).mul(&QScalar::qfactorial(n - k, d)))
    }

    pub fn zero() -> Self {
        QScalar {
            root: 1,
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        QScalar::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn add(&self, o: &QScalar) -> QScalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let r = self.common_root(o);
        let (n1, d1) = self.lift(r);
        let (n2, d2) = o.lift(r);
        if is_x_power(&d1) && is_x_power(&d2) {
            let (a, b) = (d1.degree().unwrap(), d2.degree().unwrap());
            let m = a.max(b);
            let num = n1.shift_up(m - a).add(&n2.shift_up(m - b));
            return QScalar::raw(r, num, Poly::monomial(Q::one(), m));
        }
        if d1 == d2 {
            return QScalar::raw(r, n1.add(&n2), d1);
        }
        let g = d1.gcd(&d2);
        let c1 = d2.divrem(&g).0;
        let c2 = d1.divrem(&g).0;
        QScalar::raw(r, n1.mul(&c1).add(&n2.mul(&c2)), d1.mul(&c1))
    }

    pub fn neg(&self) -> QScalar {
        QScalar {
            root: self.root,
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &QScalar) -> QScalar {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Q) -> QScalar {
        if c.is_zero() {
            return QScalar::zero();
        }
        QScalar {
            root: self.root,
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &QScalar) -> QScalar {
        if self.is_zero() || o.is_zero() {
            return QScalar::zero();
        }
        let r = self.common_root(o);
        let (n1, d1) = self.lift(r);
        let (n2, d2) = o.lift(r);
        if is_x_power(&d1) && is_x_power(&d2) {
            return QScalar::raw(r, n1.mul(&n2), d1.mul(&d2));
        }
        let g1 = n1.gcd(&d2);
        let g2 = n2.gcd(&d1);
        let (n1, d2) = (n1.divrem(&g1).0, d2.divrem(&g1).0);
        let (n2, d1) = (n2.divrem(&g2).0, d1.divrem(&g2).0);
        QScalar::raw(r, n1.mul(&n2), d1.mul(&d2))
    }

    pub fn inv(&self) -> QScalar {
        assert!(!self.is_zero(), "inverse of zero scalar");
        QScalar::raw(self.root, self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &QScalar) -> QScalar {
        self.mul(&o.inv())
    }

    pub fn pow(&self, k: i64) -> QScalar {
        let base = if k < 0 { self.inv() } else { self.clone() };
        (0..k.unsigned_abs()).fold(QScalar::one(), |acc, _| acc.mul(&base))
    }

    /// True when the value is a Laurent polynomial in `q^(1/root)`.
    pub fn is_laurent(&self) -> bool {
        is_x_power(&self.den)
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0)
    }

    pub fn as_constant(&self) -> Option<Q> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    /// Laurent terms `(exponent of q, coefficient)` if the value is Laurent.
    pub fn laurent_terms(&self) -> Option<Vec<(Q, Q)>> {
        if !self.is_laurent() {
            return None;
        }
        let shift = self.den.degree().unwrap() as i64;
        let r = self.root as i64;
        Some(
            self.num
                .terms()
                .map(|(i, c)| (Q::new((i as i64 - shift).into(), r.into()), c.clone()))
                .collect(),
        )
    }

    /// Numerator and denominator as lists of `(exponent of q, coefficient)`.
    pub fn fraction_terms(&self) -> (Vec<(Q, Q)>, Vec<(Q, Q)>) {
        let r = self.root as i64;
        let f = |p: &Poly| {
            p.terms()
                .map(|(i, c)| (Q::new((i as i64).into(), r.into()), c.clone()))
                .collect()
        };
        (f(&self.num), f(&self.den))
    }

    /// Denominator as a polynomial in `x = q^(1/root)`.
    pub fn denominator(&self) -> (&Poly, usize) {
        (&self.den, self.root)
    }

    pub fn numerator(&self) -> (&Poly, usize) {
        (&self.num, self.root)
    }

    /// Substitute a rational value for `q^(1/root)`; `None` if the
    /// denominator vanishes there.
    pub fn eval_root(&self, x: &Q) -> Option<Q> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    /// Specialize `q` to a rational value; requires `root == 1`.
    pub fn eval(&self, x: &Q) -> Option<Q> {
        assert_eq!(
            self.root, 1,
            "fractional powers cannot be evaluated at rationals"
        );
        self.eval_root(x)
    }

    /// Evaluate with `q^(1/root)` replaced by an element of another field.
    pub fn eval_in<F: Field>(&self, x: &F) -> Option<F> {
        let d = self.den.eval_in(x);
        (!d.is_fzero()).then(|| self.num.eval_in(x).div(&d))
    }

    pub fn to_json(&self) -> Value {
        let map = |terms: Vec<(Q, Q)>| {
            let mut m = Map::new();
            for (e, c) in terms {
                m.insert(q_to_string(&e), Value::String(q_to_string(&c)));
            }
            Value::Object(m)
        };
        match self.laurent_terms() {
            Some(t) => json!({ "num": map(t), "den": map(vec![(Q::zero(), Q::one())]) }),
            None => {
                let (n, d) = self.fraction_terms();
                json!({ "num": map(n), "den": map(d) })
            }
        }
    }

    fn fmt_terms(terms: &[(Q, Q)], var: &str) -> String {
        if terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if e.is_zero() {
                out.push_str(&q_to_string(&mag));
                continue;
            }
            if !mag.is_one() {
                out.push_str(&q_to_string(&mag));
                out.push('*');
            }
            out.push_str(var);
            if !e.is_one() {
                if e.is_integer() {
                    out.push_str(&format!("^{}", e));
                } else {
                    out.push_str(&format!("^({})", q_to_string(e)));
                }
            }
        }
        out
    }

    /// Human-readable form with a chosen name for the variable.
    pub fn fmt_var(&self, var: &str) -> String {
        if let Some(t) = self.laurent_terms() {
            return QScalar::fmt_terms(&t, var);
        }
        let (n, d) = self.fraction_terms();
        format!(
            "({})/({})",
            QScalar::fmt_terms(&n, var),
            QScalar::fmt_terms(&d, var)
        )
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("q"))
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("q"))
    }
}

impl Field for QScalar {
    fn fzero() -> Self {
        QScalar::zero()
    }
    fn fone() -> Self {
        QScalar::one()
    }
    fn is_fzero(&self) -> bool {
        QScalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        QScalar::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        QScalar::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        QScalar::mul(self, o)
    }
    fn neg(&self) -> Self {
        QScalar::neg(self)
    }
    fn inv(&self) -> Self {
        QScalar::inv(self)
    }
    fn from_q(x: &Q) -> Self {
        QScalar::from_q(x.clone())
    }
    fn cost(&self) -> usize {
        let unit = self.num.is_monomial() && self.is_laurent() && self.num.lead().abs().is_one();
        if unit {
            0
        } else {
            self.num.terms().count() + 4 * self.den.terms().count()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;

    #[test]
    fn quantum_integers() {
        let two = QScalar::qint(2, 1);
        assert_eq!(two, QScalar::var().add(&QScalar::var().inv()));
        assert_eq!(QScalar::qint(1, 3), QScalar::one());
        let three = QScalar::qint(3, 1);
        assert_eq!(format!("{three}"), "q^2 + 1 + q^-2");
    }

    #[test]
    fn roots_normalize() {
        let a = QScalar::q_pow(&q(1, 2));
        let b = a.mul(&a);
        assert_eq!(b, QScalar::var());
        assert_eq!(b.root(), 1);
        let c = QScalar::q_pow(&q(1, 3)).mul(&QScalar::q_pow(&q(1, 6)));
        assert_eq!(c, a);
    }

    #[test]
    fn rational_function_reduction() {
        let qv = QScalar::var();
        let num = qv.mul(&qv).sub(&QScalar::one());
        let den = qv.sub(&QScalar::one());
        assert_eq!(num.div(&den), qv.add(&QScalar::one()));
        let x = QScalar::one().div(&QScalar::qint(2, 1));
        assert!(!x.is_laurent());
        assert_eq!(x.mul(&QScalar::qint(2, 1)), QScalar::one());
    }

    #[test]
    fn binomial_is_laurent() {
        let b = QScalar::qbinomial(4, 2, 1);
        assert!(b.is_laurent());
        assert_eq!(b.eval(&Q::one()), Some(qi(6)));
    }

    #[test]
    fn json_shape() {
        let s = QScalar::term(qi(-3), &q(-1, 2));
        let v = s.to_json();
        assert_eq!(v["num"]["-1/2"], "-3");
    }
}
