//! Dense univariate polynomials over the rationals.

use crate::field::{q_to_string, Q};
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;

/// Coefficients are stored low degree first with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly {
    c: Vec<Q>,
}

impl Poly {
    pub fn new(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { c: vec![Q::one()] }
    }

    pub fn constant(x: Q) -> Self {
        Poly::new(vec![x])
    }

    /// `coef * x^k`.
    pub fn monomial(coef: Q, k: usize) -> Self {
        let mut c = vec![Q::zero(); k + 1];
        c[k] = coef;
        Poly::new(c)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&x| crate::field::qi(x)).collect())
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.c.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Q {
        self.c.last().cloned().unwrap_or_else(Q::zero)
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    /// True for `c * x^k` with a single nonzero term.
    pub fn is_monomial(&self) -> bool {
        !self.is_zero() && self.c.iter().filter(|x| !x.is_zero()).count() == 1
    }

    /// Nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Q)> {
        self.c.iter().enumerate().filter(|(_, x)| !x.is_zero())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            c: self.c.iter().map(|x| -x).collect(),
        }
    }

    pub fn scale(&self, k: &Q) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly {
            c: self.c.iter().map(|x| x * k).collect(),
        }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Q::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.terms() {
            for (j, b) in o.terms() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut c = vec![Q::zero(); k];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    /// Divide by `x^k`; the low coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Poly {
        debug_assert!(self.c.iter().take(k).all(Zero::is_zero));
        Poly::new(self.c.iter().skip(k).cloned().collect())
    }

    /// Substitute `x -> x^k`.
    pub fn inflate(&self, k: usize) -> Poly {
        if k == 1 || self.is_zero() {
            return self.clone();
        }
        let mut c = vec![Q::zero(); (self.c.len() - 1) * k + 1];
        for (i, a) in self.terms() {
            c[i * k] = a.clone();
        }
        Poly { c }
    }

    /// Substitute `x^k -> x`; every exponent must be divisible by `k`.
    pub fn deflate(&self, k: usize) -> Poly {
        if k == 1 {
            return self.clone();
        }
        Poly::new(self.c.iter().step_by(k).cloned().collect())
    }

    /// Gcd of all exponents with nonzero coefficient (0 for constants).
    pub fn exponent_gcd(&self) -> usize {
        self.terms().fold(0usize, |g, (i, _)| g.gcd(&i))
    }

    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let lead_inv = d.lead().recip();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quo = vec![Q::zero(); r.len() - dd];
        for k in (0..quo.len()).rev() {
            let coef = &r[k + dd] * &lead_inv;
            if coef.is_zero() {
                continue;
            }
            for (j, b) in d.terms() {
                r[k + j] -= &coef * b;
            }
            quo[k] = coef;
        }
        r.truncate(dd);
        (Poly::new(quo), Poly::new(r))
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.lead().recip())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*self + t*o = g` monic.
    pub fn xgcd(&self, o: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (qt, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&qt.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&qt.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let k = r0.lead().recip();
        (r0.scale(&k), s0.scale(&k), t0.scale(&k))
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.c.iter().rev().fold(Q::zero(), |acc, a| acc * x + a)
    }

    pub fn eval_in<F: crate::field::Field>(&self, x: &F) -> F {
        self.c
            .iter()
            .rev()
            .fold(F::fzero(), |acc, a| acc.mul(x).add(&F::from_q(a)))
    }

    /// The `n`-th cyclotomic polynomial.
    pub fn cyclotomic(n: usize) -> Poly {
        assert!(n >= 1);
        let mut p = Poly::monomial(Q::one(), n).sub(&Poly::one());
        for d in 1..n {
            if n.is_multiple_of(d) {
                p = p.divrem(&Poly::cyclotomic(d)).0;
            }
        }
        p
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, a) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let neg = *a < Q::zero();
            let mag = if neg { -a } else { a.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coef = q_to_string(&mag);
            match i {
                0 => out.push_str(&coef),
                _ => {
                    if !mag.is_one() {
                        out.push_str(&coef);
                        out.push('*');
                    }
                    out.push_str(var);
                    if i > 1 {
                        out.push_str(&format!("^{i}"));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("x"))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_values() {
        assert_eq!(Poly::cyclotomic(1), Poly::from_ints(&[-1, 1]));
        assert_eq!(Poly::cyclotomic(4), Poly::from_ints(&[1, 0, 1]));
        assert_eq!(Poly::cyclotomic(6), Poly::from_ints(&[1, -1, 1]));
        assert_eq!(Poly::cyclotomic(12), Poly::from_ints(&[1, 0, -1, 0, 1]));
        assert_eq!(Poly::cyclotomic(5).degree(), Some(4));
    }

    #[test]
    fn gcd_and_division() {
        let a = Poly::from_ints(&[-1, 0, 1]);
        let b = Poly::from_ints(&[1, 2, 1]);
        assert_eq!(a.gcd(&b), Poly::from_ints(&[1, 1]));
        let (qt, r) = a.divrem(&Poly::from_ints(&[1, 1]));
        assert_eq!(qt, Poly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn xgcd_identity() {
        let a = Poly::from_ints(&[1, 0, 1]);
        let b = Poly::from_ints(&[0, 1, 1]);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert_eq!(g, Poly::one());
    }

    #[test]
    fn inflate_deflate() {
        let p = Poly::from_ints(&[1, 2]);
        let q = p.inflate(3);
        assert_eq!(q, Poly::from_ints(&[1, 0, 0, 2]));
        assert_eq!(q.exponent_gcd(), 3);
        assert_eq!(q.deflate(3), p);
    }
}
