//! Real quadratic numbers `a + b*sqrt(r)` with exact sign.

use crate::field::{q_to_string, Field, Q};
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// `r == 0` marks a plain rational; otherwise `r` is a squarefree integer > 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quad {
    pub a: Q,
    pub b: Q,
    pub r: i64,
}

impl Quad {
    pub fn rational(a: Q) -> Self {
        Quad {
            a,
            b: Q::zero(),
            r: 0,
        }
    }

    pub fn new(a: Q, b: Q, r: i64) -> Self {
        if b.is_zero() || r == 0 {
            return Quad::rational(a);
        }
        Quad { a, b, r }
    }

    /// `sqrt(n)` for a positive integer, with squares pulled out.
    pub fn sqrt_int(n: i64) -> Self {
        assert!(n > 0);
        let (f, r) = squarefree_split(n);
        if r == 1 {
            Quad::rational(crate::field::qi(f))
        } else {
            Quad::new(Q::zero(), crate::field::qi(f), r)
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn field_r(&self, o: &Quad) -> i64 {
        match (self.r, o.r) {
            (0, r) | (r, 0) => r,
            (r, s) => {
                assert_eq!(r, s, "mixing different quadratic fields");
                r
            }
        }
    }

    pub fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2r = &self.b * &self.b * crate::field::qi(self.r);
        match a2.cmp(&b2r) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> Quad {
        if self.signum() < 0 {
            Field::neg(self)
        } else {
            self.clone()
        }
    }
}

fn sign(x: &Q) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Writes `n = f^2 * r` with `r` squarefree.
pub fn squarefree_split(n: i64) -> (i64, i64) {
    let mut f = 1;
    let mut r = n;
    let mut p = 2;
    while p * p <= r {
        while r % (p * p) == 0 {
            r /= p * p;
            f *= p;
        }
        p += 1;
    }
    (f, r)
}

impl PartialOrd for Quad {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Quad {
    fn cmp(&self, o: &Self) -> Ordering {
        Field::sub(self, o).signum().cmp(&0)
    }
}

impl Field for Quad {
    fn fzero() -> Self {
        Quad::rational(Q::zero())
    }
    fn fone() -> Self {
        Quad::rational(crate::field::qi(1))
    }
    fn is_fzero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        Quad::new(&self.a + &o.a, &self.b + &o.b, self.field_r(o))
    }
    fn sub(&self, o: &Self) -> Self {
        Quad::new(&self.a - &o.a, &self.b - &o.b, self.field_r(o))
    }
    fn mul(&self, o: &Self) -> Self {
        let r = self.field_r(o);
        let rq = crate::field::qi(r);
        Quad::new(
            &self.a * &o.a + &self.b * &o.b * rq,
            &self.a * &o.b + &self.b * &o.a,
            r,
        )
    }
    fn neg(&self) -> Self {
        Quad::new(-&self.a, -&self.b, self.r)
    }
    fn inv(&self) -> Self {
        assert!(!Field::is_fzero(self), "inverse of zero");
        let n = &self.a * &self.a - &self.b * &self.b * crate::field::qi(self.r);
        Quad::new(&self.a / &n, -&self.b / &n, self.r)
    }
    fn from_q(x: &Q) -> Self {
        Quad::rational(x.clone())
    }
    fn cost(&self) -> usize {
        self.a.cost() + self.b.cost()
    }
}

impl fmt::Debug for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", q_to_string(&self.a));
        }
        let b = if self.b.abs() == crate::field::qi(1) {
            String::new()
        } else {
            format!("{}*", q_to_string(&self.b.abs()))
        };
        let op = if self.b.is_negative() { "-" } else { "+" };
        if self.a.is_zero() {
            let lead = if self.b.is_negative() { "-" } else { "" };
            write!(f, "{lead}{b}sqrt({})", self.r)
        } else {
            write!(f, "{} {op} {b}sqrt({})", q_to_string(&self.a), self.r)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{q, qi};

    #[test]
    fn signs() {
        let x = Quad::new(qi(-1), qi(1), 2); // sqrt2 - 1 > 0
        assert_eq!(x.signum(), 1);
        let y = Quad::new(qi(3), qi(-2), 2); // 3 - 2 sqrt2 > 0
        assert_eq!(y.signum(), 1);
        let z = Quad::new(qi(1), qi(-1), 2);
        assert_eq!(z.signum(), -1);
    }

    #[test]
    fn arithmetic() {
        let s5 = Quad::sqrt_int(5);
        assert_eq!(s5.mul(&s5), Quad::rational(qi(5)));
        let phi = Quad::new(q(1, 2), q(1, 2), 5);
        assert_eq!(phi.mul(&phi), phi.add(&Quad::fone()));
        assert_eq!(phi.mul(&phi.inv()), Quad::fone());
        assert_eq!(Quad::sqrt_int(12), Quad::new(qi(0), qi(2), 3));
    }
}
