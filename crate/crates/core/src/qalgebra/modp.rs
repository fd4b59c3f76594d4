//! Arithmetic modulo the Mersenne prime `2^61 - 1`, used to find candidate
//! solutions of straightening systems quickly. Every candidate is verified
//! exactly before use.

use crate::field::Q;
use crate::poly::Poly;
use crate::scalar::QScalar;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

pub const P: u64 = (1 << 61) - 1;

pub fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

pub fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

pub fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

pub fn pow(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, b);
        }
        b = mul(b, b);
        e >>= 1;
    }
    r
}

pub fn inv(a: u64) -> u64 {
    assert!(a != 0, "inverse of zero mod p");
    pow(a, P - 2)
}

fn big_mod(x: &BigInt) -> u64 {
    let p = BigInt::from(P);
    x.mod_floor(&p).to_u64().unwrap()
}

/// `None` when the denominator is divisible by `p`.
pub fn q_mod(x: &Q) -> Option<u64> {
    let d = big_mod(x.denom());
    (d != 0).then(|| mul(big_mod(x.numer()), inv(d)))
}

/// A scalar with its numerator and denominator reduced mod p once, for
/// repeated evaluation at `q^(1/root) = t`.
pub struct ModScalar {
    num: Vec<u64>,
    den: Vec<u64>,
    lift: u64,
}

impl ModScalar {
    /// `None` if a coefficient has a denominator divisible by `p`.
    pub fn new(x: &QScalar, root: usize) -> Option<Self> {
        let (num, r) = x.numerator();
        let (den, _) = x.denominator();
        let red = |p: &Poly| p.coeffs().iter().map(q_mod).collect::<Option<Vec<u64>>>();
        Some(ModScalar {
            num: red(num)?,
            den: red(den)?,
            lift: (root / r) as u64,
        })
    }

    pub fn at(&self, t: u64) -> Option<u64> {
        let y = pow(t, self.lift);
        let horner = |c: &[u64]| c.iter().rev().fold(0, |acc, &k| add(mul(acc, y), k));
        let d = horner(&self.den);
        (d != 0).then(|| mul(horner(&self.num), inv(d)))
    }
}

pub enum ModSolution {
    Unique(Vec<u64>),
    Inconsistent,
    Underdetermined,
}

/// Gaussian elimination for `a x = b` over `F_p`.
pub fn solve(a: &[Vec<u64>], b: &[u64]) -> ModSolution {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<u64>> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(*x);
            r
        })
        .collect();
    let mut pivots = vec![];
    let mut row = 0;
    for c in 0..=cols {
        let Some(p) = (row..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(row, p);
        let iv = inv(m[row][c]);
        for x in m[row].iter_mut() {
            *x = mul(*x, iv);
        }
        for r in 0..rows {
            if r != row && m[r][c] != 0 {
                let f = m[r][c];
                for k in c..=cols {
                    let v = mul(f, m[row][k]);
                    m[r][k] = sub(m[r][k], v);
                }
            }
        }
        pivots.push(c);
        row += 1;
        if row == rows {
            break;
        }
    }
    if pivots.contains(&cols) {
        return ModSolution::Inconsistent;
    }
    if pivots.len() < cols {
        return ModSolution::Underdetermined;
    }
    ModSolution::Unique((0..cols).map(|r| m[r][cols]).collect())
}

/// Coefficients (lowest degree first) of the polynomial through the points.
pub fn interpolate(xs: &[u64], ys: &[u64]) -> Vec<u64> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = mul(sub(dd[i], dd[i - 1]), inv(sub(xs[i], xs[i - j])));
        }
    }
    let mut poly = vec![0u64; n];
    for i in (0..n).rev() {
        let mut next = vec![0u64; n];
        for k in 0..n {
            if poly[k] == 0 {
                continue;
            }
            if k + 1 < n {
                next[k + 1] = add(next[k + 1], poly[k]);
            }
            next[k] = sub(next[k], mul(poly[k], xs[i]));
        }
        next[0] = add(next[0], dd[i]);
        poly = next;
    }
    poly
}

/// The rational `n/d` with `|n|, d < sqrt(p/2)` congruent to `a`, if any.
pub fn reconstruct(a: u64) -> Option<Q> {
    let bound = BigInt::from(1u64 << 30);
    let (mut r0, mut r1) = (BigInt::from(P), BigInt::from(a));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::from(1));
    while r1 >= bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() >= bound {
        return None;
    }
    Some(Q::new(r1, t1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;

    fn scalar_at(x: &QScalar, t: u64, root: usize) -> Option<u64> {
        ModScalar::new(x, root)?.at(t)
    }

    #[test]
    fn reconstruct_small_rationals() {
        for x in [q(3, 7), q(-5, 2), q(0, 1), q(123456, 1)] {
            assert_eq!(reconstruct(q_mod(&x).unwrap()), Some(x));
        }
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let coeffs = [5u64, 0, 3, 1];
        let xs: Vec<u64> = (2..6).collect();
        let ys: Vec<u64> = xs
            .iter()
            .map(|&x| coeffs.iter().rev().fold(0, |acc, &c| add(mul(acc, x), c)))
            .collect();
        assert_eq!(interpolate(&xs, &ys), coeffs.to_vec());
    }

    #[test]
    fn scalar_evaluation() {
        let x = QScalar::qint(2, 1).inv(); // 1/(q + q^-1)
        let v = scalar_at(&x, 3, 1).unwrap();
        assert_eq!(reconstruct(v), Some(q(3, 10)));
    }
}
