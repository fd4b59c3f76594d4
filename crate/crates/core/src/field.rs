//! Field abstraction and exact linear algebra over it.
//!
//! Everything here is dense and naive: the matrices that occur are small, and
//! exactness matters far more than asymptotics.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rationals.
pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Minimal field interface needed by the elimination routines.
pub trait Field: Clone + PartialEq + std::fmt::Debug {
    fn fzero() -> Self;
    fn fone() -> Self;
    fn is_fzero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn from_q(x: &Q) -> Self;
    /// Rough size of the element; elimination prefers cheap pivots.
    fn cost(&self) -> usize {
        1
    }

    fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }
    fn is_fone(&self) -> bool {
        *self == Self::fone()
    }
}

impl Field for Q {
    fn fzero() -> Self {
        Zero::zero()
    }
    fn fone() -> Self {
        One::one()
    }
    fn is_fzero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn from_q(x: &Q) -> Self {
        x.clone()
    }
    fn cost(&self) -> usize {
        (self.numer().bits() + self.denom().bits()) as usize
    }
}

pub type Matrix<F> = Vec<Vec<F>>;

pub fn zeros<F: Field>(r: usize, c: usize) -> Matrix<F> {
    vec![vec![F::fzero(); c]; r]
}

pub fn identity<F: Field>(n: usize) -> Matrix<F> {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = F::fone();
    }
    m
}

pub fn transpose<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn mat_mul<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter().zip(b.iter()).fold(F::fzero(), |acc, (x, brow)| {
                        if x.is_fzero() || brow[j].is_fzero() {
                            acc
                        } else {
                            acc.add(&x.mul(&brow[j]))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec<F: Field>(a: &Matrix<F>, v: &[F]) -> Vec<F> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(F::fzero(), |acc, (x, y)| acc.add(&x.mul(y)))
        })
        .collect()
}

pub fn mat_add<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.add(y)).collect())
        .collect()
}

pub fn mat_sub<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.sub(y)).collect())
        .collect()
}

pub fn mat_scale<F: Field>(a: &Matrix<F>, c: &F) -> Matrix<F> {
    a.iter()
        .map(|r| r.iter().map(|x| x.mul(c)).collect())
        .collect()
}

/// Reduced row echelon form in place. Returns the pivot columns; the first
/// `pivots.len()` rows are the nonzero rows, each with a unit pivot.
pub fn rref<F: Field>(m: &mut Matrix<F>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let best = (r..rows)
            .filter(|&i| !m[i][c].is_fzero())
            .min_by_key(|&i| m[i][c].cost());
        let Some(p) = best else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv();
        for x in m[r].iter_mut() {
            if !x.is_fzero() {
                *x = x.mul(&inv);
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_fzero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_fzero() {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Basis of the right kernel `{x : m x = 0}`.
pub fn nullspace<F: Field>(m: &Matrix<F>, cols: usize) -> Vec<Vec<F>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::fzero(); cols];
            v[f] = F::fone();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = a[r][f].neg();
            }
            v
        })
        .collect()
}

pub fn inverse<F: Field>(m: &Matrix<F>) -> Option<Matrix<F>> {
    let n = m.len();
    let mut aug: Matrix<F> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::fone() } else { F::fzero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Outcome of solving `a x = b`.
#[derive(Debug, Clone, PartialEq)]
pub enum Solution<F> {
    Unique(Vec<F>),
    Inconsistent,
    Underdetermined,
}

pub fn solve<F: Field>(a: &Matrix<F>, b: &[F]) -> Solution<F> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut aug: Matrix<F> = a
        .iter()
        .zip(b)
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return Solution::Inconsistent;
    }
    if pivots.len() < cols {
        return Solution::Underdetermined;
    }
    Solution::Unique((0..cols).map(|r| aug[r][cols].clone()).collect())
}

/// Incrementally maintained echelon basis of a subspace of `F^n`.
///
/// Each stored row has a unit entry at its pivot and zeros at the pivots of
/// all earlier rows, so sequential reduction is exact.
#[derive(Debug, Clone)]
pub struct Echelon<F> {
    pub dim: usize,
    pub rows: Vec<Vec<F>>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_fzero() {
                continue;
            }
            let f = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_fzero() {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        v
    }

    /// Adds `v` to the span. Returns false if it was already dependent.
    pub fn insert(&mut self, v: &[F]) -> bool {
        let mut v = self.reduce(v);
        let best = (0..self.dim)
            .filter(|&i| !v[i].is_fzero())
            .min_by_key(|&i| (v[i].cost(), i));
        let Some(p) = best else { return false };
        let inv = v[p].inv();
        for x in v.iter_mut() {
            if !x.is_fzero() {
                *x = x.mul(&inv);
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }
}

pub fn is_zero_vec<F: Field>(v: &[F]) -> bool {
    v.iter().all(|x| x.is_fzero())
}

/// Least common multiple of the denominators of a list of rationals.
pub fn lcm_denominators<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| {
        num_integer::Integer::lcm(&acc, x.denom())
    })
}

pub fn q_to_string(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn q_abs(x: &Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix<Q> {
        rows.iter()
            .map(|r| r.iter().map(|&x| qi(x)).collect())
            .collect()
    }

    #[test]
    fn inverse_of_a2_cartan() {
        let a = m(&[&[2, -1], &[-1, 2]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(inv[0][0], q(2, 3));
        assert_eq!(inv[0][1], q(1, 3));
        assert_eq!(mat_mul(&a, &inv), identity(2));
    }

    #[test]
    fn nullspace_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(rank(&a), 1);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(is_zero_vec(&mat_vec(&a, &v)));
        }
    }

    #[test]
    fn solve_outcomes() {
        let a = m(&[&[1, 1], &[1, -1]]);
        assert_eq!(
            solve(&a, &[qi(2), qi(0)]),
            Solution::Unique(vec![qi(1), qi(1)])
        );
        let b = m(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve(&b, &[qi(1), qi(3)]), Solution::Inconsistent);
        assert_eq!(solve(&b, &[qi(1), qi(2)]), Solution::Underdetermined);
    }

    #[test]
    fn echelon_reduction_kills_span() {
        let mut e = Echelon::<Q>::new(3);
        assert!(e.insert(&[qi(1), qi(1), qi(0)]));
        assert!(e.insert(&[qi(0), qi(1), qi(1)]));
        assert!(!e.insert(&[qi(1), qi(2), qi(1)]));
        assert!(is_zero_vec(&e.reduce(&[qi(2), qi(3), qi(1)])));
        assert_eq!(e.rank(), 2);
    }
}
