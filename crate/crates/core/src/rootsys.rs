//! Finite root systems in simple-root coordinates.
//!
//! Cartan matrices follow the Bourbaki numbering with the convention
//! `a_ij = <alpha_j, alpha_i^vee>`, so `alpha_i(H_j) = a_ji`. The symmetrized
//! form is `b_ij = d_i a_ij = (alpha_i, alpha_j)`.

use crate::error::{Error, Result};
use crate::field::{inverse, qi, Matrix, Q};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

/// A root as integer coordinates over the simple roots.
pub type Root = Vec<i64>;

/// Rational coordinates in the basis `H_1..H_l`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoweightVector(pub Vec<Q>);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RootSystem {
    pub type_label: String,
    pub series: Series,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub d: Vec<i64>,
    /// Sorted by height, then lexicographically.
    pub positive_roots: Vec<Root>,
    pub bilinear: Vec<Vec<i64>>,
    #[serde(skip)]
    index: HashMap<Root, usize>,
}

impl PartialEq for RootSystem {
    fn eq(&self, o: &Self) -> bool {
        self.type_label == o.type_label
    }
}

fn parse_label(label: &str) -> Option<(Series, usize)> {
    let mut chars = label.trim().chars();
    let s = match chars.next()?.to_ascii_uppercase() {
        'A' => Series::A,
        'B' => Series::B,
        'C' => Series::C,
        'D' => Series::D,
        'E' => Series::E,
        'F' => Series::F,
        'G' => Series::G,
        _ => return None,
    };
    let l: usize = chars.as_str().parse().ok()?;
    let ok = match s {
        Series::A => (1..=16).contains(&l),
        Series::B | Series::C => (2..=16).contains(&l),
        Series::D => (4..=16).contains(&l),
        Series::E => (6..=8).contains(&l),
        Series::F => l == 4,
        Series::G => l == 2,
    };
    ok.then_some((s, l))
}

fn cartan_matrix(s: Series, l: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; l]; l];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    match s {
        Series::A => (0..l - 1).for_each(|i| link(i, i + 1, -1, -1)),
        Series::B => {
            (0..l - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(l - 2, l - 1, -1, -2);
        }
        Series::C => {
            (0..l - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(l - 2, l - 1, -2, -1);
        }
        Series::D => {
            (0..l - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(l - 3, l - 1, -1, -1);
        }
        Series::E => {
            link(0, 2, -1, -1);
            link(1, 3, -1, -1);
            (2..l - 1).for_each(|i| link(i, i + 1, -1, -1));
        }
        Series::F => {
            link(0, 1, -1, -1);
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
        }
        Series::G => link(0, 1, -3, -1),
    }
    a
}

/// Smallest positive integers with `d_i a_ij = d_j a_ji`.
fn symmetrizer(a: &[Vec<i64>]) -> Vec<i64> {
    let l = a.len();
    let mut d: Vec<Option<Q>> = vec![None; l];
    d[0] = Some(qi(1));
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for j in 0..l {
            if a[i][j] != 0 && d[j].is_none() {
                let di = d[i].clone().unwrap();
                d[j] = Some(di * qi(a[i][j]) / qi(a[j][i]));
                queue.push_back(j);
            }
        }
    }
    let d: Vec<Q> = d
        .into_iter()
        .map(|x| x.expect("connected diagram"))
        .collect();
    let den = crate::field::lcm_denominators(d.iter());
    let ints: Vec<i64> = d
        .iter()
        .map(|x| {
            (x * Q::from_integer(den.clone()))
                .to_integer()
                .try_into()
                .unwrap()
        })
        .collect();
    let g = ints.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
    ints.iter().map(|x| x / g).collect()
}

impl RootSystem {
    /// Builds the root system for a label such as `"B3"` or `"G2"`.
    pub fn build(label: &str) -> Result<Arc<RootSystem>> {
        let (series, rank) =
            parse_label(label).ok_or_else(|| Error::UnsupportedType(label.to_string()))?;
        let cartan = cartan_matrix(series, rank);
        let d = symmetrizer(&cartan);
        let bilinear = (0..rank)
            .map(|i| (0..rank).map(|j| d[i] * cartan[i][j]).collect())
            .collect();
        let mut sys = RootSystem {
            type_label: format!("{:?}{}", series, rank),
            series,
            rank,
            cartan,
            d,
            positive_roots: Vec::new(),
            bilinear,
            index: HashMap::new(),
        };
        sys.positive_roots = sys.enumerate_positive();
        sys.rebuild_index();
        Ok(Arc::new(sys))
    }

    fn rebuild_index(&mut self) {
        self.index = self
            .positive_roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
    }

    /// Restores the lookup table after deserialization.
    pub fn reindexed(mut self) -> Self {
        self.rebuild_index();
        self
    }

    fn enumerate_positive(&self) -> Vec<Root> {
        let mut seen: HashMap<Root, ()> = HashMap::new();
        let mut queue: VecDeque<Root> = VecDeque::new();
        for i in 0..self.rank {
            let r = self.simple_root(i);
            seen.insert(r.clone(), ());
            queue.push_back(r);
        }
        while let Some(r) = queue.pop_front() {
            for i in 0..self.rank {
                let t = self.reflect_simple(i, &r);
                if t.iter().all(|&x| x >= 0) && !seen.contains_key(&t) {
                    seen.insert(t.clone(), ());
                    queue.push_back(t);
                }
            }
        }
        let mut roots: Vec<Root> = seen.into_keys().collect();
        roots.sort_by_key(|r| {
            (
                r.iter().sum::<i64>(),
                r.iter().map(|x| -x).collect::<Vec<_>>(),
            )
        });
        roots
    }

    pub fn label(&self) -> &str {
        &self.type_label
    }

    /// Number of positive roots.
    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut r = vec![0; self.rank];
        r[i] = 1;
        r
    }

    /// `<beta, alpha_i^vee> = sum_j m_j a_ij`.
    pub fn coroot_pairing_simple(&self, beta: &[i64], i: usize) -> i64 {
        beta.iter().zip(&self.cartan[i]).map(|(m, a)| m * a).sum()
    }

    pub fn reflect_simple(&self, i: usize, beta: &[i64]) -> Root {
        let c = self.coroot_pairing_simple(beta, i);
        let mut r = beta.to_vec();
        r[i] -= c;
        r
    }

    /// Integer form `(alpha, beta)`.
    pub fn form_int(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                s += x * y * self.bilinear[i][j];
            }
        }
        s
    }

    /// `(alpha, beta) = sum m_i n_j b_ij`.
    pub fn form(&self, a: &[i64], b: &[i64]) -> Q {
        qi(self.form_int(a, b))
    }

    /// The form on rational vectors in root coordinates.
    pub fn form_q(&self, a: &[Q], b: &[Q]) -> Q {
        let mut s = Q::zero();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if self.bilinear[i][j] != 0 {
                    s += x * y * qi(self.bilinear[i][j]);
                }
            }
        }
        s
    }

    /// `<beta, alpha^vee> = 2 (beta, alpha) / (alpha, alpha)`.
    pub fn coroot_pairing(&self, beta: &[i64], alpha: &[i64]) -> i64 {
        2 * self.form_int(beta, alpha) / self.form_int(alpha, alpha)
    }

    pub fn reflect(&self, alpha: &[i64], beta: &[i64]) -> Root {
        let c = self.coroot_pairing(beta, alpha);
        beta.iter().zip(alpha).map(|(b, a)| b - c * a).collect()
    }

    /// Index of a positive root, or `None`.
    pub fn positive_index(&self, r: &[i64]) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn is_root(&self, r: &[i64]) -> bool {
        if self.index.contains_key(r) {
            return true;
        }
        let neg: Root = r.iter().map(|x| -x).collect();
        self.index.contains_key(&neg)
    }

    pub fn is_positive(r: &[i64]) -> bool {
        r.iter().any(|&x| x > 0) && r.iter().all(|&x| x >= 0)
    }

    /// `(sign, index)` of a root: `+1` if positive.
    pub fn signed_index(&self, r: &[i64]) -> Result<(i8, usize)> {
        if let Some(i) = self.index.get(r) {
            return Ok((1, *i));
        }
        let neg: Root = r.iter().map(|x| -x).collect();
        self.index
            .get(&neg)
            .map(|i| (-1, *i))
            .ok_or_else(|| Error::NotARoot(r.to_vec()))
    }

    /// All roots: positive ones followed by their negatives.
    pub fn all_roots(&self) -> Vec<Root> {
        let mut v = self.positive_roots.clone();
        v.extend(
            self.positive_roots
                .iter()
                .map(|r| r.iter().map(|x| -x).collect()),
        );
        v
    }

    pub fn height(r: &[i64]) -> i64 {
        r.iter().sum()
    }

    pub fn cartan_q(&self) -> Matrix<Q> {
        self.cartan
            .iter()
            .map(|r| r.iter().map(|&x| qi(x)).collect())
            .collect()
    }

    pub fn bilinear_q(&self) -> Matrix<Q> {
        self.bilinear
            .iter()
            .map(|r| r.iter().map(|&x| qi(x)).collect())
            .collect()
    }

    /// `alpha(x) = sum_i m_i alpha_i(x)`, with `alpha_i(H_j) = a_ji`.
    pub fn pairing(&self, x: &CoweightVector, alpha: &[i64]) -> Result<Q> {
        if x.0.len() != self.rank || alpha.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: x.0.len().min(alpha.len()),
            });
        }
        let mut s = Q::zero();
        for (i, m) in alpha.iter().enumerate() {
            for (j, c) in x.0.iter().enumerate() {
                s += c * qi(m * self.cartan[j][i]);
            }
        }
        Ok(s)
    }

    pub fn h(&self, i: usize) -> CoweightVector {
        let mut v = vec![Q::zero(); self.rank];
        v[i] = qi(1);
        CoweightVector(v)
    }

    /// `Y_i = sum_j d_i (a^{-1})_ij H_j`.
    pub fn y(&self, i: usize) -> CoweightVector {
        let inv = inverse(&self.cartan_q()).expect("Cartan matrix is invertible");
        CoweightVector(inv[i].iter().map(|x| x * qi(self.d[i])).collect())
    }

    /// Coroot `alpha^vee = sum m_i d_i H_i` scaled so that `(alpha^vee, x) = 2 alpha(x)/(alpha, alpha)`.
    pub fn coroot(&self, alpha: &[i64]) -> CoweightVector {
        let n = qi(self.form_int(alpha, alpha));
        CoweightVector(
            alpha
                .iter()
                .enumerate()
                .map(|(i, m)| qi(2 * m * self.d[i]) / &n)
                .collect(),
        )
    }

    /// The form on `h`: `(H_i, H_j) = a_ij / d_j`.
    pub fn form_h(&self, x: &CoweightVector, y: &CoweightVector) -> Q {
        let mut s = Q::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += &x.0[i] * &y.0[j] * qi(self.cartan[i][j]) / qi(self.d[j]);
            }
        }
        s
    }

    /// Identification `h -> h*` induced by the form: `H_i -> alpha_i / d_i`.
    pub fn coweight_to_root_coords(&self, x: &CoweightVector) -> Vec<Q> {
        x.0.iter().zip(&self.d).map(|(c, d)| c / qi(*d)).collect()
    }

    /// Inverse of [`Self::coweight_to_root_coords`].
    pub fn root_coords_to_coweight(&self, v: &[Q]) -> CoweightVector {
        CoweightVector(v.iter().zip(&self.d).map(|(c, d)| c * qi(*d)).collect())
    }

    /// Serialization used by the CLI and fixtures.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "type_label": self.type_label,
            "cartan": self.cartan,
            "d": self.d,
            "positive_roots": self.positive_roots,
            "bilinear": self.bilinear,
        })
    }
}

/// Number of positive roots for a label, from the classical formulas.
pub fn expected_num_positive(series: Series, l: usize) -> usize {
    match series {
        Series::A => l * (l + 1) / 2,
        Series::B | Series::C => l * l,
        Series::D => l * (l - 1),
        Series::E => match l {
            6 => 36,
            7 => 63,
            _ => 120,
        },
        Series::F => 24,
        Series::G => 6,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g2_roots() {
        let g2 = RootSystem::build("G2").unwrap();
        let mut roots = g2.positive_roots.clone();
        roots.sort();
        let mut want = vec![
            vec![1, 0],
            vec![1, 1],
            vec![2, 1],
            vec![3, 1],
            vec![3, 2],
            vec![0, 1],
        ];
        want.sort();
        assert_eq!(roots, want);
        assert_eq!(g2.d, vec![1, 3]);
    }

    #[test]
    fn counts_match_table() {
        for l in [
            "A1", "A4", "B2", "B5", "C3", "D4", "D6", "E6", "E7", "E8", "F4", "G2",
        ] {
            let s = RootSystem::build(l).unwrap();
            assert_eq!(
                s.num_positive(),
                expected_num_positive(s.series, s.rank),
                "{l}"
            );
        }
    }

    #[test]
    fn symmetrizers() {
        assert_eq!(RootSystem::build("B3").unwrap().d, vec![2, 2, 1]);
        assert_eq!(RootSystem::build("C3").unwrap().d, vec![1, 1, 2]);
        assert_eq!(RootSystem::build("F4").unwrap().d, vec![2, 2, 1, 1]);
        assert_eq!(RootSystem::build("B2").unwrap().d, vec![2, 1]);
    }

    #[test]
    fn pairing_examples() {
        let a2 = RootSystem::build("A2").unwrap();
        assert_eq!(a2.pairing(&a2.h(0), &[1, 0]).unwrap(), qi(2));
        assert_eq!(a2.pairing(&a2.h(0), &[0, 1]).unwrap(), qi(-1));
        assert_eq!(a2.pairing(&a2.y(0), &[0, 1]).unwrap(), qi(0));
        assert!(a2.pairing(&a2.h(0), &[1, 0, 0]).is_err());
    }

    #[test]
    fn form_examples() {
        let b2 = RootSystem::build("B2").unwrap();
        assert_eq!(b2.form(&[1, 0], &[1, 0]), qi(4));
        let a2 = RootSystem::build("A2").unwrap();
        assert_eq!(a2.form(&[1, 0], &[0, 1]), qi(-1));
        let g2 = RootSystem::build("G2").unwrap();
        assert_eq!(g2.form(&[3, 2], &[1, 0]), qi(0));
    }

    #[test]
    fn unknown_labels() {
        for l in ["X3", "D3", "E9", "G3", "B1", "", "A0"] {
            assert!(
                matches!(RootSystem::build(l), Err(Error::UnsupportedType(_))),
                "{l}"
            );
        }
    }

    #[test]
    fn coroot_pairing_matches_h_pairing() {
        let b3 = RootSystem::build("B3").unwrap();
        for a in &b3.positive_roots {
            let cv = b3.coroot(a);
            for b in &b3.positive_roots {
                assert_eq!(b3.pairing(&cv, b).unwrap(), qi(b3.coroot_pairing(b, a)));
            }
        }
    }
}
