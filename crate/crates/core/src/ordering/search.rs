//! Constrained depth-first search over normal orderings of the standard
//! positive system.
//!
//! A prefix of a normal ordering is the inversion set of `w^{-1}` where `w` is
//! the product of the simple reflections read so far, and it extends exactly
//! by the positive roots `w(alpha_i)`. Every constraint below depends on the
//! prefix only through its set of roots and, for the no-combination check, on
//! which gamma block each segment root landed in; failed states are memoized
//! on that key.

use crate::field::{qi, solve, Matrix, Solution, Q};
use crate::rootsys::{Root, RootSystem};
use num_traits::{Signed, Zero};
use std::collections::{HashMap, HashSet};

/// No member of `set` may be placed after `after` and before `before`.
pub(crate) struct Gap {
    pub set: Vec<bool>,
    pub after: usize,
    pub before: usize,
}

/// Exactly `count` members of `set` among the first `pos` roots.
pub(crate) struct Quota {
    pub set: Vec<bool>,
    pub pos: usize,
    pub count: usize,
}

/// The no-combination property on positions `lo..hi`.
pub(crate) struct NoComb {
    pub lo: usize,
    pub hi: usize,
    pub gammas: Vec<usize>,
}

pub(crate) struct Problem<'a> {
    pub sys: &'a RootSystem,
    /// `allowed[p][r]`: root `r` may sit at position `p`.
    pub allowed: Vec<Vec<bool>>,
    /// `(a, b)`: `a` comes before `b`.
    pub before: Vec<(usize, usize)>,
    pub gaps: Vec<Gap>,
    pub quotas: Vec<Quota>,
    pub nocomb: Option<NoComb>,
    pub budget: usize,
}

#[derive(Debug)]
pub(crate) enum Outcome {
    Found(Vec<usize>),
    Infeasible,
    BudgetExhausted,
}

impl<'a> Problem<'a> {
    pub fn new(sys: &'a RootSystem) -> Self {
        let d = sys.num_positive();
        Problem {
            sys,
            allowed: vec![vec![true; d]; d],
            before: Vec::new(),
            gaps: Vec::new(),
            quotas: Vec::new(),
            nocomb: None,
            budget: 2_000_000,
        }
    }

    /// Restricts position `p` to the roots in `set`.
    pub fn restrict(&mut self, p: usize, set: &[bool]) {
        for (a, &s) in self.allowed[p].iter_mut().zip(set) {
            *a &= s;
        }
    }

    /// Forbids the roots in `set` at every position outside `range`.
    pub fn confine(&mut self, set: &[bool], range: std::ops::Range<usize>) {
        for (p, row) in self.allowed.iter_mut().enumerate() {
            if !range.contains(&p) {
                for (a, &s) in row.iter_mut().zip(set) {
                    if s {
                        *a = false;
                    }
                }
            }
        }
    }

    pub fn solve(&self) -> Outcome {
        let d = self.sys.num_positive();
        let mut preds = vec![Vec::new(); d];
        for &(a, b) in &self.before {
            preds[b].push(a);
        }
        let mut st = State {
            p: self,
            preds,
            seq: Vec::with_capacity(d),
            placed: vec![0u64; d.div_ceil(64)],
            pos: vec![usize::MAX; d],
            epoch: vec![0u8; d],
            gammas_placed: 0,
            is_gamma: vec![false; d],
            combos: HashMap::new(),
            dead: HashSet::new(),
            nodes: 0,
            exhausted: false,
        };
        if let Some(nc) = &self.nocomb {
            for &g in &nc.gammas {
                st.is_gamma[g] = true;
            }
        }
        let w = identity(self.sys.rank);
        if st.dfs(&w) {
            Outcome::Found(st.seq)
        } else if st.exhausted {
            Outcome::BudgetExhausted
        } else {
            Outcome::Infeasible
        }
    }
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

struct State<'p, 'a> {
    p: &'p Problem<'a>,
    preds: Vec<Vec<usize>>,
    seq: Vec<usize>,
    placed: Vec<u64>,
    pos: Vec<usize>,
    epoch: Vec<u8>,
    gammas_placed: u8,
    is_gamma: Vec<bool>,
    combos: HashMap<Root, Option<Vec<usize>>>,
    dead: HashSet<(Vec<u64>, Vec<u8>)>,
    nodes: usize,
    exhausted: bool,
}

impl State<'_, '_> {
    fn is_placed(&self, r: usize) -> bool {
        self.placed[r / 64] >> (r % 64) & 1 == 1
    }

    fn key(&self) -> (Vec<u64>, Vec<u8>) {
        (self.placed.clone(), self.epoch.clone())
    }

    /// The gammas with positive coefficient if `v` is a nonnegative integer
    /// combination of the gammas.
    fn combo(&mut self, v: Root) -> Option<Vec<usize>> {
        if let Some(c) = self.combos.get(&v) {
            return c.clone();
        }
        let nc = self.p.nocomb.as_ref().unwrap();
        let sys = self.p.sys;
        let a: Matrix<Q> = (0..sys.rank)
            .map(|i| {
                nc.gammas
                    .iter()
                    .map(|&g| qi(sys.positive_roots[g][i]))
                    .collect()
            })
            .collect();
        let b: Vec<Q> = v.iter().map(|&x| qi(x)).collect();
        let res = match solve(&a, &b) {
            Solution::Unique(c) if c.iter().all(|x| x.is_integer() && !x.is_negative()) => Some(
                nc.gammas
                    .iter()
                    .zip(&c)
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(&g, _)| g)
                    .collect(),
            ),
            _ => None,
        };
        self.combos.insert(v, res.clone());
        res
    }

    fn admissible(&mut self, r: usize) -> bool {
        let k = self.seq.len();
        let pr = self.p;
        if !pr.allowed[k][r] {
            return false;
        }
        if self.preds[r].iter().any(|&a| !self.is_placed(a)) {
            return false;
        }
        for g in &pr.gaps {
            if g.set[r] && self.is_placed(g.after) && !self.is_placed(g.before) {
                return false;
            }
        }
        if let Some(nc) = &pr.nocomb {
            if (nc.lo..nc.hi).contains(&k) {
                let beta = pr.sys.positive_roots[r].clone();
                for q in nc.lo..k {
                    let a = self.seq[q];
                    let v: Root = pr.sys.positive_roots[a]
                        .iter()
                        .zip(&beta)
                        .map(|(x, y)| x + y)
                        .collect();
                    if let Some(gs) = self.combo(v) {
                        if gs
                            .iter()
                            .all(|&g| g != r && self.is_placed(g) && self.pos[g] > q)
                        {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn dfs(&mut self, w: &[Vec<i64>]) -> bool {
        let sys = self.p.sys;
        let d = sys.num_positive();
        let k = self.seq.len();
        if k == d {
            return true;
        }
        for q in &self.p.quotas {
            if q.pos == k {
                let c = (0..d).filter(|&r| q.set[r] && self.is_placed(r)).count();
                if c != q.count {
                    return false;
                }
            }
        }
        self.nodes += 1;
        if self.nodes > self.p.budget {
            self.exhausted = true;
            return false;
        }
        let key = self.key();
        if self.dead.contains(&key) {
            return false;
        }
        for i in 0..sys.rank {
            let beta: Root = (0..sys.rank).map(|row| w[row][i]).collect();
            if !RootSystem::is_positive(&beta) {
                continue;
            }
            let r = sys.positive_index(&beta).expect("positive root");
            if !self.admissible(r) {
                continue;
            }
            let in_seg = self
                .p
                .nocomb
                .as_ref()
                .is_some_and(|nc| (nc.lo..nc.hi).contains(&k));
            self.seq.push(r);
            self.placed[r / 64] |= 1 << (r % 64);
            self.pos[r] = k;
            let gamma = in_seg && self.is_gamma[r];
            if gamma {
                self.gammas_placed += 1;
            }
            if in_seg {
                self.epoch[r] = self.gammas_placed + 1;
            }
            // w <- w s_i, using s_i(alpha_j) = alpha_j - a_ij alpha_i.
            let next: Vec<Vec<i64>> = w
                .iter()
                .map(|row| {
                    (0..sys.rank)
                        .map(|j| row[j] - sys.cartan[i][j] * row[i])
                        .collect()
                })
                .collect();
            if self.dfs(&next) {
                return true;
            }
            if gamma {
                self.gammas_placed -= 1;
            }
            self.epoch[r] = 0;
            self.pos[r] = usize::MAX;
            self.placed[r / 64] &= !(1 << (r % 64));
            self.seq.pop();
            if self.exhausted {
                return false;
            }
        }
        self.dead.insert(key);
        false
    }
}

/// Boolean membership vector of a set of positive roots.
pub(crate) fn mask(sys: &RootSystem, roots: &[Root]) -> Vec<bool> {
    let mut m = vec![false; sys.num_positive()];
    for r in roots {
        m[sys.positive_index(r).expect("positive root")] = true;
    }
    m
}
