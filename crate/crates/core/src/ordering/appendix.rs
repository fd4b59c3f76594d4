//! Normal orderings compatible with the decomposition of the longest element
//! into reflections in mutually orthogonal roots, for the types where the
//! longest element acts by `-1`.
//!
//! The layout rules for each type are phrased in the orthonormal
//! `epsilon` basis and translated to simple-root coordinates here. They fix
//! the gammas and some relative positions but leave the ordering
//! underdetermined; [`generate_appendix_fixture`] searches for the first
//! ordering meeting all of them, and the results are frozen under
//! `fixtures/appendix/`.

use super::search::{mask, Gap, NoComb, Outcome, Problem, Quota};
use super::{is_normal, NormalOrdering};
use crate::error::{Error, Result};
use crate::field::{q, qi, solve, Matrix, Solution, Q};
use crate::rootsys::{Root, RootSystem, Series};
use crate::weyl::{InvolutionDecomposition, WeylElement};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// A compatible ordering together with the gammas in order of appearance.
#[derive(Debug, Clone)]
pub struct AppendixFixture {
    pub label: String,
    pub ordering: NormalOrdering,
    pub decomposition: InvolutionDecomposition,
}

#[derive(Serialize, Deserialize)]
struct FixtureFile {
    schema: String,
    label: String,
    ordering: Vec<Root>,
    gammas: Vec<Root>,
}

const FROZEN: &[(&str, &str)] = &[
    ("B2", include_str!("../../fixtures/appendix/B2.json")),
    ("B3", include_str!("../../fixtures/appendix/B3.json")),
    ("B4", include_str!("../../fixtures/appendix/B4.json")),
    ("C3", include_str!("../../fixtures/appendix/C3.json")),
    ("C4", include_str!("../../fixtures/appendix/C4.json")),
    ("D4", include_str!("../../fixtures/appendix/D4.json")),
    ("F4", include_str!("../../fixtures/appendix/F4.json")),
    ("E7", include_str!("../../fixtures/appendix/E7.json")),
    ("E8", include_str!("../../fixtures/appendix/E8.json")),
    ("G2", include_str!("../../fixtures/appendix/G2.json")),
];

/// Labels with a frozen fixture.
pub fn appendix_labels() -> Vec<&'static str> {
    FROZEN.iter().map(|(l, _)| *l).collect()
}

/// The frozen fixture for a type label such as `"B3"`.
pub fn appendix_fixture(label: &str) -> Result<AppendixFixture> {
    let label = label.trim().to_ascii_uppercase();
    let text = FROZEN
        .iter()
        .find(|(l, _)| *l == label)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::NoFixture(label.clone()))?;
    let file: FixtureFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let sys = RootSystem::build(&file.label)?;
    Ok(AppendixFixture {
        label: file.label,
        ordering: NormalOrdering::unchecked(&sys, file.ordering),
        decomposition: InvolutionDecomposition::new(file.gammas, Vec::new()),
    })
}

impl AppendixFixture {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(FixtureFile {
            schema: "weylq/1".into(),
            label: self.label.clone(),
            ordering: self.ordering.sequence().to_vec(),
            gammas: self.decomposition.gamma1.clone(),
        })
        .expect("serializable")
    }
}

/// Layout rules for one type, in simple-root coordinates.
#[derive(Clone)]
struct Rules {
    gammas: Vec<Root>,
    prefix: Vec<Root>,
    exact: Option<Vec<Root>>,
    before: Vec<(Root, Root)>,
    gaps: Vec<(Vec<Root>, Root, Root)>,
    quotas: Vec<(Vec<Root>, usize, usize)>,
}

type Eps = Vec<Q>;

fn e(n: usize, terms: &[(usize, i64)]) -> Eps {
    let mut v = vec![Q::zero(); n];
    for &(i, c) in terms {
        v[i - 1] += qi(c);
    }
    v
}

fn half(n: usize, signs: &[i64]) -> Eps {
    let mut v = vec![Q::zero(); n];
    for (i, &s) in signs.iter().enumerate() {
        v[i] = q(s, 2);
    }
    v
}

/// Translation between the `epsilon` basis and simple-root coordinates.
struct Frame {
    sys: Arc<RootSystem>,
    simple: Vec<Eps>,
}

impl Frame {
    fn to_eps(&self, r: &[i64]) -> Eps {
        let n = self.simple[0].len();
        let mut v = vec![Q::zero(); n];
        for (c, a) in r.iter().zip(&self.simple) {
            for (x, y) in v.iter_mut().zip(a) {
                *x += y * qi(*c);
            }
        }
        v
    }

    fn root(&self, v: &Eps) -> Root {
        let a: Matrix<Q> = (0..v.len())
            .map(|i| self.simple.iter().map(|s| s[i].clone()).collect())
            .collect();
        match solve(&a, v) {
            Solution::Unique(c) if c.iter().all(|x| x.is_integer()) => {
                let r: Root = c
                    .iter()
                    .map(|x| i64::try_from(x.to_integer()).unwrap())
                    .collect();
                assert!(self.sys.is_root(&r), "not a root: {v:?}");
                r
            }
            other => panic!("epsilon vector {v:?} outside the root lattice: {other:?}"),
        }
    }

    fn positives_where(&self, pred: impl Fn(&Eps) -> bool) -> Vec<Root> {
        self.sys
            .positive_roots
            .iter()
            .filter(|r| pred(&self.to_eps(r)))
            .cloned()
            .collect()
    }
}

fn is_minus(v: &Eps) -> bool {
    let nz: Vec<&Q> = v.iter().filter(|x| !x.is_zero()).collect();
    nz.len() == 2 && nz.iter().any(|x| **x == qi(1)) && nz.iter().any(|x| **x == qi(-1))
}

fn is_plus(v: &Eps) -> bool {
    let nz: Vec<&Q> = v.iter().filter(|x| !x.is_zero()).collect();
    nz.len() == 2 && nz.iter().all(|x| **x == qi(1))
}

fn frame(label: &str) -> Result<Frame> {
    let sys = RootSystem::build(label)?;
    let l = sys.rank;
    let simple: Vec<Eps> = match label {
        "F4" => vec![
            e(4, &[(2, 1), (3, -1)]),
            e(4, &[(3, 1), (4, -1)]),
            e(4, &[(4, 1)]),
            half(4, &[1, -1, -1, -1]),
        ],
        "G2" => vec![e(3, &[(1, 1), (2, -1)]), e(3, &[(1, -2), (2, 1), (3, 1)])],
        "E7" | "E8" => {
            let mut s = vec![
                half(8, &[1, -1, -1, -1, -1, -1, -1, 1]),
                e(8, &[(1, 1), (2, 1)]),
            ];
            for k in 2..l {
                s.push(e(8, &[(k, 1), (k - 1, -1)]));
            }
            s
        }
        _ => {
            let mut s: Vec<Eps> = (1..l).map(|i| e(l, &[(i, 1), (i + 1, -1)])).collect();
            s.push(match sys.series {
                Series::B => e(l, &[(l, 1)]),
                Series::C => e(l, &[(l, 2)]),
                Series::D => e(l, &[(l - 1, 1), (l, 1)]),
                _ => return Err(Error::NoFixture(label.into())),
            });
            s
        }
    };
    Ok(Frame { sys, simple })
}

fn rules(label: &str, f: &Frame) -> Result<Rules> {
    let sys = &f.sys;
    let l = sys.rank;
    let mut r = Rules {
        gammas: Vec::new(),
        prefix: Vec::new(),
        exact: None,
        before: Vec::new(),
        gaps: Vec::new(),
        quotas: Vec::new(),
    };
    let minus = f.positives_where(is_minus);
    let plus = f.positives_where(is_plus);
    match (sys.series, label) {
        (_, "G2") => {
            let seq = vec![
                vec![0, 1],
                vec![1, 1],
                vec![3, 2],
                vec![2, 1],
                vec![3, 1],
                vec![1, 0],
            ];
            r.gammas = vec![vec![3, 2], vec![1, 0]];
            r.exact = Some(seq);
        }
        (Series::B | Series::C, _) | (_, "F4") => {
            let n = if label == "F4" { 4 } else { l };
            let scale = if sys.series == Series::C { 2 } else { 1 };
            r.gammas = (1..=n).map(|i| f.root(&e(n, &[(i, scale)]))).collect();
            if label == "F4" {
                r.prefix = vec![sys.simple_root(3)];
            }
            let g1 = r.gammas[0].clone();
            r.before
                .extend(minus.iter().map(|m| (m.clone(), g1.clone())));
            r.before
                .extend(plus.iter().map(|p| (g1.clone(), p.clone())));
        }
        (Series::D, _) if l.is_multiple_of(2) => {
            let pairs = l / 2;
            let mut g: Vec<Root> = (0..pairs)
                .map(|k| f.root(&e(l, &[(2 * k + 1, 1), (2 * k + 2, -1)])))
                .collect();
            g.extend((0..pairs).map(|k| f.root(&e(l, &[(2 * k + 1, 1), (2 * k + 2, 1)]))));
            r.prefix = (1..pairs)
                .map(|k| f.root(&e(l, &[(2 * k, 1), (2 * k + 1, -1)])))
                .collect();
            let first_minus = g[0].clone();
            let first_plus = g[pairs].clone();
            for m in &minus {
                if !g.contains(m) {
                    r.before.push((m.clone(), first_minus.clone()));
                }
            }
            for p in &plus {
                if *p != first_plus {
                    r.before.push((first_plus.clone(), p.clone()));
                }
            }
            r.gammas = g;
        }
        (_, "E7") | (_, "E8") => {
            let n = 8;
            let d_last = if label == "E7" { 6 } else { 8 };
            let d_minus: Vec<Root> = minus
                .iter()
                .filter(|m| f.to_eps(m)[d_last..].iter().all(|x| x.is_zero()))
                .cloned()
                .collect();
            let d_plus: Vec<Root> = plus
                .iter()
                .filter(|p| f.to_eps(p)[d_last..].iter().all(|x| x.is_zero()))
                .cloned()
                .collect();
            let pm = |i: usize, j: usize, s: i64| f.root(&e(n, &[(j, 1), (i, s)]));
            let pairs = d_last / 2;
            let minus_g: Vec<Root> = (0..pairs).map(|k| pm(2 * k + 1, 2 * k + 2, -1)).collect();
            let plus_g: Vec<Root> = (0..pairs)
                .rev()
                .map(|k| pm(2 * k + 1, 2 * k + 2, 1))
                .collect();
            r.prefix = vec![sys.simple_root(0)];
            r.prefix
                .extend((1..pairs).map(|k| pm(2 * k, 2 * k + 1, -1)));
            if label == "E7" {
                let top = pm(7, 8, -1);
                r.gammas = std::iter::once(top.clone())
                    .chain(minus_g.iter().cloned())
                    .chain(plus_g.iter().cloned())
                    .collect();
                for m in &d_minus {
                    if !minus_g.contains(m) {
                        r.before.push((m.clone(), top.clone()));
                    }
                }
                let first_plus = plus_g[0].clone();
                for p in &d_plus {
                    if *p != first_plus {
                        r.before.push((first_plus.clone(), p.clone()));
                    }
                }
            } else {
                // The minus gammas run from e8-e7 down to e2-e1; with e2-e1
                // first no normal ordering puts the gammas in place.
                r.gammas = minus_g.iter().rev().chain(&plus_g).cloned().collect();
                let first = minus_g[0].clone();
                for m in &d_minus {
                    if !minus_g.contains(m) {
                        r.before.push((m.clone(), first.clone()));
                    }
                }
                let first_plus = plus_g[0].clone();
                for p in &d_plus {
                    if *p != first_plus {
                        r.before.push((first_plus.clone(), p.clone()));
                    }
                }
                let half_roots = f.positives_where(|v| v.iter().all(|x| !x.is_zero()));
                let group = |sign: i64| -> Vec<Root> {
                    half_roots
                        .iter()
                        .filter(|h| f.to_eps(h)[6] == q(sign, 2))
                        .cloned()
                        .collect()
                };
                let (g1, g2) = (group(1), group(-1));
                let start = (sys.num_positive() - r.gammas.len()) / 2;
                r.quotas.push((g1.clone(), start, g1.len() / 2));
                r.quotas.push((g2.clone(), start, g2.len() / 2));
                r.gaps.push((g1, first.clone(), pm(7, 8, 1)));
                r.gaps.push((g2, first, pm(7, 8, -1)));
            }
        }
        _ => return Err(Error::NoFixture(label.into())),
    }
    Ok(r)
}

fn problem<'a>(sys: &'a RootSystem, r: &Rules) -> Problem<'a> {
    let d = sys.num_positive();
    let n = r.gammas.len();
    let start = (d - n) / 2;
    let idx = |x: &Root| sys.positive_index(x).expect("positive root");
    let mut pb = Problem::new(sys);
    let gm = mask(sys, &r.gammas);
    pb.confine(&gm, start..d);
    pb.restrict(start, &mask(sys, &r.gammas[..1]));
    pb.restrict(d - 1, &mask(sys, &r.gammas[n - 1..]));
    for w in r.gammas.windows(2) {
        pb.before.push((idx(&w[0]), idx(&w[1])));
    }
    for (p, x) in r.prefix.iter().enumerate() {
        pb.restrict(p, &mask(sys, std::slice::from_ref(x)));
    }
    if let Some(seq) = &r.exact {
        for (p, x) in seq.iter().enumerate() {
            pb.restrict(p, &mask(sys, std::slice::from_ref(x)));
        }
    }
    pb.before
        .extend(r.before.iter().map(|(a, b)| (idx(a), idx(b))));
    pb.gaps.extend(r.gaps.iter().map(|(s, a, b)| Gap {
        set: mask(sys, s),
        after: idx(a),
        before: idx(b),
    }));
    pb.quotas.extend(r.quotas.iter().map(|(s, p, c)| Quota {
        set: mask(sys, s),
        pos: *p,
        count: *c,
    }));
    pb.nocomb = Some(NoComb {
        lo: start,
        hi: d,
        gammas: r.gammas.iter().map(idx).collect(),
    });
    pb
}

/// Searches for the first ordering (in simple-reflection index order) that
/// satisfies the layout rules of `label`.
pub fn generate_appendix_fixture(label: &str, budget: usize) -> Result<AppendixFixture> {
    let label = label.trim().to_ascii_uppercase();
    let f = frame(&label)?;
    let r = rules(&label, &f)?;
    let mut pb = problem(&f.sys, &r);
    pb.budget = budget;
    match pb.solve() {
        Outcome::Found(seq) => Ok(AppendixFixture {
            label: label.clone(),
            ordering: NormalOrdering::unchecked(
                &f.sys,
                seq.iter()
                    .map(|&k| f.sys.positive_roots[k].clone())
                    .collect(),
            ),
            decomposition: InvolutionDecomposition::new(r.gammas, Vec::new()),
        }),
        Outcome::Infeasible => Err(Error::ConstructionFailed(format!(
            "no ordering of {label} meets the layout rules"
        ))),
        Outcome::BudgetExhausted => Err(Error::ConstructionFailed(format!(
            "search budget of {budget} nodes exhausted for {label}"
        ))),
    }
}

/// Checks a fixture: normality, the type's layout rules, the gamma positions,
/// the no-combination property and that the gammas multiply to the longest
/// element acting by `-1`. Returns the list of failures.
pub fn validate_appendix_fixture(fx: &AppendixFixture) -> Result<Vec<String>> {
    let f = frame(&fx.label)?;
    let r = rules(&fx.label, &f)?;
    let sys = &f.sys;
    let seq = fx.ordering.sequence();
    let mut bad = Vec::new();
    if !is_normal(sys, seq)? {
        bad.push("ordering is not normal".to_string());
    }
    if fx.decomposition.gamma1 != r.gammas || !fx.decomposition.gamma2.is_empty() {
        bad.push("gammas differ from the layout rules".into());
    }
    let pos = |x: &Root| fx.ordering.position(x);
    let d = seq.len();
    let n = r.gammas.len();
    let start = (d - n) / 2;
    let gpos: Vec<Option<usize>> = r.gammas.iter().map(pos).collect();
    if gpos.first() != Some(&Some(start)) || gpos.last() != Some(&Some(d - 1)) {
        bad.push("first or last gamma misplaced".into());
    }
    if gpos.windows(2).any(|w| w[0] >= w[1]) {
        bad.push("gammas out of order".into());
    }
    for (p, x) in r.prefix.iter().enumerate() {
        if seq.get(p) != Some(x) {
            bad.push(format!("position {p} should hold {x:?}"));
        }
    }
    if let Some(ex) = &r.exact {
        if ex.as_slice() != seq {
            bad.push("ordering differs from the prescribed sequence".into());
        }
    }
    for (a, b) in &r.before {
        if pos(a) >= pos(b) {
            bad.push(format!("{a:?} should precede {b:?}"));
        }
    }
    for (set, a, b) in &r.gaps {
        let (pa, pb) = (pos(a).unwrap(), pos(b).unwrap());
        if set.iter().any(|x| (pa + 1..pb).contains(&pos(x).unwrap())) {
            bad.push(format!("a root lies between {a:?} and {b:?}"));
        }
    }
    for (set, p, c) in &r.quotas {
        if set.iter().filter(|x| pos(x).unwrap() < *p).count() != *c {
            bad.push(format!("expected {c} group roots before position {p}"));
        }
    }
    let v = super::no_combination_violations(sys, seq, start..d, &r.gammas);
    if !v.is_empty() {
        bad.push(format!("{} no-combination violations", v.len()));
    }
    let w = WeylElement::reflection_product(sys, &r.gammas);
    let minus_one: Vec<Vec<i64>> = (0..sys.rank)
        .map(|i| (0..sys.rank).map(|j| if i == j { -1 } else { 0 }).collect())
        .collect();
    if w != WeylElement::longest(sys) || w.matrix() != minus_one.as_slice() {
        bad.push("gamma reflections do not give w0 = -1".into());
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epsilon_frames_match_the_form() {
        for label in ["B3", "C3", "D4", "F4", "G2", "E7", "E8"] {
            let f = frame(label).unwrap();
            let sys = &f.sys;
            let dot = |a: &Eps, b: &Eps| -> Q { a.iter().zip(b).map(|(x, y)| x * y).sum() };
            let ratio = sys.form(&sys.simple_root(0), &sys.simple_root(0))
                / dot(&f.simple[0], &f.simple[0]);
            for i in 0..sys.rank {
                for j in 0..sys.rank {
                    assert_eq!(
                        sys.form(&sys.simple_root(i), &sys.simple_root(j)),
                        &ratio * dot(&f.simple[i], &f.simple[j]),
                        "{label} ({i},{j})"
                    );
                }
            }
            assert_eq!(f.positives_where(|_| true).len(), sys.num_positive());
        }
    }

    #[test]
    fn b2_rules_give_the_epsilon_ordering() {
        let fx = generate_appendix_fixture("B2", 10_000).unwrap();
        // eps1 - eps2, eps1, eps1 + eps2, eps2
        assert_eq!(
            fx.ordering.sequence(),
            &[vec![1, 0], vec![1, 1], vec![1, 2], vec![0, 1]]
        );
        assert!(validate_appendix_fixture(&fx).unwrap().is_empty());
    }

    #[test]
    fn frozen_fixtures_validate_and_regenerate() {
        for label in appendix_labels() {
            let fx = appendix_fixture(label).unwrap();
            assert_eq!(
                validate_appendix_fixture(&fx).unwrap(),
                Vec::<String>::new(),
                "{label}"
            );
            let again = generate_appendix_fixture(label, 2_000_000).unwrap();
            assert_eq!(again.ordering, fx.ordering, "{label}");
        }
        assert!(matches!(appendix_fixture("A3"), Err(Error::NoFixture(_))));
    }
}
