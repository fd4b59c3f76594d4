//! The Cayley transform `(1+s)/(1-s) P` of a Weyl group element on the
//! orthogonal complement `h'` of its fixed space, and the numbers built from
//! it: `c_ij`, `n_ij`, `p_ij` and the denominator bound `d`.

use crate::error::{Error, Result};
use crate::field::{
    identity, inverse, lcm_denominators, mat_mul, mat_sub, qi, solve, Matrix, Solution, Q,
};
use crate::rootsys::RootSystem;
use crate::weyl::{InvolutionDecomposition, WeylElement};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CayleyData {
    /// The gammas in the order `gamma1 ++ gamma2`.
    pub gammas: Vec<Vec<i64>>,
    /// `A_ij = (gamma_i^vee, gamma_j)`.
    pub carter: Vec<Vec<i64>>,
    pub eps_matrix: Vec<Vec<i64>>,
    /// `(U+V)^{-1}(2I+U-V)`: column `i` holds the coordinates of the
    /// transform of `gamma_i` in the gamma basis.
    pub gauss: Matrix<Q>,
    /// `((1+s)/(1-s) P gamma_i, gamma_j)`.
    pub cayley_on_gammas: Matrix<Q>,
    /// `c_ij = ((1+s)/(1-s) P alpha_i, alpha_j)`.
    pub c: Matrix<Q>,
    pub n: Matrix<Q>,
    pub p: Matrix<Q>,
    pub d: u64,
}

impl CayleyData {
    /// `-1` above the diagonal, `+1` below.
    pub fn eps(i: usize, j: usize) -> i64 {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => -1,
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => 1,
        }
    }

    /// Entries of `cayley_on_gammas` differing from `eps_ij (gamma_i, gamma_j)`.
    pub fn closed_form_mismatches(&self, sys: &RootSystem) -> Vec<(usize, usize)> {
        let k = self.gammas.len();
        let mut out = Vec::new();
        for i in 0..k {
            for j in 0..k {
                let want =
                    qi(self.eps_matrix[i][j] * sys.form_int(&self.gammas[i], &self.gammas[j]));
                if self.cayley_on_gammas[i][j] != want {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Checks skew-symmetry, `d_j n_ij - d_i n_ji = c_ij` and integrality of
    /// `d p_ij / 2`.
    pub fn check(&self, sys: &RootSystem) -> Result<()> {
        let fail = |m: String| Err(Error::InvariantViolation(m));
        let k = self.gammas.len();
        for i in 0..k {
            for j in 0..k {
                if &self.cayley_on_gammas[i][j] + &self.cayley_on_gammas[j][i] != Q::zero() {
                    return fail(format!("transform is not skew at ({i}, {j})"));
                }
            }
        }
        let l = sys.rank;
        let d = qi(self.d as i64);
        for i in 0..l {
            for j in 0..l {
                let lhs = qi(sys.d[j]) * &self.n[i][j] - qi(sys.d[i]) * &self.n[j][i];
                if lhs != self.c[i][j] {
                    return fail(format!("d_j n_ij - d_i n_ji != c_ij at ({i}, {j})"));
                }
                if !(&d * &self.p[i][j] / qi(2)).is_integer() {
                    return fail(format!("d p_ij / 2 is not integral at ({i}, {j})"));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

/// Builds all Cayley data for `s = s_{gamma_1} ... s_{gamma_l'}` with the
/// canonical choice `s_ij = 0`.
pub fn cayley_matrix(s: &WeylElement, dec: &InvolutionDecomposition) -> Result<CayleyData> {
    let sys = s.system();
    let l = sys.rank;
    let zero = vec![vec![Q::zero(); l]; l];
    cayley_matrix_with(s, dec, &zero)
}

/// As [`cayley_matrix`] with an explicit symmetric part for `n`.
pub fn cayley_matrix_with(
    s: &WeylElement,
    dec: &InvolutionDecomposition,
    symmetric_part: &Matrix<Q>,
) -> Result<CayleyData> {
    let sys = s.system();
    dec.validate(s)?;
    let gammas = dec.gammas();
    let k = gammas.len();
    let carter: Vec<Vec<i64>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| sys.coroot_pairing(&gammas[j], &gammas[i]))
                .collect()
        })
        .collect();
    let gauss = gauss_matrix(&carter)?;
    let gram: Vec<Vec<Q>> = (0..k)
        .map(|i| (0..k).map(|j| sys.form(&gammas[i], &gammas[j])).collect())
        .collect();
    // (T gamma_i, gamma_j) = sum_m gauss[m][i] (gamma_m, gamma_j)
    let cayley_on_gammas: Matrix<Q> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| (0..k).fold(Q::zero(), |acc, m| acc + &gauss[m][i] * &gram[m][j]))
                .collect()
        })
        .collect();
    let eps_matrix = (0..k)
        .map(|i| (0..k).map(|j| CayleyData::eps(i, j)).collect())
        .collect();

    // Bilinear form of T on h*: B(x, y) = (T P x, y), via the gamma basis.
    let op = CayleyOperator::new(sys, &gammas, &gauss, &gram)?;
    let l = sys.rank;
    let simple: Vec<Vec<Q>> = (0..l)
        .map(|i| sys.simple_root(i).iter().map(|&x| qi(x)).collect())
        .collect();
    let c: Matrix<Q> = (0..l)
        .map(|i| (0..l).map(|j| op.pair(&simple[i], &simple[j])).collect())
        .collect();
    let n = solve_n(sys, &c, symmetric_part)?;
    let (p, d) = p_from(sys, &op);
    let cd = CayleyData {
        gammas,
        carter,
        eps_matrix,
        gauss,
        cayley_on_gammas,
        c,
        n,
        p,
        d,
    };
    cd.check(sys)?;
    Ok(cd)
}

/// `(U+V)^{-1}(2I+U-V)` from a Carter matrix, where `U` is its strictly
/// upper part and `V` the rest.
pub fn gauss_matrix(carter: &[Vec<i64>]) -> Result<Matrix<Q>> {
    let k = carter.len();
    let a: Matrix<Q> = carter
        .iter()
        .map(|r| r.iter().map(|&x| qi(x)).collect())
        .collect();
    let ainv = inverse(&a).ok_or(Error::SingularCarterMatrix)?;
    let mut b: Matrix<Q> = vec![vec![Q::zero(); k]; k];
    for (i, row) in b.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            // U - V: +A above the diagonal, -A on and below it.
            let uv = if i < j {
                qi(carter[i][j])
            } else {
                -qi(carter[i][j])
            };
            *x = uv + if i == j { qi(2) } else { Q::zero() };
        }
    }
    Ok(mat_mul(&ainv, &b))
}

/// `n_ij = (c_ij + s_ij) / (2 d_j)`.
pub fn solve_n(sys: &RootSystem, c: &Matrix<Q>, symmetric_part: &Matrix<Q>) -> Result<Matrix<Q>> {
    let l = sys.rank;
    if c.len() != l || symmetric_part.len() != l {
        return Err(Error::DimensionMismatch {
            expected: l,
            got: symmetric_part.len(),
        });
    }
    for i in 0..l {
        for j in 0..l {
            if symmetric_part[i][j] != symmetric_part[j][i] {
                return Err(Error::InvariantViolation(
                    "symmetric part is not symmetric".into(),
                ));
            }
        }
    }
    Ok((0..l)
        .map(|i| {
            (0..l)
                .map(|j| (&c[i][j] + &symmetric_part[i][j]) / qi(2 * sys.d[j]))
                .collect()
        })
        .collect())
}

/// `p_ij = ((1+s)/(1-s) P Y_i, Y_j) + (Y_i, Y_j)` and the least `d` making
/// every `d p_ij / 2` integral.
pub fn p_matrix(s: &WeylElement) -> Result<(Matrix<Q>, u64)> {
    let sys = s.system();
    let op = CayleyOperator::from_element(s)?;
    Ok(p_from(sys, &op))
}

fn p_from(sys: &RootSystem, op: &CayleyOperator) -> (Matrix<Q>, u64) {
    let l = sys.rank;
    let ys: Vec<Vec<Q>> = (0..l)
        .map(|i| sys.coweight_to_root_coords(&sys.y(i)))
        .collect();
    let p: Matrix<Q> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| op.pair(&ys[i], &ys[j]) + sys.form_q(&ys[i], &ys[j]))
                .collect()
        })
        .collect();
    let halves: Vec<Q> = p.iter().flatten().map(|x| x / qi(2)).collect();
    let d: BigInt = lcm_denominators(&halves);
    (p, u64::try_from(d).expect("small denominator"))
}

/// The bilinear form `(x, y) -> ((1+s)/(1-s) P x, y)` on `h*` in simple-root
/// coordinates.
pub struct CayleyOperator {
    form: Matrix<Q>,
}

impl CayleyOperator {
    fn new(
        sys: &RootSystem,
        gammas: &[Vec<i64>],
        gauss: &Matrix<Q>,
        gram: &Matrix<Q>,
    ) -> Result<Self> {
        let l = sys.rank;
        let k = gammas.len();
        if k == 0 {
            return Ok(CayleyOperator {
                form: vec![vec![Q::zero(); l]; l],
            });
        }
        let gram_inv = inverse(gram).ok_or(Error::SingularCarterMatrix)?;
        // P alpha_a = sum_m x_am gamma_m with gram x_a = ((alpha_a, gamma_j))_j.
        let simple_g: Matrix<Q> = (0..l)
            .map(|a| {
                gammas
                    .iter()
                    .map(|g| sys.form(&sys.simple_root(a), g))
                    .collect()
            })
            .collect();
        let x: Matrix<Q> = mat_mul(&simple_g, &gram_inv);
        // (T P alpha_a, alpha_b) = sum_{m,r} x_am gauss[r][m] (gamma_r, alpha_b)
        let tx: Matrix<Q> = (0..l)
            .map(|a| {
                (0..k)
                    .map(|r| (0..k).fold(Q::zero(), |acc, m| acc + &x[a][m] * &gauss[r][m]))
                    .collect()
            })
            .collect();
        let form = (0..l)
            .map(|a| {
                (0..l)
                    .map(|b| (0..k).fold(Q::zero(), |acc, r| acc + &tx[a][r] * &simple_g[b][r]))
                    .collect()
            })
            .collect();
        Ok(CayleyOperator { form })
    }

    /// Builds the operator straight from the action of `s` on `h*`, with no
    /// decomposition: `T v = (1+s) P u` where `(1-s) u = v` for `v` in `h'*`.
    pub fn from_element(s: &WeylElement) -> Result<Self> {
        let sys = s.system();
        let l = sys.rank;
        let m = s.matrix_q();
        let id: Matrix<Q> = identity(l);
        let one_minus = mat_sub(&id, &m);
        // h'* is the image of 1 - s, and 1 - s is invertible on it.
        let basis = image_basis(&one_minus);
        let proj = projection_onto(sys, &basis);
        let k = basis.len();
        // (1 - s) B, column c = (1 - s) basis[c]
        let mb: Matrix<Q> = (0..l)
            .map(|row| {
                (0..k)
                    .map(|c| crate::field::mat_vec(&one_minus, &basis[c])[row].clone())
                    .collect()
            })
            .collect();
        let mut form = vec![vec![Q::zero(); l]; l];
        for a in 0..l {
            if k == 0 {
                break;
            }
            let e: Vec<Q> = (0..l)
                .map(|i| if i == a { Q::one() } else { Q::zero() })
                .collect();
            let v = crate::field::mat_vec(&proj, &e);
            let Solution::Unique(coef) = solve(&mb, &v) else {
                return Err(Error::InvariantViolation(
                    "1 - s is not invertible on h'".into(),
                ));
            };
            let mut u = vec![Q::zero(); l];
            for (c, b) in coef.iter().zip(&basis) {
                for (x, y) in u.iter_mut().zip(b) {
                    *x += c * y;
                }
            }
            let su = crate::field::mat_vec(&m, &u);
            let tv: Vec<Q> = u.iter().zip(&su).map(|(x, y)| x + y).collect();
            for b in 0..l {
                let eb: Vec<Q> = (0..l)
                    .map(|i| if i == b { Q::one() } else { Q::zero() })
                    .collect();
                form[a][b] = sys.form_q(&tv, &eb);
            }
        }
        Ok(CayleyOperator { form })
    }

    /// `((1+s)/(1-s) P x, y)` for `x`, `y` in simple-root coordinates.
    pub fn pair(&self, x: &[Q], y: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                acc += xa * yb * &self.form[a][b];
            }
        }
        acc
    }

    pub fn matrix(&self) -> &Matrix<Q> {
        &self.form
    }
}

fn image_basis(a: &Matrix<Q>) -> Vec<Vec<Q>> {
    let mut cols: Matrix<Q> = crate::field::transpose(a);
    crate::field::rref(&mut cols);
    cols.into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect()
}

/// Orthogonal projection (for the invariant form) onto `span(basis)`, as a
/// matrix in simple-root coordinates.
fn projection_onto(sys: &RootSystem, basis: &[Vec<Q>]) -> Matrix<Q> {
    let l = sys.rank;
    if basis.is_empty() {
        return vec![vec![Q::zero(); l]; l];
    }
    let k = basis.len();
    let gram: Matrix<Q> = (0..k)
        .map(|i| (0..k).map(|j| sys.form_q(&basis[i], &basis[j])).collect())
        .collect();
    let gi = inverse(&gram).expect("form is definite");
    let mut proj = vec![vec![Q::zero(); l]; l];
    for col in 0..l {
        let e: Vec<Q> = (0..l)
            .map(|i| if i == col { Q::one() } else { Q::zero() })
            .collect();
        let rhs: Vec<Q> = basis.iter().map(|b| sys.form_q(b, &e)).collect();
        let coef = crate::field::mat_vec(&gi, &rhs);
        for (c, b) in coef.iter().zip(basis) {
            for (row, x) in b.iter().enumerate() {
                proj[row][col] += c * x;
            }
        }
    }
    proj
}

/// `(K H_j, H_i) = n_ji / d_j`; returns the matrix of `K - K*` in the `H`
/// basis paired against `H`, which should equal `((1+s)/(1-s) P H_j, H_i)`.
pub fn k_minus_k_star(sys: &RootSystem, n: &Matrix<Q>) -> Matrix<Q> {
    let l = sys.rank;
    (0..l)
        .map(|j| {
            (0..l)
                .map(|i| &n[j][i] / qi(sys.d[j]) - &n[i][j] / qi(sys.d[i]))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;
    use crate::weyl::involution_decompose;

    fn data(label: &str, word: &[usize]) -> CayleyData {
        let sys = RootSystem::build(label).unwrap();
        let s = WeylElement::from_word(&sys, word).unwrap();
        cayley_matrix(&s, &involution_decompose(&s).unwrap()).unwrap()
    }

    #[test]
    fn a2_coxeter() {
        let cd = data("A2", &[1, 2]);
        assert_eq!(cd.gammas, vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(
            cd.cayley_on_gammas,
            vec![vec![qi(0), qi(1)], vec![qi(-1), qi(0)]]
        );
        assert_eq!(cd.c[0][1], qi(1));
        assert_eq!(cd.n[0][1], q(1, 2));
        assert_eq!(cd.n[1][0], q(-1, 2));
    }

    #[test]
    fn a1_reflection_has_zero_transform() {
        let cd = data("A1", &[1]);
        assert_eq!(cd.c, vec![vec![qi(0)]]);
        // p = (Y_1, Y_1) = 1/2, so p/2 = 1/4.
        assert_eq!(cd.p, vec![vec![q(1, 2)]]);
        assert_eq!(cd.d, 4);
    }

    #[test]
    fn identity_gives_coweight_gram() {
        let sys = RootSystem::build("B2").unwrap();
        let (p, _) = p_matrix(&WeylElement::identity(&sys)).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(p[i][j], sys.form_h(&sys.y(i), &sys.y(j)));
            }
        }
    }

    #[test]
    fn gauss_route_matches_direct_operator() {
        for (label, word) in [
            ("B2", vec![1, 2]),
            ("G2", vec![1, 2]),
            ("A3", vec![1, 3]),
            ("B3", vec![1, 2, 3]),
        ] {
            let sys = RootSystem::build(label).unwrap();
            let s = WeylElement::from_word(&sys, &word).unwrap();
            let cd = cayley_matrix(&s, &involution_decompose(&s).unwrap()).unwrap();
            let op = CayleyOperator::from_element(&s).unwrap();
            let direct: Matrix<Q> = (0..sys.rank)
                .map(|i| {
                    (0..sys.rank)
                        .map(|j| {
                            let a: Vec<Q> = sys.simple_root(i).iter().map(|&x| qi(x)).collect();
                            let b: Vec<Q> = sys.simple_root(j).iter().map(|&x| qi(x)).collect();
                            op.pair(&a, &b)
                        })
                        .collect()
                })
                .collect();
            assert_eq!(cd.c, direct, "{label}");
            assert!(cd.closed_form_mismatches(&sys).is_empty(), "{label}");
        }
    }

    #[test]
    fn k_operator_identity() {
        let sys = RootSystem::build("G2").unwrap();
        let cd = data("G2", &[1, 2]);
        let kk = k_minus_k_star(&sys, &cd.n);
        for i in 0..2 {
            for j in 0..2 {
                // H_i corresponds to alpha_i / d_i.
                assert_eq!(kk[j][i], &cd.c[j][i] / qi(sys.d[i] * sys.d[j]));
            }
        }
    }

    #[test]
    fn singular_carter_matrix() {
        assert!(matches!(
            gauss_matrix(&[vec![2, 2], vec![2, 2]]),
            Err(Error::SingularCarterMatrix)
        ));
    }
}
