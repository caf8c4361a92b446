use num_traits::{One, Zero};

use super::series::TruncatedSeries;
use super::{Coefficient, GroupRingElt, RingError};
use crate::arith::{IntMatrix, IntVector, Integer};

/// A signed group element `+h` or `-h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedElt {
    pub negative: bool,
    pub h: IntVector,
}

impl SignedElt {
    pub fn identity(m: usize) -> Self {
        SignedElt {
            negative: false,
            h: vec![Integer::zero(); m],
        }
    }

    pub fn new(negative: bool, h: IntVector) -> Self {
        SignedElt { negative, h }
    }

    pub fn inverse(&self) -> Self {
        SignedElt {
            negative: self.negative,
            h: self.h.iter().map(|x| -x).collect(),
        }
    }

    pub fn to_element(&self) -> GroupRingElt {
        let c = if self.negative {
            -Integer::one()
        } else {
            Integer::one()
        };
        GroupRingElt::monomial(self.h.clone(), c)
    }
}

/// Twisting data for the ring generated over `Z[H]`, `H = Z^m`, by
/// `tau_1, ..., tau_k` subject to `tau_i r = sigma_i(r) tau_i` and
/// `tau_i tau_j = r_ij tau_j tau_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistData {
    m: usize,
    sigma: Vec<IntMatrix>,
    comm: Vec<Vec<SignedElt>>,
}

impl TwistData {
    /// Checks shapes, that every `sigma_i` is unimodular, `r_ii = 1` and
    /// `r_ji = r_ij^{-1}`.
    pub fn new(
        m: usize,
        sigma: Vec<IntMatrix>,
        comm: Vec<Vec<SignedElt>>,
    ) -> Result<Self, RingError> {
        let k = sigma.len();
        let bad = |msg: String| Err(RingError::InvalidTwistData(msg));
        for (i, s) in sigma.iter().enumerate() {
            if s.shape() != (m, m) {
                return bad(format!("sigma_{} is not {m}x{m}", i + 1));
            }
            let d = s
                .det()
                .map_err(|e| RingError::InvalidTwistData(e.to_string()))?;
            if d != Integer::one() && d != -Integer::one() {
                return bad(format!("sigma_{} has determinant {d}", i + 1));
            }
        }
        if comm.len() != k || comm.iter().any(|row| row.len() != k) {
            return bad(format!("commutator table is not {k}x{k}"));
        }
        for i in 0..k {
            for j in 0..k {
                if comm[i][j].h.len() != m {
                    return bad(format!("r_{}{} is not in Z^{m}", i + 1, j + 1));
                }
            }
            if comm[i][i] != SignedElt::identity(m) {
                return bad(format!("r_{0}{0} is not 1", i + 1));
            }
            for j in 0..i {
                if comm[i][j] != comm[j][i].inverse() {
                    return bad(format!(
                        "r_{}{} is not the inverse of r_{}{}",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    ));
                }
            }
        }
        Ok(TwistData { m, sigma, comm })
    }

    /// All `sigma_i = id` and all `r_ij = 1`.
    pub fn trivial(k: usize, m: usize) -> Self {
        TwistData {
            m,
            sigma: vec![IntMatrix::identity(m); k],
            comm: vec![vec![SignedElt::identity(m); k]; k],
        }
    }

    /// Twist with a single variable.
    pub fn ore(sigma: IntMatrix) -> Result<Self, RingError> {
        let m = sigma.rows();
        Self::new(m, vec![sigma], vec![vec![SignedElt::identity(m)]])
    }

    pub fn vars(&self) -> usize {
        self.sigma.len()
    }

    pub fn rank(&self) -> usize {
        self.m
    }

    pub fn sigma(&self) -> &[IntMatrix] {
        &self.sigma
    }

    pub fn comm(&self, i: usize, j: usize) -> &SignedElt {
        &self.comm[i][j]
    }

    /// The matrix of `sigma^I = sigma_1^{i_1} ... sigma_k^{i_k}`.
    pub fn sigma_power(&self, index: &[u32]) -> IntMatrix {
        let mut out = IntMatrix::identity(self.m);
        for (s, &e) in self.sigma.iter().zip(index) {
            for _ in 0..e {
                out = out.mul(s).expect("square");
            }
        }
        out
    }

    /// The signed element `rho` with `tau^I tau^J = rho tau^{I+J}`.
    ///
    /// Letters of `tau^J` are moved into place one at a time. Passing
    /// `tau_b` left over a copy of `tau_a` (`a > b`) emits `r_ab`, which is
    /// then carried to the front through every letter to its left.
    pub fn normal_order(&self, i: &[u32], j: &[u32]) -> SignedElt {
        let k = self.vars();
        let mut x = i.to_vec();
        let mut acc = SignedElt::identity(self.m);
        for b in 0..k {
            for _ in 0..j[b] {
                if (b + 1..k).all(|a| x[a] == 0) {
                    x[b] += 1;
                    continue;
                }
                let mut prefix = IntMatrix::identity(self.m);
                for l in 0..=b {
                    for _ in 0..x[l] {
                        prefix = prefix.mul(&self.sigma[l]).expect("square");
                    }
                }
                for a in b + 1..k {
                    let r = &self.comm[a][b];
                    for _ in 0..x[a] {
                        let moved = prefix.mul_vec(&r.h).expect("rank agrees");
                        acc.negative ^= r.negative;
                        for (t, y) in acc.h.iter_mut().zip(moved) {
                            *t += y;
                        }
                        prefix = prefix.mul(&self.sigma[a]).expect("square");
                    }
                }
                x[b] += 1;
            }
        }
        acc
    }

    /// `(c1 tau^I)(c2 tau^J) = c1 sigma^I(c2) rho(I, J) tau^{I+J}`.
    pub fn monomial_product(
        &self,
        c1: &GroupRingElt,
        i: &[u32],
        c2: &GroupRingElt,
        j: &[u32],
    ) -> GroupRingElt {
        let twisted = c2.act(&self.sigma_power(i));
        c1.times(&twisted)
            .times(&self.normal_order(i, j).to_element())
    }
}

/// Product in the truncated twisted ring.
pub fn twisted_mul_truncated(
    a: &TruncatedSeries<GroupRingElt>,
    b: &TruncatedSeries<GroupRingElt>,
    tw: &TwistData,
) -> Result<TruncatedSeries<GroupRingElt>, RingError> {
    if a.vars() != tw.vars() {
        return Err(RingError::RankMismatch {
            expected: tw.vars(),
            found: a.vars(),
        });
    }
    for (_, c) in a.terms().chain(b.terms()) {
        if c.rank() != tw.rank() {
            return Err(RingError::InvalidTwistData(format!(
                "coefficient over Z^{} but the twist acts on Z^{}",
                c.rank(),
                tw.rank()
            )));
        }
    }
    a.mul_with(b, |i, x, j, y| Ok(tw.monomial_product(x, i, y, j)))
}

/// Brute-force associativity check on `tau^I (c tau^J) (c' tau^K)` for all
/// `|I|, |J|, |K| <= bound` (sup norm) and `c, c'` among `1` and the
/// generators of `H`.
pub fn validate_twist(tw: &TwistData, bound: u32) -> bool {
    let k = tw.vars();
    let m = tw.rank();
    let mut coeffs = vec![GroupRingElt::one(m)];
    for l in 0..m {
        let mut e = vec![Integer::zero(); m];
        e[l] = Integer::one();
        coeffs.push(GroupRingElt::monomial(e, Integer::one()));
    }
    let indices = box_indices(k, bound);
    let one = GroupRingElt::one(m);
    let sum = |a: &[u32], b: &[u32]| -> Vec<u32> { a.iter().zip(b).map(|(x, y)| x + y).collect() };
    for i in &indices {
        for j in &indices {
            for c in &coeffs {
                let ij_coeff = tw.monomial_product(&one, i, c, j);
                let ij = sum(i, j);
                for kk in &indices {
                    for d in &coeffs {
                        let left = tw.monomial_product(&ij_coeff, &ij, d, kk);
                        let jk_coeff = tw.monomial_product(c, j, d, kk);
                        let right = tw.monomial_product(&one, i, &jk_coeff, &sum(j, kk));
                        if left != right {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

fn box_indices(k: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (0..=bound).map(move |e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    out
}
