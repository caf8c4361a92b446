use num_traits::Zero;

use super::BaseRing;
use crate::arith::{smith_normal_form, Euclidean, Poly, PolyMatrix, RatMatrix, Rational};

/// The matrix of a module map over `Q[t]/(t^n)` as a `Q`-linear map, with
/// basis `t^b e_i` at position `i * n + b`.
pub(crate) fn expand(m: &PolyMatrix, n: usize) -> RatMatrix {
    let mut out = RatMatrix::zeros(m.rows() * n, m.cols() * n);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let p = m.get(i, j);
            if p.is_zero() {
                continue;
            }
            for a in 0..n {
                for b in 0..=a {
                    let c = p.coeff(a - b);
                    if !c.is_zero() {
                        out.set(i * n + a, j * n + b, c);
                    }
                }
            }
        }
    }
    out
}

pub(crate) fn flatten(v: &[Poly], n: usize) -> Vec<Rational> {
    v.iter()
        .flat_map(|p| (0..n).map(move |b| p.coeff(b)))
        .collect()
}

pub(crate) fn pack(v: &[Rational], n: usize) -> Vec<Poly> {
    v.chunks(n).map(|c| Poly::new(c.to_vec())).collect()
}

impl BaseRing {
    /// `Q`-dimension of one copy of the ring, when finite.
    pub(crate) fn q_block(&self) -> Option<usize> {
        match self {
            BaseRing::Rationals => Some(1),
            BaseRing::Truncated(n) => Some(*n as usize),
            BaseRing::Polynomials => None,
        }
    }

    pub fn reduce(&self, p: &Poly) -> Poly {
        match self {
            BaseRing::Rationals => Poly::constant(p.coeff(0)),
            BaseRing::Truncated(n) => p.truncate(*n as usize),
            BaseRing::Polynomials => p.clone(),
        }
    }

    pub fn reduce_matrix(&self, m: &PolyMatrix) -> PolyMatrix {
        m.map(|p| self.reduce(p))
    }

    pub(crate) fn is_reduced(&self, p: &Poly) -> bool {
        self.reduce(p) == *p
    }

    pub(crate) fn mul(&self, a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
        self.reduce_matrix(&a.mul(b).expect("composable shapes"))
    }

    /// Rank of the image, as a `Q`-dimension (finite rings) or as a rank
    /// over `Q(t)`.
    pub(crate) fn image_rank(&self, m: &PolyMatrix) -> usize {
        match self.q_block() {
            Some(n) => expand(m, n).rank_q(),
            None => m.rank(),
        }
    }

    /// Whether `m` maps onto its target module.
    pub(crate) fn is_surjective(&self, m: &PolyMatrix) -> bool {
        match self.q_block() {
            Some(n) => expand(m, n).rank_q() == m.rows() * n,
            None => {
                let s = smith_normal_form(m);
                s.rank == m.rows() && s.invariant_factors().iter().all(|f| f.is_unit())
            }
        }
    }

    /// Some `x` with `m x = b`, if one exists over the ring.
    ///
    /// Over the finite rings the solve is done in `Q` coordinates with all
    /// free variables set to zero; over `Q[t]` it goes through the Smith
    /// form.
    pub(crate) fn solve(&self, m: &PolyMatrix, b: &[Poly]) -> Option<Vec<Poly>> {
        match self.q_block() {
            Some(n) => {
                let x = expand(m, n).solve(&flatten(b, n)).expect("shapes agree")?;
                Some(pack(&x, n))
            }
            None => {
                let s = smith_normal_form(m);
                let ub = s.u.mul_vec(b).expect("shapes agree");
                let mut z = vec![Poly::zero(); m.cols()];
                for (i, c) in ub.iter().enumerate() {
                    if i < s.rank {
                        let (q, r) = c.div_rem_euclid(s.d.get(i, i));
                        if !r.is_zero() {
                            return None;
                        }
                        z[i] = q;
                    } else if !c.is_zero() {
                        return None;
                    }
                }
                Some(s.v.mul_vec(&z).expect("shapes agree"))
            }
        }
    }
}
