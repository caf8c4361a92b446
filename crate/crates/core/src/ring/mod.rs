//! Group rings of `Z^k` and truncated special power series.
//!
//! Completions are handled through their finite truncations: an element of
//! the quotient by the ideal of monomials with every exponent `>= n` is a
//! finite sum over the basis `S_n`. Coefficients are integers in the
//! commutative case and elements of `Z[H]`, `H = Z^m`, in the twisted case.

mod group_ring;
mod series;
mod twist;

use thiserror::Error;

use crate::arith::Integer;
use crate::cone::ConeError;

pub use group_ring::{height, to_dual_coordinates, DualCoordinates, GroupRingElt};
pub use series::{
    in_ideal, mul_truncated, projection_kernel, reduce_mod_ideal, Exponent, Projection,
    TruncatedSeries,
};
pub use twist::{twisted_mul_truncated, validate_twist, SignedElt, TwistData};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("the zero element has no height")]
    ZeroElement,
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("family is not unimodular (|det| = {0})")]
    NonUnimodularFamily(Integer),
    #[error("truncation order must be positive")]
    ZeroOrder,
    #[error("truncation orders differ: {0} and {1}")]
    OrderMismatch(u32, u32),
    #[error("negative exponent in {0:?}")]
    NegativeIndex(Vec<i64>),
    #[error("exponent overflow")]
    Overflow,
    #[error("variable {0} out of range for {1} variables")]
    VariableOutOfRange(usize, usize),
    #[error("invalid twist data: {0}")]
    InvalidTwistData(String),
    #[error(transparent)]
    Cone(#[from] ConeError),
}

/// Coefficient ring of a series.
pub trait Coefficient: Clone + PartialEq + std::fmt::Debug {
    fn vanishes(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
}

impl Coefficient for Integer {
    fn vanishes(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn times(&self, other: &Self) -> Self {
        self * other
    }

    fn negated(&self) -> Self {
        -self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, IntMatrix, IntVector};
    use crate::cone::FormFamily;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn series(
        vars: usize,
        order: u32,
        max_exp: u32,
    ) -> impl Strategy<Value = TruncatedSeries<Integer>> + Clone {
        proptest::collection::vec(
            (proptest::collection::vec(0..=max_exp, vars), -4i64..5),
            0..6,
        )
        .prop_map(move |terms| {
            TruncatedSeries::from_terms(vars, order, terms.into_iter().map(|(i, c)| (i, int(c))))
                .unwrap()
        })
    }

    fn group_elt(m: usize) -> impl Strategy<Value = GroupRingElt> + Clone {
        proptest::collection::vec((proptest::collection::vec(-2i64..3, m), -3i64..4), 0..3)
            .prop_map(move |terms| {
                GroupRingElt::from_terms(
                    m,
                    terms
                        .into_iter()
                        .map(|(h, c)| (h.into_iter().map(int).collect(), int(c))),
                )
                .unwrap()
            })
    }

    fn twisted_series(
        vars: usize,
        m: usize,
        order: u32,
    ) -> impl Strategy<Value = TruncatedSeries<GroupRingElt>> + Clone {
        proptest::collection::vec(
            (proptest::collection::vec(0..=order + 1, vars), group_elt(m)),
            0..4,
        )
        .prop_map(move |terms| TruncatedSeries::from_terms(vars, order, terms).unwrap())
    }

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    /// Twists known to be consistent: one variable with any automorphism,
    /// two variables with commuting automorphisms, or central commutators.
    fn twist() -> impl Strategy<Value = TwistData> {
        let autos = [
            mat(&[&[1, 0], &[0, 1]]),
            mat(&[&[0, 1], &[1, 0]]),
            mat(&[&[1, 1], &[0, 1]]),
            mat(&[&[2, 1], &[1, 1]]),
            mat(&[&[-1, 0], &[0, 1]]),
        ];
        let signed = (any::<bool>(), proptest::collection::vec(-1i64..2, 2))
            .prop_map(|(n, h)| SignedElt::new(n, h.into_iter().map(int).collect()));
        (
            0usize..3,
            0usize..autos.len(),
            0u32..3,
            proptest::collection::vec(signed, 3),
        )
            .prop_map(move |(shape, a, p, rs)| {
                let s = autos[a].clone();
                let id = SignedElt::identity(2);
                match shape {
                    0 => TwistData::ore(s).unwrap(),
                    1 => {
                        let mut s2 = IntMatrix::identity(2);
                        for _ in 0..p {
                            s2 = s2.mul(&s).unwrap();
                        }
                        let r = rs[0].clone();
                        TwistData::new(
                            2,
                            vec![s, s2],
                            vec![vec![id.clone(), r.clone()], vec![r.inverse(), id]],
                        )
                        .unwrap()
                    }
                    _ => {
                        let (r12, r13, r23) = (rs[0].clone(), rs[1].clone(), rs[2].clone());
                        TwistData::new(
                            2,
                            vec![IntMatrix::identity(2); 3],
                            vec![
                                vec![id.clone(), r12.clone(), r13.clone()],
                                vec![r12.inverse(), id.clone(), r23.clone()],
                                vec![r13.inverse(), r23.inverse(), id],
                            ],
                        )
                        .unwrap()
                    }
                }
            })
    }

    fn twist_and_elements(
    ) -> impl Strategy<Value = (TwistData, u32, [TruncatedSeries<GroupRingElt>; 3])> {
        (twist(), 1u32..4).prop_flat_map(|(tw, n)| {
            let k = tw.vars();
            let e = twisted_series(k, 2, n);
            (Just(tw), Just(n), [e.clone(), e.clone(), e])
        })
    }

    fn unimodular(k: usize) -> impl Strategy<Value = IntMatrix> {
        proptest::collection::vec((0..k, 0..k, -2i64..3, any::<bool>()), 0..8).prop_map(
            move |ops| {
                let mut m = IntMatrix::identity(k);
                for (i, j, c, flip) in ops {
                    if i != j {
                        m.add_row_multiple(i, j, &int(c));
                    }
                    if flip {
                        m.scale_row(i, &int(-1));
                    }
                }
                m
            },
        )
    }

    proptest! {
        #[test]
        fn commutative_ring_axioms(
            (a, b, c) in (1usize..4, 1u32..5).prop_flat_map(|(k, n)| {
                let s = series(k, n, n + 2);
                (s.clone(), s.clone(), s)
            })
        ) {
            let ab_c = mul_truncated(&mul_truncated(&a, &b).unwrap(), &c).unwrap();
            let a_bc = mul_truncated(&a, &mul_truncated(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            let lhs = mul_truncated(&a, &b.add(&c).unwrap()).unwrap();
            let rhs = mul_truncated(&a, &b).unwrap().add(&mul_truncated(&a, &c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            let lhs = mul_truncated(&b.add(&c).unwrap(), &a).unwrap();
            let rhs = mul_truncated(&b, &a).unwrap().add(&mul_truncated(&c, &a).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            let one = TruncatedSeries::monomial(a.vars(), a.order(), vec![0; a.vars()], Integer::one()).unwrap();
            prop_assert_eq!(mul_truncated(&one, &a).unwrap(), a.clone());
            prop_assert_eq!(mul_truncated(&a, &b).unwrap(), mul_truncated(&b, &a).unwrap());
        }

        #[test]
        fn twisted_ring_axioms((tw, n, [a, b, c]) in twist_and_elements()) {
            prop_assert!(validate_twist(&tw, 1));
            let mul = |x: &TruncatedSeries<GroupRingElt>, y: &TruncatedSeries<GroupRingElt>| {
                twisted_mul_truncated(x, y, &tw).unwrap()
            };
            prop_assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
            prop_assert_eq!(
                mul(&a, &b.add(&c).unwrap()),
                mul(&a, &b).add(&mul(&a, &c)).unwrap()
            );
            prop_assert_eq!(
                mul(&b.add(&c).unwrap(), &a),
                mul(&b, &a).add(&mul(&c, &a)).unwrap()
            );
            let one = TruncatedSeries::monomial(tw.vars(), n, vec![0; tw.vars()], GroupRingElt::one(2)).unwrap();
            prop_assert_eq!(mul(&one, &a), a.clone());
            prop_assert_eq!(mul(&a, &one), a);
        }

        #[test]
        fn some_projection_survives(x in (1usize..4, 1u32..4).prop_flat_map(|(k, n)| series(k, n, 2 * n + 1))) {
            let any_nonzero = (0..x.vars()).any(|i| !x.j_n_project(i).unwrap().is_zero());
            prop_assert_eq!(any_nonzero, !x.is_zero());
        }

        #[test]
        fn dual_membership_matches_forms(
            (f, lam) in (1usize..4).prop_flat_map(|k| (unimodular(k), proptest::collection::vec(
                (proptest::collection::vec(-4i64..5, k), 1i64..3), 1..5)))
        ) {
            let k = f.rows();
            let gamma = FormFamily::new(f.to_rows()).unwrap();
            let lam = GroupRingElt::from_terms(
                k,
                lam.into_iter().map(|(g, c)| (g.into_iter().map(int).collect::<IntVector>(), int(c))),
            ).unwrap();
            let d = to_dual_coordinates(&lam, &gamma).unwrap();
            prop_assert_eq!(d.member, lam.in_cone_completion(&gamma));
            for ((coords, _), g) in d.terms.iter().zip(lam.support()) {
                let direct = gamma.forms().iter().all(|xi| crate::arith::dot_int(xi, g) <= Integer::zero());
                prop_assert_eq!(coords.iter().all(|c| *c >= Integer::zero()), direct);
            }
        }
    }

    /// The assembled projection map is injective on every monomial of
    /// `S_n` inside a box, by exact rank.
    #[test]
    fn projection_kernel_is_trivial() {
        for k in 1..=3usize {
            for n in 1..=3u32 {
                let mut basis: Vec<Vec<u32>> = vec![vec![]];
                for _ in 0..k {
                    basis = basis
                        .into_iter()
                        .flat_map(|p| {
                            (0..=n + 1).map(move |e| {
                                let mut q = p.clone();
                                q.push(e);
                                q
                            })
                        })
                        .collect();
                }
                basis.retain(|i| !in_ideal(i, n));
                assert!(
                    projection_kernel(k, n, &basis).unwrap().is_empty(),
                    "k = {k}, n = {n}"
                );
            }
        }
    }
}
