use super::{Euclidean, Matrix};

/// Smith normal form `d = u * m * v` with `u`, `v` invertible. The inverses
/// are tracked alongside so callers can change coordinates in both
/// directions without a separate inversion.
#[derive(Clone, Debug)]
pub struct Smith<T> {
    pub d: Matrix<T>,
    pub u: Matrix<T>,
    pub u_inv: Matrix<T>,
    pub v: Matrix<T>,
    pub v_inv: Matrix<T>,
    pub rank: usize,
}

impl<T: Euclidean> Smith<T> {
    /// The nonzero diagonal entries, each dividing the next.
    pub fn invariant_factors(&self) -> Vec<T> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

/// Diagonalizes `m` over a Euclidean domain. Diagonal entries are
/// normalized (nonnegative integers, monic polynomials) and form a
/// divisibility chain.
pub fn smith_normal_form<T: Euclidean>(m: &Matrix<T>) -> Smith<T> {
    let (rows, cols) = m.shape();
    let mut d = m.clone();
    let mut u = Matrix::identity(rows);
    let mut u_inv = Matrix::identity(rows);
    let mut v = Matrix::identity(cols);
    let mut v_inv = Matrix::identity(cols);
    let mut rank = 0;

    // Row ops act as d <- E d, u <- E u, u_inv <- u_inv E^-1; column ops
    // as d <- d E, v <- v E, v_inv <- E^-1 v_inv.
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = d.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.size_lt(d.get(bi, bj))) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(d, u, u_inv, v, v_inv, rank);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);

            let pivot = d.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let (q, r) = d.get(i, t).div_rem_euclid(&pivot);
                let nq = -q.clone();
                d.add_row_multiple(i, t, &nq);
                u.add_row_multiple(i, t, &nq);
                u_inv.add_col_multiple(t, i, &q);
                dirty |= !r.is_zero();
            }
            for j in t + 1..cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let (q, r) = d.get(t, j).div_rem_euclid(&pivot);
                let nq = -q.clone();
                d.add_col_multiple(j, t, &nq);
                v.add_col_multiple(j, t, &nq);
                v_inv.add_row_multiple(t, j, &q);
                dirty |= !r.is_zero();
            }
            if dirty {
                continue;
            }
            // pivot must divide the rest of the block for the chain property
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !pivot.divides(d.get(i, j))));
            if let Some(i) = offender {
                let one = T::one();
                d.add_row_multiple(t, i, &one);
                u.add_row_multiple(t, i, &one);
                u_inv.add_col_multiple(i, t, &-one);
                continue;
            }
            let (unit, unit_inv) = pivot.normalizing_unit();
            d.scale_row(t, &unit);
            u.scale_row(t, &unit);
            u_inv.scale_col(t, &unit_inv);
            rank += 1;
            break;
        }
    }
    finish(d, u, u_inv, v, v_inv, rank)
}

fn finish<T: Euclidean>(
    d: Matrix<T>,
    u: Matrix<T>,
    u_inv: Matrix<T>,
    v: Matrix<T>,
    v_inv: Matrix<T>,
    rank: usize,
) -> Smith<T> {
    Smith {
        d,
        u,
        u_inv,
        v,
        v_inv,
        rank,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, IntMatrix, Poly, PolyMatrix};
    use num_traits::{One, Signed};

    fn im(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn check<T: Euclidean>(m: &Matrix<T>, s: &Smith<T>) {
        assert_eq!(s.u.mul(m).unwrap().mul(&s.v).unwrap(), s.d);
        assert_eq!(s.u.mul(&s.u_inv).unwrap(), Matrix::identity(m.rows()));
        assert_eq!(s.v.mul(&s.v_inv).unwrap(), Matrix::identity(m.cols()));
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[0].divides(&w[1]));
        }
        for i in s.rank..s.d.rows().min(s.d.cols()) {
            assert!(s.d.get(i, i).is_zero());
        }
    }

    #[test]
    fn integer_examples() {
        let m = im(&[&[2, 0], &[0, 3]]);
        let s = smith_normal_form(&m);
        check(&m, &s);
        assert_eq!(s.invariant_factors(), vec![int(1), int(6)]);

        let z = IntMatrix::zeros(2, 3);
        let s = smith_normal_form(&z);
        assert_eq!(s.d, z);
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.v, IntMatrix::identity(3));

        let s = smith_normal_form(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
    }

    #[test]
    fn integer_unimodular_transforms() {
        let m = im(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith_normal_form(&m);
        check(&m, &s);
        assert_eq!(s.invariant_factors(), vec![int(2), int(6), int(12)]);
        assert!(s.u.det().unwrap().abs() == int(1));
        assert!(s.v.det().unwrap().abs() == int(1));
    }

    #[test]
    fn polynomial_examples() {
        let t2 = Poly::from_ints(&[0, 0, 1]);
        let tm1 = Poly::from_ints(&[-1, 1]);
        let m = PolyMatrix::diagonal(&[t2.clone(), tm1.clone()]);
        let s = smith_normal_form(&m);
        check(&m, &s);
        assert_eq!(
            s.invariant_factors(),
            vec![Poly::one(), Poly::from_ints(&[0, 0, -1, 1])]
        );
        // unit determinants
        assert!(s.u.det().unwrap().degree() == Some(0));
        assert!(s.v.det().unwrap().degree() == Some(0));

        let single = PolyMatrix::diagonal(&[Poly::t()]);
        assert_eq!(smith_normal_form(&single).d, single);
        let zero = PolyMatrix::zeros(1, 1);
        assert_eq!(smith_normal_form(&zero).d, zero);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn poly() -> impl Strategy<Value = Poly> {
            proptest::collection::vec(-3i64..4, 0..3).prop_map(|c| Poly::from_ints(&c))
        }

        proptest! {
            #[test]
            fn integer_snf_reconstructs(r in 1usize..4, c in 1usize..4, seed in proptest::collection::vec(-9i64..10, 16)) {
                let m = IntMatrix::new(r, c, seed.into_iter().take(r * c).map(int).collect()).unwrap();
                let s = smith_normal_form(&m);
                check(&m, &s);
                prop_assert!(s.d.entries().all(|x| *x >= int(0)));
            }

            #[test]
            fn poly_snf_reconstructs(r in 1usize..4, c in 1usize..4, entries in proptest::collection::vec(poly(), 9)) {
                let m = PolyMatrix::new(r, c, entries.into_iter().take(r * c).collect()).unwrap();
                let s = smith_normal_form(&m);
                check(&m, &s);
                for f in s.invariant_factors() {
                    prop_assert!(f.lead() == crate::arith::rat(1, 1));
                }
            }
        }
    }
}
