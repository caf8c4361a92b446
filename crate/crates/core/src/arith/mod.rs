//! Exact scalar, vector, matrix and polynomial arithmetic.
//!
//! Everything here is exact: integers are arbitrary precision, rationals are
//! kept reduced with a positive denominator, and no floating point is used.

mod matrix;
mod poly;
mod snf;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use matrix::{IntMatrix, Matrix, PolyMatrix, RatMatrix};
pub use poly::Poly;
pub use snf::{smith_normal_form, Smith};

pub type Integer = BigInt;
pub type Rational = BigRational;
pub type IntVector = Vec<Integer>;
pub type RatVector = Vec<Rational>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("zero vector where a direction was required")]
    ZeroVector,
    #[error("matrix is singular")]
    Singular,
    #[error("cannot parse exact number `{0}`")]
    Parse(String),
}

/// Commutative ring with identity, as used by the generic matrix code.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Neg<Output = Self>
        + Add<Output = Self>
        + Sub<Output = Self>
        + Mul<Output = Self>
{
}

/// Euclidean domain operations needed by Smith normal form and Bareiss.
pub trait Euclidean: Ring {
    /// Quotient and remainder with `size(r) < size(d)` or `r == 0`.
    fn div_rem_euclid(&self, d: &Self) -> (Self, Self);
    /// Strict comparison of Euclidean sizes.
    fn size_lt(&self, other: &Self) -> bool;
    /// A unit `u` (and its inverse) such that `u * self` is canonical:
    /// nonnegative for integers, monic for polynomials.
    fn normalizing_unit(&self) -> (Self, Self);
    fn is_unit(&self) -> bool;

    fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem_euclid(d);
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem_euclid(self).1.is_zero()
    }
}

impl Euclidean for BigInt {
    fn div_rem_euclid(&self, d: &Self) -> (Self, Self) {
        let (q, r) = self.div_mod_floor(d);
        // symmetric remainder keeps |r| <= |d|/2, which converges faster
        if (&r + &r).abs() > d.abs() {
            (q + 1, r - d)
        } else {
            (q, r)
        }
    }

    fn size_lt(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }

    fn normalizing_unit(&self) -> (Self, Self) {
        if self.is_negative() {
            (-BigInt::one(), -BigInt::one())
        } else {
            (BigInt::one(), BigInt::one())
        }
    }

    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

/// Smith normal form over Z as `(D, U, V)` with `D = U * m * V`.
pub fn snf_int(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let s = smith_normal_form(m);
    (s.d, s.u, s.v)
}

/// Smith normal form over Q[t] as `(D, U, V)` with `D = U * m * V`.
pub fn snf_poly(m: &PolyMatrix) -> (PolyMatrix, PolyMatrix, PolyMatrix) {
    let s = smith_normal_form(m);
    (s.d, s.u, s.v)
}

pub fn int(n: i64) -> Integer {
    BigInt::from(n)
}

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_from_int(n: &Integer) -> Rational {
    BigRational::from_integer(n.clone())
}

/// Parses `p`, `-p` or `p/q`. Anything with a decimal point or exponent is
/// rejected: inputs must be exact.
pub fn parse_rational(s: &str) -> Result<Rational, ArithError> {
    let s = s.trim();
    let err = || ArithError::Parse(s.to_string());
    if s.is_empty() || s.contains(['.', 'e', 'E']) {
        return Err(err());
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| err())?)),
    }
}

pub fn parse_integer(s: &str) -> Result<Integer, ArithError> {
    let s = s.trim();
    s.parse().map_err(|_| ArithError::Parse(s.to_string()))
}

pub fn dot_rat(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_int(a: &[Integer], b: &[Integer]) -> Integer {
    a.iter()
        .zip(b)
        .fold(Integer::zero(), |acc, (x, y)| acc + x * y)
}

/// Squared sine of the angle between the rays spanned by `v` and `u`:
/// `1 - <v,u>^2 / (|v|^2 |u|^2)`. Exact, in `[0, 1]`, and monotone in the
/// angle on `[0, pi/2]`, so angular tolerances become rational bounds.
pub fn sin2_between(v: &[Rational], u: &[Integer]) -> Result<Rational, ArithError> {
    if v.len() != u.len() {
        return Err(ArithError::Shape(format!(
            "vectors of length {} and {}",
            v.len(),
            u.len()
        )));
    }
    let u: Vec<Rational> = u.iter().map(rat_from_int).collect();
    let vv = dot_rat(v, v);
    let uu = dot_rat(&u, &u);
    if vv.is_zero() || uu.is_zero() {
        return Err(ArithError::ZeroVector);
    }
    let vu = dot_rat(v, &u);
    Ok(Rational::one() - &vu * &vu / (vv * uu))
}

pub fn lcm_of_denominators<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> Integer {
    xs.into_iter()
        .fold(Integer::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scales a rational vector by the lcm of its denominators.
pub fn clear_denominators(v: &[Rational]) -> IntVector {
    let l = lcm_of_denominators(v);
    v.iter()
        .map(|x| (x * rat_from_int(&l)).to_integer())
        .collect()
}

pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_exact_only() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), rat(-7, 1));
        assert_eq!(parse_rational(" 610/1 ").unwrap(), rat(610, 1));
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn rationals_stay_reduced() {
        let x = parse_rational("-4/-6").unwrap();
        assert_eq!(x.numer(), &int(2));
        assert_eq!(x.denom(), &int(3));
    }

    #[test]
    fn sin2_examples() {
        let v = vec![rat(1, 1), rat(1, 1)];
        assert_eq!(sin2_between(&v, &[int(1), int(1)]).unwrap(), rat(0, 1));
        let v = vec![rat(1, 1), rat(0, 1)];
        assert_eq!(sin2_between(&v, &[int(1), int(1)]).unwrap(), rat(1, 2));
        let v = vec![rat(2, 1), rat(1, 1)];
        // <v,u> = 3, |v|^2 = 5, |u|^2 = 2 -> 1 - 9/10
        assert_eq!(sin2_between(&v, &[int(1), int(1)]).unwrap(), rat(1, 10));
    }

    #[test]
    fn sin2_rejects_zero() {
        let v = vec![rat(0, 1), rat(0, 1)];
        assert_eq!(
            sin2_between(&v, &[int(1), int(0)]),
            Err(ArithError::ZeroVector)
        );
        let v = vec![rat(1, 1), rat(0, 1)];
        assert_eq!(
            sin2_between(&v, &[int(0), int(0)]),
            Err(ArithError::ZeroVector)
        );
    }

    #[test]
    fn symmetric_remainder() {
        let (q, r) = int(7).div_rem_euclid(&int(4));
        assert_eq!((q, r), (int(2), int(-1)));
        for (x, d) in [(-7, 4), (7, -4), (-7, -4), (5, -3), (9, 6)] {
            let (q, r) = int(x).div_rem_euclid(&int(d));
            assert_eq!(q * int(d) + r.clone(), int(x));
            assert!(r.abs() * int(2) <= int(d).abs());
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn sin2_is_ray_invariant(
                v in proptest::collection::vec(-20i64..20, 3),
                u in proptest::collection::vec(-20i64..20, 3),
                lambda in 1i64..50,
            ) {
                prop_assume!(v.iter().any(|x| *x != 0) && u.iter().any(|x| *x != 0));
                let vr: Vec<Rational> = v.iter().map(|x| rat(*x, 1)).collect();
                let ui: Vec<Integer> = u.iter().map(|x| int(*x)).collect();
                let us: Vec<Integer> = u.iter().map(|x| int(*x * lambda)).collect();
                let a = sin2_between(&vr, &ui).unwrap();
                prop_assert_eq!(a.clone(), sin2_between(&vr, &us).unwrap());
                prop_assert!(a >= rat(0, 1) && a <= rat(1, 1));
            }
        }
    }
}
