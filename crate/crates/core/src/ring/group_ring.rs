use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{Coefficient, RingError};
use crate::arith::{dot_int, rat_from_int, IntMatrix, IntVector, Integer, Rational};
use crate::cone::{dual_basis, ConeError, FormFamily};

/// Element of the integral group ring of a free abelian group `Z^k`,
/// stored as a finite map from exponent vectors to nonzero integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupRingElt {
    rank: usize,
    terms: BTreeMap<IntVector, Integer>,
}

impl GroupRingElt {
    pub fn zero(rank: usize) -> Self {
        GroupRingElt {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(vec![Integer::zero(); rank], Integer::one())
    }

    /// `c * g`; the rank is the length of `g`.
    pub fn monomial(g: IntVector, c: Integer) -> Self {
        let mut out = Self::zero(g.len());
        if !c.is_zero() {
            out.terms.insert(g, c);
        }
        out
    }

    /// Sums `(index, coefficient)` pairs, combining repeated indices.
    pub fn from_terms(
        rank: usize,
        terms: impl IntoIterator<Item = (IntVector, Integer)>,
    ) -> Result<Self, RingError> {
        let mut out = Self::zero(rank);
        for (g, c) in terms {
            if g.len() != rank {
                return Err(RingError::RankMismatch {
                    expected: rank,
                    found: g.len(),
                });
            }
            out.add_term(g, c);
        }
        Ok(out)
    }

    pub fn from_i64(rank: usize, terms: &[(&[i64], i64)]) -> Result<Self, RingError> {
        Self::from_terms(
            rank,
            terms.iter().map(|(g, c)| {
                (
                    g.iter().map(|&x| Integer::from(x)).collect(),
                    Integer::from(*c),
                )
            }),
        )
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IntVector, &Integer)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &IntVector> {
        self.terms.keys()
    }

    pub fn coeff(&self, g: &[Integer]) -> Integer {
        self.terms.get(g).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, g: IntVector, c: Integer) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(g) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Applies the automorphism of `Z^m` given by an integer matrix to every
    /// group element.
    pub fn act(&self, sigma: &IntMatrix) -> Self {
        let mut out = Self::zero(self.rank);
        for (g, c) in &self.terms {
            let h = sigma.mul_vec(g).expect("automorphism matches the rank");
            out.add_term(h, c.clone());
        }
        out
    }

    /// The largest value of `xi` on the support.
    pub fn height(&self, xi: &[Rational]) -> Result<Rational, RingError> {
        if xi.len() != self.rank {
            return Err(RingError::RankMismatch {
                expected: self.rank,
                found: xi.len(),
            });
        }
        self.terms
            .keys()
            .map(|g| {
                g.iter()
                    .zip(xi)
                    .fold(Rational::zero(), |acc, (a, x)| acc + rat_from_int(a) * x)
            })
            .max()
            .ok_or(RingError::ZeroElement)
    }

    /// True when the support lies in `{xi_i(g) <= 0 for all i}`.
    pub fn in_cone_completion(&self, g: &FormFamily) -> bool {
        self.terms.keys().all(|x| g.cone_contains(x))
    }
}

impl fmt::Debug for GroupRingElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupRingElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(g, c)| {
                let idx: Vec<String> = g.iter().map(ToString::to_string).collect();
                format!("{c}*g({})", idx.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Coefficient for GroupRingElt {
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }

    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), c.clone());
        }
        out
    }

    fn times(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.rank);
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                let gh = g.iter().zip(h).map(|(x, y)| x + y).collect();
                out.add_term(gh, a * b);
            }
        }
        out
    }

    fn negated(&self) -> Self {
        GroupRingElt {
            rank: self.rank,
            terms: self.terms.iter().map(|(g, c)| (g.clone(), -c)).collect(),
        }
    }
}

/// An element rewritten in the dual basis of a unimodular family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCoordinates {
    /// `(coordinates, coefficient)` per support element; coordinate `i` is
    /// `-xi_i(g)`, the exponent of `t_i`.
    pub terms: Vec<(IntVector, Integer)>,
    /// Whether every coordinate is nonnegative, i.e. the element is a
    /// polynomial in `t_1, ..., t_k`.
    pub member: bool,
}

/// Rewrites each support element `g = sum c_i t_i` in the dual basis of
/// the family, where `c_i = -xi_i(g)`.
pub fn to_dual_coordinates(
    lam: &GroupRingElt,
    g: &FormFamily,
) -> Result<DualCoordinates, RingError> {
    if g.dim() != lam.rank() {
        return Err(RingError::RankMismatch {
            expected: g.dim(),
            found: lam.rank(),
        });
    }
    // rejects non-square and non-unimodular families
    dual_basis(g).map_err(|e| match e {
        ConeError::NonUnimodularFamily(d) => RingError::NonUnimodularFamily(d),
        other => RingError::Cone(other),
    })?;
    let terms: Vec<(IntVector, Integer)> = lam
        .terms()
        .map(|(x, c)| {
            let coords = g.forms().iter().map(|f| -dot_int(f, x)).collect();
            (coords, c.clone())
        })
        .collect();
    let member = terms
        .iter()
        .all(|(coords, _)| coords.iter().all(|c: &Integer| *c >= Integer::zero()));
    Ok(DualCoordinates { terms, member })
}

/// Height of a nonzero element: the largest value of `xi` on its support.
pub fn height(lam: &GroupRingElt, xi: &[Rational]) -> Result<Rational, RingError> {
    lam.height(xi)
}
