use std::collections::BTreeMap;

use num_traits::One;

use super::{Coefficient, RingError};
use crate::arith::{Integer, RatMatrix, RatVector, Rational};

pub type Exponent = Vec<u32>;

/// Whether `t^I` lies in the ideal generated by `t_1^n ... t_k^n`.
pub fn in_ideal(index: &[u32], order: u32) -> bool {
    index.iter().all(|&i| i >= order)
}

/// Element of the quotient of the special power series ring by the ideal
/// of monomials with every exponent `>= n`. Stored as a finite map on the
/// basis `S_n = {I : some i_j <= n - 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries<C> {
    vars: usize,
    order: u32,
    terms: BTreeMap<Exponent, C>,
}

impl<C: Coefficient> TruncatedSeries<C> {
    pub fn zero(vars: usize, order: u32) -> Self {
        TruncatedSeries {
            vars,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(vars: usize, order: u32, index: Exponent, c: C) -> Result<Self, RingError> {
        Self::from_terms(vars, order, [(index, c)])
    }

    /// Sums the given terms, dropping those in the ideal.
    pub fn from_terms(
        vars: usize,
        order: u32,
        terms: impl IntoIterator<Item = (Exponent, C)>,
    ) -> Result<Self, RingError> {
        if order == 0 {
            return Err(RingError::ZeroOrder);
        }
        let mut out = Self::zero(vars, order);
        for (index, c) in terms {
            if index.len() != vars {
                return Err(RingError::RankMismatch {
                    expected: vars,
                    found: index.len(),
                });
            }
            out.add_term(index, c);
        }
        Ok(out)
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, index: &[u32]) -> Option<&C> {
        self.terms.get(index)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, index: Exponent, c: C) {
        if c.vanishes() || in_ideal(&index, self.order) {
            return;
        }
        match self.terms.entry(index) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().plus(&c);
                if sum.vanishes() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub(crate) fn check_compatible(&self, other: &Self) -> Result<(), RingError> {
        if self.order != other.order {
            return Err(RingError::OrderMismatch(self.order, other.order));
        }
        if self.vars != other.vars {
            return Err(RingError::RankMismatch {
                expected: self.vars,
                found: other.vars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (i, c) in &other.terms {
            out.add_term(i.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            vars: self.vars,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(i, c)| (i.clone(), c.negated()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RingError> {
        self.add(&other.neg())
    }

    /// Product where the coefficient of `t^I * t^J` is `term(I, a, J, b)`.
    pub(crate) fn mul_with(
        &self,
        other: &Self,
        mut term: impl FnMut(&[u32], &C, &[u32], &C) -> Result<C, RingError>,
    ) -> Result<Self, RingError> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.vars, self.order);
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                let ij = add_exponents(i, j)?;
                if in_ideal(&ij, self.order) {
                    continue;
                }
                let c = term(i, a, j, b)?;
                out.add_term(ij, c);
            }
        }
        Ok(out)
    }

    /// Projection to the quotient by `t_i^n` alone: keeps the monomials
    /// whose `i`-th exponent is below the order.
    pub fn j_n_project(&self, i: usize) -> Result<Projection<C>, RingError> {
        if i >= self.vars {
            return Err(RingError::VariableOutOfRange(i, self.vars));
        }
        let terms = self
            .terms
            .iter()
            .filter(|(index, _)| index[i] < self.order)
            .map(|(index, c)| (index.clone(), c.clone()))
            .collect();
        Ok(Projection {
            var: i,
            order: self.order,
            terms,
        })
    }
}

/// Image of a truncated series in the quotient by `t_i^n`: a polynomial in
/// `t_i` of degree `< n` whose coefficients are polynomials in the other
/// variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection<C> {
    pub var: usize,
    pub order: u32,
    pub terms: BTreeMap<Exponent, C>,
}

impl<C: Coefficient> Projection<C> {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of `t_i^p`, as a map on the remaining exponents.
    pub fn coefficient_of(&self, p: u32) -> BTreeMap<Exponent, C> {
        self.terms
            .iter()
            .filter(|(index, _)| index[self.var] == p)
            .map(|(index, c)| {
                let mut rest = index.clone();
                rest.remove(self.var);
                (rest, c.clone())
            })
            .collect()
    }
}

fn add_exponents(a: &[u32], b: &[u32]) -> Result<Exponent, RingError> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_add(*y).ok_or(RingError::Overflow))
        .collect()
}

/// Reduces a polynomial in `t_1, ..., t_k` modulo the ideal of monomials
/// with every exponent `>= n`. Negative exponents are rejected.
pub fn reduce_mod_ideal<C: Coefficient>(
    vars: usize,
    terms: impl IntoIterator<Item = (Vec<i64>, C)>,
    order: u32,
) -> Result<TruncatedSeries<C>, RingError> {
    let mut converted = Vec::new();
    for (index, c) in terms {
        let e: Result<Exponent, _> = index
            .iter()
            .map(|&x| u32::try_from(x).map_err(|_| RingError::NegativeIndex(index.clone())))
            .collect();
        converted.push((e?, c));
    }
    TruncatedSeries::from_terms(vars, order, converted)
}

/// Kernel of the assembled projection map `x -> (j_n x restricted to t_i)_i`
/// on the span of the given monomials of `S_n`, as a basis over `Q`.
pub fn projection_kernel(
    vars: usize,
    order: u32,
    support: &[Exponent],
) -> Result<Vec<RatVector>, RingError> {
    let mut rows: Vec<(usize, Exponent)> = Vec::new();
    let mut columns: Vec<Vec<(usize, Integer)>> = Vec::with_capacity(support.len());
    for index in support {
        let x = TruncatedSeries::monomial(vars, order, index.clone(), Integer::one())?;
        let mut col = Vec::new();
        for i in 0..vars {
            for (idx, c) in x.j_n_project(i)?.terms {
                let key = (i, idx);
                let r = match rows.iter().position(|k| *k == key) {
                    Some(r) => r,
                    None => {
                        rows.push(key);
                        rows.len() - 1
                    }
                };
                col.push((r, c));
            }
        }
        columns.push(col);
    }
    let mut m = RatMatrix::zeros(rows.len(), support.len());
    for (c, col) in columns.into_iter().enumerate() {
        for (r, v) in col {
            m.set(r, c, Rational::from_integer(v));
        }
    }
    Ok(m.nullspace())
}

/// Commutative product in the truncated ring.
pub fn mul_truncated<C: Coefficient>(
    a: &TruncatedSeries<C>,
    b: &TruncatedSeries<C>,
) -> Result<TruncatedSeries<C>, RingError> {
    a.mul_with(b, |_, x, _, y| Ok(x.times(y)))
}
