use num_traits::{One, Zero};

use super::IncidenceSeries;
use crate::arith::{rat_from_int, Integer, Poly, Rational};

/// `P / Q` with `P, Q` integral and `Q(0) = 1`, coefficients little-endian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalForm {
    pub p: Vec<Integer>,
    pub q: Vec<Integer>,
}

impl RationalForm {
    pub fn new(p: Vec<Integer>, q: Vec<Integer>) -> Option<Self> {
        let p = trim(p);
        let q = trim(q);
        if q.first().is_none_or(|c| !c.is_one()) {
            return None;
        }
        Some(RationalForm { p, q })
    }

    pub fn p_poly(&self) -> Poly {
        Poly::from_integers(&self.p)
    }

    pub fn q_poly(&self) -> Poly {
        Poly::from_integers(&self.q)
    }

    /// The first `n` coefficients of the power series `P / Q`.
    pub fn expand(&self, n: usize) -> Vec<Integer> {
        let mut out: Vec<Integer> = Vec::with_capacity(n);
        for i in 0..n {
            // Q(0) = 1, so s_i = p_i - sum_{j >= 1} q_j s_{i-j}
            let mut s = self.p.get(i).cloned().unwrap_or_default();
            for (j, qj) in self.q.iter().enumerate().skip(1).take(i) {
                s -= qj * &out[i - j];
            }
            out.push(s);
        }
        out
    }
}

fn trim(mut v: Vec<Integer>) -> Vec<Integer> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

/// Shortest linear recurrence of the sequence over `Q`, as the connection
/// polynomial `C` (with `C(0) = 1`) and the linear complexity `L`.
pub fn berlekamp_massey(s: &[Rational]) -> (Vec<Rational>, usize) {
    let mut c = vec![Rational::one()];
    let mut b = vec![Rational::one()];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut last = Rational::one();
    for n in 0..s.len() {
        let mut d = s[n].clone();
        for i in 1..=l.min(c.len() - 1) {
            d += &c[i] * &s[n - i];
        }
        if d.is_zero() {
            m += 1;
            continue;
        }
        let coef = &d / &last;
        let prev = c.clone();
        if c.len() < b.len() + m {
            c.resize(b.len() + m, Rational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            c[i + m] -= &coef * bi;
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = prev;
            last = d;
            m = 1;
        } else {
            m += 1;
        }
    }
    c.truncate(l + 1);
    while c.len() > 1 && c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    (c, l)
}

/// Finds `P / Q` reproducing the whole prefix, accepted only when the
/// prefix has at least `2 L + 2` terms for the linear complexity `L`.
pub fn detect_rational(s: &IncidenceSeries) -> Option<RationalForm> {
    let coeffs = s.coefficients();
    if coeffs.len() < 4 {
        return None;
    }
    let seq: Vec<Rational> = coeffs.iter().map(rat_from_int).collect();
    let (c, l) = berlekamp_massey(&seq);
    if coeffs.len() < 2 * l + 2 {
        return None;
    }
    let q = Poly::new(c);
    let p = (Poly::new(seq.clone()) * q.clone()).truncate(l.max(1));
    let g = Poly::gcd(&p, &q);
    let (p, q) = if g.is_zero() || g.degree() == Some(0) {
        (p, q)
    } else {
        (p.div_rem(&g).0, q.div_rem(&g).0)
    };
    let q0 = q.coeff(0);
    if q0.is_zero() {
        return None;
    }
    let (p, q) = (p.scale(&q0.recip()), q.scale(&q0.recip()));
    let form = RationalForm::new(p.integer_coeffs()?, q.integer_coeffs()?)?;
    (form.expand(coeffs.len()) == coeffs).then_some(form)
}
