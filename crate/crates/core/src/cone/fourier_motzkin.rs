use std::collections::BTreeSet;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::arith::{clear_denominators, IntVector, Integer, Rational};

/// Finds an integer `x` with `a . x < 0` for every row `a`, by
/// Fourier-Motzkin elimination of the homogeneous strict system followed
/// by back substitution. `None` means the system is infeasible.
pub fn strict_feasibility_witness(rows: &[IntVector], dim: usize) -> Option<IntVector> {
    let mut current: BTreeSet<IntVector> = BTreeSet::new();
    for r in rows {
        if r.iter().all(Zero::is_zero) {
            return None; // 0 < 0
        }
        current.insert(primitive(r));
    }

    // levels[j] holds the system in the variables j.., before eliminating j
    let mut levels: Vec<Vec<IntVector>> = Vec::with_capacity(dim);
    for j in 0..dim {
        let system: Vec<IntVector> = current.iter().cloned().collect();
        let mut next = BTreeSet::new();
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for r in &system {
            match r[j].sign() {
                num_bigint::Sign::Plus => pos.push(r),
                num_bigint::Sign::Minus => neg.push(r),
                num_bigint::Sign::NoSign => {
                    next.insert(r.clone());
                }
            }
        }
        for p in &pos {
            for n in &neg {
                let a = -&n[j];
                let b = p[j].clone();
                let combo: IntVector = p
                    .iter()
                    .zip(n.iter())
                    .map(|(x, y)| &a * x + &b * y)
                    .collect();
                if combo.iter().all(Zero::is_zero) {
                    return None;
                }
                next.insert(primitive(&combo));
            }
        }
        levels.push(system);
        current = next;
    }
    debug_assert!(current.is_empty());

    let mut x = vec![Rational::zero(); dim];
    for j in (0..dim).rev() {
        let mut lower: Option<Rational> = None;
        let mut upper: Option<Rational> = None;
        for r in &levels[j] {
            if r[j].is_zero() {
                continue;
            }
            // r_j x_j < -sum_{l>j} r_l x_l
            let rest: Rational = (j + 1..dim).fold(Rational::zero(), |acc, l| {
                acc + Rational::from_integer(r[l].clone()) * &x[l]
            });
            let bound = -rest / Rational::from_integer(r[j].clone());
            if r[j].is_positive() {
                upper = Some(upper.map_or(bound.clone(), |u| u.min(bound)));
            } else {
                lower = Some(lower.map_or(bound.clone(), |l| l.max(bound)));
            }
        }
        x[j] = match (lower, upper) {
            (Some(l), Some(u)) => (l + u) / Rational::from_integer(2.into()),
            (Some(l), None) => l.floor() + Rational::one(),
            (None, Some(u)) => u.ceil() - Rational::one(),
            (None, None) => Rational::zero(),
        };
    }
    Some(clear_denominators(&x))
}

fn primitive(r: &[Integer]) -> IntVector {
    let g = r.iter().fold(Integer::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return r.to_vec();
    }
    r.iter().map(|x| x / &g).collect()
}
