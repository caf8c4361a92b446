use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::RationalForm;
use crate::arith::{format_rational, int, rat_from_int, Integer, Poly, Rational};

/// The real number `a + b sqrt(d)`, with `d` squarefree (up to a trial
/// division bound) or `b = 0, d = 0` for rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadSurd {
    a: Rational,
    b: Rational,
    d: Integer,
}

const TRIAL_LIMIT: u64 = 1 << 20;

fn split_square(n: &Integer) -> (Integer, Integer) {
    let mut square = Integer::one();
    let mut rest = n.clone();
    let mut p: u64 = 2;
    while p < TRIAL_LIMIT {
        let pp = int((p * p) as i64);
        if pp > rest {
            break;
        }
        while (&rest % &pp).is_zero() {
            rest /= &pp;
            square *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let r = rest.sqrt();
    if &r * &r == rest {
        square *= &r;
        rest = Integer::one();
    }
    (square, rest)
}

impl QuadSurd {
    /// `a + b sqrt(d)` for `d >= 0`.
    pub fn new(a: Rational, b: Rational, d: Integer) -> Self {
        assert!(!d.is_negative(), "square root of a negative number");
        if b.is_zero() || d.is_zero() {
            return QuadSurd::rational(a);
        }
        let (s, f) = split_square(&d);
        let b = b * rat_from_int(&s);
        if f.is_one() {
            return QuadSurd::rational(a + b);
        }
        QuadSurd { a, b, d: f }
    }

    pub fn rational(a: Rational) -> Self {
        QuadSurd {
            a,
            b: Rational::zero(),
            d: Integer::zero(),
        }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn d(&self) -> &Integer {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Sign of `b sqrt(d) - c`.
    fn sign_against(b: &Rational, d: &Integer, c: &Rational) -> Ordering {
        let left = b.cmp(&Rational::zero());
        let right = c.cmp(&Rational::zero());
        if b.is_zero() {
            return Rational::zero().cmp(c);
        }
        if left != right {
            return left;
        }
        let lhs = b * b * rat_from_int(d);
        let rhs = c * c;
        if left == Ordering::Greater {
            lhs.cmp(&rhs)
        } else {
            rhs.cmp(&lhs)
        }
    }

    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        Self::sign_against(&self.b, &self.d, &(r - &self.a))
    }

    fn same_field(&self, other: &Self) -> Option<Integer> {
        if self.is_rational() {
            Some(other.d.clone())
        } else if other.is_rational() || self.d == other.d {
            Some(self.d.clone())
        } else {
            None
        }
    }

    pub fn sub(&self, other: &Self) -> Option<Self> {
        let d = self.same_field(other)?;
        Some(QuadSurd::new(&self.a - &other.a, &self.b - &other.b, d))
    }

    pub fn mul(&self, other: &Self) -> Option<Self> {
        let d = self.same_field(other)?;
        let dq = rat_from_int(&d);
        Some(QuadSurd::new(
            &self.a * &other.a + &self.b * &other.b * &dq,
            &self.a * &other.b + &self.b * &other.a,
            d,
        ))
    }

    pub fn recip(&self) -> Option<Self> {
        let norm = &self.a * &self.a - &self.b * &self.b * rat_from_int(&self.d);
        if norm.is_zero() {
            return None;
        }
        Some(QuadSurd::new(
            &self.a / &norm,
            -(&self.b / &norm),
            self.d.clone(),
        ))
    }

    /// A rational interval of width at most `2^-bits * |b|` containing the value.
    pub fn enclosure_bits(&self, bits: u32) -> (Rational, Rational) {
        if self.is_rational() {
            return (self.a.clone(), self.a.clone());
        }
        let scale = Integer::one() << (2 * bits as usize);
        let s = (&self.d * scale).sqrt();
        let den = Integer::one() << bits as usize;
        let lo = Rational::new(s.clone(), den.clone());
        let hi = Rational::new(s + 1, den);
        let (x, y) = (&self.a + &self.b * lo, &self.a + &self.b * hi);
        if x <= y {
            (x, y)
        } else {
            (y, x)
        }
    }

    /// An enclosure of width at most `width`.
    pub fn enclosure(&self, width: &Rational) -> (Rational, Rational) {
        let mut bits = 8;
        loop {
            let (lo, hi) = self.enclosure_bits(bits);
            if &(&hi - &lo) <= width {
                return (lo, hi);
            }
            bits += 8;
        }
    }

    pub fn cmp_surd(&self, other: &Self) -> Ordering {
        if let Some(diff) = self.sub(other) {
            return diff.cmp_rational(&Rational::zero());
        }
        // distinct squarefree radicands: the values differ
        let mut bits = 16;
        loop {
            let (l1, h1) = self.enclosure_bits(bits);
            let (l2, h2) = other.enclosure_bits(bits);
            if h1 < l2 {
                return Ordering::Less;
            }
            if h2 < l1 {
                return Ordering::Greater;
            }
            bits += 16;
        }
    }

    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.enclosure_bits(64);
        ((lo + hi) / int(2)).to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", format_rational(&self.a));
        }
        let coef = |b: &Rational| {
            if b.abs().is_one() {
                String::new()
            } else {
                format!("{}*", format_rational(&b.abs()))
            }
        };
        let root = format!("{}sqrt({})", coef(&self.b), self.d);
        match (self.a.is_zero(), self.b.is_negative()) {
            (true, false) => write!(f, "{root}"),
            (true, true) => write!(f, "-{root}"),
            (false, false) => write!(f, "{} + {root}", format_rational(&self.a)),
            (false, true) => write!(f, "{} - {root}", format_rational(&self.a)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RadiusEstimate {
    /// `Q` is constant.
    Infinite,
    Exact(QuadSurd),
    /// `lo < radius <= hi`.
    Enclosure {
        lo: Rational,
        hi: Rational,
    },
}

impl RadiusEstimate {
    /// Rational bounds `lo <= radius <= hi`, `None` for an infinite radius.
    pub fn bounds(&self) -> Option<(Rational, Rational)> {
        match self {
            RadiusEstimate::Infinite => None,
            RadiusEstimate::Exact(s) => Some(s.enclosure(&Rational::new(int(1), int(10).pow(12)))),
            RadiusEstimate::Enclosure { lo, hi } => Some((lo.clone(), hi.clone())),
        }
    }

    pub fn approx(&self) -> f64 {
        match self {
            RadiusEstimate::Infinite => f64::INFINITY,
            RadiusEstimate::Exact(s) => s.to_f64(),
            RadiusEstimate::Enclosure { lo, hi } => {
                ((lo + hi) / int(2)).to_f64().unwrap_or(f64::NAN)
            }
        }
    }
}

/// Whether `Q` has no complex root `z` with `|z| <= r`, for `r > 0`, by the
/// Schur-Cohn recursion on the reversal of `Q(r z)`.
pub fn schur_cohn_no_roots_within(q: &Poly, r: &Rational) -> bool {
    let Some(n) = q.degree() else {
        return false;
    };
    if q.coeff(0).is_zero() {
        return false;
    }
    let mut power = Rational::one();
    let mut scaled = Vec::with_capacity(n + 1);
    for i in 0..=n {
        scaled.push(q.coeff(i) * &power);
        power *= r;
    }
    // roots of the reversal are the reciprocals of the roots of Q(r z)
    let mut a: Vec<Rational> = scaled.into_iter().rev().collect();
    while a.len() > 1 {
        let m = a.len() - 1;
        if a[0].abs() >= a[m].abs() {
            return false;
        }
        let next: Vec<Rational> = (0..m)
            .map(|i| &a[m] * &a[i + 1] - &a[0] * &a[m - 1 - i])
            .collect();
        a = next;
    }
    true
}

fn bisect_radius(q: &Poly, width: &Rational) -> (Rational, Rational) {
    let lead = q.lead().abs();
    let mut lo = Rational::zero();
    let mut hi = if lead >= Rational::one() {
        Rational::one()
    } else {
        lead.recip()
    };
    let two = Rational::from_integer(int(2));
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / &two;
        if schur_cohn_no_roots_within(q, &mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Smallest modulus of a complex root of `Q`.
pub fn convergence_radius(f: &RationalForm) -> RadiusEstimate {
    let q = f.q_poly();
    match q.degree() {
        None | Some(0) => RadiusEstimate::Infinite,
        Some(1) => RadiusEstimate::Exact(QuadSurd::rational(q.coeff(1).abs().recip())),
        Some(2) => {
            // Q = 1 + b t + c t^2
            let (b, c) = (q.coeff(1), q.coeff(2));
            let disc = &b * &b - &c * int(4);
            let two_c = (&c * int(2)).abs();
            let num = disc.numer() * disc.denom();
            let root_scale = disc.denom().clone();
            if disc.is_negative() {
                // conjugate pair, |z|^2 = 1 / c
                let c_int = c.numer() * c.denom();
                let inv = Rational::new(int(1), c.numer().clone() * c.denom());
                return RadiusEstimate::Exact(QuadSurd::new(Rational::zero(), inv, c_int));
            }
            // min |(-b +- sqrt(disc)) / 2c| = | |b| - sqrt(disc) | / |2c|
            let unit = Rational::new(int(1), root_scale) / &two_c;
            let babs = b.abs() / &two_c;
            let s = QuadSurd::new(babs.clone(), -unit.clone(), num.clone());
            let s = if s.cmp_rational(&Rational::zero()) == Ordering::Less {
                QuadSurd::new(-babs, unit, num)
            } else {
                s
            };
            RadiusEstimate::Exact(s)
        }
        Some(_) => {
            let (lo, hi) = bisect_radius(&q, &Rational::new(int(1), int(10).pow(12)));
            RadiusEstimate::Enclosure { lo, hi }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn form(p: &[i64], q: &[i64]) -> RationalForm {
        let ints = |xs: &[i64]| xs.iter().map(|&x| int(x)).collect();
        RationalForm::new(ints(p), ints(q)).unwrap()
    }

    #[test]
    fn simple_radii() {
        assert_eq!(
            convergence_radius(&form(&[1], &[1, -2])),
            RadiusEstimate::Exact(QuadSurd::rational(rat(1, 2)))
        );
        assert_eq!(
            convergence_radius(&form(&[1, 2, 3], &[1])),
            RadiusEstimate::Infinite
        );
        let r = convergence_radius(&form(&[1], &[1, -3, 1]));
        let want = QuadSurd::new(rat(3, 2), rat(-1, 2), int(5));
        assert_eq!(r, RadiusEstimate::Exact(want.clone()));
        assert!((r.approx() - 0.381_966_011_250_105_1).abs() < 1e-15);
        assert_eq!(want.to_string(), "3/2 - 1/2*sqrt(5)");
    }

    #[test]
    fn quadratic_cases() {
        // (1 - t)(1 - 4t): roots 1 and 1/4
        let r = convergence_radius(&form(&[1], &[1, -5, 4]));
        assert_eq!(r, RadiusEstimate::Exact(QuadSurd::rational(rat(1, 4))));
        // 1 + t^2/... : 1 + 4 t^2 has roots +-i/2
        let r = convergence_radius(&form(&[1], &[1, 0, 4]));
        assert_eq!(r, RadiusEstimate::Exact(QuadSurd::rational(rat(1, 2))));
        // 1 + t + t^2: primitive cube roots of unity
        let r = convergence_radius(&form(&[1], &[1, 1, 1]));
        assert_eq!(r, RadiusEstimate::Exact(QuadSurd::rational(rat(1, 1))));
        // 1 + 2 t^2: |z| = 1/sqrt(2)
        let r = convergence_radius(&form(&[1], &[1, 0, 2]));
        assert_eq!(
            r,
            RadiusEstimate::Exact(QuadSurd::new(rat(0, 1), rat(1, 2), int(2)))
        );
        // 1 - 2t - t^2: roots -1 +- sqrt(2), min modulus sqrt(2) - 1
        let r = convergence_radius(&form(&[1], &[1, -2, -1]));
        assert_eq!(
            r,
            RadiusEstimate::Exact(QuadSurd::new(rat(-1, 1), rat(1, 1), int(2)))
        );
    }

    #[test]
    fn surd_arithmetic() {
        let a = QuadSurd::new(rat(3, 2), rat(1, 2), int(5));
        let b = a.recip().unwrap();
        assert_eq!(b, QuadSurd::new(rat(3, 2), rat(-1, 2), int(5)));
        assert_eq!(a.mul(&b).unwrap(), QuadSurd::rational(rat(1, 1)));
        assert_eq!(
            QuadSurd::new(rat(0, 1), rat(1, 1), int(12)),
            QuadSurd::new(rat(0, 1), rat(2, 1), int(3))
        );
        assert_eq!(
            QuadSurd::new(rat(1, 1), rat(1, 1), int(9)),
            QuadSurd::rational(rat(4, 1))
        );
        let sqrt2 = QuadSurd::new(rat(0, 1), rat(1, 1), int(2));
        let sqrt3 = QuadSurd::new(rat(0, 1), rat(1, 1), int(3));
        assert_eq!(sqrt2.cmp_surd(&sqrt3), Ordering::Less);
        assert_eq!(sqrt2.cmp_rational(&rat(141, 100)), Ordering::Greater);
        assert_eq!(sqrt2.cmp_rational(&rat(142, 100)), Ordering::Less);
        let neg = QuadSurd::new(rat(1, 1), rat(-1, 1), int(2));
        assert_eq!(neg.cmp_rational(&Rational::zero()), Ordering::Less);
        assert_eq!(neg.cmp_rational(&rat(-1, 2)), Ordering::Greater);
        let (lo, hi) = sqrt2.enclosure(&rat(1, 1_000_000));
        assert!(&lo * &lo <= rat(2, 1) && &hi * &hi >= rat(2, 1));
    }

    #[test]
    fn schur_cohn_on_known_roots() {
        // roots 2 and 3
        let q = Poly::from_ints(&[6, -5, 1]);
        assert!(schur_cohn_no_roots_within(&q, &rat(19, 10)));
        assert!(!schur_cohn_no_roots_within(&q, &rat(2, 1)));
        assert!(!schur_cohn_no_roots_within(&q, &rat(21, 10)));
        // roots +-2i
        let q = Poly::from_ints(&[4, 0, 1]);
        assert!(schur_cohn_no_roots_within(&q, &rat(199, 100)));
        assert!(!schur_cohn_no_roots_within(&q, &rat(201, 100)));
    }

    #[test]
    fn bisection_matches_exact_roots() {
        // (1 - 2t)(1 + 3t)(1 + t + t^2): smallest root modulus 1/3
        let p = Poly::from_ints(&[1, -2]) * Poly::from_ints(&[1, 3]) * Poly::from_ints(&[1, 1, 1]);
        let f = RationalForm::new(vec![int(1)], p.integer_coeffs().unwrap()).unwrap();
        let RadiusEstimate::Enclosure { lo, hi } = convergence_radius(&f) else {
            panic!("degree four uses an enclosure");
        };
        assert!(lo < rat(1, 3) && rat(1, 3) <= hi);
        assert!(&hi - &lo <= rat(1, 1_000_000_000_000));
        // complex pair dominates: (1 + 9 t^2)(1 - t)(1 - 2t), radius 1/3
        let p = Poly::from_ints(&[1, 0, 9]) * Poly::from_ints(&[1, -1]) * Poly::from_ints(&[1, -2]);
        let f = RationalForm::new(vec![int(1)], p.integer_coeffs().unwrap()).unwrap();
        let (lo, hi) = convergence_radius(&f).bounds().unwrap();
        assert!(lo < rat(1, 3) && rat(1, 3) <= hi);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]
            #[test]
            fn enclosure_brackets_smallest_linear_factor(
                roots in proptest::collection::vec((1i64..6, prop_oneof![Just(-1i64), Just(1i64)]), 3..5)
            ) {
                // Q = prod (1 - s t / k): roots s k, smallest modulus min k
                let mut q = Poly::from_ints(&[1]);
                let mut scale = int(1);
                for (k, _) in &roots {
                    scale *= int(*k);
                }
                for (k, s) in &roots {
                    q = q * Poly::new(vec![rat(1, 1), rat(-s, *k)]);
                }
                let q = q.scale(&rat_from_int(&scale));
                let q = q.scale(&q.coeff(0).recip());
                let smallest = roots.iter().map(|(k, _)| *k).min().unwrap();
                let bounds = bisect_radius(&q, &rat(1, 1_000_000_000_000));
                prop_assert!(bounds.0 < rat(smallest, 1) && rat(smallest, 1) <= bounds.1);
            }
        }
    }
}
