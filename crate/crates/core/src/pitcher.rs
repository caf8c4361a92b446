//! Pitcher invariants of a free complex over `Q[t]`.
//!
//! Each homology module splits as `Q[t]^a + sum Q[t]/t^{n_i} + sum Q[t]/A_i`
//! with `A_i(0) != 0`. With `c` the number of `t`-primary summands,
//! `R = a + c`, `S = c` and `Q = R - S = a`, the rank over `Q(t)`.

use num_traits::One;
use thiserror::Error;

use crate::arith::{smith_normal_form, Euclidean, Poly, PolyMatrix};
use crate::complex::{ComplexError, FreeComplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PitcherError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

/// Canonical decomposition of a finitely generated `Q[t]`-module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleDecomposition {
    pub free_rank: usize,
    /// Exponents `n_i >= 1` of the summands `Q[t]/t^{n_i}`, ascending.
    pub t_torsion: Vec<usize>,
    /// Monic `A_i` with `A_i(0) != 0`, each dividing the next.
    pub coprime_torsion: Vec<Poly>,
}

impl ModuleDecomposition {
    /// Invariant factors of the module, rebuilt from the summands.
    pub fn invariant_factors(&self) -> Vec<Poly> {
        let c = self.t_torsion.len();
        let d = self.coprime_torsion.len();
        let len = c.max(d);
        (0..len)
            .map(|i| {
                let tp = (i + c)
                    .checked_sub(len)
                    .map_or(Poly::one(), |j| Poly::t().pow(self.t_torsion[j] as u32));
                let gp = (i + d)
                    .checked_sub(len)
                    .map_or(Poly::one(), |j| self.coprime_torsion[j].clone());
                tp * gp
            })
            .collect()
    }

    /// A diagonal presentation of the same module.
    pub fn presentation(&self) -> PolyMatrix {
        let factors = self.invariant_factors();
        let rows = factors.len() + self.free_rank;
        let mut m = PolyMatrix::zeros(rows, factors.len());
        for (i, f) in factors.into_iter().enumerate() {
            m.set(i, i, f);
        }
        m
    }
}

/// Decomposes the cokernel of `presentation` (generators are rows).
pub fn decompose_module(presentation: &PolyMatrix) -> ModuleDecomposition {
    let s = smith_normal_form(presentation);
    let mut t_torsion = Vec::new();
    let mut coprime_torsion = Vec::new();
    for f in s.invariant_factors() {
        if f.is_unit() {
            continue;
        }
        let m = f.t_adic_valuation().expect("invariant factors are nonzero");
        if m > 0 {
            t_torsion.push(m);
        }
        let g = f.shift_down(m).monic();
        if !g.is_constant() {
            coprime_torsion.push(g);
        }
    }
    ModuleDecomposition {
        free_rank: presentation.rows() - s.rank,
        t_torsion,
        coprime_torsion,
    }
}

/// Decomposition of every homology module of `c`.
pub fn homology_modules(c: &FreeComplex) -> Result<Vec<ModuleDecomposition>, PitcherError> {
    (0..=c.top())
        .map(|r| Ok(decompose_module(&c.homology_presentation(r)?)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PitcherNumbers {
    pub r: Vec<usize>,
    pub s: Vec<usize>,
    pub q: Vec<usize>,
}

pub fn pitcher_numbers(decomps: &[ModuleDecomposition]) -> PitcherNumbers {
    let a: Vec<usize> = decomps.iter().map(|d| d.free_rank).collect();
    let c: Vec<usize> = decomps.iter().map(|d| d.t_torsion.len()).collect();
    PitcherNumbers {
        r: a.iter().zip(&c).map(|(a, c)| a + c).collect(),
        s: c,
        q: a,
    }
}

/// Ranks of homology over the fraction field `Q(t)`, checked against the
/// free ranks of the homology modules.
pub fn novikov_betti(c: &FreeComplex) -> Result<Vec<usize>, PitcherError> {
    c.require_valid()?;
    let ranks: Vec<usize> = (0..=c.top() + 1).map(|r| c.boundary(r).rank()).collect();
    let b: Vec<usize> = (0..=c.top())
        .map(|r| c.rank(r) - ranks[r] - ranks[r + 1])
        .collect();
    let q = pitcher_numbers(&homology_modules(c)?).q;
    if b != q {
        return Err(PitcherError::Inconsistent(format!(
            "rank over Q(t) {b:?} differs from free ranks {q:?}"
        )));
    }
    Ok(b)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeBetti {
    pub beta: Vec<usize>,
    /// Per degree, whether `beta_k = R_k + S_{k-1}`.
    pub identity_holds: Vec<bool>,
}

/// `beta_k = dim_Q H_k(C / tC)`, computed from the mapping cone of
/// multiplication by `t`, with the per-degree check against `R_k + S_{k-1}`.
pub fn relative_betti(c: &FreeComplex) -> Result<RelativeBetti, PitcherError> {
    let cone = c.scalar_map(&Poly::t()).mapping_cone();
    let homology = cone.homology_poly()?;
    let mut beta = Vec::with_capacity(c.top() + 1);
    for (k, h) in homology.iter().enumerate().take(c.top() + 1) {
        if h.free_rank != 0 {
            return Err(PitcherError::Inconsistent(format!(
                "cone of t has free homology in degree {k}"
            )));
        }
        beta.push(h.torsion.iter().map(|f| f.degree().unwrap_or(0)).sum());
    }
    if homology.iter().skip(c.top() + 1).any(|h| !h.is_zero()) {
        return Err(PitcherError::Inconsistent(
            "cone of t has homology above the top degree".into(),
        ));
    }
    let n = pitcher_numbers(&homology_modules(c)?);
    let identity_holds = (0..beta.len())
        .map(|k| beta[k] == n.r[k] + if k > 0 { n.s[k - 1] } else { 0 })
        .collect();
    Ok(RelativeBetti {
        beta,
        identity_holds,
    })
}

/// `dim_Q` of the cokernel of a presentation after setting `t = 0`.
pub fn cokernel_dim_at_zero(presentation: &PolyMatrix) -> usize {
    let at_zero = presentation.map(|p| p.coeff(0)).rank_q();
    presentation.rows() - at_zero
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InequalityFamily {
    /// `M_k - M_{k-1} + ... >= Q_k - Q_{k-1} + ...`
    Pitcher,
    /// `M_k - M_{k-1} + ... >= beta_k - beta_{k-1} + ...`
    Morse,
    /// `M_k >= Q_k`
    TorsionFreeNovikov,
    /// `M_k >= beta_k`
    MorseOverRelative,
    /// `beta_k >= R_k`
    RelativeOverR,
    /// `R_k >= Q_k`
    ROverQ,
    /// `sum (-1)^k M_k = sum (-1)^k beta_k`
    EulerCharacteristic,
}

impl InequalityFamily {
    pub fn name(&self) -> &'static str {
        match self {
            InequalityFamily::Pitcher => "pitcher",
            InequalityFamily::Morse => "morse",
            InequalityFamily::TorsionFreeNovikov => "torsion_free_novikov",
            InequalityFamily::MorseOverRelative => "M>=beta",
            InequalityFamily::RelativeOverR => "beta>=R",
            InequalityFamily::ROverQ => "R>=Q",
            InequalityFamily::EulerCharacteristic => "euler_characteristic",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub family: InequalityFamily,
    /// `None` for whole-complex checks.
    pub degree: Option<usize>,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PitcherReport {
    pub morse: Vec<usize>,
    pub beta: Vec<usize>,
    pub numbers: PitcherNumbers,
    pub verdicts: Vec<Verdict>,
}

impl PitcherReport {
    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| !v.holds)
    }

    /// Whether the stored verdicts agree with the stored numbers.
    pub fn is_consistent(&self) -> bool {
        evaluate(&self.morse, &self.beta, &self.numbers) == self.verdicts
    }
}

fn at(v: &[usize], k: usize) -> i64 {
    v.get(k).copied().unwrap_or(0) as i64
}

fn alternating(v: &[usize], k: usize) -> i64 {
    (0..=k)
        .map(|j| {
            if (k - j).is_multiple_of(2) {
                at(v, j)
            } else {
                -at(v, j)
            }
        })
        .sum()
}

fn evaluate(morse: &[usize], beta: &[usize], n: &PitcherNumbers) -> Vec<Verdict> {
    let top = morse.len().max(beta.len()).max(n.q.len());
    let mut out = Vec::new();
    let mut push = |family, degree, lhs: i64, rhs: i64, holds: bool| {
        out.push(Verdict {
            family,
            degree,
            lhs,
            rhs,
            holds,
        })
    };
    for k in 0..top {
        let m = alternating(morse, k);
        let q = alternating(&n.q, k);
        push(InequalityFamily::Pitcher, Some(k), m, q, m >= q);
    }
    for k in 0..top {
        let m = alternating(morse, k);
        let b = alternating(beta, k);
        push(InequalityFamily::Morse, Some(k), m, b, m >= b);
    }
    for k in 0..top {
        let (m, q) = (at(morse, k), at(&n.q, k));
        push(InequalityFamily::TorsionFreeNovikov, Some(k), m, q, m >= q);
    }
    for k in 0..top {
        let (m, b) = (at(morse, k), at(beta, k));
        push(InequalityFamily::MorseOverRelative, Some(k), m, b, m >= b);
    }
    for k in 0..top {
        let (b, r) = (at(beta, k), at(&n.r, k));
        push(InequalityFamily::RelativeOverR, Some(k), b, r, b >= r);
    }
    for k in 0..top {
        let (r, q) = (at(&n.r, k), at(&n.q, k));
        push(InequalityFamily::ROverQ, Some(k), r, q, r >= q);
    }
    let euler = |v: &[usize]| -> i64 {
        (0..top)
            .map(|k| if k % 2 == 0 { at(v, k) } else { -at(v, k) })
            .sum()
    };
    let (em, eb) = (euler(morse), euler(beta));
    push(
        InequalityFamily::EulerCharacteristic,
        None,
        em,
        eb,
        em == eb,
    );
    out
}

/// Evaluates every inequality family for Morse counts `morse` against the
/// invariants of `c`.
pub fn inequality_report(morse: &[usize], c: &FreeComplex) -> Result<PitcherReport, PitcherError> {
    let numbers = pitcher_numbers(&homology_modules(c)?);
    let rel = relative_betti(c)?;
    if let Some(k) = rel.identity_holds.iter().position(|ok| !ok) {
        return Err(PitcherError::Inconsistent(format!(
            "beta_{k} differs from R_{k} + S_{}",
            k as i64 - 1
        )));
    }
    novikov_betti(c)?;
    let verdicts = evaluate(morse, &rel.beta, &numbers);
    Ok(PitcherReport {
        morse: morse.to_vec(),
        beta: rel.beta,
        numbers,
        verdicts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{BaseRing, CollapsibleSummand};

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn pm(rows: &[&[&[i64]]]) -> PolyMatrix {
        PolyMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|c| p(c)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn half_line() -> FreeComplex {
        FreeComplex::new(BaseRing::Polynomials, vec![1, 1], vec![pm(&[&[&[1, -1]]])]).unwrap()
    }

    #[test]
    fn decompose_examples() {
        let m = pm(&[&[&[0, 0, 1], &[0]], &[&[0], &[-1, 1]], &[&[0], &[0]]]);
        let d = decompose_module(&m);
        assert_eq!(d.free_rank, 1);
        assert_eq!(d.t_torsion, vec![2]);
        assert_eq!(d.coprime_torsion, vec![p(&[-1, 1])]);
        let n = pitcher_numbers(&[d]);
        assert_eq!((n.r[0], n.s[0], n.q[0]), (2, 1, 1));

        let d = decompose_module(&PolyMatrix::zeros(3, 2));
        assert_eq!(d.free_rank, 3);
        assert!(d.t_torsion.is_empty() && d.coprime_torsion.is_empty());

        let d = decompose_module(&pm(&[&[&[0, -1, 1]]]));
        assert_eq!(d.free_rank, 0);
        assert_eq!(d.t_torsion, vec![1]);
        assert_eq!(d.coprime_torsion, vec![p(&[-1, 1])]);
    }

    #[test]
    fn pitcher_numbers_of_simple_modules() {
        let free = decompose_module(&PolyMatrix::zeros(4, 0));
        let n = pitcher_numbers(&[free]);
        assert_eq!((n.r[0], n.s[0], n.q[0]), (4, 0, 4));
        let coprime = decompose_module(&pm(&[&[&[2, 0, 1]]]));
        let n = pitcher_numbers(&[coprime]);
        assert_eq!((n.r[0], n.s[0], n.q[0]), (0, 0, 0));
    }

    #[test]
    fn decomposition_round_trip() {
        let m = pm(&[
            &[&[0, 0, 1], &[0, 1], &[0]],
            &[&[0], &[0, -1, 1], &[0]],
            &[&[1, 1], &[0], &[0]],
            &[&[0], &[0], &[0]],
        ]);
        let d = decompose_module(&m);
        let original = smith_normal_form(&m).invariant_factors();
        let nonunit: Vec<Poly> = original.into_iter().filter(|f| !f.is_unit()).collect();
        assert_eq!(d.invariant_factors(), nonunit);
        assert_eq!(decompose_module(&d.presentation()), d);
    }

    #[test]
    fn homology_module_examples() {
        let h = homology_modules(&half_line()).unwrap();
        assert_eq!(h[0].free_rank, 0);
        assert_eq!(h[0].coprime_torsion, vec![p(&[-1, 1])]);
        assert_eq!(h[1].free_rank, 0);

        let z = FreeComplex::zero(BaseRing::Polynomials, vec![2, 1]).unwrap();
        let h = homology_modules(&z).unwrap();
        assert_eq!((h[0].free_rank, h[1].free_rank), (2, 1));

        let c =
            FreeComplex::new(BaseRing::Polynomials, vec![1, 1], vec![pm(&[&[&[0, 1]]])]).unwrap();
        let h = homology_modules(&c).unwrap();
        assert_eq!(h[0].t_torsion, vec![1]);
    }

    #[test]
    fn novikov_betti_examples() {
        assert_eq!(novikov_betti(&half_line()).unwrap(), vec![0, 0]);
        let z = FreeComplex::zero(BaseRing::Polynomials, vec![2, 1]).unwrap();
        assert_eq!(novikov_betti(&z).unwrap(), vec![2, 1]);
        // zero map plus torsion: Q[t] -0-> Q[t] next to Q[t] -t(t-1)-> Q[t]
        let c = FreeComplex::new(
            BaseRing::Polynomials,
            vec![2, 2],
            vec![pm(&[&[&[0], &[0]], &[&[0], &[0, -1, 1]]])],
        )
        .unwrap();
        assert_eq!(novikov_betti(&c).unwrap(), vec![1, 1]);
    }

    #[test]
    fn relative_betti_examples() {
        let r = relative_betti(&half_line()).unwrap();
        assert_eq!(r.beta, vec![0, 0]);
        assert!(r.identity_holds.iter().all(|&x| x));

        let z = FreeComplex::zero(BaseRing::Polynomials, vec![1]).unwrap();
        assert_eq!(relative_betti(&z).unwrap().beta, vec![1]);

        let c = FreeComplex::new(
            BaseRing::Polynomials,
            vec![1, 1],
            vec![pm(&[&[&[0, 0, 1]]])],
        )
        .unwrap();
        let r = relative_betti(&c).unwrap();
        // H_0 = Q[t]/t^2 gives R_0 = 1; beta_1 = R_1 + S_0 = 0 + 1
        assert_eq!(r.beta, vec![1, 1]);
        assert!(r.identity_holds.iter().all(|&x| x));
    }

    #[test]
    fn r_matches_cokernel_at_zero() {
        let c = FreeComplex::new(
            BaseRing::Polynomials,
            vec![2, 2],
            vec![pm(&[&[&[0, 0, 1], &[0]], &[&[0], &[3, 1]]])],
        )
        .unwrap();
        let n = pitcher_numbers(&homology_modules(&c).unwrap());
        for k in 0..=c.top() {
            assert_eq!(
                cokernel_dim_at_zero(&c.homology_presentation(k).unwrap()),
                n.r[k]
            );
        }
    }

    #[test]
    fn report_examples() {
        let r = inequality_report(
            &[1, 2, 1],
            &FreeComplex::zero(BaseRing::Polynomials, vec![0, 0, 0]).unwrap(),
        )
        .unwrap();
        assert!(r
            .verdicts
            .iter()
            .filter(|v| v.family != InequalityFamily::EulerCharacteristic)
            .all(|v| v.holds));
        assert!(r.is_consistent());

        let c = FreeComplex::zero(BaseRing::Polynomials, vec![0, 1]).unwrap();
        let r = inequality_report(&[0, 0], &c).unwrap();
        let pitcher_1 = r
            .verdicts
            .iter()
            .find(|v| v.family == InequalityFamily::Pitcher && v.degree == Some(1))
            .unwrap();
        assert!(!pitcher_1.holds);
        assert_eq!((pitcher_1.lhs, pitcher_1.rhs), (0, 1));
    }

    #[test]
    fn euler_characteristic_flag() {
        let c = half_line();
        let ok = inequality_report(&[1, 1], &c).unwrap();
        assert!(ok.all_hold());
        let bad = inequality_report(&[1, 0], &c).unwrap();
        let euler = bad
            .verdicts
            .iter()
            .find(|v| v.family == InequalityFamily::EulerCharacteristic)
            .unwrap();
        assert!(!euler.holds);
    }

    #[test]
    fn collapsible_summand_changes_nothing() {
        let c = FreeComplex::new(
            BaseRing::Polynomials,
            vec![1, 2, 1],
            vec![pm(&[&[&[0, 1], &[0]]]), pm(&[&[&[0]], &[&[1, 1]]])],
        )
        .unwrap();
        assert!(c.validate());
        let k = CollapsibleSummand { degree: 2, rank: 2 }.complex(BaseRing::Polynomials);
        let ck = c.direct_sum(&k).unwrap();
        assert_eq!(
            pitcher_numbers(&homology_modules(&c).unwrap()),
            pitcher_numbers(&homology_modules(&ck).unwrap())
        );
        assert_eq!(relative_betti(&c).unwrap(), relative_betti(&ck).unwrap());
    }
}
