//! Finite free chain complexes over `Q`, `Q[t]` and `Q[t]/(t^n)`.
//!
//! Boundary matrices act on column vectors: `boundary(r)` is the
//! `rank(r - 1) x rank(r)` matrix of `d_r`. Every entry is a polynomial;
//! over `Q` entries are constants and over `Q[t]/(t^n)` they have degree
//! below `n`.

mod lemmas;
mod linalg;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{smith_normal_form, Euclidean, Poly, PolyMatrix};

pub use lemmas::{compose_triangle, lift_through, make_epimorphic, EpimorphicExtension, Triangle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("entry not reduced for the base ring: {0}")]
    NotReduced(String),
    #[error("base rings differ")]
    RingMismatch,
    #[error("operation needs base ring {0}")]
    WrongBaseRing(&'static str),
    #[error("boundary does not square to zero in degree {0}")]
    NotAComplex(usize),
    #[error("not a chain map in degree {0}")]
    NotAChainMap(usize),
    #[error("map does not induce an epimorphism on H_0")]
    H0NotEpimorphic,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("linear system has no solution in degree {0}")]
    NoSolution(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseRing {
    Rationals,
    Polynomials,
    /// `Q[t]/(t^n)`, `n >= 1`.
    Truncated(u32),
}

impl BaseRing {
    pub fn name(&self) -> String {
        match self {
            BaseRing::Rationals => "Q".into(),
            BaseRing::Polynomials => "Q[t]".into(),
            BaseRing::Truncated(n) => format!("Q[t]/(t^{n})"),
        }
    }
}

/// A bounded free chain complex in degrees `0..=top`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    ring: BaseRing,
    ranks: Vec<usize>,
    /// `boundaries[r - 1]` is `d_r`.
    boundaries: Vec<PolyMatrix>,
}

impl FreeComplex {
    /// Checks shapes and that entries are reduced; `d o d = 0` is checked
    /// separately by [`FreeComplex::validate`].
    pub fn new(
        ring: BaseRing,
        ranks: Vec<usize>,
        boundaries: Vec<PolyMatrix>,
    ) -> Result<Self, ComplexError> {
        if let BaseRing::Truncated(0) = ring {
            return Err(ComplexError::Shape("truncation order 0".into()));
        }
        if ranks.is_empty() {
            return Err(ComplexError::Shape("no degrees".into()));
        }
        if boundaries.len() + 1 != ranks.len() {
            return Err(ComplexError::Shape(format!(
                "{} degrees need {} boundaries, got {}",
                ranks.len(),
                ranks.len() - 1,
                boundaries.len()
            )));
        }
        for (i, d) in boundaries.iter().enumerate() {
            let r = i + 1;
            if d.shape() != (ranks[r - 1], ranks[r]) {
                return Err(ComplexError::Shape(format!(
                    "d_{r} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    ranks[r - 1],
                    ranks[r]
                )));
            }
            if let Some(p) = d.entries().find(|p| !ring.is_reduced(p)) {
                return Err(ComplexError::NotReduced(format!("{p} in d_{r}")));
            }
        }
        Ok(FreeComplex {
            ring,
            ranks,
            boundaries,
        })
    }

    /// All boundaries zero.
    pub fn zero(ring: BaseRing, ranks: Vec<usize>) -> Result<Self, ComplexError> {
        let boundaries = (1..ranks.len())
            .map(|r| PolyMatrix::zeros(ranks[r - 1], ranks[r]))
            .collect();
        Self::new(ring, ranks, boundaries)
    }

    pub fn ring(&self) -> BaseRing {
        self.ring
    }

    pub fn top(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, r: usize) -> usize {
        self.ranks.get(r).copied().unwrap_or(0)
    }

    /// `d_r : C_r -> C_{r-1}`; zero (possibly empty) outside `1..=top`.
    pub fn boundary(&self, r: usize) -> PolyMatrix {
        if r >= 1 && r <= self.top() {
            self.boundaries[r - 1].clone()
        } else {
            PolyMatrix::zeros(if r == 0 { 0 } else { self.rank(r - 1) }, self.rank(r))
        }
    }

    /// Exact check of `d_{r-1} d_r = 0` in every degree.
    pub fn validate(&self) -> bool {
        self.first_failure().is_none()
    }

    fn first_failure(&self) -> Option<usize> {
        (2..=self.top()).find(|&r| {
            !self
                .ring
                .mul(&self.boundary(r - 1), &self.boundary(r))
                .is_zero()
        })
    }

    pub(crate) fn require_valid(&self) -> Result<(), ComplexError> {
        match self.first_failure() {
            Some(r) => Err(ComplexError::NotAComplex(r)),
            None => Ok(()),
        }
    }

    /// Extends the complex with zero modules up to degree `top`.
    pub fn padded(&self, top: usize) -> FreeComplex {
        if top <= self.top() {
            return self.clone();
        }
        let mut ranks = self.ranks.clone();
        ranks.resize(top + 1, 0);
        let boundaries = (1..=top).map(|r| {
            if r <= self.top() {
                self.boundary(r)
            } else {
                PolyMatrix::zeros(ranks[r - 1], ranks[r])
            }
        });
        FreeComplex {
            ring: self.ring,
            boundaries: boundaries.collect(),
            ranks,
        }
    }

    pub fn direct_sum(&self, other: &FreeComplex) -> Result<FreeComplex, ComplexError> {
        if self.ring != other.ring {
            return Err(ComplexError::RingMismatch);
        }
        let top = self.top().max(other.top());
        let (a, b) = (self.padded(top), other.padded(top));
        let ranks = (0..=top).map(|r| a.rank(r) + b.rank(r)).collect();
        let boundaries = (1..=top)
            .map(|r| PolyMatrix::block_diag(&a.boundary(r), &b.boundary(r)))
            .collect();
        FreeComplex::new(self.ring, ranks, boundaries)
    }

    /// `Q`-dimensions of homology. Over `Q[t]` these are infinite for free
    /// parts, so only the finite rings are accepted.
    pub fn homology_dims(&self) -> Result<Vec<usize>, ComplexError> {
        let n = self
            .ring
            .q_block()
            .ok_or(ComplexError::WrongBaseRing("Q or Q[t]/(t^n)"))?;
        self.require_valid()?;
        Ok((0..=self.top())
            .map(|r| {
                let kernel = self.rank(r) * n - self.ring.image_rank(&self.boundary(r));
                kernel - self.ring.image_rank(&self.boundary(r + 1))
            })
            .collect())
    }

    /// Betti numbers of a complex over `Q`.
    pub fn betti(&self) -> Result<Vec<usize>, ComplexError> {
        if self.ring != BaseRing::Rationals {
            return Err(ComplexError::WrongBaseRing("Q"));
        }
        self.homology_dims()
    }

    /// Presentation of `H_r` over `Q[t]`: the module is the quotient of a
    /// free module on the rows by the span of the columns.
    ///
    /// With `D = U d_r V` in Smith form, the last `n_r - rank` columns of
    /// `V` are a basis of the cycles, and the boundaries in that basis are
    /// the last rows of `V^{-1} d_{r+1}`.
    pub fn homology_presentation(&self, r: usize) -> Result<PolyMatrix, ComplexError> {
        if self.ring != BaseRing::Polynomials {
            return Err(ComplexError::WrongBaseRing("Q[t]"));
        }
        self.require_valid()?;
        let s = smith_normal_form(&self.boundary(r));
        let next = self.boundary(r + 1);
        let coords = s.v_inv.mul(&next).expect("shapes agree");
        Ok(coords.submatrix(s.rank..self.rank(r), 0..next.cols()))
    }

    /// Homology over `Q[t]` as free rank plus nonunit invariant factors.
    pub fn homology_poly(&self) -> Result<Vec<PolyHomology>, ComplexError> {
        (0..=self.top())
            .map(|r| {
                self.homology_presentation(r)
                    .map(|p| PolyHomology::of_presentation(&p))
            })
            .collect()
    }

    pub fn is_acyclic(&self) -> Result<bool, ComplexError> {
        match self.ring {
            BaseRing::Polynomials => Ok(self.homology_poly()?.iter().all(PolyHomology::is_zero)),
            _ => Ok(self.homology_dims()?.iter().all(|&d| d == 0)),
        }
    }

    /// Multiplication by a polynomial, degreewise (a chain endomorphism).
    pub fn scalar_map(&self, p: &Poly) -> ChainMap {
        let maps = (0..=self.top())
            .map(|r| {
                let m = PolyMatrix::identity(self.rank(r)).scale(p);
                self.ring.reduce_matrix(&m)
            })
            .collect();
        ChainMap {
            source: self.clone(),
            target: self.clone(),
            maps,
        }
    }
}

/// A finitely generated `Q[t]`-module `Q[t]^free_rank + sum Q[t]/(f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyHomology {
    pub free_rank: usize,
    /// Nonunit invariant factors, monic, each dividing the next.
    pub torsion: Vec<Poly>,
}

impl PolyHomology {
    pub fn of_presentation(p: &PolyMatrix) -> Self {
        let s = smith_normal_form(p);
        PolyHomology {
            free_rank: p.rows() - s.rank,
            torsion: s
                .invariant_factors()
                .into_iter()
                .filter(|f| !f.is_unit())
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// The acyclic complex with a copy of `R^rank` in degrees `degree` and
/// `degree - 1`, joined by the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CollapsibleSummand {
    pub degree: usize,
    pub rank: usize,
}

impl CollapsibleSummand {
    pub fn complex(&self, ring: BaseRing) -> FreeComplex {
        assert!(self.degree >= 1, "collapsible summand needs degree >= 1");
        let mut ranks = vec![0; self.degree + 1];
        ranks[self.degree - 1] = self.rank;
        ranks[self.degree] = self.rank;
        let boundaries = (1..=self.degree)
            .map(|r| {
                if r == self.degree {
                    PolyMatrix::identity(self.rank)
                } else {
                    PolyMatrix::zeros(ranks[r - 1], ranks[r])
                }
            })
            .collect();
        FreeComplex::new(ring, ranks, boundaries).expect("well formed")
    }
}

/// A degreewise family of matrices `f_r : A_r -> B_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: FreeComplex,
    target: FreeComplex,
    /// `maps[r]` for `r` in `0..=max(top A, top B)`.
    maps: Vec<PolyMatrix>,
}

impl ChainMap {
    /// Checks shapes and ring agreement; commutation with the boundaries is
    /// checked by [`ChainMap::validate`].
    pub fn new(
        source: FreeComplex,
        target: FreeComplex,
        maps: Vec<PolyMatrix>,
    ) -> Result<Self, ComplexError> {
        if source.ring != target.ring {
            return Err(ComplexError::RingMismatch);
        }
        let top = source.top().max(target.top());
        let mut maps = maps;
        if maps.len() > top + 1 {
            return Err(ComplexError::Shape(format!(
                "{} component maps for degrees 0..={top}",
                maps.len()
            )));
        }
        for r in maps.len()..=top {
            maps.push(PolyMatrix::zeros(target.rank(r), source.rank(r)));
        }
        for (r, m) in maps.iter().enumerate() {
            if m.shape() != (target.rank(r), source.rank(r)) {
                return Err(ComplexError::Shape(format!(
                    "f_{r} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    target.rank(r),
                    source.rank(r)
                )));
            }
            if let Some(p) = m.entries().find(|p| !source.ring.is_reduced(p)) {
                return Err(ComplexError::NotReduced(format!("{p} in f_{r}")));
            }
        }
        Ok(ChainMap {
            source,
            target,
            maps,
        })
    }

    pub fn identity(c: &FreeComplex) -> ChainMap {
        let maps = (0..=c.top())
            .map(|r| PolyMatrix::identity(c.rank(r)))
            .collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            maps,
        }
    }

    pub fn zero(source: &FreeComplex, target: &FreeComplex) -> Result<ChainMap, ComplexError> {
        ChainMap::new(source.clone(), target.clone(), vec![])
    }

    pub fn source(&self) -> &FreeComplex {
        &self.source
    }

    pub fn target(&self) -> &FreeComplex {
        &self.target
    }

    pub fn ring(&self) -> BaseRing {
        self.source.ring
    }

    pub fn top(&self) -> usize {
        self.maps.len() - 1
    }

    pub fn map(&self, r: usize) -> PolyMatrix {
        self.maps
            .get(r)
            .cloned()
            .unwrap_or_else(|| PolyMatrix::zeros(self.target.rank(r), self.source.rank(r)))
    }

    pub fn maps(&self) -> &[PolyMatrix] {
        &self.maps
    }

    /// Exact check of `f_{r-1} d_r = d_r f_r` in every degree.
    pub fn validate(&self) -> bool {
        self.first_failure().is_none()
    }

    fn first_failure(&self) -> Option<usize> {
        let ring = self.ring();
        (1..=self.top() + 1).find(|&r| {
            ring.mul(&self.map(r - 1), &self.source.boundary(r))
                != ring.mul(&self.target.boundary(r), &self.map(r))
        })
    }

    pub(crate) fn require_valid(&self) -> Result<(), ComplexError> {
        self.source.require_valid()?;
        self.target.require_valid()?;
        match self.first_failure() {
            Some(r) => Err(ComplexError::NotAChainMap(r)),
            None => Ok(()),
        }
    }

    /// `self o first`.
    pub fn compose(&self, first: &ChainMap) -> Result<ChainMap, ComplexError> {
        if first.target != self.source {
            return Err(ComplexError::Shape("maps are not composable".into()));
        }
        let top = first.source.top().max(self.target.top());
        let maps = (0..=top)
            .map(|r| self.ring().mul(&self.map(r), &first.map(r)))
            .collect();
        ChainMap::new(first.source.clone(), self.target.clone(), maps)
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap, ComplexError> {
        if self.source != other.source || self.target != other.target {
            return Err(ComplexError::Shape("maps have different ends".into()));
        }
        let maps = (0..=self.top())
            .map(|r| self.map(r).sub(&other.map(r)).expect("same shape"))
            .collect();
        ChainMap::new(self.source.clone(), self.target.clone(), maps)
    }

    /// Mapping cone: `cone_r = A_{r-1} + B_r` with
    /// `d(a, b) = (-d a, f a + d b)`.
    pub fn mapping_cone(&self) -> FreeComplex {
        let (a, b) = (&self.source, &self.target);
        let top = (a.top() + 1).max(b.top());
        let ranks: Vec<usize> = (0..=top)
            .map(|r| if r == 0 { 0 } else { a.rank(r - 1) } + b.rank(r))
            .collect();
        let boundaries = (1..=top)
            .map(|r| {
                let da = if r >= 2 {
                    a.boundary(r - 1).neg()
                } else {
                    PolyMatrix::zeros(0, a.rank(0))
                };
                let a_prev = if r >= 2 { a.rank(r - 2) } else { 0 };
                let mut m = PolyMatrix::zeros(ranks[r - 1], ranks[r]);
                m.paste(0, 0, &da);
                m.paste(a_prev, 0, &self.map(r - 1));
                m.paste(a_prev, a.rank(r - 1), &b.boundary(r));
                m
            })
            .collect();
        FreeComplex::new(a.ring, ranks, boundaries).expect("well formed")
    }

    /// Whether the map induces an isomorphism on homology, decided by
    /// acyclicity of the mapping cone.
    pub fn is_homology_equivalence(&self) -> bool {
        self.mapping_cone().is_acyclic().unwrap_or(false)
    }

    /// Whether every component is onto.
    pub fn is_epimorphic(&self) -> bool {
        (0..=self.top()).all(|r| self.ring().is_surjective(&self.map(r)))
    }

    /// Whether the two maps induce the same map on homology: the difference
    /// sends every cycle to a boundary. Finite rings only.
    pub fn agrees_on_homology(&self, other: &ChainMap) -> Result<bool, ComplexError> {
        let ring = self.ring();
        let n = ring
            .q_block()
            .ok_or(ComplexError::WrongBaseRing("Q or Q[t]/(t^n)"))?;
        let diff = self.sub(other)?;
        let (a, b) = (&self.source, &self.target);
        for r in 0..=self.top() {
            let cycles = linalg::expand(&a.boundary(r), n).nullspace();
            let d = linalg::expand(&ring.reduce_matrix(&diff.map(r)), n);
            let boundaries = linalg::expand(&b.boundary(r + 1), n);
            for z in &cycles {
                let w = d.mul_vec(z).expect("shapes agree");
                if boundaries.solve(&w).expect("shapes agree").is_none() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Checks `self - other = d h + h d`, where `h[r] : A_r -> B_{r+1}`.
    pub fn homotopic_via(&self, other: &ChainMap, h: &[PolyMatrix]) -> bool {
        let ring = self.ring();
        let (a, b) = (&self.source, &self.target);
        let get = |r: usize| -> PolyMatrix {
            h.get(r)
                .cloned()
                .unwrap_or_else(|| PolyMatrix::zeros(b.rank(r + 1), a.rank(r)))
        };
        for r in 0..=self.top() {
            if get(r).shape() != (b.rank(r + 1), a.rank(r)) {
                return false;
            }
        }
        (0..=self.top()).all(|r| {
            let lhs = self.map(r).sub(&other.map(r)).expect("same shape");
            let dh = ring.mul(&b.boundary(r + 1), &get(r));
            let hd = if r == 0 {
                PolyMatrix::zeros(b.rank(0), a.rank(0))
            } else {
                ring.mul(&get(r - 1), &a.boundary(r))
            };
            ring.reduce_matrix(&lhs) == dh.add(&hd).expect("same shape")
        })
    }
}

pub(crate) fn unit_vector(n: usize, i: usize) -> Vec<Poly> {
    (0..n)
        .map(|j| if i == j { Poly::one() } else { Poly::zero() })
        .collect()
}

/// Whether `f` is invertible over the ring, and the inverse if so.
pub fn invert_over(ring: BaseRing, f: &PolyMatrix) -> Option<PolyMatrix> {
    if !f.is_square() {
        return None;
    }
    let n = f.rows();
    let cols: Option<Vec<Vec<Poly>>> = (0..n).map(|i| ring.solve(f, &unit_vector(n, i))).collect();
    let inv = PolyMatrix::from_columns(&cols?, n).ok()?;
    (ring.mul(&inv, f) == PolyMatrix::identity(n)).then_some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> PolyMatrix {
        PolyMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Poly::from_ints(&[x])).collect())
                .collect(),
        )
        .unwrap()
    }

    fn p(rows: &[&[&[i64]]]) -> PolyMatrix {
        PolyMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|c| Poly::from_ints(c)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn validate_examples() {
        let c = FreeComplex::new(BaseRing::Rationals, vec![1, 1], vec![q(&[&[1]])]).unwrap();
        assert!(c.validate());
        let bad = FreeComplex::new(
            BaseRing::Rationals,
            vec![1, 1, 1],
            vec![q(&[&[1]]), q(&[&[1]])],
        )
        .unwrap();
        assert!(!bad.validate());
        let circle =
            FreeComplex::new(BaseRing::Polynomials, vec![1, 1], vec![p(&[&[&[1, -1]]])]).unwrap();
        assert!(circle.validate());
    }

    #[test]
    fn reduced_entries_are_enforced() {
        assert!(matches!(
            FreeComplex::new(BaseRing::Rationals, vec![1, 1], vec![p(&[&[&[0, 1]]])]),
            Err(ComplexError::NotReduced(_))
        ));
        assert!(matches!(
            FreeComplex::new(
                BaseRing::Truncated(2),
                vec![1, 1],
                vec![p(&[&[&[0, 0, 1]]])]
            ),
            Err(ComplexError::NotReduced(_))
        ));
    }

    #[test]
    fn betti_examples() {
        let c = FreeComplex::zero(BaseRing::Rationals, vec![1, 0]).unwrap();
        assert_eq!(c.betti().unwrap(), vec![1, 0]);
        let c = FreeComplex::new(BaseRing::Rationals, vec![1, 1], vec![q(&[&[1]])]).unwrap();
        assert_eq!(c.betti().unwrap(), vec![0, 0]);
        let c = FreeComplex::new(BaseRing::Rationals, vec![1, 1], vec![q(&[&[0]])]).unwrap();
        assert_eq!(c.betti().unwrap(), vec![1, 1]);
        let poly = FreeComplex::zero(BaseRing::Polynomials, vec![1]).unwrap();
        assert_eq!(poly.betti(), Err(ComplexError::WrongBaseRing("Q")));
    }

    #[test]
    fn truncated_homology() {
        // Q[t]/t^3 --t--> Q[t]/t^3: kernel t^2, cokernel Q
        let c =
            FreeComplex::new(BaseRing::Truncated(3), vec![1, 1], vec![p(&[&[&[0, 1]]])]).unwrap();
        assert_eq!(c.homology_dims().unwrap(), vec![1, 1]);
    }

    #[test]
    fn polynomial_homology() {
        let c =
            FreeComplex::new(BaseRing::Polynomials, vec![1, 1], vec![p(&[&[&[1, -1]]])]).unwrap();
        let h = c.homology_poly().unwrap();
        assert_eq!(h[0].free_rank, 0);
        assert_eq!(h[0].torsion, vec![Poly::from_ints(&[-1, 1])]);
        assert!(h[1].is_zero());
    }

    #[test]
    fn collapsible_is_acyclic() {
        for ring in [
            BaseRing::Rationals,
            BaseRing::Polynomials,
            BaseRing::Truncated(2),
        ] {
            for degree in 1..4 {
                let k = CollapsibleSummand { degree, rank: 2 }.complex(ring);
                assert!(k.validate());
                assert!(k.is_acyclic().unwrap());
            }
        }
        let k = CollapsibleSummand { degree: 2, rank: 3 }.complex(BaseRing::Rationals);
        assert_eq!(k.betti().unwrap(), vec![0, 0, 0]);
    }

    #[test]
    fn homology_equivalence_examples() {
        let f = FreeComplex::new(BaseRing::Rationals, vec![1, 1], vec![q(&[&[0]])]).unwrap();
        assert!(ChainMap::identity(&f).is_homology_equivalence());

        let k = CollapsibleSummand { degree: 1, rank: 1 }.complex(BaseRing::Rationals);
        let sum = f.direct_sum(&k).unwrap();
        let proj = ChainMap::new(sum, f.clone(), vec![q(&[&[1, 0]]), q(&[&[1, 0]])]).unwrap();
        assert!(proj.validate());
        assert!(proj.is_homology_equivalence());

        assert!(!ChainMap::zero(&f, &f).unwrap().is_homology_equivalence());
    }

    #[test]
    fn cone_of_identity_over_polynomials_is_acyclic() {
        let c =
            FreeComplex::new(BaseRing::Polynomials, vec![1, 1], vec![p(&[&[&[1, -1]]])]).unwrap();
        let id = ChainMap::identity(&c);
        assert!(id.mapping_cone().validate());
        assert!(id.is_homology_equivalence());
        // t acts as 1 on Q[t]/(1 - t) but not on a free module
        assert!(c.scalar_map(&Poly::t()).is_homology_equivalence());
        let free = FreeComplex::zero(BaseRing::Polynomials, vec![1]).unwrap();
        assert!(!free.scalar_map(&Poly::t()).is_homology_equivalence());
        let two = c.scalar_map(&Poly::from_ints(&[2]));
        assert!(two.is_homology_equivalence());
    }

    #[test]
    fn inverse_over_rings() {
        let m = p(&[&[&[1], &[0, 1]], &[&[0], &[1]]]);
        assert!(invert_over(BaseRing::Polynomials, &m).is_some());
        let m = p(&[&[&[1, 1]]]);
        assert!(invert_over(BaseRing::Polynomials, &m).is_none());
        assert!(invert_over(BaseRing::Truncated(3), &m).is_some());
    }
}
