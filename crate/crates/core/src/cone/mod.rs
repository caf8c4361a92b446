//! Cones of integer linear forms and unimodular subdivision.
//!
//! A family of forms `xi_1, ..., xi_m` on `Z^k` cuts out the cone
//! `{x : xi_i(x) <= 0 for all i}`. The family is admissible when that cone is
//! solid, and regular with respect to a direction `xi` when the forms are a
//! basis of the dual lattice in which `xi` has strictly positive
//! coordinates. [`regular_family`] builds such a basis close to a given
//! direction by repeatedly splitting a lattice simplex until it is
//! unimodular.

mod fourier_motzkin;
mod subdivision;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{ArithError, IntMatrix, IntVector, Integer, RatMatrix, RatVector, Rational};

pub use fourier_motzkin::strict_feasibility_witness;
pub use subdivision::{
    lattice_point_in_semiopen, regular_family, semiopen_lattice_points, subdivide_step,
    subdivision_children, RegularFamily, SubdivisionTrace, TraceStep,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConeError {
    #[error("form family is empty")]
    EmptyFamily,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vectors are linearly dependent")]
    Degenerate,
    #[error("family is not unimodular (|det| = {0})")]
    NonUnimodularFamily(Integer),
    #[error("target ray lies on a wall of every candidate subcone")]
    RayOnWall,
    #[error(
        "target ray is a lattice ray and no unimodular frame within tolerance contains it strictly"
    )]
    RayIsLattice,
    #[error("first coordinate of the target must be positive")]
    FirstCoordinateNonpositive,
    #[error("invalid target: {0}")]
    InvalidTarget(String),
    #[error("point is not a nonzero lattice point of the semi-open parallelotope")]
    NotInSemiopen,
    #[error("target is not strictly inside the cone of the basis")]
    TargetOutsideCone,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Linear forms on `Z^k`, each given by its coefficient row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormFamily {
    dim: usize,
    forms: Vec<IntVector>,
}

impl FormFamily {
    pub fn new(forms: Vec<IntVector>) -> Result<Self, ConeError> {
        let dim = forms.first().ok_or(ConeError::EmptyFamily)?.len();
        if dim == 0 {
            return Err(ConeError::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        if let Some(f) = forms.iter().find(|f| f.len() != dim) {
            return Err(ConeError::DimensionMismatch {
                expected: dim,
                found: f.len(),
            });
        }
        Ok(FormFamily { dim, forms })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, ConeError> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| Integer::from(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn forms(&self) -> &[IntVector] {
        &self.forms
    }

    /// Forms as the rows of a matrix.
    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.forms.clone()).expect("rows have equal length")
    }

    pub fn negated(&self) -> FormFamily {
        FormFamily {
            dim: self.dim,
            forms: self
                .forms
                .iter()
                .map(|f| f.iter().map(|x| -x).collect())
                .collect(),
        }
    }

    /// True when `x` lies in the closed cone `{xi_i(x) <= 0 for all i}`.
    pub fn cone_contains(&self, x: &[Integer]) -> bool {
        self.forms
            .iter()
            .all(|f| !crate::arith::dot_int(f, x).is_positive())
    }
}

/// `k` linearly independent lattice vectors, stored as the columns of a
/// `k x k` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialBasis {
    vectors: Vec<IntVector>,
}

impl SimplicialBasis {
    pub fn new(vectors: Vec<IntVector>) -> Result<Self, ConeError> {
        let k = vectors.len();
        if k == 0 {
            return Err(ConeError::EmptyFamily);
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != k) {
            return Err(ConeError::DimensionMismatch {
                expected: k,
                found: v.len(),
            });
        }
        let b = SimplicialBasis { vectors };
        if b.det().is_zero() {
            return Err(ConeError::Degenerate);
        }
        Ok(b)
    }

    pub fn from_i64(vectors: &[&[i64]]) -> Result<Self, ConeError> {
        Self::new(
            vectors
                .iter()
                .map(|r| r.iter().map(|&x| Integer::from(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[IntVector] {
        &self.vectors
    }

    /// Vectors as the columns of a matrix.
    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(&self.vectors, self.dim()).expect("square family")
    }

    pub fn det(&self) -> Integer {
        self.matrix().det().expect("square family")
    }

    pub fn abs_det(&self) -> Integer {
        self.det().abs()
    }

    pub fn is_unimodular(&self) -> bool {
        self.abs_det().is_one()
    }

    /// Coordinates of `x` in this basis.
    pub fn coordinates(&self, x: &[Rational]) -> Result<RatVector, ConeError> {
        if x.len() != self.dim() {
            return Err(ConeError::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        self.matrix()
            .to_rational()
            .solve(x)?
            .ok_or(ConeError::Degenerate)
    }

    pub fn coordinates_int(&self, x: &[Integer]) -> Result<RatVector, ConeError> {
        let xr: RatVector = x.iter().cloned().map(Rational::from_integer).collect();
        self.coordinates(&xr)
    }

    pub(crate) fn replaced(&self, j: usize, q: IntVector) -> SimplicialBasis {
        let mut vectors = self.vectors.clone();
        vectors[j] = q;
        SimplicialBasis { vectors }
    }
}

/// A rational stand-in for the target direction together with the allowed
/// squared sine of the angle to every basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetDirection {
    v: RatVector,
    tol_sin2: Rational,
}

impl TargetDirection {
    pub fn new(v: RatVector, tol_sin2: Rational) -> Result<Self, ConeError> {
        if v.is_empty() {
            return Err(ConeError::InvalidTarget("empty direction".into()));
        }
        if v.iter().all(Zero::is_zero) {
            return Err(ConeError::InvalidTarget("zero direction".into()));
        }
        if !v[0].is_positive() {
            return Err(ConeError::FirstCoordinateNonpositive);
        }
        if !tol_sin2.is_positive() || tol_sin2 >= Rational::one() {
            return Err(ConeError::InvalidTarget(
                "squared-sine tolerance must lie in (0, 1)".into(),
            ));
        }
        Ok(TargetDirection { v, tol_sin2 })
    }

    pub fn v(&self) -> &[Rational] {
        &self.v
    }

    pub fn tol_sin2(&self) -> &Rational {
        &self.tol_sin2
    }

    /// Adds the jitter `1 / (p_i * 10^9)` to coordinate `i >= 1`, where
    /// `p_i` is the `i`-th prime. Moves a rational target off the special
    /// positions (lattice rays, walls) that make the subdivision stop.
    pub fn perturbed(&self) -> TargetDirection {
        const PRIMES: [i64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
        let scale = Integer::from(1_000_000_000i64);
        let v = self
            .v
            .iter()
            .enumerate()
            .map(|(i, x)| {
                if i == 0 {
                    return x.clone();
                }
                let p = Integer::from(
                    PRIMES[(i - 1) % PRIMES.len()] + 40 * ((i - 1) / PRIMES.len()) as i64,
                );
                x + Rational::new(Integer::one(), p * &scale)
            })
            .collect();
        TargetDirection {
            v,
            tol_sin2: self.tol_sin2.clone(),
        }
    }
}

/// Decides whether the open cone `{xi_i(x) < 0 for all i}` is nonempty.
pub fn is_admissible(g: &FormFamily) -> bool {
    admissibility_witness(g).is_some()
}

/// An integer point on which every form is strictly negative, if any.
pub fn admissibility_witness(g: &FormFamily) -> Option<IntVector> {
    strict_feasibility_witness(g.forms(), g.dim())
}

/// Checks that the forms are a basis of the dual lattice and that `xi` has
/// strictly positive coordinates in that basis.
pub fn check_xi_regular(g: &FormFamily, xi: &[Rational]) -> Result<bool, ConeError> {
    let k = g.dim();
    if g.forms().len() != k {
        return Err(ConeError::DimensionMismatch {
            expected: k,
            found: g.forms().len(),
        });
    }
    if xi.len() != k {
        return Err(ConeError::DimensionMismatch {
            expected: k,
            found: xi.len(),
        });
    }
    let f = g.matrix();
    if !f.det()?.abs().is_one() {
        return Ok(false);
    }
    // xi = sum c_i xi_i  <=>  F^T c = xi
    let c = f
        .transpose()
        .to_rational()
        .solve(xi)?
        .ok_or(ConeError::Degenerate)?;
    Ok(c.iter().all(Signed::is_positive))
}

/// The lattice basis `t_1, ..., t_k` with `(-xi_i)(t_j) = delta_ij`.
pub fn dual_basis(g: &FormFamily) -> Result<SimplicialBasis, ConeError> {
    let k = g.dim();
    if g.forms().len() != k {
        return Err(ConeError::DimensionMismatch {
            expected: k,
            found: g.forms().len(),
        });
    }
    let f = g.matrix();
    let det = f.det()?;
    if !det.abs().is_one() {
        return Err(ConeError::NonUnimodularFamily(det.abs()));
    }
    // -F * T = I  =>  T = -F^{-1}; integral because |det F| = 1
    let t: RatMatrix = f.to_rational().inverse()?.neg();
    let columns = t
        .columns()
        .into_iter()
        .map(|c| c.into_iter().map(|x| x.to_integer()).collect())
        .collect();
    SimplicialBasis::new(columns)
}

/// Reads a basis back as a family of forms (one form per vector).
pub fn forms_of(basis: &SimplicialBasis) -> FormFamily {
    FormFamily {
        dim: basis.dim(),
        forms: basis.vectors().to_vec(),
    }
}
