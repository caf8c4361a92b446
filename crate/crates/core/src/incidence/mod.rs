//! Incidence-coefficient series `n_0 + sum_m <M^m tau, S> t^(m+1)`,
//! rationality detection, convergence radii and the explicit four-dimensional
//! example family.

mod radius;
mod rational;

pub use radius::{convergence_radius, schur_cohn_no_roots_within, QuadSurd, RadiusEstimate};
pub use rational::{berlekamp_massey, detect_rational, RationalForm};

use num_traits::Zero;
use thiserror::Error;

use crate::arith::{dot_int, int, IntMatrix, IntVector, Integer, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IncidenceError {
    #[error("dimension mismatch: matrix is {rows}x{cols}, tau has {tau}, pairing has {pairing}")]
    Dimension {
        rows: usize,
        cols: usize,
        tau: usize,
        pairing: usize,
    },
    #[error("parameter q must be at least 3, got {0}")]
    SmallQ(Integer),
    #[error("coefficient n_{index} needs {bits} bits, above the cap of {cap}")]
    SizeCap { index: usize, bits: u64, cap: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentData {
    pub m: IntMatrix,
    pub tau: IntVector,
    pub pairing: IntVector,
    pub n0: Integer,
}

impl DescentData {
    pub fn new(
        m: IntMatrix,
        tau: IntVector,
        pairing: IntVector,
        n0: Integer,
    ) -> Result<Self, IncidenceError> {
        let n = m.rows();
        if m.cols() != n || tau.len() != n || pairing.len() != n {
            return Err(IncidenceError::Dimension {
                rows: m.rows(),
                cols: m.cols(),
                tau: tau.len(),
                pairing: pairing.len(),
            });
        }
        Ok(DescentData {
            m,
            tau,
            pairing,
            n0,
        })
    }

    pub fn with_n0(mut self, n0: Integer) -> Self {
        self.n0 = n0;
        self
    }
}

/// Coefficients `n_0, ..., n_K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceSeries {
    coefficients: Vec<Integer>,
}

impl IncidenceSeries {
    pub fn new(coefficients: Vec<Integer>) -> Self {
        IncidenceSeries { coefficients }
    }

    pub fn coefficients(&self) -> &[Integer] {
        &self.coefficients
    }

    /// `K`, or `None` for an empty series.
    pub fn horizon(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn into_coefficients(self) -> Vec<Integer> {
        self.coefficients
    }
}

/// `n_0, ..., n_K` with `n_{m+1} = pairing . M^m tau`, by repeated
/// matrix-vector products.
pub fn incidence_series(d: &DescentData, k: usize) -> IncidenceSeries {
    incidence_series_bounded(d, k, None).expect("no size cap")
}

/// As [`incidence_series`], stopping as soon as an iterate or coefficient
/// exceeds `max_bits`.
pub fn incidence_series_bounded(
    d: &DescentData,
    k: usize,
    max_bits: Option<u64>,
) -> Result<IncidenceSeries, IncidenceError> {
    let check = |index: usize, x: &Integer| match max_bits {
        Some(cap) if x.bits() > cap => Err(IncidenceError::SizeCap {
            index,
            bits: x.bits(),
            cap,
        }),
        _ => Ok(()),
    };
    check(0, &d.n0)?;
    let mut out = Vec::with_capacity(k + 1);
    out.push(d.n0.clone());
    let mut v = d.tau.clone();
    for step in 0..k {
        let n = dot_int(&d.pairing, &v);
        check(step + 1, &n)?;
        out.push(n);
        if step + 1 < k {
            v = d.m.mul_vec(&v).expect("validated dimensions");
            for x in &v {
                check(step + 2, x)?;
            }
        }
    }
    Ok(IncidenceSeries::new(out))
}

/// The symplectic monodromy `S(q)` in the basis `(a1, b1, a2, b2)`.
pub fn symplectic_matrix(q: &Integer) -> IntMatrix {
    let z = Integer::zero;
    IntMatrix::from_rows(vec![
        vec![z(), int(2), int(1), z()],
        vec![z(), z(), z(), int(1)],
        vec![z(), int(1), z(), z()],
        vec![int(-1), q.clone(), z(), int(-2)],
    ])
    .expect("square")
}

/// The descent matrix `M(q)` in the basis `(a1, b1, a2, b2)`.
pub fn descent_matrix(q: &Integer) -> IntMatrix {
    let z = Integer::zero;
    IntMatrix::from_rows(vec![
        vec![z(), z(), z(), int(2)],
        vec![z(), z(), z(), z()],
        vec![z(), z(), z(), int(1)],
        vec![z(), z(), int(-1), q.clone()],
    ])
    .expect("square")
}

/// The standard intersection form on `(a1, b1, a2, b2)`.
pub fn intersection_form() -> IntMatrix {
    let j =
        IntMatrix::from_rows(vec![vec![int(0), int(1)], vec![int(-1), int(0)]]).expect("square");
    IntMatrix::block_diag(&j, &j)
}

pub fn is_symplectic(s: &IntMatrix) -> bool {
    let j = intersection_form();
    s.rows() == j.rows()
        && s.cols() == j.cols()
        && s.transpose().mul(&j).and_then(|x| x.mul(s)).ok() == Some(j)
}

/// The example family for `q >= 3`: `tau = b1 - 2 b2`, pairing the first
/// coordinate, `n_0 = 0`.
pub fn appendix_example(q: &Integer) -> Result<(IntMatrix, DescentData), IncidenceError> {
    if *q < int(3) {
        return Err(IncidenceError::SmallQ(q.clone()));
    }
    let d = DescentData::new(
        descent_matrix(q),
        vec![int(0), int(1), int(0), int(-2)],
        vec![int(1), int(0), int(0), int(0)],
        Integer::zero(),
    )?;
    Ok((symplectic_matrix(q), d))
}

/// `x_0 = 0, x_1 = 1, x_{k+1} = q x_k - x_{k-1}`, for `k = 0..len`.
pub fn lucas_sequence(q: &Integer, len: usize) -> Vec<Integer> {
    let mut xs: Vec<Integer> = Vec::with_capacity(len);
    for k in 0..len {
        let x = match k {
            0 => Integer::zero(),
            1 => int(1),
            _ => q * &xs[k - 1] - &xs[k - 2],
        };
        xs.push(x);
    }
    xs
}

/// Checks `n_{k+1} = -4 x_k` for `k <= K` against the computed series.
pub fn closed_form_check(q: &Integer, k: usize) -> Result<bool, IncidenceError> {
    let (_, d) = appendix_example(q)?;
    let s = incidence_series(&d, k + 1);
    let xs = lucas_sequence(q, k + 1);
    Ok(xs
        .iter()
        .zip(&s.coefficients()[1..])
        .all(|(x, n)| *n == int(-4) * x))
}

/// The exact radius `(q - sqrt(q^2 - 4)) / 2` of the example family.
pub fn appendix_radius(q: &Integer) -> QuadSurd {
    let disc = q * q - int(4);
    QuadSurd::new(
        Rational::new(q.clone(), int(2)),
        Rational::new(int(-1), int(2)),
        disc,
    )
}

/// The growth rate `A = (q + sqrt(q^2 - 4)) / 2` of the example family.
pub fn appendix_growth(q: &Integer) -> QuadSurd {
    let disc = q * q - int(4);
    QuadSurd::new(
        Rational::new(q.clone(), int(2)),
        Rational::new(int(1), int(2)),
        disc,
    )
}
